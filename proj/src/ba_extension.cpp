#include "uacx/ba_extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "uacx/errors.hpp"

namespace uacx {
namespace {

constexpr double kSkewGrid[] = {0.25, 0.5, 0.75, 1.0};

void require_grid(int x_count, std::span<const double> y_values,
                  const char* where) {
  if (x_count < 16)
    throw std::invalid_argument(std::string(where) + ": x_count must be >= 16");
  if (y_values.empty())
    throw std::invalid_argument(std::string(where) + ": empty y list");
  for (std::size_t i = 0; i < y_values.size(); ++i) {
    if (!(y_values[i] > 0))
      throw std::invalid_argument(std::string(where) + ": y must be positive");
    if (i && !(y_values[i] < y_values[i - 1]))
      throw std::invalid_argument(std::string(where) +
                                  ": y must be strictly decreasing");
  }
}

double adaptive_simpson(const RealHomeomorphism& f, double a, double b,
                        double fa, double fm, double fb, double whole,
                        double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const double width_floor =
      64.0 * std::numeric_limits<double>::epsilon() *
      std::max(1.0, std::max(std::abs(a), std::abs(b)));
  if (std::abs(delta) <= 15.0 * eps || (b - a) < width_floor)
    return left + right + delta / 15.0;
  if (depth <= 0) {
    std::ostringstream os;
    os << "adaptive quadrature stalled on [" << a << "," << b
       << "] with residual " << std::abs(delta) / 15.0;
    throw QuadratureFailure(os.str());
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace

PiecewiseLinearBackend::PiecewiseLinearBackend(ConjugacyMap subject)
    : subject_(std::move(subject)) {
  const auto a = subject_.level(subject_.depth());
  const std::size_t n = a.size() - 1;
  const double width = 1.0 / static_cast<double>(n);
  prefix_.resize(n + 1);
  prefix_[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    prefix_[i + 1] = prefix_[i] + width * 0.5 * (a[i] + a[i + 1]);
  unit_integral_ = prefix_[n];
  floor_ = 0.25 * width;
  id_ = "closed_form:" + subject_.id();
}

double PiecewiseLinearBackend::antiderivative(double t) const {
  double k = std::floor(t);
  double r = t - k;
  if (r >= 1.0) {
    k += 1.0;
    r = 0.0;
  }
  const auto a = subject_.level(subject_.depth());
  const std::size_t n = a.size() - 1;
  const double tn = r * static_cast<double>(n);
  const std::size_t i =
      std::min(n - 1, static_cast<std::size_t>(std::max(0.0, tn)));
  const double frac = tn - static_cast<double>(i);
  const double hr = a[i] + frac * (a[i + 1] - a[i]);
  const double w = r - static_cast<double>(i) / static_cast<double>(n);
  const double base = prefix_[i] + w * 0.5 * (a[i] + hr);
  // int_0^{k} H = k * int_0^1 H + k(k-1)/2, then the partial period shifted
  // by the integer part.
  return k * unit_integral_ + 0.5 * k * (k - 1.0) + k * r + base;
}

double PiecewiseLinearBackend::integrate(double a, double b) const {
  return antiderivative(b) - antiderivative(a);
}

QuadratureBackend::QuadratureBackend(RealHomeomorphism subject, double tol)
    : subject_(std::move(subject)), tol_(tol) {
  if (!(tol_ > 0))
    throw std::invalid_argument("QuadratureBackend: tol must be > 0");
  id_ = "quadrature:" + subject_.name();
}

double QuadratureBackend::integrate(double a, double b) const {
  if (a == b) return 0.0;
  if (a > b) return -integrate(b, a);
  const double fa = subject_(a);
  const double fb = subject_(b);
  const double fm = subject_(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(subject_, a, b, fa, fm, fb, whole, tol_, 40);
}

NormalizedBackend::NormalizedBackend(const IntegralBackend& base)
    : base_(base) {
  offset_ = base_.eval(0.0);
  scale_ = base_.eval(1.0) - offset_;
  if (!(scale_ > 0))
    throw InvariantBreach("normalization: subject has H(1) <= H(0)");
  id_ = base_.subject_id() + ":normalized";
}

SideAverages lrl(const IntegralBackend& H, double x, double y) {
  if (!(y > 0)) throw std::invalid_argument("lrl: y must be positive");
  if (y < H.floor_y()) {
    std::ostringstream os;
    os << "requested y = " << y << " below resolution floor " << H.floor_y()
       << " of " << H.subject_id();
    throw FloorViolation(os.str());
  }
  SideAverages s;
  s.hx = H.eval(x);
  s.L = s.hx - H.eval(x - y);
  s.R = H.eval(x + y) - s.hx;
  s.Lp = s.hx - H.integrate(x - y, x) / y;
  s.Rp = H.integrate(x, x + y) / y - s.hx;
  if (!(s.L > 0) || !(s.R > 0) || !(s.Lp > 0) || !(s.Rp > 0)) {
    std::ostringstream os;
    os << "one-sided averages not positive at (x,y)=(" << x << "," << y
       << "): L=" << s.L << " R=" << s.R << " Lp=" << s.Lp << " Rp=" << s.Rp;
    throw InvariantBreach(os.str());
  }
  return s;
}

PlanePoint extend_point(const IntegralBackend& H, double x, double y) {
  const SideAverages s = lrl(H, x, y);
  return {s.hx + 0.5 * (s.Rp - s.Lp), s.Rp + s.Lp};
}

ExtensionValue beltrami_point(const IntegralBackend& H, double x, double y) {
  const SideAverages s = lrl(H, x, y);
  ExtensionValue v;
  v.x = x;
  v.y = y;
  v.L = s.L;
  v.R = s.R;
  v.Lp = s.Lp;
  v.Rp = s.Rp;
  v.U = s.hx + 0.5 * (s.Rp - s.Lp);
  v.V = s.Rp + s.Lp;

  const double rho = s.R / s.L;
  const double rho_plus = s.Rp / s.L;
  const double rho_minus = s.Lp / s.R;
  if (!(rho_plus < rho) || !(rho * rho_minus < 1.0)) {
    std::ostringstream os;
    os << "average ratios out of range at (x,y)=(" << x << "," << y
       << "): rho=" << rho << " rho+=" << rho_plus << " rho*rho-="
       << rho * rho_minus;
    throw InvariantBreach(os.str());
  }

  v.a = 2.0 * (rho - 1.0) / (rho + 1.0);
  v.b = 2.0 * (rho + 1.0 - rho_plus - rho * rho_minus) / (rho + 1.0);
  v.c = (rho - 1.0 - rho_plus + rho * rho_minus) / (rho + 1.0);
  if (!(v.b > 0)) {
    std::ostringstream os;
    os << "b = " << v.b << " not positive at (x,y)=(" << x << "," << y << ")";
    throw InvariantBreach(os.str());
  }
  if (!(std::hypot(1.0 + v.b, v.a - v.c) > 1.0))
    throw InvariantBreach("denominator |1+ia+b-ic| not above 1");

  v.K = std::complex<double>(1.0, v.a) / std::complex<double>(v.b, -v.c);
  v.mu = (v.K - 1.0) / (v.K + 1.0);
  if (!(std::abs(v.mu) < 1.0)) {
    std::ostringstream os;
    os << "|mu| = " << std::abs(v.mu) << " at (x,y)=(" << x << "," << y
       << ") is not below 1";
    throw InvariantBreach(os.str());
  }
  return v;
}

BeltramiField beltrami_field(const IntegralBackend& H, int x_count,
                             std::span<const double> y_values) {
  require_grid(x_count, y_values, "beltrami_field");
  BeltramiField field;
  field.subject_id = H.subject_id();
  field.x.resize(x_count);
  for (int i = 0; i < x_count; ++i)
    field.x[i] = static_cast<double>(i) / static_cast<double>(x_count);
  field.y.assign(y_values.begin(), y_values.end());
  field.mu.resize(y_values.size());
  for (std::size_t iy = 0; iy < field.y.size(); ++iy) {
    field.mu[iy].resize(field.x.size());
    for (std::size_t ix = 0; ix < field.x.size(); ++ix)
      field.mu[iy][ix] = beltrami_point(H, field.x[ix], field.y[iy]).mu;
  }
  return field;
}

VanishingProfile decay_profile(const BeltramiField& field) {
  VanishingProfile p;
  p.kind = "mu_decay";
  p.n_max = 1;
  p.y = field.y;
  p.value.resize(field.y.size());
  for (std::size_t iy = 0; iy < field.y.size(); ++iy) {
    double sup = 0.0;
    for (const auto& mu : field.mu[iy]) sup = std::max(sup, std::abs(mu));
    p.value[iy] = sup;
  }
  return p;
}

ExtensionGaps cui_compare(const IntegralBackend& H0, const IntegralBackend& H1,
                          int x_count, std::span<const double> y_values) {
  require_grid(x_count, y_values, "cui_compare");
  const NormalizedBackend n0(H0), n1(H1);
  const RealHomeomorphism h0{n0.subject_id(),
                             [&n0](double x) { return n0.eval(x); }};
  const RealHomeomorphism h1{n1.subject_id(),
                             [&n1](double x) { return n1.eval(x); }};

  ExtensionGaps gaps;
  gaps.skew_gap.kind = "skew_gap";
  gaps.mu_gap.kind = "mu_gap";
  for (double y : y_values) {
    double skew = 0.0, mug = 0.0;
    for (int i = 0; i < x_count; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(x_count);
      for (double k : kSkewGrid)
        for (double sy : {y, -y})
          skew = std::max(skew, std::abs(rho_skew(h0, x, sy, k) -
                                         rho_skew(h1, x, sy, k)));
      // beltrami_point also enforces b > 0 and |1+ia+b-ic| > 1 per subject.
      mug = std::max(mug, std::abs(beltrami_point(n0, x, y).mu -
                                   beltrami_point(n1, x, y).mu));
    }
    gaps.skew_gap.y.push_back(y);
    gaps.skew_gap.value.push_back(skew);
    gaps.mu_gap.y.push_back(y);
    gaps.mu_gap.value.push_back(mug);
  }
  return gaps;
}

}  // namespace uacx
