#include "uacx/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "uacx/errors.hpp"

namespace uacx {
namespace {

constexpr double kSkewGrid[] = {0.25, 0.5, 0.75, 1.0};

void require_decreasing_positive(std::span<const double> y,
                                 const char* where) {
  if (y.empty()) throw std::invalid_argument(std::string(where) + ": empty y list");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0))
      throw std::invalid_argument(std::string(where) + ": y values must be positive");
    if (i && !(y[i] < y[i - 1]))
      throw std::invalid_argument(std::string(where) + ": y values must be strictly decreasing");
  }
}

}  // namespace

RealHomeomorphism RealHomeomorphism::identity() {
  return {"identity", [](double x) { return x; }};
}

RealHomeomorphism RealHomeomorphism::affine(double slope, double offset) {
  if (!(slope > 0)) throw std::invalid_argument("affine: slope must be > 0");
  std::ostringstream os;
  os << "affine:" << slope << "x+" << offset;
  return {os.str(), [slope, offset](double x) { return slope * x + offset; }};
}

RealHomeomorphism RealHomeomorphism::compose(const RealHomeomorphism& outer,
                                             const RealHomeomorphism& inner) {
  return {"(" + outer.name() + " . " + inner.name() + ")",
          [outer, inner](double x) { return outer(inner(x)); }};
}

double rho(const RealHomeomorphism& h, double x, double y) {
  if (!(y > 0)) throw std::invalid_argument("rho: y must be positive");
  const double hx = h(x);
  const double num = h(x + y) - hx;
  const double den = hx - h(x - y);
  if (den <= 0) {
    std::ostringstream os;
    os << "rho: denominator " << den << " at (x,y)=(" << x << "," << y << ")";
    throw DegenerateDenominator(os.str());
  }
  return num / den;
}

double rho_skew(const RealHomeomorphism& h, double x, double y, double k) {
  if (y == 0) throw std::invalid_argument("rho_skew: y must be nonzero");
  if (!(k > 0 && k <= 1))
    throw std::invalid_argument("rho_skew: k must lie in (0,1]");
  const double hx = h(x);
  const double num = h(x + k * y) - hx;
  const double den = hx - h(x - y);
  if (den == 0 || (y > 0) != (den > 0)) {
    std::ostringstream os;
    os << "rho_skew: denominator " << den << " at (x,y)=(" << x << "," << y
       << ")";
    throw DegenerateDenominator(os.str());
  }
  return num / den;
}

double zeta(double M, double tail_tol) {
  if (!(M >= 1)) throw std::invalid_argument("zeta: M must be >= 1");
  if (!(tail_tol > 0)) throw std::invalid_argument("zeta: tail_tol must be > 0");
  const double q_hi = M / (M + 1.0);
  const double q_lo = 1.0 / (M + 1.0);
  double p_hi = 1.0, p_lo = 1.0, p_half = 1.0;
  double sum = 0.0;
  double tail = M;  // remainder bound of both geometric series past k terms
  for (long k = 1; k <= 2000000; ++k) {
    p_hi *= q_hi;
    p_lo *= q_lo;
    p_half *= 0.5;
    sum += std::max(p_hi - p_half, p_half - p_lo);
    tail = M * p_hi - p_lo / M;
    if (tail <= tail_tol) return sum + tail;
  }
  return sum + tail;
}

double vartheta(double M, double tail_tol) {
  return M - 1.0 + M * zeta(M, tail_tol);
}

double estimate_M(const RealHomeomorphism& h, std::span<const double> xs,
                  std::span<const double> ys) {
  if (xs.empty() || ys.empty())
    throw std::invalid_argument("estimate_M: sample lists must be nonempty");
  double worst = 1.0;
  for (double x : xs)
    for (double y : ys) {
      const double r = rho(h, x, y);
      worst = std::max(worst, std::max(r, 1.0 / r));
    }
  return worst;
}

double estimate_M_on(const RealHomeomorphism& h, double a, double b,
                     int offsets, int scales) {
  if (!(b > a)) throw std::invalid_argument("estimate_M_on: need b > a");
  if (offsets < 1 || scales < 1)
    throw std::invalid_argument("estimate_M_on: need positive grid counts");
  double worst = 1.0;
  for (int i = 1; i <= offsets; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / (offsets + 1);
    double t = std::min(x - a, b - x);
    for (int j = 0; j < scales; ++j, t *= 0.5) {
      if (!(t > 0)) break;
      const double r = rho(h, x, t);
      worst = std::max(worst, std::max(r, 1.0 / r));
    }
  }
  return worst;
}

VanishingProfile uaa_profile(const Lift& F, int n_max,
                             std::span<const double> y_values,
                             std::span<const double> x_samples,
                             double root_tol) {
  if (n_max < 1) throw std::invalid_argument("uaa_profile: n_max must be >= 1");
  require_decreasing_positive(y_values, "uaa_profile");
  if (x_samples.empty())
    throw std::invalid_argument("uaa_profile: empty x samples");

  VanishingProfile profile;
  profile.kind = "uaa";
  profile.n_max = n_max;
  for (double y : y_values) {
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      for (double x : x_samples) {
        const double lo = F.inverse_iterate(n, x - y, root_tol);
        const double mid = F.inverse_iterate(n, x, root_tol);
        const double hi = F.inverse_iterate(n, x + y, root_tol);
        const double den = mid - lo;
        if (den <= 0)
          throw DegenerateDenominator("uaa_profile: inverse iterates collapsed");
        worst = std::max(worst, std::abs((hi - mid) / den - 1.0));
      }
    }
    profile.y.push_back(y);
    profile.value.push_back(worst);
  }
  return profile;
}

VanishingProfile symmetric_profile(const RealHomeomorphism& h,
                                   std::span<const double> y_values,
                                   std::span<const double> x_samples) {
  require_decreasing_positive(y_values, "symmetric_profile");
  if (x_samples.empty())
    throw std::invalid_argument("symmetric_profile: empty x samples");

  VanishingProfile profile;
  profile.kind = "symmetric";
  profile.n_max = 1;
  for (double y : y_values) {
    double worst = 0.0;
    for (double x : x_samples)
      for (double k : kSkewGrid)
        for (double sy : {y, -y})
          worst = std::max(worst, std::abs(rho_skew(h, x, sy, k) - k));
    profile.y.push_back(y);
    profile.value.push_back(worst);
  }
  return profile;
}

}  // namespace uacx
