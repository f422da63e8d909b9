#include "uacx/circle_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "uacx/errors.hpp"

namespace uacx {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFixedPointTol = 1e-9;  // |F(0)| beyond this is rejected

std::string complex_list(const std::vector<std::complex<double>>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ';';
    os << v[i].real() << ',' << v[i].imag();
  }
  return os.str();
}

}  // namespace

CircleEndomorphism CircleEndomorphism::power(int degree) {
  if (degree < 2) throw std::invalid_argument("degree must be >= 2");
  CircleEndomorphism e;
  e.degree = degree;
  e.kind = MapKind::Power;
  return e;
}

CircleEndomorphism CircleEndomorphism::blaschke(
    int degree, std::vector<std::complex<double>> alphas,
    std::vector<std::complex<double>> betas) {
  if (degree < 2) throw std::invalid_argument("degree must be >= 2");
  if (alphas.size() != betas.size() + static_cast<std::size_t>(degree))
    throw std::invalid_argument(
        "blaschke: count(alphas) must equal count(betas) + degree");
  for (const auto& a : alphas)
    if (std::abs(a) >= 1.0)
      throw std::invalid_argument("blaschke: |alpha| must be < 1");
  for (const auto& b : betas)
    if (std::abs(b) >= 1.0)
      throw std::invalid_argument("blaschke: |beta| must be < 1");
  CircleEndomorphism e;
  e.degree = degree;
  e.kind = MapKind::Blaschke;
  e.alphas = std::move(alphas);
  e.betas = std::move(betas);
  return e;
}

CircleEndomorphism CircleEndomorphism::perturbed(int degree,
                                                 std::vector<double> samples) {
  if (degree < 2) throw std::invalid_argument("degree must be >= 2");
  if (samples.empty())
    throw std::invalid_argument("perturbed: samples must be nonempty");
  if (std::abs(samples.front()) > kFixedPointTol)
    throw std::invalid_argument("perturbed: perturbation(0) must be 0");
  CircleEndomorphism e;
  e.degree = degree;
  e.kind = MapKind::Perturbed;
  e.perturbation = std::move(samples);
  e.perturbation.front() = 0.0;
  return e;
}

std::complex<double> CircleEndomorphism::boundary_value(double x) const {
  const std::complex<double> z = std::polar(1.0, kTwoPi * x);
  std::complex<double> value{1.0, 0.0};
  for (const auto& a : alphas) value *= (z - a) / (1.0 - std::conj(a) * z);
  for (const auto& b : betas) value /= (z - b) / (1.0 - std::conj(b) * z);
  return value;
}

std::string CircleEndomorphism::describe() const {
  std::ostringstream os;
  switch (kind) {
    case MapKind::Power:
      os << "power:m=" << degree;
      break;
    case MapKind::Blaschke:
      os << "blaschke:m=" << degree << ":alphas=" << complex_list(alphas)
         << ":betas=" << complex_list(betas);
      break;
    case MapKind::Perturbed:
      os << "perturbed:m=" << degree << ":samples=" << perturbation.size();
      break;
  }
  return os.str();
}

Lift Lift::build(const CircleEndomorphism& endo, std::size_t grid_points,
                 double tol) {
  if (grid_points < 1024)
    throw std::invalid_argument("build_lift: grid_points must be >= 1024");
  if (!(tol > 0)) throw std::invalid_argument("build_lift: tol must be > 0");

  std::size_t n = grid_points;
  if (endo.kind == MapKind::Perturbed) {
    // Align the cache with the perturbation samples so the piecewise-linear
    // completion of the samples is reproduced exactly.
    const std::size_t k = endo.perturbation.size();
    n = k * ((grid_points + k - 1) / k);
  }

  Lift lift;
  lift.degree_ = endo.degree;
  lift.tol_ = tol;
  lift.describe_ = endo.describe();
  lift.cache_.resize(n + 1);

  const double m = static_cast<double>(endo.degree);
  switch (endo.kind) {
    case MapKind::Power:
      for (std::size_t j = 0; j <= n; ++j)
        lift.cache_[j] = m * (static_cast<double>(j) / static_cast<double>(n));
      break;
    case MapKind::Perturbed: {
      const auto& p = endo.perturbation;
      const std::size_t k = p.size();
      for (std::size_t j = 0; j <= n; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(n);
        const double t = x * static_cast<double>(k);
        const std::size_t i = std::min(k - 1, static_cast<std::size_t>(t));
        const double next = (i + 1 == k) ? p[0] : p[i + 1];  // periodic
        const double frac = t - static_cast<double>(i);
        lift.cache_[j] = m * x + p[i] + frac * (next - p[i]);
      }
      break;
    }
    case MapKind::Blaschke: {
      // Continuous argument of f(e^{2 pi i x}) along x in [0,1], unwrapped
      // with a jump threshold of pi.
      double prev = std::arg(endo.boundary_value(0.0));
      if (std::abs(prev) > kTwoPi * kFixedPointTol)
        throw std::invalid_argument(
            "blaschke: map does not fix the point 1 (|F(0)| > 1e-9)");
      double cumulative = 0.0;
      lift.cache_[0] = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(n);
        const double aj = std::arg(endo.boundary_value(x));
        double d = aj - prev;
        d -= kTwoPi * std::round(d / kTwoPi);
        cumulative += d;
        lift.cache_[j] = cumulative / kTwoPi;
        prev = aj;
      }
      if (std::abs(lift.cache_[n] - m) > 1e-6) {
        std::ostringstream os;
        os << "blaschke: argument tracking closed at " << lift.cache_[n]
           << " instead of " << m << " (insufficient grid or invalid map)";
        throw WindingMismatch(os.str());
      }
      break;
    }
  }

  // Pin the endpoints so F(0) = 0 and F(1) = m hold identically.
  lift.cache_.front() = 0.0;
  lift.cache_.back() = m;

  for (std::size_t j = 0; j < n; ++j) {
    if (!(lift.cache_[j + 1] > lift.cache_[j])) {
      std::ostringstream os;
      os << "sampled lift not strictly increasing near x = "
         << static_cast<double>(j) / static_cast<double>(n);
      throw NonMonotone(os.str());
    }
  }
  return lift;
}

double Lift::unit_interp(double r) const {
  const std::size_t n = cells();
  const double t = r * static_cast<double>(n);
  const std::size_t i =
      std::min(n - 1, static_cast<std::size_t>(std::max(0.0, t)));
  const double frac = t - static_cast<double>(i);
  return cache_[i] + frac * (cache_[i + 1] - cache_[i]);
}

double Lift::operator()(double x) const {
  double k = std::floor(x);
  double r = x - k;
  if (r >= 1.0) {  // only reachable through rounding at huge |x|
    k += 1.0;
    r = 0.0;
  }
  return unit_interp(r) + k * static_cast<double>(degree_);
}

double Lift::inverse(double v, double tol) const {
  if (!(tol > 0)) throw std::invalid_argument("inverse: tol must be > 0");
  const double m = static_cast<double>(degree_);
  double kf = std::floor(v / m);
  double w = v - kf * m;
  if (w < 0.0) {
    kf -= 1.0;
    w = v - kf * m;
  } else if (w > m) {
    kf += 1.0;
    w = v - kf * m;
  }

  double u;
  if (w <= 0.0) {
    u = kf;
  } else if (w >= m) {
    u = kf + 1.0;
  } else {
    // Binary search of the monotone cache brackets one cell; the interpolant
    // is affine there, so the in-cell inverse is closed form (and exact for
    // affine caches).
    const std::size_t n = cells();
    const auto it = std::upper_bound(cache_.begin(), cache_.end(), w);
    std::size_t cell = static_cast<std::size_t>(it - cache_.begin());
    cell = std::min(n, std::max<std::size_t>(cell, 1)) - 1;
    const double s =
        std::clamp((w - cache_[cell]) / (cache_[cell + 1] - cache_[cell]),
                   0.0, 1.0);
    u = kf + static_cast<double>(cell) / static_cast<double>(n) +
        s / static_cast<double>(n);
  }

  const double residual = std::abs((*this)(u) - v);
  // Absolute tolerances below the representable resolution at |v| are
  // unattainable; allow that much slack before declaring failure.
  const double slack =
      32.0 * std::numeric_limits<double>::epsilon() * (std::abs(v) + m);
  if (residual > tol + slack) {
    std::ostringstream os;
    os << "inverse stalled at residual " << residual << " for target " << v;
    throw NoConvergence(os.str());
  }
  return u;
}

double Lift::inverse_iterate(int n, double v, double tol) const {
  if (n < 1) throw std::invalid_argument("inverse_iterate: n must be >= 1");
  if (!(tol > 0))
    throw std::invalid_argument("inverse_iterate: tol must be > 0");
  const double step_tol = tol / (static_cast<double>(degree_) * n);
  double u = v;
  for (int i = 0; i < n; ++i) u = inverse(u, step_tol);
  return u;
}

}  // namespace uacx
