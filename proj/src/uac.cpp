#include "uacx/uac.hpp"

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

void require_strip(const StripSpec& strip) {
  if (strip.x_count < 16)
    throw std::invalid_argument("strip: x_count must be >= 16");
  if (strip.y_levels.empty())
    throw std::invalid_argument("strip: empty y levels");
  if (!(strip.y_max > 0))
    throw std::invalid_argument("strip: y_max must be positive");
  for (std::size_t i = 0; i < strip.y_levels.size(); ++i) {
    const double y = strip.y_levels[i];
    if (!(y > 0 && y <= strip.y_max))
      throw std::invalid_argument("strip: y levels must lie in (0, y_max]");
    if (i && !(y < strip.y_levels[i - 1]))
      throw std::invalid_argument("strip: y levels must be strictly decreasing");
  }
}

void require_above_floor(const IntegralBackend& H, double scale, int n,
                         double y) {
  if (scale * y < H.floor_y()) {
    std::ostringstream os;
    os << "scale m^-" << n << " takes y = " << y << " to " << scale * y
       << ", below the resolution floor " << H.floor_y()
       << "; reduce n_max or deepen the conjugacy grid";
    throw FloorViolation(os.str());
  }
}

double power_scale(int degree, int n) {
  double s = 1.0;
  for (int i = 0; i < n; ++i) s /= static_cast<double>(degree);
  return s;
}

}  // namespace

UacReport scaling_deviation(const IntegralBackend& H, int degree, int n_max,
                            const StripSpec& strip) {
  if (degree < 2) throw std::invalid_argument("scaling_deviation: degree >= 2");
  if (n_max < 0) throw std::invalid_argument("scaling_deviation: n_max >= 0");
  require_strip(strip);

  UacReport report;
  report.degree = degree;
  report.n_max = n_max;
  report.x_count = strip.x_count;
  report.y_levels = strip.y_levels;
  report.subject_id = H.subject_id();

  const std::size_t ny = strip.y_levels.size();
  // Base-level coefficients, reused by every n.
  std::vector<std::vector<std::complex<double>>> base(ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    base[iy].resize(strip.x_count);
    for (int ix = 0; ix < strip.x_count; ++ix) {
      const double x =
          static_cast<double>(ix) / static_cast<double>(strip.x_count);
      base[iy][ix] = beltrami_point(H, x, strip.y_levels[iy]).mu;
    }
  }

  report.scaling.assign(n_max + 1, std::vector<double>(ny, 0.0));
  for (int n = 0; n <= n_max; ++n) {
    const double scale = power_scale(degree, n);
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const double y = strip.y_levels[iy];
      require_above_floor(H, scale, n, y);
      double sup = 0.0;
      for (int ix = 0; ix < strip.x_count; ++ix) {
        const double x =
            static_cast<double>(ix) / static_cast<double>(strip.x_count);
        const std::complex<double> scaled =
            (n == 0) ? base[iy][ix]
                     : beltrami_point(H, scale * x, scale * y).mu;
        sup = std::max(sup, std::abs(scaled - base[iy][ix]));
      }
      report.scaling[n][iy] = sup;
    }
  }

  report.eta_hat.assign(ny, 0.0);
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (int n = 0; n <= n_max; ++n)
      report.eta_hat[iy] = std::max(report.eta_hat[iy], report.scaling[n][iy]);
  return report;
}

std::vector<DilatationSample> composition_dilatation(
    const IntegralBackend& H, int degree, int n,
    std::span<const std::complex<double>> params) {
  if (degree < 2)
    throw std::invalid_argument("composition_dilatation: degree >= 2");
  if (n < 0) throw std::invalid_argument("composition_dilatation: n >= 0");
  const double scale = power_scale(degree, n);

  std::vector<DilatationSample> out;
  out.reserve(params.size());
  for (const auto& zeta : params) {
    const double x = zeta.real(), y = zeta.imag();
    if (!(y > 0))
      throw std::invalid_argument(
          "composition_dilatation: parameters need positive imaginary part");
    require_above_floor(H, scale, n, y);
    const std::complex<double> mu_v = beltrami_point(H, x, y).mu;
    const std::complex<double> mu_u =
        (n == 0) ? mu_v : beltrami_point(H, scale * x, scale * y).mu;
    const double num = std::abs(mu_u - mu_v);
    const double den = std::abs(1.0 - std::conj(mu_v) * mu_u);
    const double mu_comp = (num == 0.0) ? 0.0 : num / den;
    if (!(mu_comp < 1.0))
      throw InvariantBreach("composition dilatation has |mu| >= 1");
    const PlanePoint image = extend_point(H, x, y);
    out.push_back({{image.u, image.v}, (1.0 + mu_comp) / (1.0 - mu_comp)});
  }
  return out;
}

std::vector<std::pair<double, double>> annulus_view(
    std::span<const std::complex<double>> strip_points) {
  std::vector<std::pair<double, double>> out;
  out.reserve(strip_points.size());
  for (const auto& z : strip_points) {
    const double radius = std::exp(-kTwoPi * z.imag());
    double angle = std::fmod(kTwoPi * z.real(), kTwoPi);
    if (angle < 0) angle += kTwoPi;
    out.emplace_back(radius, angle);
  }
  return out;
}

UacReport certify_uac(const IntegralBackend& H, int degree, int n_max,
                      const StripSpec& strip,
                      std::span<const std::pair<double, double>> schedule) {
  UacReport report = scaling_deviation(H, degree, n_max, strip);

  const std::size_t ny = strip.y_levels.size();
  report.dilatation.assign(n_max + 1, std::vector<double>(ny, 1.0));
  for (std::size_t iy = 0; iy < ny; ++iy) {
    std::vector<std::complex<double>> params(strip.x_count);
    for (int ix = 0; ix < strip.x_count; ++ix)
      params[ix] = {static_cast<double>(ix) / strip.x_count,
                    strip.y_levels[iy]};
    for (int n = 0; n <= n_max; ++n) {
      double sup = 1.0;
      for (const auto& sample : composition_dilatation(H, degree, n, params)) {
        if (!(sample.K >= 1.0) || !std::isfinite(sample.K))
          throw InvariantBreach("dilatation below 1 or not finite");
        sup = std::max(sup, sample.K);
      }
      report.dilatation[n][iy] = sup;
    }
  }

  report.schedule.assign(schedule.begin(), schedule.end());
  bool pass = true;
  for (const auto& [y, bound] : schedule) {
    const auto it =
        std::find_if(strip.y_levels.begin(), strip.y_levels.end(),
                     [y](double level) { return std::abs(level - y) <= 1e-15; });
    if (it == strip.y_levels.end())
      throw std::invalid_argument("certify_uac: scheduled y is not a strip level");
    const std::size_t iy =
        static_cast<std::size_t>(it - strip.y_levels.begin());
    if (!(report.eta_hat[iy] <= bound)) pass = false;
    const double k_limit = (bound < 1.0)
                               ? (1.0 + bound) / (1.0 - bound)
                               : std::numeric_limits<double>::infinity();
    for (int n = 0; n <= n_max; ++n)
      if (!(report.dilatation[n][iy] <= k_limit)) pass = false;
  }
  report.pass = pass;
  return report;
}

}  // namespace uacx
