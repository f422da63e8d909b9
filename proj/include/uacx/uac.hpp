#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uacx/ba_extension.hpp"

namespace uacx {

// Fundamental strip grid: x offsets in [0,1), heights y_levels in (0, y_max].
struct StripSpec {
  double y_max = 0.5;
  std::vector<double> y_levels;  // strictly decreasing
  int x_count = 64;
};

// Certificate data for asymptotic conformality of the conjugating extension.
// scaling[n][iy] = sup_x |mu(m^-n (x+iy)) - mu(x+iy)|; eta_hat is its max
// over n; dilatation[n][iy] = sup over the sample grid of the pointwise
// dilatation of the n-th inverse iterate of the conjugated map.
struct UacReport {
  int degree = 2;
  int n_max = 0;
  int x_count = 0;
  std::vector<double> y_levels;
  std::vector<std::vector<double>> scaling;     // [n][iy], n = 0..n_max
  std::vector<double> eta_hat;                  // [iy]
  std::vector<std::vector<double>> dilatation;  // [n][iy]
  std::vector<std::pair<double, double>> schedule;  // (y, bound) pairs
  bool pass = false;
  std::string subject_id;
};

// Scaling part only: deviations and eta_hat; dilatation left empty,
// pass left false.
UacReport scaling_deviation(const IntegralBackend& H, int degree, int n_max,
                            const StripSpec& strip);

// Dilatation of the n-th inverse iterate at the image of each parameter
// point: mu_comp = (mu(z/m^n) - mu(z)) / (1 - conj(mu(z)) mu(z/m^n)),
// K = (1+|mu_comp|)/(1-|mu_comp|), reported at the extension image of z so
// the extension is never inverted.
struct DilatationSample {
  std::complex<double> image;
  double K = 1.0;
};
std::vector<DilatationSample> composition_dilatation(
    const IntegralBackend& H, int degree, int n,
    std::span<const std::complex<double>> params);

// Strip -> annulus coordinates: x + iy -> (e^{-2 pi y}, 2 pi x mod 2 pi).
std::vector<std::pair<double, double>> annulus_view(
    std::span<const std::complex<double>> strip_points);

// Full report: scaling + dilatation sups, verdict against the schedule.
// pass iff for every scheduled (y, bound): eta_hat(y) <= bound and every
// dilatation sup at that y is <= (1+bound)/(1-bound).
UacReport certify_uac(const IntegralBackend& H, int degree, int n_max,
                      const StripSpec& strip,
                      std::span<const std::pair<double, double>> schedule);

}  // namespace uacx
