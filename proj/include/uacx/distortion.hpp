#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "uacx/circle_maps.hpp"

namespace uacx {

// Strictly increasing real function, type-erased. Wraps closed-form catalog
// callables, conjugacy grids, or compositions of either.
class RealHomeomorphism {
 public:
  RealHomeomorphism() = default;
  RealHomeomorphism(std::string name, std::function<double(double)> eval)
      : name_(std::move(name)), eval_(std::move(eval)) {}

  double operator()(double x) const { return eval_(x); }
  const std::string& name() const { return name_; }
  explicit operator bool() const { return static_cast<bool>(eval_); }

  static RealHomeomorphism identity();
  static RealHomeomorphism affine(double slope, double offset);
  static RealHomeomorphism compose(const RealHomeomorphism& outer,
                                   const RealHomeomorphism& inner);

 private:
  std::string name_;
  std::function<double(double)> eval_;
};

// Sampled stand-in for a vanishing function: sup-deviations per scale y,
// y strictly decreasing along the list.
struct VanishingProfile {
  std::vector<double> y;
  std::vector<double> value;
  int n_max = 1;
  std::string kind;
};

// Distortion ratio (H(x+y) - H(x)) / (H(x) - H(x-y)), y > 0.
double rho(const RealHomeomorphism& h, double x, double y);

// Skew variant (H(x+ky) - H(x)) / (H(x) - H(x-y)); y may be negative,
// 0 < k <= 1. rho_skew(h, x, y, 1) == rho(h, x, y) for y > 0.
double rho_skew(const RealHomeomorphism& h, double x, double y, double k);

// Dyadic deviation bound zeta(M): sum of tau_k = max{(M/(M+1))^k - 2^-k,
// 2^-k - (1/(M+1))^k}, accumulated until the geometric remainder of both
// series drops below tail_tol; the remainder is added, so the result is an
// upper estimate. zeta(1) = 0 exactly.
double zeta(double M, double tail_tol = 1e-12);

// vartheta(M) = M - 1 + M * zeta(M): bound on |rho_skew - k| for maps that
// are M-quasisymmetric on the probed interval.
double vartheta(double M, double tail_tol = 1e-12);

// Empirical quasisymmetry bound: max over the sample grid of max(rho, 1/rho).
// A lower bound for the true constant.
double estimate_M(const RealHomeomorphism& h, std::span<const double> xs,
                  std::span<const double> ys);

// estimate_M over a deterministic sub-grid of [a,b]: `offsets` interior
// centers, `scales` halving scales per center, triples kept inside [a,b].
double estimate_M_on(const RealHomeomorphism& h, double a, double b,
                     int offsets, int scales);

// Per y: max over n <= n_max and x in x_samples of |rho_{F^-n}(x,y) - 1|,
// with F^-n realized by inverse iteration at root tolerance root_tol.
VanishingProfile uaa_profile(const Lift& F, int n_max,
                             std::span<const double> y_values,
                             std::span<const double> x_samples,
                             double root_tol = 1e-10);

// Per y: max over x, both signs of y and k in {0.25, 0.5, 0.75, 1} of
// |rho_skew(h, x, +-y, k) - k|.
VanishingProfile symmetric_profile(const RealHomeomorphism& h,
                                   std::span<const double> y_values,
                                   std::span<const double> x_samples);

}  // namespace uacx
