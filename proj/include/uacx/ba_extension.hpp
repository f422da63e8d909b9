#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "uacx/conjugacy.hpp"
#include "uacx/distortion.hpp"

namespace uacx {

// Boundary subject of an extension: evaluation plus exact-enough integration
// of H over intervals. Read-only after construction.
class IntegralBackend {
 public:
  virtual ~IntegralBackend() = default;
  virtual double eval(double x) const = 0;
  virtual double integrate(double a, double b) const = 0;  // int_a^b H
  // Smallest y the subject can resolve; requests below it are refused.
  virtual double floor_y() const { return 0.0; }
  virtual const std::string& subject_id() const = 0;
};

// Exact integration of a piecewise-linear conjugacy grid: per-cell
// trapezoids accumulated into a prefix antiderivative table, periodic
// extension handled in closed form.
class PiecewiseLinearBackend final : public IntegralBackend {
 public:
  explicit PiecewiseLinearBackend(ConjugacyMap subject);
  double eval(double x) const override { return subject_(x); }
  double integrate(double a, double b) const override;
  double floor_y() const override { return floor_; }
  const std::string& subject_id() const override { return id_; }
  const ConjugacyMap& subject() const { return subject_; }

 private:
  double antiderivative(double t) const;  // int_0^t H

  ConjugacyMap subject_;
  std::vector<double> prefix_;  // int_0^{i/N} H on the deepest level
  double unit_integral_ = 0.0;  // int_0^1 H
  double floor_ = 0.0;
  std::string id_;
};

// Adaptive Simpson integration of a closed-form callable.
class QuadratureBackend final : public IntegralBackend {
 public:
  QuadratureBackend(RealHomeomorphism subject, double tol);
  double eval(double x) const override { return subject_(x); }
  double integrate(double a, double b) const override;
  const std::string& subject_id() const override { return id_; }
  double tol() const { return tol_; }

 private:
  RealHomeomorphism subject_;
  double tol_;
  std::string id_;
};

// Post-composition with the affine map sending (H(0), H(1)) to (0, 1).
// Leaves distortion ratios and Beltrami coefficients unchanged.
class NormalizedBackend final : public IntegralBackend {
 public:
  explicit NormalizedBackend(const IntegralBackend& base);
  double eval(double x) const override {
    return (base_.eval(x) - offset_) / scale_;
  }
  double integrate(double a, double b) const override {
    return (base_.integrate(a, b) - offset_ * (b - a)) / scale_;
  }
  double floor_y() const override { return base_.floor_y(); }
  const std::string& subject_id() const override { return id_; }

 private:
  const IntegralBackend& base_;
  double offset_, scale_;
  std::string id_;
};

// One-sided increments and moving averages at (x, y):
//   L  = H(x) - H(x-y)            R  = H(x+y) - H(x)
//   Lp = H(x) - avg_{[x-y,x]} H   Rp = avg_{[x,x+y]} H - H(x)
// All four are positive for strictly increasing H.
struct SideAverages {
  double hx, L, R, Lp, Rp;
};
SideAverages lrl(const IntegralBackend& H, double x, double y);

// Extension value U + iV, built from the same interval averages:
// U = avg over [x-y,x+y] of H, V = Rp + Lp. The identity extends to the
// identity and the construction is affinely natural.
struct PlanePoint {
  double u, v;
};
PlanePoint extend_point(const IntegralBackend& H, double x, double y);

struct ExtensionValue {
  double x, y;
  double U, V;
  double L, R, Lp, Rp;
  double a, b, c;
  std::complex<double> K;
  std::complex<double> mu;
};

// Beltrami coefficient from the exact first partials:
//   rho = R/L, rho_plus = Rp/L, rho_minus = Lp/R
//   a = 2(rho-1)/(rho+1)
//   b = 2(rho + 1 - rho_plus - rho*rho_minus)/(rho+1)
//   c = (rho - 1 - rho_plus + rho*rho_minus)/(rho+1)
//   K = (1+ia)/(b-ic), mu = (K-1)/(K+1)
// Guarantees checked at every point: b > 0, |1 + ia + b - ic| > 1, |mu| < 1.
ExtensionValue beltrami_point(const IntegralBackend& H, double x, double y);

struct BeltramiField {
  std::vector<double> x;  // uniform in [0,1)
  std::vector<double> y;  // decreasing positive
  std::vector<std::vector<std::complex<double>>> mu;  // [iy][ix]
  std::string subject_id;
};

BeltramiField beltrami_field(const IntegralBackend& H, int x_count,
                             std::span<const double> y_values);

// Per y: sup over x of |mu|.
VanishingProfile decay_profile(const BeltramiField& field);

// Paired gap profiles between two subjects (both affinely normalized to fix
// 0 and 1 first): per y, sup over the grid, k in {0.25,0.5,0.75,1} and both
// signs of |rho_0(x,+-y,k) - rho_1(x,+-y,k)|, and sup over x of |mu_0 - mu_1|.
struct ExtensionGaps {
  VanishingProfile skew_gap;
  VanishingProfile mu_gap;
};
ExtensionGaps cui_compare(const IntegralBackend& H0, const IntegralBackend& H1,
                          int x_count, std::span<const double> y_values);

}  // namespace uacx
