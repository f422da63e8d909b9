#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "uacx/circle_maps.hpp"
#include "uacx/distortion.hpp"

namespace uacx {

struct QsCertificate {
  double M_hat = 1.0;           // worst adjacent-increment ratio on the grids
  double M_prime_bound = 1.0;   // 1 + M_hat + ... + M_hat^m
  double measured_M = 1.0;      // multi-scale estimate on the interpolated map
  bool satisfied = false;       // measured_M <= M_prime_bound
};

// Piecewise-linear homeomorphism H with H(j/m^n) = a_{j,n}, H(x+1) = H(x)+1,
// solving H(m x) = F(H(x)) on the m-adic grids. Every level 0..depth is
// retained; values are immutable and shared between copies.
class ConjugacyMap {
 public:
  // a_{j,n} = (F^n)^{-1}(j) for each level n <= depth, endpoints pinned to
  // 0 and 1. Levels are solved independently, so cross-level consistency is
  // a genuine certificate rather than true by construction.
  static ConjugacyMap build(const Lift& F, int depth, double root_tol);

  // Exact m-adic grid a_{j,n} = j/m^n.
  static ConjugacyMap identity(int degree, int depth);

  static ConjugacyMap load_csv(const std::filesystem::path& path);
  void save_csv(const std::filesystem::path& path) const;

  int degree() const { return degree_; }
  int depth() const { return depth_; }
  double root_tol() const { return root_tol_; }
  const std::string& id() const { return id_; }
  std::span<const double> level(int n) const;

  // H(x): reduce mod 1, interpolate the deepest level, restore the integer
  // part. H(k) = k for integers k.
  double operator()(double x) const;

  // Exact inverse of the piecewise-linear interpolant.
  double inverse(double v) const;

  // max over adjacent levels of |a_{j*m, n+1} - a_{j,n}|.
  double consistency_deviation() const;

  // max over level depth-1 grid points x of |F(H(x)) - H(m x)|.
  double commutation_residual(const Lift& F) const;

  QsCertificate qs_certificate() const;

  RealHomeomorphism as_homeomorphism() const;

 private:
  ConjugacyMap() = default;
  void finalize();  // validates monotonicity, computes consistency

  int degree_ = 2;
  int depth_ = 1;
  double root_tol_ = 0.0;
  double consistency_ = 0.0;
  std::string id_;
  std::shared_ptr<const std::vector<std::vector<double>>> levels_;
};

}  // namespace uacx
