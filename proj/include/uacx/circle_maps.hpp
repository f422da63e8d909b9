#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace uacx {

enum class MapKind { Power, Blaschke, Perturbed };

// Degree-m orientation-preserving covering of the circle, normalized so the
// point 1 is fixed. Three representations share one lift machinery:
//   Power      z -> z^m
//   Blaschke   ratio of Blaschke products; alphas are the numerator zeros,
//              betas the denominator zeros, count(alphas) = count(betas) + m
//   Perturbed  lift m*x + p(x) with p given as samples on a uniform grid
struct CircleEndomorphism {
  int degree = 2;
  MapKind kind = MapKind::Power;
  std::vector<std::complex<double>> alphas;
  std::vector<std::complex<double>> betas;
  std::vector<double> perturbation;  // p at j/K, j = 0..K-1, p(0) = 0

  static CircleEndomorphism power(int degree);
  static CircleEndomorphism blaschke(int degree,
                                     std::vector<std::complex<double>> alphas,
                                     std::vector<std::complex<double>> betas);
  static CircleEndomorphism perturbed(int degree, std::vector<double> samples);

  // f(e^{2 pi i x}) for the Blaschke representation.
  std::complex<double> boundary_value(double x) const;

  std::string describe() const;
};

// Monotone lift F of a circle endomorphism: F(0) = 0, F(x+1) = F(x) + m,
// strictly increasing. F is cached on a uniform grid of [0,1] and evaluated
// by piecewise-linear interpolation, so evaluation and inversion see one and
// the same monotone model. Immutable after construction; safe to share.
class Lift {
 public:
  static Lift build(const CircleEndomorphism& endo,
                    std::size_t grid_points = 4096, double tol = 1e-12);

  int degree() const { return degree_; }
  std::size_t cells() const { return cache_.size() - 1; }
  double default_tol() const { return tol_; }
  const std::vector<double>& samples() const { return cache_; }
  const std::string& describe() const { return describe_; }

  // F(x) via reduction to [0,1) and interpolation of the cache.
  double operator()(double x) const;

  // Unique u with |F(u) - v| <= tol, by bracketing bisection refined by the
  // monotone cache. The bisection always runs the bracket down to adjacent
  // doubles; tol only gates the residual check.
  double inverse(double v, double tol) const;
  double inverse(double v) const { return inverse(v, tol_); }

  // (F^n)^{-1}(v): n successive inversions, each checked at tol/(m*n).
  double inverse_iterate(int n, double v, double tol) const;
  double inverse_iterate(int n, double v) const {
    return inverse_iterate(n, v, tol_);
  }

 private:
  Lift() = default;
  double unit_interp(double r) const;  // r in [0,1]

  int degree_ = 2;
  double tol_ = 1e-12;
  std::vector<double> cache_;  // F at j/N, j = 0..N
  std::string describe_;
};

}  // namespace uacx
