#include "uacx/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "uacx/errors.hpp"
#include "uacx/io.hpp"

namespace uacx {
namespace {

std::size_t grid_count(int degree, int level) {
  std::size_t n = 1;
  for (int i = 0; i < level; ++i) n *= static_cast<std::size_t>(degree);
  return n;
}

void check_level_monotone(const std::vector<double>& a, int level,
                          const char* what) {
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    if (!(a[j + 1] > a[j])) {
      std::ostringstream os;
      os << what << ": grid values out of order at level " << level
         << ", index " << j;
      throw MonotonicityViolation(os.str());
    }
  }
}

}  // namespace

ConjugacyMap ConjugacyMap::build(const Lift& F, int depth, double root_tol) {
  if (depth < 1) throw std::invalid_argument("build_conjugacy: depth must be >= 1");
  if (!(root_tol > 0))
    throw std::invalid_argument("build_conjugacy: root_tol must be > 0");

  ConjugacyMap h;
  h.degree_ = F.degree();
  h.depth_ = depth;
  h.root_tol_ = root_tol;
  h.id_ = F.describe() + "|depth=" + std::to_string(depth);

  auto levels = std::make_shared<std::vector<std::vector<double>>>();
  levels->resize(depth + 1);
  (*levels)[0] = {0.0, 1.0};
  for (int n = 1; n <= depth; ++n) {
    const std::size_t count = grid_count(h.degree_, n);
    auto& a = (*levels)[n];
    a.resize(count + 1);
    a.front() = 0.0;
    a.back() = 1.0;
    for (std::size_t j = 1; j < count; ++j)
      a[j] = F.inverse_iterate(n, static_cast<double>(j), root_tol);
    check_level_monotone(a, n, "build_conjugacy");
  }
  h.levels_ = std::move(levels);
  h.finalize();
  return h;
}

ConjugacyMap ConjugacyMap::identity(int degree, int depth) {
  if (degree < 2) throw std::invalid_argument("identity: degree must be >= 2");
  if (depth < 1) throw std::invalid_argument("identity: depth must be >= 1");
  ConjugacyMap h;
  h.degree_ = degree;
  h.depth_ = depth;
  h.id_ = "identity:m=" + std::to_string(degree) + "|depth=" + std::to_string(depth);
  auto levels = std::make_shared<std::vector<std::vector<double>>>();
  levels->resize(depth + 1);
  for (int n = 0; n <= depth; ++n) {
    const std::size_t count = grid_count(degree, n);
    auto& a = (*levels)[n];
    a.resize(count + 1);
    for (std::size_t j = 0; j <= count; ++j)
      a[j] = static_cast<double>(j) / static_cast<double>(count);
  }
  h.levels_ = std::move(levels);
  h.finalize();
  return h;
}

void ConjugacyMap::finalize() {
  const auto& levels = *levels_;
  for (int n = 0; n <= depth_; ++n)
    check_level_monotone(levels[n], n, "conjugacy");
  double dev = 0.0;
  for (int n = 0; n < depth_; ++n) {
    const auto& coarse = levels[n];
    const auto& fine = levels[n + 1];
    for (std::size_t j = 0; j < coarse.size(); ++j)
      dev = std::max(dev,
                     std::abs(fine[j * static_cast<std::size_t>(degree_)] -
                              coarse[j]));
  }
  consistency_ = dev;
}

std::span<const double> ConjugacyMap::level(int n) const {
  if (n < 0 || n > depth_)
    throw std::invalid_argument("level: index out of range");
  return (*levels_)[n];
}

double ConjugacyMap::operator()(double x) const {
  double k = std::floor(x);
  double r = x - k;
  if (r >= 1.0) {
    k += 1.0;
    r = 0.0;
  }
  const auto& a = (*levels_)[depth_];
  const std::size_t n = a.size() - 1;
  const double t = r * static_cast<double>(n);
  const std::size_t i =
      std::min(n - 1, static_cast<std::size_t>(std::max(0.0, t)));
  const double frac = t - static_cast<double>(i);
  return a[i] + frac * (a[i + 1] - a[i]) + k;
}

double ConjugacyMap::inverse(double v) const {
  double k = std::floor(v);
  double w = v - k;
  if (w >= 1.0) {
    k += 1.0;
    w = 0.0;
  }
  const auto& a = (*levels_)[depth_];
  const std::size_t n = a.size() - 1;
  const auto it = std::upper_bound(a.begin(), a.end(), w);
  std::size_t cell = static_cast<std::size_t>(it - a.begin());
  cell = std::min(n, std::max<std::size_t>(cell, 1)) - 1;
  const double x0 = static_cast<double>(cell) / static_cast<double>(n);
  const double width = 1.0 / static_cast<double>(n);
  return x0 + width * (w - a[cell]) / (a[cell + 1] - a[cell]) + k;
}

double ConjugacyMap::consistency_deviation() const { return consistency_; }

double ConjugacyMap::commutation_residual(const Lift& F) const {
  const double m = static_cast<double>(degree_);
  const std::size_t count = grid_count(degree_, depth_ - 1);
  double worst = 0.0;
  for (std::size_t j = 0; j <= count; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(count);
    worst = std::max(worst, std::abs(F((*this)(x)) - (*this)(m * x)));
  }
  return worst;
}

QsCertificate ConjugacyMap::qs_certificate() const {
  if (depth_ < 3)
    throw std::invalid_argument("qs_certificate: needs depth >= 3");
  QsCertificate cert;
  const auto& levels = *levels_;
  double m_hat = 1.0;
  for (int n = 1; n <= depth_; ++n) {
    const auto& a = levels[n];
    for (std::size_t j = 1; j + 1 < a.size(); ++j) {
      const double ratio = (a[j + 1] - a[j]) / (a[j] - a[j - 1]);
      m_hat = std::max(m_hat, std::max(ratio, 1.0 / ratio));
    }
  }
  cert.M_hat = m_hat;
  double bound = 1.0, pw = 1.0;
  for (int i = 1; i <= degree_; ++i) {
    pw *= m_hat;
    bound += pw;
  }
  cert.M_prime_bound = bound;

  // Multi-scale probe of the interpolated map, m-adic and off-m-adic scales
  // down to two cells above the grid resolution.
  std::vector<double> xs, ys;
  for (int i = 0; i < 64; ++i) xs.push_back(static_cast<double>(i) / 64.0);
  double scale = 1.0 / degree_;
  for (int j = 1; j <= depth_ - 2; ++j, scale /= degree_) {
    ys.push_back(scale);
    ys.push_back(0.75 * scale);
  }
  std::sort(ys.begin(), ys.end(), std::greater<>());
  cert.measured_M = estimate_M(as_homeomorphism(), xs, ys);
  cert.satisfied = cert.measured_M <= cert.M_prime_bound;
  return cert;
}

RealHomeomorphism ConjugacyMap::as_homeomorphism() const {
  ConjugacyMap copy = *this;  // shares the immutable grid
  return {id_, [copy](double x) { return copy(x); }};
}

void ConjugacyMap::save_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "level,j,a\n";
  const auto& levels = *levels_;
  for (int n = 0; n <= depth_; ++n)
    for (std::size_t j = 0; j < levels[n].size(); ++j)
      out << n << ',' << j << ',' << format_full(levels[n][j]) << '\n';
}

ConjugacyMap ConjugacyMap::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "level,j,a")
    throw std::runtime_error("conjugacy csv: bad header in " + path.string());

  std::vector<std::vector<double>> levels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    const int n = std::stoi(field);
    std::getline(row, field, ',');
    const std::size_t j = static_cast<std::size_t>(std::stoul(field));
    std::getline(row, field, ',');
    const double a = std::stod(field);
    if (n < 0) throw std::runtime_error("conjugacy csv: negative level");
    if (levels.size() <= static_cast<std::size_t>(n)) levels.resize(n + 1);
    if (levels[n].size() != j)
      throw std::runtime_error("conjugacy csv: non-contiguous indices");
    levels[n].push_back(a);
  }
  if (levels.size() < 2 || levels[0].size() != 2)
    throw std::runtime_error("conjugacy csv: missing levels");

  // Degree from the level-1 grid size; all deeper levels must match.
  const int degree = static_cast<int>(levels[1].size()) - 1;
  if (degree < 2) throw std::runtime_error("conjugacy csv: bad degree");
  for (std::size_t n = 0; n < levels.size(); ++n)
    if (levels[n].size() != grid_count(degree, static_cast<int>(n)) + 1)
      throw std::runtime_error("conjugacy csv: wrong grid size at level " +
                               std::to_string(n));

  ConjugacyMap h;
  h.degree_ = degree;
  h.depth_ = static_cast<int>(levels.size()) - 1;
  h.id_ = "loaded:" + path.stem().string();
  h.levels_ = std::make_shared<const std::vector<std::vector<double>>>(
      std::move(levels));
  h.finalize();
  if (h.consistency_ > 1e-8) {
    std::ostringstream os;
    os << "conjugacy csv: cross-level deviation " << h.consistency_
       << " exceeds 1e-8";
    throw MonotonicityViolation(os.str());
  }
  return h;
}

}  // namespace uacx
