#include "uacx/catalog.hpp"

#include <cmath>
#include <numbers>

namespace uacx {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> c;
  c.push_back({RealHomeomorphism::identity(), true, true, true});
  c.push_back({RealHomeomorphism::affine(2.0, 3.0), true, true, false});
  c.push_back({sine_bump(), true, true, true});
  c.push_back({{"sine_bump_4pi",
                [](double x) { return x + 0.05 * std::sin(2.0 * kTwoPi * x); }},
               true, true, true});
  // [0,1]-only subjects; their periodic extensions have derivative jumps at
  // the integers, so they are quasisymmetric but not symmetric.
  c.push_back({{"poly_bump", [](double x) { return x + 0.15 * x * (1.0 - x); }},
               false, false, true});
  c.push_back({{"mobius", [](double x) { return x / (2.0 - x); }},
               false, false, true});
  c.push_back({{"square", [](double x) { return x * x; }}, false, false, true});
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& test_catalog() {
  static const std::vector<CatalogEntry> catalog = make_catalog();
  return catalog;
}

RealHomeomorphism sine_bump() {
  return {"sine_bump",
          [](double x) { return x + 0.1 * std::sin(kTwoPi * x); }};
}

}  // namespace uacx
