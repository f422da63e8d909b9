#pragma once

#include <vector>

#include "uacx/distortion.hpp"

namespace uacx {

// Named test subjects used across the suites.
//   full_line  defined and smooth on all of R (safe for extension grids)
//   symmetric  distortion ratio tends to 1 at small scales
//   fixes_01   H(0) = 0 and H(1) = 1, usable for [0,1]-normalized bounds
struct CatalogEntry {
  RealHomeomorphism h;
  bool full_line = false;
  bool symmetric = false;
  bool fixes_01 = false;
};

const std::vector<CatalogEntry>& test_catalog();

// The catalog's standard perturbed-identity subject x + 0.1 sin(2 pi x).
RealHomeomorphism sine_bump();

}  // namespace uacx
