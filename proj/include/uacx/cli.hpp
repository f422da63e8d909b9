#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "uacx/uac.hpp"

namespace uacx::cli {

// One pipeline invocation. All grids are deterministic, so identical
// configs produce byte-identical data artifacts (the manifest records wall
// time and is the one file that differs between reruns).
struct RunConfig {
  std::filesystem::path map_spec_path;  // unused by `zeta`
  std::string command;  // zeta | distortion | conjugate | ba-field |
                        // cui-compare | uac-check
  int depth = 10;
  int n_max = 4;
  int x_count = 64;
  std::vector<double> y_levels = {0.5,     0.25,     0.125,     0.0625,
                                  0.03125, 0.015625, 0.0078125, 0.00390625};
  double root_tol = 1e-12;
  double quad_tol = 1e-12;
  double tail_tol = 1e-12;
  std::size_t grid_points = 4096;
  std::filesystem::path output_dir;
};

// Dispatches the command and writes its artifacts plus manifest.json under
// output_dir. Returns 0 on success; on a module failure writes error.json
// naming the error code and returns 1.
int run(const RunConfig& config);

}  // namespace uacx::cli
