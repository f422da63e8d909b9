#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "uacx/ba_extension.hpp"
#include "uacx/circle_maps.hpp"
#include "uacx/distortion.hpp"

namespace uacx {

// 17 significant digits: enough to round-trip IEEE doubles exactly, so
// persisted grids and regression baselines are stable.
std::string format_full(double v);

std::string fnv1a_hex(std::string_view data);

// Map specification document: `key = value` lines, '#' comments.
// Keys: kind (power|blaschke|perturbed), degree, alphas, betas,
// perturbation_samples. Complex lists are `re,im;re,im`.
CircleEndomorphism parse_map_spec(const std::string& text);

struct MapSpecFile {
  CircleEndomorphism endo;
  std::string text;
  std::string hash;
};
MapSpecFile load_map_spec(const std::filesystem::path& path);

// CSV emitters shared by the CLI and the test suites. Both render numbers
// with format_full, so equal inputs give byte-identical files.
std::string profile_csv(const VanishingProfile& profile);
std::string field_csv(const BeltramiField& field);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

}  // namespace uacx
