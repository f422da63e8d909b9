#include "uacx/cli.hpp"

#include <chrono>
#include <iostream>

#include "json.hpp"
#include "uacx/ba_extension.hpp"
#include "uacx/conjugacy.hpp"
#include "uacx/errors.hpp"
#include "uacx/io.hpp"

namespace uacx::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void write_json(const fs::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::vector<double> uniform_x(int count) {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i)
    xs[i] = static_cast<double>(i) / static_cast<double>(count);
  return xs;
}

json report_to_json(const UacReport& report) {
  json j;
  j["kind"] = "uac_report";
  j["degree"] = report.degree;
  j["n_max"] = report.n_max;
  j["x_count"] = report.x_count;
  j["y_levels"] = report.y_levels;
  j["scaling"] = report.scaling;
  j["eta_hat"] = report.eta_hat;
  j["dilatation"] = report.dilatation;
  json schedule = json::array();
  for (const auto& [y, bound] : report.schedule)
    schedule.push_back({y, bound});
  j["schedule"] = schedule;
  j["pass"] = report.pass;
  j["subject_id"] = report.subject_id;
  return j;
}

struct Pipeline {
  const RunConfig& cfg;
  MapSpecFile map;
  json manifest;

  Lift lift() const {
    return Lift::build(map.endo, cfg.grid_points, cfg.root_tol);
  }

  ConjugacyMap conjugacy(const Lift& F) const {
    return ConjugacyMap::build(F, cfg.depth, cfg.root_tol);
  }
};

void run_zeta(Pipeline& p) {
  std::string text = "M,zeta,vartheta\n";
  for (int i = 0; i <= 20; ++i) {
    const double M = 1.0 + 0.1 * i;
    text += format_full(M) + "," + format_full(zeta(M, p.cfg.tail_tol)) + "," +
            format_full(vartheta(M, p.cfg.tail_tol)) + "\n";
  }
  write_text_file(p.cfg.output_dir / "zeta_table.csv", text);
  p.manifest["artifacts"] = {"zeta_table.csv"};
}

void run_distortion(Pipeline& p) {
  const Lift F = p.lift();
  const auto xs = uniform_x(p.cfg.x_count);
  const auto uaa =
      uaa_profile(F, p.cfg.n_max, p.cfg.y_levels, xs, p.cfg.root_tol);
  write_text_file(p.cfg.output_dir / "uaa_profile.csv", profile_csv(uaa));

  const ConjugacyMap H = p.conjugacy(F);
  const auto sym = symmetric_profile(H.as_homeomorphism(), p.cfg.y_levels, xs);
  write_text_file(p.cfg.output_dir / "symmetric_profile.csv", profile_csv(sym));
  p.manifest["artifacts"] = {"uaa_profile.csv", "symmetric_profile.csv"};
}

void run_conjugate(Pipeline& p) {
  const Lift F = p.lift();
  const ConjugacyMap H = p.conjugacy(F);
  H.save_csv(p.cfg.output_dir / "conjugacy.csv");

  const QsCertificate cert = H.qs_certificate();
  json j;
  j["M_hat"] = cert.M_hat;
  j["M_prime_bound"] = cert.M_prime_bound;
  j["measured_M"] = cert.measured_M;
  j["satisfied"] = cert.satisfied;
  j["commutation_residual"] = H.commutation_residual(F);
  j["consistency_deviation"] = H.consistency_deviation();
  j["depth"] = H.depth();
  j["degree"] = H.degree();
  j["root_tol"] = p.cfg.root_tol;
  write_json(p.cfg.output_dir / "certificate.json", j);
  p.manifest["artifacts"] = {"conjugacy.csv", "certificate.json"};
}

void run_ba_field(Pipeline& p) {
  const Lift F = p.lift();
  const PiecewiseLinearBackend backend(p.conjugacy(F));
  const BeltramiField field =
      beltrami_field(backend, p.cfg.x_count, p.cfg.y_levels);
  write_text_file(p.cfg.output_dir / "beltrami_field.csv", field_csv(field));
  write_text_file(p.cfg.output_dir / "decay_profile.csv",
                  profile_csv(decay_profile(field)));

  json meta;
  meta["subject_id"] = backend.subject_id();
  meta["backend"] = "closed_form_piecewise_linear";
  meta["resolution_floor"] = backend.floor_y();
  meta["root_tol"] = p.cfg.root_tol;
  meta["x_count"] = p.cfg.x_count;
  meta["y_levels"] = p.cfg.y_levels;
  meta["map_hash"] = p.map.hash;
  write_json(p.cfg.output_dir / "field_meta.json", meta);
  p.manifest["artifacts"] = {"beltrami_field.csv", "decay_profile.csv",
                             "field_meta.json"};
}

void run_cui_compare(Pipeline& p) {
  const Lift F = p.lift();
  const PiecewiseLinearBackend subject(p.conjugacy(F));
  const PiecewiseLinearBackend reference(
      ConjugacyMap::identity(F.degree(), p.cfg.depth));
  const ExtensionGaps gaps =
      cui_compare(subject, reference, p.cfg.x_count, p.cfg.y_levels);
  write_text_file(p.cfg.output_dir / "skew_gap.csv", profile_csv(gaps.skew_gap));
  write_text_file(p.cfg.output_dir / "mu_gap.csv", profile_csv(gaps.mu_gap));
  p.manifest["artifacts"] = {"skew_gap.csv", "mu_gap.csv"};
  p.manifest["reference_subject"] = reference.subject_id();
}

void run_uac_check(Pipeline& p) {
  const Lift F = p.lift();
  const PiecewiseLinearBackend backend(p.conjugacy(F));
  StripSpec strip;
  strip.y_max = p.cfg.y_levels.front();
  strip.y_levels = p.cfg.y_levels;
  strip.x_count = p.cfg.x_count;

  // Self-calibrated schedule: twice the observed eta_hat per level, floored
  // away from zero so trivial subjects still get a positive bound.
  const UacReport observed =
      scaling_deviation(backend, F.degree(), p.cfg.n_max, strip);
  std::vector<std::pair<double, double>> schedule;
  for (std::size_t iy = 0; iy < strip.y_levels.size(); ++iy)
    schedule.emplace_back(strip.y_levels[iy],
                          std::max(2.0 * observed.eta_hat[iy], 1e-12));

  const UacReport report =
      certify_uac(backend, F.degree(), p.cfg.n_max, strip, schedule);
  json j = report_to_json(report);
  j["provenance"] = {{"map_hash", p.map.hash},
                     {"depth", p.cfg.depth},
                     {"root_tol", p.cfg.root_tol},
                     {"grid_points", p.cfg.grid_points},
                     {"schedule_rule", "2x observed eta_hat"}};
  write_json(p.cfg.output_dir / "uac_report.json", j);

  // Annulus coordinates of |mu| over the strip grid, for plotting.
  std::string text = "radius,angle,value\n";
  for (double y : strip.y_levels)
    for (int ix = 0; ix < strip.x_count; ++ix) {
      const double x = static_cast<double>(ix) / strip.x_count;
      const std::complex<double> z{x, y};
      const auto polar = annulus_view(std::span{&z, 1}).front();
      const double value = std::abs(beltrami_point(backend, x, y).mu);
      text += format_full(polar.first) + "," + format_full(polar.second) +
              "," + format_full(value) + "\n";
    }
  write_text_file(p.cfg.output_dir / "annulus.csv", text);
  p.manifest["artifacts"] = {"uac_report.json", "annulus.csv"};
}

}  // namespace

int run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(cfg.output_dir);
  Pipeline p{cfg, {}, json::object()};
  try {
    if (!(cfg.root_tol > 0) || !(cfg.quad_tol > 0) || !(cfg.tail_tol > 0))
      throw std::invalid_argument("tolerances must be positive");

    p.manifest["command"] = cfg.command;
    p.manifest["version"] = "0.1.0";
    p.manifest["parameters"] = {
        {"depth", cfg.depth},         {"n_max", cfg.n_max},
        {"x_count", cfg.x_count},     {"y_levels", cfg.y_levels},
        {"root_tol", cfg.root_tol},   {"quad_tol", cfg.quad_tol},
        {"tail_tol", cfg.tail_tol},   {"grid_points", cfg.grid_points}};

    if (cfg.command != "zeta") {
      p.map = load_map_spec(cfg.map_spec_path);
      p.manifest["map"] = {{"path", cfg.map_spec_path.string()},
                           {"hash", p.map.hash},
                           {"subject", p.map.endo.describe()}};
    }

    if (cfg.command == "zeta")
      run_zeta(p);
    else if (cfg.command == "distortion")
      run_distortion(p);
    else if (cfg.command == "conjugate")
      run_conjugate(p);
    else if (cfg.command == "ba-field")
      run_ba_field(p);
    else if (cfg.command == "cui-compare")
      run_cui_compare(p);
    else if (cfg.command == "uac-check")
      run_uac_check(p);
    else
      throw std::invalid_argument("unknown command '" + cfg.command + "'");

    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start);
    p.manifest["wall_time_seconds"] = elapsed.count();
    write_json(cfg.output_dir / "manifest.json", p.manifest);
    return 0;
  } catch (const Error& e) {
    json err = {{"error", e.code()},
                {"message", e.what()},
                {"command", cfg.command}};
    std::cerr << err.dump() << "\n";
    write_json(cfg.output_dir / "error.json", err);
    return 1;
  } catch (const std::exception& e) {
    json err = {{"error", "InvalidArgument"},
                {"message", e.what()},
                {"command", cfg.command}};
    std::cerr << err.dump() << "\n";
    write_json(cfg.output_dir / "error.json", err);
    return 1;
  }
}

}  // namespace uacx::cli
