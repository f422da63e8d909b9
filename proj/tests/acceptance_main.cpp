// Acceptance suite: one line per criterion, nonzero exit on any failure.
// `--write-baseline` refreshes the committed uac regression baseline.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "uacx/ba_extension.hpp"
#include "uacx/catalog.hpp"
#include "uacx/cli.hpp"
#include "uacx/conjugacy.hpp"
#include "uacx/io.hpp"
#include "uacx/uac.hpp"

using namespace uacx;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kBlaschkeSpec =
    "kind = blaschke\n"
    "degree = 2\n"
    "alphas = 0,0;0.1,0\n"
    "betas =\n";

struct Criterion {
  std::string name;
  std::function<std::vector<std::string>()> run;
};

std::vector<std::string>& note(std::vector<std::string>& log, bool ok,
                               const std::string& detail) {
  if (!ok) log.push_back(detail);
  return log;
}

std::vector<double> dyadic_y(int first, int last) {
  std::vector<double> y;
  for (int k = first; k <= last; ++k) y.push_back(std::pow(2.0, -k));
  return y;
}

std::string fmt(double v) { return format_full(v); }

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("uacx_accept_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_blaschke_spec() {
  const fs::path path = fs::temp_directory_path() / "uacx_accept_blaschke.map";
  std::ofstream out(path, std::ios::binary);
  out << kBlaschkeSpec;
  return path;
}

cli::RunConfig uac_baseline_config() {
  cli::RunConfig cfg;
  cfg.command = "uac-check";
  cfg.map_spec_path = write_blaschke_spec();
  cfg.depth = 12;
  cfg.n_max = 4;
  cfg.x_count = 64;
  cfg.y_levels = dyadic_y(1, 4);
  cfg.root_tol = 1e-12;
  cfg.quad_tol = 1e-12;
  return cfg;
}

// --- criterion 1: identity and affine extensions are trivial ---------------

std::vector<std::string> criterion_identity_affine() {
  std::vector<std::string> log;
  const PiecewiseLinearBackend id{ConjugacyMap::identity(2, 12)};
  const QuadratureBackend affine{RealHomeomorphism::affine(2.0, 3.0), 1e-12};
  const auto ys = dyadic_y(1, 8);
  for (double y : ys)
    for (int j = 0; j < 64; ++j) {
      const double x = j / 64.0;
      const PlanePoint w = extend_point(id, x, y);
      note(log, std::abs(w.u - x) <= 1e-12 && std::abs(w.v - y) <= 1e-12,
           "identity extension off at (" + fmt(x) + "," + fmt(y) + ")");
      note(log, std::abs(beltrami_point(id, x, y).mu) <= 1e-12,
           "identity mu nonzero at (" + fmt(x) + "," + fmt(y) + ")");
      note(log, std::abs(beltrami_point(affine, x, y).mu) <= 1e-12,
           "affine mu nonzero at (" + fmt(x) + "," + fmt(y) + ")");
    }
  return log;
}

// --- criterion 2: derivative identities vs finite differences --------------

std::vector<std::string> criterion_derivative_identity() {
  std::vector<std::string> log;
  const QuadratureBackend backend{sine_bump(), 1e-13};
  const auto w = [&](double x, double y) {
    const PlanePoint p = extend_point(backend, x, y);
    return std::complex<double>(p.u, p.v);
  };

  const double ys[] = {0.1, 0.15, 0.2, 0.3, 0.5};
  double err3 = 0.0, err4 = 0.0;
  int points = 0;
  for (int i = 0; i < 10; ++i)
    for (double y : ys) {
      const double x = 0.05 + 0.09 * i;
      const auto mu = beltrami_point(backend, x, y).mu;
      const double e4 =
          std::abs(oracle::mu_from_differences(w, x, y, 1e-4) - mu);
      const double e3 =
          std::abs(oracle::mu_from_differences(w, x, y, 1e-3) - mu);
      note(log, e4 <= 1e-5, "fd gap " + fmt(e4) + " at (" + fmt(x) + "," +
                                fmt(y) + ") exceeds 1e-5");
      err3 = std::max(err3, e3);
      err4 = std::max(err4, e4);
      ++points;
    }
  note(log, points == 50, "expected 50 strip points");
  const double order = std::log10(err3 / err4);
  note(log, order >= 1.8,
       "observed convergence order " + fmt(order) + " below 1.8");
  return log;
}

// --- criterion 3: corrected c-formula and denominator bounds ---------------

std::vector<std::string> criterion_c_formula() {
  std::vector<std::string> log;
  const PiecewiseLinearBackend id{ConjugacyMap::identity(2, 12)};
  for (double y : dyadic_y(1, 8))
    for (int j = 0; j < 64; ++j) {
      const ExtensionValue v = beltrami_point(id, j / 64.0, y);
      note(log, v.a == 0.0 && v.b == 1.0 && v.c == 0.0,
           "identity (a,b,c) = (" + fmt(v.a) + "," + fmt(v.b) + "," +
               fmt(v.c) + ") is not exactly (0,1,0)");
    }

  // b > 0 and |1+ia+b-ic| > 1 across representative nontrivial subjects.
  const Lift f = Lift::build(
      CircleEndomorphism::blaschke(2, {{0.0, 0.0}, {0.1, 0.0}}, {}));
  const PiecewiseLinearBackend conj{ConjugacyMap::build(f, 10, 1e-12)};
  const QuadratureBackend bump{sine_bump(), 1e-12};
  const auto check_subject = [&](const IntegralBackend& backend, int nx) {
    for (double y : dyadic_y(1, 8))
      for (int j = 0; j < nx; ++j) {
        const ExtensionValue v =
            beltrami_point(backend, static_cast<double>(j) / nx, y);
        note(log, v.b > 0.0, "b <= 0 for " + backend.subject_id());
        note(log, std::hypot(1.0 + v.b, v.a - v.c) > 1.0,
             "denominator bound fails for " + backend.subject_id());
      }
  };
  check_subject(conj, 64);
  check_subject(bump, 32);
  return log;
}

// --- criterion 4: dyadic deviation bound -----------------------------------

std::vector<std::string> criterion_deviation_bound() {
  std::vector<std::string> log;
  note(log, zeta(1.0) == 0.0, "zeta(1) != 0");
  double prev = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double M = 1.0 + 0.1 * i;
    const double z = zeta(M);
    note(log, z >= prev - 1e-15, "zeta decreased at M = " + fmt(M));
    note(log, std::abs(z - oracle::zeta_200(M)) <= 1e-12,
         "zeta disagrees with the 200-term oracle at M = " + fmt(M));
    prev = z;
  }

  int maps = 0;
  for (const auto& entry : test_catalog()) {
    if (!entry.fixes_01 || entry.h.name() == "identity") continue;
    ++maps;
    double m_hat = estimate_M_on(entry.h, 0.0, 1.0, 63, 8);
    for (int n = 1; n <= 8; ++n) {
      const double y = std::pow(2.0, -n);
      for (int i = 1; i < (1 << n); ++i) {
        const double r = rho(entry.h, i * y, y);
        m_hat = std::max(m_hat, std::max(r, 1.0 / r));
      }
    }
    double sup = 0.0;
    for (int i = 0; i <= 2048; ++i) {
      const double x = i / 2048.0;
      sup = std::max(sup, std::abs(entry.h(x) - x));
    }
    note(log, sup <= oracle::zeta_200(m_hat) + 1e-9,
         entry.h.name() + ": sup-deviation " + fmt(sup) +
             " above zeta(M=" + fmt(m_hat) + ") = " +
             fmt(oracle::zeta_200(m_hat)));
    note(log, sup <= zeta(m_hat) + 1e-9,
         entry.h.name() + ": sup-deviation above library zeta");
  }
  note(log, maps == 5, "expected 5 normalized catalog maps");
  return log;
}

// --- criterion 5: skew deviations against vartheta --------------------------

std::vector<std::string> criterion_skew_bound() {
  std::vector<std::string> log;
  for (const auto& entry : test_catalog()) {
    if (!entry.fixes_01) continue;
    long triples = 0;
    for (int i = 0; i < 50; ++i) {
      const double x = 0.15 + 0.7 * i / 49.0;
      double y = std::min(x, 1.0 - x);
      for (int j = 0; j < 20; ++j, y *= 0.75) {
        ++triples;
        const double bound =
            vartheta(estimate_M_on(entry.h, x - y, x + y, 12, 6)) + 1e-9;
        for (double k : {0.25, 0.5, 0.75, 1.0})
          for (double sy : {y, -y}) {
            const double dev = std::abs(rho_skew(entry.h, x, sy, k) - k);
            note(log, dev <= bound,
                 entry.h.name() + ": |rho(" + fmt(x) + "," + fmt(sy) + "," +
                     fmt(k) + ")-k| = " + fmt(dev) + " above " + fmt(bound));
          }
      }
    }
    note(log, triples == 1000, "expected 1000 (x,y) triples per map");
  }
  return log;
}

// --- criterion 6: conjugacy pipeline ----------------------------------------

std::vector<std::string> criterion_conjugacy() {
  std::vector<std::string> log;
  const Lift p = Lift::build(CircleEndomorphism::power(2));
  const ConjugacyMap hp = ConjugacyMap::build(p, 12, 1e-12);
  const auto a = hp.level(12);
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    worst = std::max(worst, std::abs(a[j] - static_cast<double>(j) / 4096.0));
  note(log, worst <= 1e-12,
       "power grid deviates from the identity by " + fmt(worst));

  const Lift f = Lift::build(
      CircleEndomorphism::blaschke(2, {{0.0, 0.0}, {0.1, 0.0}}, {}));
  const ConjugacyMap hb = ConjugacyMap::build(f, 10, 1e-12);
  const double residual = hb.commutation_residual(f);
  note(log, residual < 1e-8, "commutation residual " + fmt(residual));
  note(log, hb.consistency_deviation() < 1e-10,
       "level consistency " + fmt(hb.consistency_deviation()));
  const QsCertificate cert = hb.qs_certificate();
  note(log, cert.satisfied,
       "certificate violated: measured " + fmt(cert.measured_M) +
           " vs bound " + fmt(cert.M_prime_bound));
  return log;
}

// --- criterion 7: decay and gap profiles ------------------------------------

std::vector<std::string> criterion_profiles() {
  std::vector<std::string> log;
  const auto ys = dyadic_y(1, 8);
  const auto nonincreasing = [&](const VanishingProfile& p,
                                 const std::string& label) {
    for (std::size_t i = 1; i < p.value.size(); ++i)
      note(log, p.value[i] <= p.value[i - 1] + 1e-10,
           label + " increases at y = " + fmt(p.y[i]) + " (" +
               fmt(p.value[i - 1]) + " -> " + fmt(p.value[i]) + ")");
  };

  for (const auto& entry : test_catalog()) {
    if (!entry.symmetric || !entry.full_line) continue;
    const QuadratureBackend backend{entry.h, 1e-12};
    nonincreasing(decay_profile(beltrami_field(backend, 64, ys)),
                  "decay profile of " + entry.h.name());
  }

  const QuadratureBackend id{RealHomeomorphism::identity(), 1e-12};
  const QuadratureBackend bump{sine_bump(), 1e-12};
  const ExtensionGaps gaps = cui_compare(id, bump, 64, ys);
  nonincreasing(gaps.mu_gap, "mu gap");
  nonincreasing(gaps.skew_gap, "skew gap");
  return log;
}

// --- criterion 8: uac report and its regression baseline --------------------

std::vector<std::string> compare_json(const json& got, const json& want,
                                      const std::string& path) {
  std::vector<std::string> log;
  if (got.is_number() && want.is_number()) {
    const double g = got.get<double>(), w = want.get<double>();
    note(log, std::abs(g - w) <= 1e-9,
         path + ": " + fmt(g) + " vs baseline " + fmt(w));
  } else if (got.is_object() && want.is_object()) {
    for (auto it = want.begin(); it != want.end(); ++it) {
      if (!got.contains(it.key())) {
        log.push_back(path + ": missing key " + it.key());
        continue;
      }
      const auto sub = compare_json(got.at(it.key()), it.value(),
                                    path + "." + it.key());
      log.insert(log.end(), sub.begin(), sub.end());
    }
  } else if (got.is_array() && want.is_array()) {
    if (got.size() != want.size()) {
      log.push_back(path + ": size " + std::to_string(got.size()) + " vs " +
                    std::to_string(want.size()));
      return log;
    }
    for (std::size_t i = 0; i < want.size(); ++i) {
      const auto sub =
          compare_json(got[i], want[i], path + "[" + std::to_string(i) + "]");
      log.insert(log.end(), sub.begin(), sub.end());
    }
  } else {
    note(log, got == want, path + ": value mismatch");
  }
  return log;
}

std::vector<std::string> criterion_uac_report() {
  std::vector<std::string> log;
  cli::RunConfig cfg = uac_baseline_config();
  cfg.output_dir = scratch_dir("uac_report");
  if (cli::run(cfg) != 0) {
    log.push_back("uac-check pipeline failed");
    return log;
  }
  std::ifstream in(cfg.output_dir / "uac_report.json");
  const json report = json::parse(in);

  const auto eta = report.at("eta_hat").get<std::vector<double>>();
  for (std::size_t i = 1; i < eta.size(); ++i)
    note(log, eta[i] <= eta[i - 1],
         "eta_hat increases at index " + std::to_string(i));
  for (const auto& v : report.at("scaling")[0])
    note(log, v.get<double>() == 0.0, "n = 0 scaling row not zero");
  for (const auto& v : report.at("dilatation")[0])
    note(log, v.get<double>() == 1.0, "n = 0 dilatation row not 1");

  const fs::path baseline_path =
      fs::path(UACX_TEST_DATA_DIR) / "uac_baseline.json";
  std::ifstream base_in(baseline_path);
  if (!base_in) {
    log.push_back("missing committed baseline " + baseline_path.string());
    return log;
  }
  const json baseline = json::parse(base_in);
  const auto gaps = compare_json(report, baseline, "uac_report");
  log.insert(log.end(), gaps.begin(), gaps.end());
  return log;
}

// --- criterion 9: byte-identical reruns -------------------------------------

std::vector<std::string> criterion_determinism() {
  std::vector<std::string> log;
  const fs::path spec = write_blaschke_spec();

  std::vector<cli::RunConfig> configs;
  const auto with = [&](const std::string& command, int depth, int n_max,
                        std::vector<double> ylevels, int x_count) {
    cli::RunConfig cfg;
    cfg.command = command;
    cfg.map_spec_path = spec;
    cfg.depth = depth;
    cfg.n_max = n_max;
    cfg.x_count = x_count;
    cfg.y_levels = std::move(ylevels);
    configs.push_back(cfg);
  };
  with("zeta", 6, 2, dyadic_y(1, 4), 32);
  with("distortion", 6, 3, dyadic_y(1, 6), 32);
  with("conjugate", 6, 2, dyadic_y(1, 4), 32);
  with("ba-field", 8, 2, dyadic_y(1, 6), 32);
  with("cui-compare", 8, 2, dyadic_y(1, 6), 32);
  with("uac-check", 8, 2, dyadic_y(1, 4), 32);

  for (std::size_t i = 0; i < configs.size(); ++i) {
    auto first = configs[i];
    auto second = configs[i];
    first.output_dir = scratch_dir("det_a_" + first.command);
    second.output_dir = scratch_dir("det_b_" + second.command);
    if (cli::run(first) != 0 || cli::run(second) != 0) {
      log.push_back(first.command + ": run failed");
      continue;
    }
    for (const auto& item : fs::directory_iterator(first.output_dir)) {
      const std::string name = item.path().filename().string();
      if (name == "manifest.json") continue;  // records wall time
      std::ifstream a(item.path(), std::ios::binary);
      std::ifstream b(second.output_dir / name, std::ios::binary);
      std::ostringstream sa, sb;
      sa << a.rdbuf();
      sb << b.rdbuf();
      note(log, b.good() && sa.str() == sb.str(),
           first.command + ": artifact " + name + " differs between reruns");
    }
  }
  return log;
}

int write_baseline() {
  cli::RunConfig cfg = uac_baseline_config();
  cfg.output_dir = scratch_dir("baseline");
  if (cli::run(cfg) != 0) {
    std::cerr << "baseline pipeline failed\n";
    return 1;
  }
  const fs::path dest = fs::path(UACX_TEST_DATA_DIR) / "uac_baseline.json";
  fs::create_directories(dest.parent_path());
  fs::copy_file(cfg.output_dir / "uac_report.json", dest,
                fs::copy_options::overwrite_existing);
  std::cout << "baseline written to " << dest << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && std::string(argv[1]) == "--write-baseline")
    return write_baseline();

  const std::vector<Criterion> criteria = {
      {"identity/affine extensions are trivial", criterion_identity_affine},
      {"exact partials match finite differences at order >= 1.8",
       criterion_derivative_identity},
      {"(a,b,c) = (0,1,0) at the identity; b > 0 and |1+ia+b-ic| > 1",
       criterion_c_formula},
      {"dyadic deviation bound zeta over the catalog",
       criterion_deviation_bound},
      {"skew deviations bounded by vartheta(M)", criterion_skew_bound},
      {"conjugacy grids: identity, residual, consistency, certificate",
       criterion_conjugacy},
      {"decay and gap profiles are nonincreasing", criterion_profiles},
      {"uac report: trivial rows, decay, regression baseline",
       criterion_uac_report},
      {"reruns are byte-identical", criterion_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::vector<std::string> log;
    try {
      log = criteria[i].run();
    } catch (const std::exception& e) {
      log.push_back(std::string("exception: ") + e.what());
    }
    if (log.empty()) {
      std::printf("PASS  criterion %zu: %s\n", i + 1, criteria[i].name.c_str());
    } else {
      ++failures;
      std::printf("FAIL  criterion %zu: %s\n", i + 1, criteria[i].name.c_str());
      std::printf("      %s%s\n", log.front().c_str(),
                  log.size() > 1 ? (" (+" + std::to_string(log.size() - 1) +
                                    " more)").c_str()
                                 : "");
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
