// Command-line front door: map ingestion, pipeline dispatch, artifact output.

#include <string>

#include "CLI11.hpp"
#include "uacx/cli.hpp"

int main(int argc, char** argv) {
  uacx::cli::RunConfig cfg;
  std::string map_path, out_dir, ylevels;

  CLI::App app{
      "uacx: quasisymmetric conjugacies and asymptotically conformal "
      "extensions of circle endomorphisms"};
  app.add_option("--map", map_path, "map specification file");
  app.add_option("--command", cfg.command,
                 "zeta | distortion | conjugate | ba-field | cui-compare | "
                 "uac-check")
      ->required();
  app.add_option("--depth", cfg.depth, "conjugacy grid depth");
  app.add_option("--nmax", cfg.n_max, "deepest inverse iterate");
  app.add_option("--xcount", cfg.x_count, "x samples per strip level");
  app.add_option("--ylevels", ylevels, "comma-separated decreasing y levels");
  app.add_option("--root-tol", cfg.root_tol, "root-finding tolerance");
  app.add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
  app.add_option("--out", out_dir, "output directory")->required();
  CLI11_PARSE(app, argc, argv);

  cfg.map_spec_path = map_path;
  cfg.output_dir = out_dir;
  if (!ylevels.empty()) {
    cfg.y_levels.clear();
    std::size_t pos = 0;
    while (pos < ylevels.size()) {
      std::size_t next = ylevels.find(',', pos);
      if (next == std::string::npos) next = ylevels.size();
      cfg.y_levels.push_back(std::stod(ylevels.substr(pos, next - pos)));
      pos = next + 1;
    }
  }
  return uacx::cli::run(cfg);
}
