#include <iostream>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cmclab/io.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

void add_run_options(CLI::App& app, cmclab::cli::RunConfig& cfg, std::string& config_path) {
  app.add_option("--c", cfg.c, "Sectional curvature of the ambient space form");
  app.add_option("--H", cfg.H, "Mean curvature");
  app.add_option("--u0", cfg.u0, "Initial value of u = 1/|lambda - H| on the symmetry plane");
  app.add_option("--a", cfg.a, "Sign a in lambda = H + a/u")->check(CLI::IsMember({-1, 1}));
  app.add_option("--R", cfg.R, "Radius of the geodesic ball");
  app.add_option("--R-max", cfg.R_max, "Largest acceptable ball radius");
  app.add_option("--s-max", cfg.s_max, "Meridian length to integrate");
  app.add_option("--ds", cfg.ds, "Integration step");
  app.add_option("--n-s", cfg.n_s, "Sample rows along the meridian");
  app.add_option("--n-theta", cfg.n_theta, "Sample columns around the axis");
  app.add_option("--n-gb", cfg.n_gb, "Quadrature nodes for the Gauss-Bonnet audit");
  app.add_option("--tol-eq", cfg.tol.eq, "Tolerance for equality in the pinching inequality");
  app.add_option("--tol-umb", cfg.tol.umb, "Threshold on |Phi|^2 for umbilic points");
  app.add_option("--tol-r", cfg.tol.r, "Tolerance for the minimum-distance locus");
  app.add_option("--chart", cfg.chart, "Mesh chart for c != 0: projective or stereographic");
  app.add_flag("--all-contacts", cfg.all_contacts, "Enumerate every contact up to s-max");
  app.add_flag("--mesh", cfg.mesh, "Also write an OBJ mesh");
  app.add_option("--jobs", cfg.jobs, "Threads for the radius scan");
  app.add_option("--out", cfg.out, "Output directory (default: $CMCLAB_OUT or .)");
  app.add_option("--config", config_path, "JSON file whose keys override the flags");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cmclab::cli;

  CLI::App app{"Constant mean curvature surfaces of revolution in space forms"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::string verify_dir;

  auto* delaunay = app.add_subcommand("delaunay", "Tabulate u(s) and optionally mesh the surface");
  add_run_options(*delaunay, cfg, config_path);

  auto* freeboundary = app.add_subcommand("freeboundary", "Build and audit a free-boundary piece");
  add_run_options(*freeboundary, cfg, config_path);
  freeboundary->require_subcommand(0, 1);
  auto* cap = freeboundary->add_subcommand("cap", "Umbilical piece in the ball of radius R");
  add_run_options(*cap, cfg, config_path);

  auto* verify = app.add_subcommand("verify", "Re-check the invariants of a written bundle");
  verify->add_option("dir", verify_dir, "Directory holding the bundle")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (!config_path.empty()) apply_json(cfg, cmclab::io::read_text(config_path));
    if (*verify) return cmd_verify(verify_dir, std::cout);
    if (*delaunay) return cmd_delaunay(cfg, std::cout);
    if (*cap) return cmd_cap(cfg, std::cout);
    return cmd_freeboundary(cfg, std::cout);
  } catch (const cmclab::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
