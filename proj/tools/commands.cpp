#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cmclab/delaunay.hpp"
#include "cmclab/freeboundary.hpp"
#include "cmclab/io.hpp"
#include "cmclab/pinch.hpp"
#include "cmclab/rotation.hpp"

namespace cmclab::cli {

namespace fs = std::filesystem;

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Breakdown: return kExitBreakdown;
    case ErrorCode::IoError: return kExitIo;
    case ErrorCode::NoContact:
    case ErrorCode::NoBracket: return kExitNoContact;
    default: return kExitDomain;
  }
}

namespace {

constexpr double kFirstIntegralTol = 1e-9;
constexpr double kDeterminantTol = 1e-10;
constexpr double kResidualTol = 1e-8;
constexpr double kGaussBonnetTol = 1e-3;
constexpr double kKappaMin = 1e-6;
constexpr double kKappaAgreeTol = 1e-5;

void write(const fs::path& dir, const char* name, const std::string& text, std::ostream& log) {
  io::write_text(dir / name, text);
  fmt::print(log, "wrote {}\n", (dir / name).string());
}

void write_delaunay(const fs::path& dir, const USolution& sol, std::ostream& log) {
  write(dir, "delaunay.json", io::to_json(sol), log);
  write(dir, "delaunay.csv", io::to_csv(sol), log);
}

int write_bundle(const FreeBoundaryPiece& piece, const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = output_dir(cfg);
  const SpaceForm& sf = piece.surface.profile.space();

  const BoundaryCurvature kappa = boundary_geodesic_curvature(piece);
  const GaussBonnetAudit gb = gauss_bonnet_audit(piece, cfg.n_gb);
  const SampleGrid grid = sample_piece(piece, cfg.n_s, cfg.n_theta);
  const PinchReport report = pinch_report(grid, sf, piece.topology, cfg.tol);
  const io::PinchSummary summary = io::summarize(report, piece);

  write(dir, "run.json", to_json(cfg), log);
  write(dir, "piece.json", io::to_json(io::make_record(piece, kappa, gb, cfg.n_gb)), log);
  write(dir, "pinch.json", io::to_json(summary), log);
  write(dir, "pinch.csv", io::to_csv(report), log);
  write(dir, "samples.csv", io::to_csv(grid), log);
  write(dir, "mesh.obj",
        io::to_obj(mesh(piece.surface, cfg.n_s, cfg.n_theta), sf, io::parse_chart(cfg.chart)), log);
  if (piece.params) write_delaunay(dir, u_numeric(*piece.params, piece.s_star, cfg.ds), log);

  fmt::print(log, "{} {} R={} s*={} kappa_g={} gauss_bonnet_defect={:.3e}\n", to_string(piece.kind),
             to_string(piece.topology), io::format_number(piece.R), io::format_number(piece.s_star),
             io::format_number(kappa.analytic), gb.defect);
  fmt::print(log, "verdict {} (min margin {:.3e}, {} equality points, umbilic {})\n",
             summary.verdict, summary.min_margin, summary.equality_points.size(), summary.umbilic);
  return 0;
}

ShootOptions shoot_options(const RunConfig& cfg) {
  ShootOptions opts;
  opts.ds = cfg.ds;
  opts.s_max = cfg.s_max.value_or(opts.s_max);
  opts.r_max = cfg.R_max;
  return opts;
}

struct Check {
  std::string name;
  double measured;
  double bound;
  bool pass;
};

void report_check(const Check& c, std::ostream& log) {
  fmt::print(log, "{} {} measured={:.6e} bound={:.1e}\n", c.pass ? "PASS" : "FAIL", c.name,
             c.measured, c.bound);
}

const char* umbilic_label(const std::string& kind) {
  if (kind == "total") return "TotallyUmbilical";
  if (kind == "isolated") return "IsolatedUmbilics";
  return "NoUmbilics";
}

std::vector<Check> verify_delaunay(const fs::path& dir) {
  const USolution sol = io::parse_usolution(io::read_text(dir / "delaunay.json"));
  const io::CsvTable table = io::parse_csv(io::read_text(dir / "delaunay.csv"));
  const std::size_t iu = table.column("u");
  const std::size_t iup = table.column("uprime");
  double worst = 0.0;
  for (const auto& row : table.rows) {
    const double r = std::abs(first_integral_residual(row[iu], row[iup], sol.params));
    worst = std::max(worst, std::isfinite(r) ? r : std::numeric_limits<double>::infinity());
  }
  return {{"first_integral", worst, kFirstIntegralTol, worst <= kFirstIntegralTol}};
}

std::vector<Check> verify_piece(const fs::path& dir) {
  const io::PieceRecord rec = io::parse_piece(io::read_text(dir / "piece.json"));
  const double r_res = std::abs(rec.residuals[0]);
  const double o_res = std::abs(rec.residuals[1]);
  const double agree = std::abs(rec.kappa_g - rec.kappa_g_fd);
  return {
      {"boundary_radius_residual", r_res, kResidualTol, r_res <= kResidualTol},
      {"orthogonality_residual", o_res, kResidualTol, o_res <= kResidualTol},
      {"gauss_bonnet_defect", rec.gauss_bonnet.defect, kGaussBonnetTol,
       std::abs(rec.gauss_bonnet.defect) <= kGaussBonnetTol},
      {"kappa_g_positive", rec.kappa_g, kKappaMin, rec.kappa_g > kKappaMin},
      {"kappa_g_fd_agreement", agree, kKappaAgreeTol, agree <= kKappaAgreeTol},
  };
}

std::vector<Check> verify_pinch(const fs::path& dir, std::ostream& log) {
  const io::PinchSummary summary = io::parse_pinch(io::read_text(dir / "pinch.json"));
  const io::CsvTable table = io::parse_csv(io::read_text(dir / "pinch.csv"));
  const std::size_t i_phi = table.column("phi_sq");
  const std::size_t i_g = table.column("grad_nu_f");
  const std::size_t i_det = table.column("detL");
  const std::size_t i_half = table.column("trace_half");
  const std::size_t i_margin = table.column("margin");

  double det_err = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::size_t n_eq = 0;
  std::size_t n_umb = 0;
  for (const auto& row : table.rows) {
    const double g = row[i_g];
    const double identity = row[i_half] * row[i_half] - 0.5 * row[i_phi] * g * g;
    det_err = std::max(det_err, std::abs(row[i_det] - identity));
    min_margin = std::min(min_margin, row[i_margin]);
    if (std::abs(row[i_margin]) <= summary.tol.eq) ++n_eq;
    if (row[i_phi] <= summary.tol.umb) ++n_umb;
  }

  const std::string umbilic = n_umb == 0                    ? "none"
                              : n_umb == table.rows.size() ? "total"
                                                           : "isolated";
  std::string verdict;
  if (min_margin < -summary.tol.eq) {
    verdict = to_string(Verdict::HypothesisViolated);
  } else if (summary.topology == to_string(Topology::Disk)) {
    verdict = to_string(umbilic == "total" ? Verdict::SphericalCapConsistent : Verdict::Inconclusive);
  } else {
    verdict = to_string(n_eq > 0 ? Verdict::DelaunayConsistent : Verdict::Inconclusive);
  }

  fmt::print(log, "INFO umbilic {} ({} of {} samples)\n", umbilic_label(umbilic), n_umb,
             table.rows.size());
  fmt::print(log, "INFO verdict {} (recomputed {})\n", summary.verdict, verdict);
  const bool counts_ok = n_eq == summary.equality_points.size() && umbilic == summary.umbilic &&
                         table.rows.size() == summary.n_samples;
  return {
      {"determinant_identity", det_err, kDeterminantTol, det_err <= kDeterminantTol},
      {"verdict_consistency", verdict == summary.verdict && counts_ok ? 0.0 : 1.0, 0.0,
       verdict == summary.verdict && counts_ok},
  };
}

}  // namespace

int cmd_delaunay(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (!cfg.u0) throw Error(ErrorCode::OutOfDomain, "delaunay needs --u0");
  const DelaunayParams p = make_params(cfg.c, cfg.H, *cfg.u0, cfg.a);
  const double s_max = cfg.s_max.value_or(5.0);
  const USolution sol = u_numeric(p, s_max, cfg.ds);
  const fs::path dir = output_dir(cfg);

  write(dir, "run.json", to_json(cfg), log);
  write_delaunay(dir, sol, log);
  fmt::print(log, "branch {} C={} discriminant={}\n", to_string(p.branch), io::format_number(p.C),
             io::format_number(p.discriminant()));

  if (sol.breakdown_s) {
    fmt::print(log, "Breakdown: u reached the floor at s={}\n", io::format_number(*sol.breakdown_s));
    return kExitBreakdown;
  }
  if (cfg.mesh) {
    const RotationSurface surface = delaunay_surface(p, s_max, cfg.ds);
    write(dir, "mesh.obj",
          io::to_obj(mesh(surface, cfg.n_s, cfg.n_theta), surface.profile.space(),
                     io::parse_chart(cfg.chart)),
          log);
  }
  return 0;
}

int cmd_freeboundary(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (cfg.u0.has_value() == cfg.R.has_value()) {
    throw Error(ErrorCode::OutOfDomain, "freeboundary needs exactly one of --u0 and --R");
  }
  const ShootOptions sopts = shoot_options(cfg);

  if (cfg.R) {
    SolveOptions opts;
    opts.jobs = cfg.jobs;
    opts.shoot = sopts;
    const SolveResult res = solve_for_R(cfg.c, cfg.H, *cfg.R, cfg.a, opts);
    write(output_dir(cfg), "scan.json",
          io::to_json(io::ScanRecord{*cfg.R, res.u0, res.iterations, res.scan}), log);
    fmt::print(log, "solved u0={} in {} iterations\n", io::format_number(res.u0), res.iterations);
    return write_bundle(res.piece, cfg, log);
  }

  if (!cfg.all_contacts) return write_bundle(shoot(cfg.c, cfg.H, *cfg.u0, cfg.a, sopts), cfg, log);

  const auto pieces = shoot_all(cfg.c, cfg.H, *cfg.u0, cfg.a, sopts);
  if (pieces.empty()) throw Error(ErrorCode::NoContact, "no contact before s_max");
  std::string rows = "s_star,R,r_residual,orth_residual\n";
  for (const auto& piece : pieces) {
    rows += fmt::format("{},{},{},{}\n", io::format_number(piece.s_star), io::format_number(piece.R),
                        io::format_number(piece.r_residual), io::format_number(piece.orth_residual));
  }
  write(output_dir(cfg), "contacts.csv", rows, log);
  fmt::print(log, "{} contacts; bundle written for the first\n", pieces.size());
  return write_bundle(pieces.front(), cfg, log);
}

int cmd_cap(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (!cfg.R) throw Error(ErrorCode::OutOfDomain, "freeboundary cap needs --R");
  return write_bundle(spherical_cap(cfg.c, cfg.H, *cfg.R, cfg.ds), cfg, log);
}

int cmd_verify(const fs::path& dir, std::ostream& log) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::IoError, fmt::format("'{}' is not a directory", dir.string()));
  }
  std::vector<Check> checks;
  auto append = [&checks](std::vector<Check> more) {
    checks.insert(checks.end(), more.begin(), more.end());
  };
  if (fs::exists(dir / "delaunay.json")) append(verify_delaunay(dir));
  if (fs::exists(dir / "piece.json")) append(verify_piece(dir));
  if (fs::exists(dir / "pinch.json")) append(verify_pinch(dir, log));
  if (checks.empty()) {
    throw Error(ErrorCode::IoError, fmt::format("no cmclab artifacts in '{}'", dir.string()));
  }

  bool all = true;
  for (const auto& c : checks) {
    report_check(c, log);
    all = all && c.pass;
  }
  fmt::print(log, "{}\n", all ? "all checks passed" : "some checks failed");
  return all ? 0 : kExitCheckFailed;
}

}  // namespace cmclab::cli
