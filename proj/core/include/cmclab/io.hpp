#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmclab/delaunay.hpp"
#include "cmclab/freeboundary.hpp"
#include "cmclab/pinch.hpp"
#include "cmclab/rotation.hpp"

namespace cmclab::io {

/// Flat 3D picture of a curved model for mesh export. Projective is the
/// gnomonic chart for c > 0 and the Klein model for c < 0; Stereographic is
/// the stereographic chart or the Poincare ball. Both are centered at the
/// base point and agree with the metric to first order there.
enum class Chart { Projective, Stereographic };

/// Accepts "projective", "gnomonic", "klein", "stereographic", "poincare".
/// Throws OutOfDomain for anything else.
Chart parse_chart(std::string_view name);

std::array<double, 3> chart_point(const SpaceForm& sf, const Vec4& x, Chart chart);

std::string to_obj(const TriMesh& mesh, const SpaceForm& sf, Chart chart = Chart::Projective);

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double v);

std::string to_json(const DelaunayParams& p);
std::string to_json(const USolution& sol);
USolution parse_usolution(const std::string& json);

/// s,u,uprime,lambda,mu,residual
std::string to_csv(const USolution& sol);

/// s,theta,r,lambda1,lambda2,H,phi_sq,K,grad_nu_f
std::string to_csv(const SampleGrid& grid);

/// One row per PinchSample.
std::string to_csv(const PinchReport& report);

struct PieceRecord {
  std::string kind;
  std::string topology;
  double c = 0.0;
  double H = 0.0;
  std::optional<double> u0;
  std::optional<int> a;
  double R = 0.0;
  double s_star = 0.0;
  std::array<double, 2> residuals{0.0, 0.0};
  double kappa_g = 0.0;
  double kappa_g_fd = 0.0;
  GaussBonnetAudit gauss_bonnet;
  std::size_t gauss_bonnet_n_s = 0;
};

PieceRecord make_record(const FreeBoundaryPiece& piece, const BoundaryCurvature& kappa,
                        const GaussBonnetAudit& gb, std::size_t gb_n_s);
std::string to_json(const PieceRecord& rec);
PieceRecord parse_piece(const std::string& json);

struct PinchSummary {
  double c = 0.0;
  double H = 0.0;
  std::optional<double> u0;
  std::optional<int> a;
  double R = 0.0;
  std::string topology;
  PinchTolerances tol;
  std::size_t n_samples = 0;
  double min_margin = 0.0;
  std::array<double, 2> argmin{0.0, 0.0};
  std::vector<std::array<double, 2>> equality_points;
  std::string umbilic;
  std::size_t umbilic_clusters = 0;
  std::string min_r_locus;
  std::string sign;
  std::string verdict;
};

PinchSummary summarize(const PinchReport& report, const FreeBoundaryPiece& piece);
std::string to_json(const PinchSummary& summary);
PinchSummary parse_pinch(const std::string& json);

struct ScanRecord {
  double R_target = 0.0;
  double u0 = 0.0;
  std::size_t iterations = 0;
  std::vector<std::pair<double, double>> scan;
};

std::string to_json(const ScanRecord& rec);

/// Header plus numeric rows of a comma-separated table.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a column; throws IoError when absent.
  std::size_t column(std::string_view name) const;
};

/// Throws IoError on malformed input.
CsvTable parse_csv(const std::string& text);

/// Throw IoError on failure.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace cmclab::io
