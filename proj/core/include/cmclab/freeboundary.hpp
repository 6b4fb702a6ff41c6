#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "cmclab/delaunay.hpp"
#include "cmclab/pinch.hpp"
#include "cmclab/rotation.hpp"

namespace cmclab {

/// lambda = H + a/u and mu = H - a/u along a tabulated or closed-form u.
std::pair<CurvatureFn, CurvatureFn> curvatures_from_u(std::function<double(double)> u, int a,
                                                      double H);
std::pair<CurvatureFn, CurvatureFn> delaunay_curvatures(const DelaunayParams& p);

/// Delaunay surface over [0, s_end] built from the closed-form u, reflected
/// to [-s_end, s_end] when `symmetric` is set.
RotationSurface delaunay_surface(const DelaunayParams& p, double s_end, double ds,
                                 bool symmetric = true);

struct ContactStart {
  DelaunayParams params;
  double lambda0 = 0.0;
  MeridianState state;
};

/// Symmetric start on P for the Delaunay meridian of (c, H, u0, a). Throws
/// NonPositiveU0 or InvalidGeometry.
ContactStart contact_start(double c, double H, double u0, int a = 1);

enum class PieceKind { Delaunay, Cap };

const char* to_string(PieceKind k) noexcept;

struct FreeBoundaryPiece {
  PieceKind kind = PieceKind::Delaunay;
  Topology topology = Topology::Annulus;
  RotationSurface surface;
  AmbientPoint center;
  double c = 0.0;
  double H = 0.0;
  /// Meridian parameters; empty for caps.
  std::optional<DelaunayParams> params;
  double R = 0.0;
  double s_star = 0.0;
  /// r - R and <nu, grad r> at the boundary circle.
  double r_residual = 0.0;
  double orth_residual = 0.0;
};

struct ShootOptions {
  double ds = 1e-3;
  double s_max = 50.0;
  /// Largest acceptable ball radius; a first contact beyond it is NoContact.
  double r_max = std::numeric_limits<double>::infinity();
};

/// Integrates the meridian from P with the ball center at axis ∩ P and
/// returns the first piece whose boundary meets the geodesic sphere through
/// it orthogonally and which stays inside that sphere. Throws NoContact, DomainViolation (c > 0 and r reaches
/// pi/(2 sqrt c)), AxisCollision, InvalidGeometry or NonPositiveU0.
FreeBoundaryPiece shoot(double c, double H, double u0, int a = 1, const ShootOptions& opts = {});

/// Every contact up to s_max, in increasing s. Empty when there is none.
std::vector<FreeBoundaryPiece> shoot_all(double c, double H, double u0, int a = 1,
                                         const ShootOptions& opts = {});

struct SolveOptions {
  double u_lo = 1e-2;
  double u_hi = 1e2;
  std::size_t n_scan = 41;
  double tol = 1e-10;
  unsigned jobs = 1;
  ShootOptions shoot;
};

struct SolveResult {
  double u0 = 0.0;
  FreeBoundaryPiece piece;
  /// (u0, R) pairs of the logarithmic scan; R is NaN where shoot failed.
  std::vector<std::pair<double, double>> scan;
  std::size_t iterations = 0;
};

/// Finds u0 with shoot(c, H, u0, a).R = R_target. Throws NoBracket.
SolveResult solve_for_R(double c, double H, double R_target, int a = 1, const SolveOptions& opts = {});

/// Umbilical piece meeting the geodesic sphere of radius R about the origin
/// orthogonally: a geodesic-sphere cap of mean curvature H, or the flat disk
/// through the center when H = 0. Throws NoSuchCap or DomainViolation.
FreeBoundaryPiece spherical_cap(double c, double H, double R, double ds = 1e-3);

struct BoundaryCurvature {
  double analytic = 0.0;
  double finite_difference = 0.0;
};

/// Geodesic curvature of the boundary circle with respect to the inward
/// conormal; constant along the circle.
BoundaryCurvature boundary_geodesic_curvature(const FreeBoundaryPiece& piece, double h = 1e-4);

struct GaussBonnetAudit {
  double interior = 0.0;
  double boundary = 0.0;
  int chi = 0;
  double defect = 0.0;
};

/// Composite trapezoid rule in s over n_s nodes for the area integral of K
/// plus the exact boundary term.
GaussBonnetAudit gauss_bonnet_audit(const FreeBoundaryPiece& piece, std::size_t n_s, int chi);
GaussBonnetAudit gauss_bonnet_audit(const FreeBoundaryPiece& piece, std::size_t n_s);

/// Builds the meridian over [0, s_max] twice, from the closed-form u and from
/// the integrated u, and returns the largest geodesic distance between
/// corresponding mesh vertices.
double lemma_uniqueness_crosscheck(double c, double H, double u0, int a, double s_max,
                                   double ds = 1e-3, std::size_t n_s = 101,
                                   std::size_t n_theta = 8);

/// Samples the piece on an n_s x n_theta grid about its center.
SampleGrid sample_piece(const FreeBoundaryPiece& piece, std::size_t n_s, std::size_t n_theta);

}  // namespace cmclab
