#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cmclab/error.hpp"
#include "cmclab/spaceform.hpp"

namespace cmclab {

/// Orthonormal frame at the base point p: e3 spans the rotation axis, e1 and e2
/// span the totally geodesic plane P through p orthogonal to the axis.
///
/// Points are addressed by Fermi coordinates (t, rho, theta): t is arclength
/// along the axis, rho the distance to the axis, theta the rotation angle:
///
///   X = cs(rho) A(t) + sn(rho) (cos theta e1 + sin theta e2),
///   A(t) = cs(t) p + sn(t) e3.
struct AxisFrame {
  AmbientPoint p;
  Vec4 e1;
  Vec4 e2;
  Vec4 e3;

  static AxisFrame standard(const SpaceForm& sf);

  AmbientPoint point(const SpaceForm& sf, double t, double rho, double theta) const;
  /// Unit vector along increasing rho at (t, rho, theta).
  Vec4 e_rho(const SpaceForm& sf, double t, double rho, double theta) const;
  /// Unit vector along increasing t (parallel to the axis direction).
  Vec4 e_t(const SpaceForm& sf, double t) const;
  /// Unit vector along increasing theta.
  Vec4 e_theta(double theta) const;
  /// Reflection through the plane P (t -> -t). An isometry of every model.
  Vec4 reflect(const Vec4& x) const;
};

/// One point of a meridian. phi is the turning angle of the unit tangent
/// T = cos(phi) e_rho + sin(phi) e_t; the surface normal is
/// nu = -sin(phi) e_rho + cos(phi) e_t. lambda is the principal curvature
/// along parallels and mu the one along the meridian.
struct MeridianState {
  double s = 0.0;
  double t = 0.0;
  double rho = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
};

/// Reflection of a meridian state through P.
MeridianState reflect(const MeridianState& m);

/// Arclength-sampled profile curve in the (t, rho) half-plane together with an
/// evaluator that returns the state at any s inside [s_begin, s_end].
class MeridianProfile {
 public:
  using Evaluator = std::function<MeridianState(double)>;

  MeridianProfile(SpaceForm sf, double H, std::vector<MeridianState> samples, Evaluator eval,
                  double consistency_error = 0.0);

  const SpaceForm& space() const noexcept { return sf_; }
  double mean_curvature() const noexcept { return H_; }
  const std::vector<MeridianState>& samples() const noexcept { return *samples_; }
  double s_begin() const noexcept { return samples_->front().s; }
  double s_end() const noexcept { return samples_->back().s; }

  MeridianState at(double s) const { return eval_(s); }

  /// sup over samples of |lambda - cot(rho) sin(phi)|, the a-posteriori
  /// agreement between the requested parallel curvature and the geometry.
  double consistency_error() const noexcept { return consistency_error_; }

 private:
  SpaceForm sf_;
  double H_;
  std::shared_ptr<const std::vector<MeridianState>> samples_;
  Evaluator eval_;
  double consistency_error_;
};

/// Extend a profile starting at s = 0 on P to [-s_end, s_end] by reflection.
MeridianProfile mirrored(const MeridianProfile& profile);

/// Rotation surface generated by a meridian about the axis of `frame`.
struct RotationSurface {
  MeridianProfile profile;
  AxisFrame frame;

  AmbientPoint point(const MeridianState& m, double theta) const;
  /// Unit normal nu at the point (m, theta).
  Vec4 normal(const MeridianState& m, double theta) const;
  /// Unit meridian tangent at (m, theta).
  Vec4 meridian_tangent(const MeridianState& m, double theta) const;

  AmbientPoint point(double s, double theta) const { return point(profile.at(s), theta); }
};

/// Principal curvatures from u = |lambda - H|^{-1}: lambda = H + a/u,
/// mu = 2H - lambda. Throws NonPositiveU for u <= 0.
std::pair<double, double> principal_from_u(double u, int a, double H);

/// |Phi|^2 = (l1 - H)^2 + (l2 - H)^2. Throws InconsistentMeanCurvature when
/// H differs from (l1 + l2)/2 by more than 1e-10.
double phi_norm_sq(double l1, double l2, double H);

/// l1 * l2 = H^2 - |Phi|^2 / 2.
double gauss_product(double H, double phi_sq);

/// Distance rho0 from the axis at which a parallel circle on P, met
/// orthogonally by the meridian, has curvature lambda0 (cot_c(rho0) = lambda0).
/// Throws InvalidGeometry when no such rho0 exists (lambda0 <= 0, or
/// lambda0 <= sqrt(-c) in the hyperbolic model).
double axis_distance_for_parallel_curvature(const SpaceForm& sf, double lambda0);

using CurvatureFn = std::function<double(double)>;

/// State at s = 0 of the symmetric start on P: t = 0, phi = pi/2 and
/// cot_c(rho0) = lambda(0).
MeridianState meridian_start(const SpaceForm& sf, const CurvatureFn& lambda, const CurvatureFn& mu);

/// One classical RK4 step of the frame equations below; h may be negative.
MeridianState advance_meridian(const SpaceForm& sf, const CurvatureFn& lambda,
                               const CurvatureFn& mu, const MeridianState& m, double h);

/// Integrates the meridian with prescribed principal curvatures from the
/// symmetric start on P: s = 0, t = 0, phi = pi/2, cot_c(rho0) = lambda(0).
/// The frame equations are
///   t' = sin(phi) / cs(rho),  rho' = cos(phi),
///   phi' = mu + c tan_c(rho) sin(phi) + (lambda - cot_c(rho) sin(phi)) / 2
/// advanced with classical RK4. The range [s_begin, s_end] must contain 0.
///
/// Throws InconsistentMeanCurvature if lambda + mu drifts from 2H by more than
/// 1e-8, AxisCollision if rho reaches 0, and OutOfDomain if a spherical profile
/// reaches the polar circle rho = pi/(2 sqrt c).
MeridianProfile reconstruct_meridian(const SpaceForm& sf, CurvatureFn lambda, CurvatureFn mu,
                                     double s_begin, double s_end, double ds);

inline MeridianProfile reconstruct_meridian(const SpaceForm& sf, CurvatureFn lambda,
                                            CurvatureFn mu, double s_max, double ds) {
  return reconstruct_meridian(sf, std::move(lambda), std::move(mu), 0.0, s_max, ds);
}

/// Fully populated surface point relative to a designated center.
struct SurfaceSample {
  std::size_t i_s = 0;
  std::size_t i_theta = 0;
  double s = 0.0;
  double theta = 0.0;
  double rho = 0.0;
  AmbientPoint pos;
  TangentVec nu;
  double r = 0.0;
  /// <nu, grad r>; zero at the center itself.
  double nu_dot_grad_r = 0.0;
  /// f'(r) <nu, grad r>.
  double grad_nu_f = 0.0;
  double lambda1 = 0.0;  // along parallels
  double lambda2 = 0.0;  // along the meridian
  double H = 0.0;
  double phi_sq = 0.0;
  double K = 0.0;
};

/// Row-major (s outer, theta inner) grid of samples.
struct SampleGrid {
  std::size_t n_s = 0;
  std::size_t n_theta = 0;
  std::vector<SurfaceSample> samples;

  const SurfaceSample& at(std::size_t i_s, std::size_t i_theta) const {
    return samples[i_s * n_theta + i_theta];
  }
};

/// Raised by sample() when a point violates r < pi/(2 sqrt c).
class SampleDomainError : public Error {
 public:
  SampleDomainError(const SurfaceSample& offending, const std::string& detail)
      : Error(ErrorCode::DomainViolation, detail), sample_(offending) {}
  const SurfaceSample& offending() const noexcept { return sample_; }

 private:
  SurfaceSample sample_;
};

/// Uniform grid over [s_begin, s_end] x [0, 2 pi). Throws SampleDomainError.
SampleGrid sample(const RotationSurface& surface, const AmbientPoint& center, std::size_t n_s,
                  std::size_t n_theta);

/// Evaluate one sample at an arbitrary meridian parameter and angle.
SurfaceSample sample_at(const RotationSurface& surface, const AmbientPoint& center, double s,
                        double theta);

/// Curvature data recovered by finite differences of an embedding.
struct FundamentalFormFd {
  double lambda1 = 0.0;  // larger principal curvature
  double lambda2 = 0.0;
  double H = 0.0;
  double phi_sq = 0.0;
  double K_extrinsic = 0.0;
  /// Normal curvatures along the coordinate directions u and v.
  double kappa_u = 0.0;
  double kappa_v = 0.0;
  Vec4 normal;
};

using Patch = std::function<Vec4(double, double)>;

/// Second fundamental form of a parametrized patch by central differences.
/// The normal is flipped to agree with `orientation` when one is given.
/// Throws DegenerateMetric when det(I) < 1e-12.
FundamentalFormFd second_fundamental_form_fd(const SpaceForm& sf, const Patch& patch, double u,
                                             double v, double h = 1e-4,
                                             const Vec4* orientation = nullptr);

struct TriMesh {
  std::vector<Vec4> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::vector<Vec4> normals;
  std::map<std::string, std::vector<double>> fields;
};

/// Quad grid over the sampled surface split into triangles, closed along the
/// angular seam. Triangles that collapse on the axis are dropped.
TriMesh mesh(const RotationSurface& surface, std::size_t n_s, std::size_t n_theta);

/// Area of a triangle measured with chords in the embedding.
double chordal_triangle_area(const SpaceForm& sf, const Vec4& a, const Vec4& b, const Vec4& c);

double chordal_area(const SpaceForm& sf, const TriMesh& mesh);

}  // namespace cmclab
