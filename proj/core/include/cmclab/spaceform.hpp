#pragma once

#include <cstddef>
#include <limits>

#include "cmclab/vec4.hpp"

namespace cmclab {

enum class Model { Euclidean, Sphere, Hyperbolic };

const char* to_string(Model model) noexcept;

/// A point of the ambient model. For c = 0 the point lives in flat 3-space;
/// for c > 0 on the sphere |x|^2 = 1/c in R^4; for c < 0 on the upper sheet of
/// the hyperboloid -x0^2 + x1^2 + x2^2 + x3^2 = 1/c in Minkowski 4-space.
struct AmbientPoint {
  Vec4 x;
};

/// A tangent vector `dir` attached at `base`.
struct TangentVec {
  AmbientPoint base;
  Vec4 dir;
};

/// Simply connected 3-dimensional space form of constant sectional curvature
/// c, realized by its standard embedding at radius 1/sqrt|c|.
///
/// All radial quantities are expressed through the generalized trigonometric
/// pair sn/cs, the solutions of y'' = -c y with sn(0) = 0, sn'(0) = 1 and
/// cs = sn'. With these the geodesic through p with unit velocity v is
/// cs(t) p + sn(t) v in every model.
class SpaceForm {
 public:
  explicit SpaceForm(double curvature);

  double c() const noexcept { return c_; }
  /// sqrt|c|; zero in the Euclidean model.
  double k() const noexcept { return k_; }
  Model model() const noexcept { return model_; }
  /// Number of meaningful coordinates: 3 (Euclidean) or 4.
  std::size_t dim() const noexcept { return model_ == Model::Euclidean ? 3 : 4; }

  /// Ambient bilinear form of the embedding (Euclidean, Euclidean R^4, or
  /// Minkowski with signature (-,+,+,+)).
  double inner(const Vec4& a, const Vec4& b) const noexcept;
  /// sqrt|<a,a>|.
  double norm(const Vec4& a) const noexcept;

  double sn(double r) const noexcept;
  double cs(double r) const noexcept;
  /// cs(r) - 1 without cancellation for small r.
  double cs_minus_one(double r) const noexcept;
  /// cs(r) / sn(r): curvature of a geodesic circle of radius r.
  double cot(double r) const noexcept;
  /// sn(r) / cs(r).
  double tan(double r) const noexcept;
  /// Inverse of sn on [0, pi/(2k)] (sphere) or [0, inf).
  double asn(double y) const noexcept;

  /// pi/(2 sqrt c) for the sphere, +inf otherwise. The comparison function f
  /// and every free-boundary construction require r below this bound.
  double hemisphere_radius() const noexcept;

  /// Base point of the standard frame: the origin (c = 0), (1/k,0,0,0) else.
  AmbientPoint origin() const noexcept;

  /// True when x satisfies the model constraint to relative tolerance tol.
  bool contains(const Vec4& x, double tol = 1e-12) const noexcept;
  /// Renormalize a coordinate vector onto the model.
  AmbientPoint project(const Vec4& x) const noexcept;
  /// Remove the component of w normal to the model at p.
  Vec4 tangent_part(const AmbientPoint& p, const Vec4& w) const noexcept;

  /// Validated construction; throws OutOfDomain when x is off the model.
  AmbientPoint point(const Vec4& x, double tol = 1e-12) const;

 private:
  double c_;
  double k_;
  Model model_;
};

/// Geodesic distance. Throws AntipodalPoints on the sphere for (numerically)
/// antipodal p, q.
double distance(const SpaceForm& sf, const AmbientPoint& p, const AmbientPoint& q);

/// Unit gradient at x of the distance from p. Throws DegenerateBase when
/// x == p and AntipodalPoints when x is antipodal to p.
TangentVec grad_r(const SpaceForm& sf, const AmbientPoint& p, const AmbientPoint& x);

/// Comparison function f(r) and its first two derivatives:
/// r^2/2 (c = 0), cosh(kr) (c = -k^2), cos(kr) (c = k^2).
struct FValues {
  double f;
  double df;
  double d2f;
};

/// Throws OutOfDomain for r < 0 or, when c > 0, r >= pi/(2 sqrt c).
FValues f_eval(const SpaceForm& sf, double r);

/// Point at arclength t along the geodesic with initial unit velocity v.dir.
AmbientPoint exp_map(const SpaceForm& sf, const TangentVec& v, double t);

/// Position and velocity after following the geodesic for arclength t.
TangentVec geodesic_flow(const SpaceForm& sf, const TangentVec& v, double t);

}  // namespace cmclab
