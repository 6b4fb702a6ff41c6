#include "cmclab/spaceform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "cmclab/error.hpp"

namespace cmclab {

const char* to_string(Model model) noexcept {
  switch (model) {
    case Model::Euclidean: return "Euclidean";
    case Model::Sphere: return "Sphere";
    case Model::Hyperbolic: return "Hyperbolic";
  }
  return "Unknown";
}

SpaceForm::SpaceForm(double curvature)
    : c_(curvature),
      k_(std::sqrt(std::abs(curvature))),
      model_(curvature > 0.0   ? Model::Sphere
             : curvature < 0.0 ? Model::Hyperbolic
                               : Model::Euclidean) {}

double SpaceForm::inner(const Vec4& a, const Vec4& b) const noexcept {
  switch (model_) {
    case Model::Euclidean: return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    case Model::Sphere: return dot(a, b);
    case Model::Hyperbolic: return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
  }
  return 0.0;
}

double SpaceForm::norm(const Vec4& a) const noexcept { return std::sqrt(std::abs(inner(a, a))); }

double SpaceForm::sn(double r) const noexcept {
  switch (model_) {
    case Model::Euclidean: return r;
    case Model::Sphere: return std::sin(k_ * r) / k_;
    case Model::Hyperbolic: return std::sinh(k_ * r) / k_;
  }
  return r;
}

double SpaceForm::cs(double r) const noexcept {
  switch (model_) {
    case Model::Euclidean: return 1.0;
    case Model::Sphere: return std::cos(k_ * r);
    case Model::Hyperbolic: return std::cosh(k_ * r);
  }
  return 1.0;
}

double SpaceForm::cs_minus_one(double r) const noexcept {
  switch (model_) {
    case Model::Euclidean: return 0.0;
    case Model::Sphere: {
      const double h = std::sin(0.5 * k_ * r);
      return -2.0 * h * h;
    }
    case Model::Hyperbolic: {
      const double h = std::sinh(0.5 * k_ * r);
      return 2.0 * h * h;
    }
  }
  return 0.0;
}

double SpaceForm::cot(double r) const noexcept { return cs(r) / sn(r); }

double SpaceForm::tan(double r) const noexcept { return sn(r) / cs(r); }

double SpaceForm::asn(double y) const noexcept {
  switch (model_) {
    case Model::Euclidean: return y;
    case Model::Sphere: return std::asin(std::clamp(k_ * y, -1.0, 1.0)) / k_;
    case Model::Hyperbolic: return std::asinh(k_ * y) / k_;
  }
  return y;
}

double SpaceForm::hemisphere_radius() const noexcept {
  if (model_ == Model::Sphere) return 0.5 * std::numbers::pi / k_;
  return std::numeric_limits<double>::infinity();
}

AmbientPoint SpaceForm::origin() const noexcept {
  if (model_ == Model::Euclidean) return {Vec4{0.0, 0.0, 0.0, 0.0}};
  return {Vec4{1.0 / k_, 0.0, 0.0, 0.0}};
}

bool SpaceForm::contains(const Vec4& x, double tol) const noexcept {
  for (double v : x.c) {
    if (!std::isfinite(v)) return false;
  }
  switch (model_) {
    case Model::Euclidean: return std::abs(x[3]) <= tol;
    case Model::Sphere: return std::abs(c_ * inner(x, x) - 1.0) <= tol;
    case Model::Hyperbolic: return x[0] > 0.0 && std::abs(c_ * inner(x, x) - 1.0) <= tol;
  }
  return false;
}

AmbientPoint SpaceForm::project(const Vec4& x) const noexcept {
  switch (model_) {
    case Model::Euclidean: return {Vec4{x[0], x[1], x[2], 0.0}};
    case Model::Sphere: return {x / (k_ * euclidean_norm(x))};
    case Model::Hyperbolic: {
      const double spatial = x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
      return {Vec4{std::sqrt(1.0 / (k_ * k_) + spatial), x[1], x[2], x[3]}};
    }
  }
  return {x};
}

Vec4 SpaceForm::tangent_part(const AmbientPoint& p, const Vec4& w) const noexcept {
  if (model_ == Model::Euclidean) return Vec4{w[0], w[1], w[2], 0.0};
  // <p,p> = 1/c on both curved models.
  return w - (c_ * inner(w, p.x)) * p.x;
}

AmbientPoint SpaceForm::point(const Vec4& x, double tol) const {
  if (!contains(x, tol)) {
    throw Error(ErrorCode::OutOfDomain,
                fmt::format("({}, {}, {}, {}) is not on the {} model with c = {}", x[0], x[1],
                            x[2], x[3], to_string(model_), c_));
  }
  return {x};
}

double distance(const SpaceForm& sf, const AmbientPoint& p, const AmbientPoint& q) {
  const Vec4 diff = q.x - p.x;
  const double chord = sf.norm(diff);
  switch (sf.model()) {
    case Model::Euclidean: return chord;
    case Model::Sphere: {
      const double anti = euclidean_norm(q.x + p.x);
      if (anti * sf.k() < 1e-12) {
        throw Error(ErrorCode::AntipodalPoints, "points are antipodal on the sphere");
      }
      return 2.0 * std::atan2(chord, anti) / sf.k();
    }
    case Model::Hyperbolic: return 2.0 * std::asinh(0.5 * sf.k() * chord) / sf.k();
  }
  return chord;
}

TangentVec grad_r(const SpaceForm& sf, const AmbientPoint& p, const AmbientPoint& x) {
  const double r = distance(sf, p, x);
  if (!(r > 0.0)) {
    throw Error(ErrorCode::DegenerateBase, "gradient of the distance is undefined at its base point");
  }
  // Velocity at x of the unit-speed geodesic from p: (cs(r) x - p) / sn(r).
  Vec4 dir = ((x.x - p.x) + sf.cs_minus_one(r) * x.x) / sf.sn(r);
  dir = sf.tangent_part(x, dir);
  dir = dir / sf.norm(dir);
  return {x, dir};
}

FValues f_eval(const SpaceForm& sf, double r) {
  if (!(r >= 0.0)) {
    throw Error(ErrorCode::OutOfDomain, fmt::format("distance r = {} is negative", r));
  }
  const double k = sf.k();
  switch (sf.model()) {
    case Model::Euclidean: return {0.5 * r * r, r, 1.0};
    case Model::Hyperbolic: {
      const double ch = std::cosh(k * r);
      return {ch, k * std::sinh(k * r), k * k * ch};
    }
    case Model::Sphere: {
      if (r >= sf.hemisphere_radius()) {
        throw Error(ErrorCode::OutOfDomain,
                    fmt::format("r = {} is not below pi/(2 sqrt c) = {}", r, sf.hemisphere_radius()));
      }
      const double co = std::cos(k * r);
      return {co, -k * std::sin(k * r), -k * k * co};
    }
  }
  return {0.0, 0.0, 0.0};
}

AmbientPoint exp_map(const SpaceForm& sf, const TangentVec& v, double t) {
  return sf.project(sf.cs(t) * v.base.x + sf.sn(t) * v.dir);
}

TangentVec geodesic_flow(const SpaceForm& sf, const TangentVec& v, double t) {
  const AmbientPoint pos = exp_map(sf, v, t);
  Vec4 vel = (-sf.c() * sf.sn(t)) * v.base.x + sf.cs(t) * v.dir;
  vel = sf.tangent_part(pos, vel);
  return {pos, vel / sf.norm(vel)};
}

}  // namespace cmclab
