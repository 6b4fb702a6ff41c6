#include "doctest.h"

#include <cmath>
#include <functional>
#include <tuple>
#include <vector>

#include "cmclab/error.hpp"
#include "cmclab/freeboundary.hpp"
#include "support.hpp"

using namespace cmclab;
using cmclab::test::Gen;
using cmclab::test::kPi;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected cmclab::Error");
  return ErrorCode::IoError;
}

// Critical catenoid with unit neck: the boundary height v solves v tanh v = 1.
double critical_height() {
  double v = 1.2;
  for (int i = 0; i < 50; ++i) {
    const double f = v * std::tanh(v) - 1.0;
    const double df = std::tanh(v) + v / (std::cosh(v) * std::cosh(v));
    v -= f / df;
  }
  return v;
}

// Boundary residuals measured through the ambient embedding.
std::pair<double, double> ambient_residuals(const FreeBoundaryPiece& piece) {
  double r_res = 0, o_res = 0;
  for (double theta : {0.0, 1.1, 2.9, 4.4}) {
    const SurfaceSample s = sample_at(piece.surface, piece.center, piece.s_star, theta);
    r_res = std::max(r_res, std::abs(s.r - piece.R));
    o_res = std::max(o_res, std::abs(s.nu_dot_grad_r));
  }
  return {r_res, o_res};
}

}  // namespace

TEST_CASE("contact_start examples") {
  auto st = contact_start(0, 0, 1, 1);
  CHECK(st.lambda0 == 1.0);
  CHECK(st.state.rho == doctest::Approx(1.0));
  CHECK(st.state.phi == doctest::Approx(kPi / 2));
  CHECK(st.state.t == 0.0);
  st = contact_start(0, 1, 1, 1);
  CHECK(st.lambda0 == 2.0);
  CHECK(st.state.rho == doctest::Approx(0.5));
  st = contact_start(1, 0, 1, 1);
  CHECK(st.state.rho == doctest::Approx(kPi / 4));
  CHECK(code_of([] { contact_start(0, 0, 1, -1); }) == ErrorCode::InvalidGeometry);
  CHECK(code_of([] { contact_start(-1, 0.2, 2, 1); }) == ErrorCode::InvalidGeometry);
  CHECK(code_of([] { contact_start(0, 0, 0, 1); }) == ErrorCode::NonPositiveU0);
}

TEST_CASE("shoot finds the critical catenoid") {
  const auto piece = shoot(0, 0, 1);
  const double v = critical_height();
  CHECK(piece.s_star == doctest::Approx(std::sinh(v)).epsilon(1e-10));
  CHECK(piece.R == doctest::Approx(std::sqrt(std::cosh(v) * std::cosh(v) + v * v)).epsilon(1e-10));
  CHECK(piece.topology == Topology::Annulus);
  // the position vector is tangent to the surface along the boundary
  const SurfaceSample s = sample_at(piece.surface, piece.center, piece.s_star, 0.6);
  CHECK(std::abs(dot(s.pos.x, s.nu.dir)) <= 1e-10);
  const auto [r_res, o_res] = ambient_residuals(piece);
  CHECK(r_res <= 1e-8);
  CHECK(o_res <= 1e-8);
}

TEST_CASE("shoot outcomes") {
  CHECK(code_of([] { shoot(0, 1, 1); }) == ErrorCode::NoContact);
  CHECK(code_of([] { shoot(1, 0, 5); }) == ErrorCode::DomainViolation);
  CHECK(code_of([] { shoot(-1, 2, 1); }) == ErrorCode::NoContact);
  CHECK(code_of([] {
          ShootOptions o;
          o.r_max = 1.5;
          shoot(0, 0, 1, 1, o);
        }) == ErrorCode::NoContact);

  const auto hyp = shoot(-1, 2, 0.2);
  CHECK(std::abs(hyp.r_residual) <= 1e-8);
  CHECK(std::abs(hyp.orth_residual) <= 1e-8);
  const auto [r_res, o_res] = ambient_residuals(hyp);
  CHECK(r_res <= 1e-8);
  CHECK(o_res <= 1e-8);
}

TEST_CASE("shoot_all enumerates later contacts in order") {
  ShootOptions o;
  o.s_max = 20;
  const auto pieces = shoot_all(0, 0.5, 0.7, 1, o);
  REQUIRE(pieces.size() >= 2);
  CHECK(pieces.front().s_star == doctest::Approx(shoot(0, 0.5, 0.7, 1, o).s_star));
  for (std::size_t i = 1; i < pieces.size(); ++i) CHECK(pieces[i].s_star > pieces[i - 1].s_star);
  for (const auto& p : pieces) {
    const auto [r_res, o_res] = ambient_residuals(p);
    CHECK(r_res <= 1e-8);
    CHECK(o_res <= 1e-8);
  }
  CHECK(shoot_all(0, 1, 1).empty());
}

TEST_CASE("shot pieces are symmetric under reflection through P") {
  for (const auto& piece : {shoot(0, 0, 1), shoot(-1, 2, 0.2), shoot(1, 0, 0.5)}) {
    const SpaceForm& sf = piece.surface.profile.space();
    double worst = 0;
    for (double s : {0.1, 0.37, 0.9 * piece.s_star}) {
      for (double theta : {0.0, 2.0}) {
        const Vec4 a = piece.surface.frame.reflect(piece.surface.point(s, theta).x);
        const Vec4 b = piece.surface.point(-s, theta).x;
        worst = std::max(worst, distance(sf, AmbientPoint{a}, AmbientPoint{b}));
      }
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("solve_for_R recovers the normalized critical catenoid") {
  const auto cat = shoot(0, 0, 1);
  SolveOptions opts;
  opts.jobs = 2;
  const SolveResult res = solve_for_R(0, 0, 1.0, 1, opts);
  CHECK(res.u0 == doctest::Approx(1.0 / cat.R).epsilon(1e-9));
  CHECK(std::abs(res.piece.R - 1.0) <= 1e-6);
  CHECK(res.scan.size() == opts.n_scan);
  CHECK(code_of([] { solve_for_R(0, 0, 1e-3); }) == ErrorCode::NoBracket);

  SolveOptions serial;
  const SolveResult again = solve_for_R(0, 0, 1.0, 1, serial);
  CHECK(again.u0 == res.u0);
}

TEST_CASE("spherical_cap examples") {
  const auto disk = spherical_cap(0, 0, 1);
  CHECK(disk.r_residual == 0.0);
  CHECK(disk.orth_residual == 0.0);
  CHECK(disk.topology == Topology::Disk);

  // Euclidean cap: sphere of radius 1/H centered at distance sqrt(R^2 + 1/H^2)
  const auto cap = spherical_cap(0, 1, 1);
  const SampleGrid grid = sample_piece(cap, 9, 6);
  for (const auto& s : grid.samples) {
    const double d_plus = euclidean_norm(s.pos.x - Vec4(0, 0, std::sqrt(2.0)));
    const double d_minus = euclidean_norm(s.pos.x - Vec4(0, 0, -std::sqrt(2.0)));
    CHECK(std::min(d_plus, d_minus) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto [r_res, o_res] = ambient_residuals(cap);
  CHECK(r_res <= 1e-10);
  CHECK(o_res <= 1e-10);
}

TEST_CASE("curved caps are geodesic spheres orthogonal to the ball") {
  for (auto [c, H, R] : std::vector<std::tuple<double, double, double>>{
           {1, 1, 1}, {1, 0.3, 0.5}, {4, 1, 0.6}, {-1, 2, 1}, {-1, 1.2, 2}, {-0.25, 1, 1.5}}) {
    const SpaceForm sf(c);
    const auto cap = spherical_cap(c, H, R);
    // radius from cot(rho_s) = H, center distance from the orthogonal right triangle
    const double k = sf.k();
    const double rho_s = c > 0 ? std::atan(1 / H * k) / k : std::atanh(k / H) / k;
    const double d = c > 0 ? std::acos(std::cos(k * R) * std::cos(k * rho_s)) / k
                           : std::acosh(std::cosh(k * R) * std::cosh(k * rho_s)) / k;
    const AmbientPoint o = sf.origin();
    const AmbientPoint up = exp_map(sf, {o, Vec4(0, 0, 0, 1)}, d);
    const AmbientPoint down = exp_map(sf, {o, Vec4(0, 0, 0, 1)}, -d);
    for (const auto& s : sample_piece(cap, 9, 6).samples) {
      const double dist = std::min(distance(sf, up, s.pos), distance(sf, down, s.pos));
      CAPTURE(c);
      CHECK(dist == doctest::Approx(rho_s).epsilon(1e-10));
    }
    const auto [r_res, o_res] = ambient_residuals(cap);
    CHECK(r_res <= 1e-10);
    CHECK(o_res <= 1e-10);
  }
}

TEST_CASE("spherical_cap errors") {
  CHECK(code_of([] { spherical_cap(0, -1, 1); }) == ErrorCode::NoSuchCap);
  CHECK(code_of([] { spherical_cap(-1, 0.5, 1); }) == ErrorCode::NoSuchCap);
  CHECK(code_of([] { spherical_cap(1, 0, 2); }) == ErrorCode::DomainViolation);
  CHECK(code_of([] { spherical_cap(0, 1, 0); }) == ErrorCode::DomainViolation);
}

TEST_CASE("boundary geodesic curvature") {
  const auto disk = boundary_geodesic_curvature(spherical_cap(0, 0, 1));
  CHECK(disk.analytic == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(disk.finite_difference == doctest::Approx(1.0).epsilon(1e-6));
  for (const auto& piece : {shoot(0, 0, 1), spherical_cap(0, 1, 1), spherical_cap(1, 1, 1),
                            shoot(-1, 2, 0.2), spherical_cap(-1, 2, 1)}) {
    const auto k = boundary_geodesic_curvature(piece);
    CHECK(k.analytic > 1e-6);
    CHECK(std::abs(k.analytic - k.finite_difference) <= 1e-5);
  }
}

TEST_CASE("Gauss-Bonnet audit") {
  const auto disk = gauss_bonnet_audit(spherical_cap(0, 0, 1), 2000);
  CHECK(disk.chi == 1);
  CHECK(std::abs(disk.defect) <= 1e-14);
  CHECK(std::abs(gauss_bonnet_audit(spherical_cap(0, 1, 1), 2000).defect) <= 1e-3);
  const auto cat = gauss_bonnet_audit(shoot(0, 0, 1), 2000);
  CHECK(cat.chi == 0);
  CHECK(std::abs(cat.defect) <= 1e-3);
}

TEST_CASE("Gauss-Bonnet defect decays at second order") {
  for (const auto& piece : {shoot(0, 0, 1), spherical_cap(0, 1, 1), spherical_cap(1, 1, 1),
                            shoot(-1, 2, 0.2)}) {
    const double e1 = std::abs(gauss_bonnet_audit(piece, 250).defect);
    const double e2 = std::abs(gauss_bonnet_audit(piece, 2000).defect);
    const double slope = std::log(e1 / e2) / std::log(1999.0 / 249.0);
    CAPTURE(piece.c);
    CHECK(slope >= 1.8);
    CHECK(slope <= 2.2);
  }
}

TEST_CASE("lemma_uniqueness_crosscheck examples") {
  CHECK(lemma_uniqueness_crosscheck(0, 0, 1, 1, 2.0) <= 1e-6);
  CHECK(lemma_uniqueness_crosscheck(1, 0, 1, 1, 3.0) <= 1e-9);
  CHECK(lemma_uniqueness_crosscheck(-1, 2, 0.5, 1, kPi / std::sqrt(3.0)) <= 1e-6);
}

TEST_CASE("property: shot pieces and caps meet the ball orthogonally with positive kappa_g") {
  Gen g(51);
  int pieces = 0;
  for (int i = 0; i < 120; ++i) {
    const auto t = test::admissible(g, test::branch_of(i));
    try {
      const auto piece = shoot(t.c, t.H, t.u0, t.a);
      ++pieces;
      const auto [r_res, o_res] = ambient_residuals(piece);
      CAPTURE(test::describe(t));
      CHECK(r_res <= 1e-8);
      CHECK(o_res <= 1e-8);
      CHECK(boundary_geodesic_curvature(piece).analytic > 1e-6);
      double r_top = 0;
      for (const auto& smp : sample_piece(piece, 81, 4).samples) r_top = std::max(r_top, smp.r);
      CHECK(r_top <= piece.R + 1e-9);
    } catch (const Error& e) {
      const auto code = e.code();
      CHECK((code == ErrorCode::NoContact || code == ErrorCode::InvalidGeometry ||
             code == ErrorCode::DomainViolation || code == ErrorCode::AxisCollision));
    }
  }
  CHECK(pieces >= 10);
}

TEST_CASE("critical catenoid: equality exactly on the neck ring") {
  const auto cat = shoot(0, 0, 1);
  const SampleGrid grid = sample_piece(cat, 41, 12);
  const PinchReport rep = pinch_report(grid, SpaceForm(0), Topology::Annulus);
  for (const auto& p : rep.samples) {
    if (std::abs(p.base.s) < 1e-12) {
      CHECK(std::abs(p.margin) <= 1e-5);
    } else {
      CHECK(p.margin > 1e-5);
    }
  }
}
