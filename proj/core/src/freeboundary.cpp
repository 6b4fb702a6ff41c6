#include "cmclab/freeboundary.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include <fmt/format.h>

namespace cmclab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Probe {
  double r = 0.0;
  double g = 0.0;
};

// With the center at t = rho = 0, cs(r) = cs(rho) cs(t), so in the frame
// (e_rho, e_t) the gradient of r is (sn(rho) cs(t), sn(t)) / sn(r). Working in
// these coordinates avoids cancellation in the Minkowski form far from p.
Probe probe(const SpaceForm& sf, const AxisFrame& frame, const AmbientPoint& center,
            const MeridianState& m) {
  const AmbientPoint x = frame.point(sf, m.t, m.rho, 0.0);
  Probe out;
  out.r = distance(sf, center, x);
  const double dr_rho = sf.sn(m.rho) * sf.cs(m.t);
  const double dr_t = sf.sn(m.t);
  out.g = (-std::sin(m.phi) * dr_rho + std::cos(m.phi) * dr_t) / sf.sn(out.r);
  return out;
}

Probe probe(const RotationSurface& surface, const AmbientPoint& center, const MeridianState& m) {
  return probe(surface.profile.space(), surface.frame, center, m);
}

void check_state(const SpaceForm& sf, const MeridianState& m) {
  if (!(m.rho > 0.0)) {
    throw Error(ErrorCode::AxisCollision, fmt::format("meridian reaches the axis at s = {}", m.s));
  }
  if (sf.model() == Model::Sphere && sf.cs(m.rho) <= 1e-12) {
    throw Error(ErrorCode::DomainViolation,
                fmt::format("meridian leaves the hemisphere at s = {}", m.s));
  }
}

// Fermi coordinates (t, rho) and turning angle of a point X with unit
// meridian tangent T, both in the theta = 0 half-plane of `frame`.
MeridianState fermi_state(const SpaceForm& sf, const AxisFrame& frame, const Vec4& X,
                          const Vec4& T, double s, double lambda) {
  const double alpha = sf.inner(X, frame.e1);
  const double beta = sf.inner(X, frame.e2);
  const double gamma = sf.inner(X, frame.e3);
  MeridianState m;
  m.s = s;
  m.rho = sf.asn(std::hypot(alpha, beta));
  switch (sf.model()) {
    case Model::Euclidean: m.t = gamma; break;
    case Model::Sphere: {
      const double delta = sf.c() * sf.inner(X, frame.p.x);
      m.t = std::atan2(sf.k() * gamma, delta) / sf.k();
      break;
    }
    case Model::Hyperbolic: {
      const double delta = sf.c() * sf.inner(X, frame.p.x);
      m.t = std::atanh(sf.k() * gamma / delta) / sf.k();
      break;
    }
  }
  m.phi = std::atan2(sf.inner(T, frame.e_t(sf, m.t)), sf.inner(T, frame.e_rho(sf, m.t, m.rho, 0.0)));
  m.lambda = lambda;
  m.mu = lambda;
  return m;
}

FreeBoundaryPiece finish_delaunay_piece(const DelaunayParams& p, double s_star, double R,
                                        double ds) {
  const SpaceForm sf(p.c);
  FreeBoundaryPiece piece{PieceKind::Delaunay,
                          Topology::Annulus,
                          delaunay_surface(p, s_star, ds, true),
                          sf.origin(),
                          p.c,
                          p.H,
                          p,
                          R,
                          s_star,
                          0.0,
                          0.0};
  const Probe end = probe(piece.surface, piece.center, piece.surface.profile.samples().back());
  piece.r_residual = end.r - R;
  piece.orth_residual = end.g;
  return piece;
}

std::vector<FreeBoundaryPiece> shoot_impl(double c, double H, double u0, int a,
                                          const ShootOptions& opts, bool first_only) {
  const ContactStart start = contact_start(c, H, u0, a);
  const SpaceForm sf(c);
  const auto [lambda, mu] = delaunay_curvatures(start.params);
  const AxisFrame frame = AxisFrame::standard(sf);
  const AmbientPoint center = sf.origin();
  const double hemi = sf.hemisphere_radius();

  std::vector<FreeBoundaryPiece> pieces;
  MeridianState m = start.state;
  Probe pr = probe(sf, frame, center, m);
  // largest r met so far; a contact whose piece leaves the ball is skipped
  double r_peak = pr.r;
  const auto n = static_cast<std::size_t>(std::ceil(opts.s_max / opts.ds - 1e-9));
  for (std::size_t i = 0; i < n; ++i) {
    const MeridianState next = advance_meridian(sf, lambda, mu, m, opts.ds);
    check_state(sf, next);
    const Probe pn = probe(sf, frame, center, next);
    if (pn.r >= hemi) {
      throw Error(ErrorCode::DomainViolation,
                  fmt::format("r = {} reaches pi/(2 sqrt c) = {} at s = {} before contact", pn.r,
                              hemi, next.s));
    }
    if ((pr.g < 0.0 && pn.g >= 0.0) || (pr.g > 0.0 && pn.g <= 0.0)) {
      double lo = 0.0, hi = opts.ds;
      double g_lo = pr.g;
      Probe at_hi = pn;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, m.s); ++it) {
        const double mid = 0.5 * (lo + hi);
        const Probe pm = probe(sf, frame, center, advance_meridian(sf, lambda, mu, m, mid));
        if (pm.g == 0.0) {
          lo = hi = mid;
          at_hi = pm;
          break;
        }
        if ((pm.g < 0.0) == (g_lo < 0.0)) {
          lo = mid;
          g_lo = pm.g;
        } else {
          hi = mid;
          at_hi = pm;
        }
      }
      const double s_star = m.s + hi;
      const double R = at_hi.r;
      if (r_peak > R + 1e-9 * std::max(1.0, R)) {
        // reached from outside the ball
      } else if (R > opts.r_max) {
        if (first_only) {
          throw Error(ErrorCode::NoContact,
                      fmt::format("first contact at R = {} exceeds the largest admissible R = {}",
                                  R, opts.r_max));
        }
      } else {
        pieces.push_back(finish_delaunay_piece(start.params, s_star, R, opts.ds));
        if (first_only) return pieces;
      }
    }
    m = next;
    pr = pn;
    r_peak = std::max(r_peak, pn.r);
  }
  if (first_only) {
    throw Error(ErrorCode::NoContact,
                fmt::format("no orthogonal contact for c = {}, H = {}, u0 = {} up to s = {}", c, H,
                            u0, opts.s_max));
  }
  return pieces;
}

}  // namespace

const char* to_string(PieceKind k) noexcept { return k == PieceKind::Cap ? "Cap" : "Delaunay"; }

std::pair<CurvatureFn, CurvatureFn> curvatures_from_u(std::function<double(double)> u, int a,
                                                      double H) {
  const double sa = a >= 0 ? 1.0 : -1.0;
  CurvatureFn lambda = [u, sa, H](double s) { return H + sa / u(s); };
  CurvatureFn mu = [u, sa, H](double s) { return H - sa / u(s); };
  return {lambda, mu};
}

std::pair<CurvatureFn, CurvatureFn> delaunay_curvatures(const DelaunayParams& p) {
  return curvatures_from_u([p](double s) { return u_closed(p, s); }, p.a, p.H);
}

RotationSurface delaunay_surface(const DelaunayParams& p, double s_end, double ds, bool symmetric) {
  const SpaceForm sf(p.c);
  const auto [lambda, mu] = delaunay_curvatures(p);
  MeridianProfile half = reconstruct_meridian(sf, lambda, mu, s_end, ds);
  return {symmetric ? mirrored(half) : half, AxisFrame::standard(sf)};
}

ContactStart contact_start(double c, double H, double u0, int a) {
  ContactStart out;
  out.params = make_params(c, H, u0, a);
  const SpaceForm sf(c);
  const auto [lambda, mu] = delaunay_curvatures(out.params);
  out.lambda0 = lambda(0.0);
  out.state = meridian_start(sf, lambda, mu);
  return out;
}

FreeBoundaryPiece shoot(double c, double H, double u0, int a, const ShootOptions& opts) {
  return shoot_impl(c, H, u0, a, opts, true).front();
}

std::vector<FreeBoundaryPiece> shoot_all(double c, double H, double u0, int a,
                                         const ShootOptions& opts) {
  return shoot_impl(c, H, u0, a, opts, false);
}

SolveResult solve_for_R(double c, double H, double R_target, int a, const SolveOptions& opts) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto radius = [&](double u0) {
    try {
      return shoot(c, H, u0, a, opts.shoot).R;
    } catch (const Error&) {
      return nan;
    }
  };

  std::vector<std::pair<double, double>> scan;
  std::size_t iterations = 0;
  const std::size_t n = std::max<std::size_t>(opts.n_scan, 2);
  scan.resize(n);
  const double ratio = std::log(opts.u_hi / opts.u_lo);
  for (std::size_t i = 0; i < n; ++i) {
    scan[i].first = opts.u_lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    for (auto& e : scan) e.second = radius(e.first);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) scan[i].second = radius(scan[i].first);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::size_t bracket = n;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double f0 = scan[i].second - R_target;
    const double f1 = scan[i + 1].second - R_target;
    if (std::isfinite(f0) && std::isfinite(f1) && f0 * f1 <= 0.0) {
      bracket = i;
      break;
    }
  }
  if (bracket == n) {
    throw Error(ErrorCode::NoBracket,
                fmt::format("R(u0) - {} keeps its sign on u0 in [{}, {}]", R_target, opts.u_lo,
                            opts.u_hi));
  }

  double x0 = scan[bracket].first, f0 = scan[bracket].second - R_target;
  double x1 = scan[bracket + 1].first, f1 = scan[bracket + 1].second - R_target;
  double lo = x0, f_lo = f0, hi = x1;
  double best = std::abs(f0) <= std::abs(f1) ? x0 : x1;
  double f_best = std::min(std::abs(f0), std::abs(f1));
  for (std::size_t it = 0; it < 100 && f_best > opts.tol; ++it) {
    iterations = it + 1;
    double x = f1 != f0 ? x1 - f1 * (x1 - x0) / (f1 - f0) : 0.5 * (lo + hi);
    if (!(x > lo && x < hi) || it % 4 == 3) x = 0.5 * (lo + hi);
    const double fx = radius(x) - R_target;
    if (!std::isfinite(fx)) {
      throw Error(ErrorCode::NoBracket,
                  fmt::format("shoot failed at u0 = {} inside the bracket [{}, {}]", x, lo, hi));
    }
    if (std::abs(fx) < f_best) {
      f_best = std::abs(fx);
      best = x;
    }
    if ((fx < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
    }
    x0 = x1;
    f0 = f1;
    x1 = x;
    f1 = fx;
    if (hi - lo <= 1e-15 * hi) break;
  }
  return SolveResult{best, shoot(c, H, best, a, opts.shoot), std::move(scan), iterations};
}

FreeBoundaryPiece spherical_cap(double c, double H, double R, double ds) {
  const SpaceForm sf(c);
  if (!(R > 0.0) || R >= sf.hemisphere_radius()) {
    throw Error(ErrorCode::DomainViolation,
                fmt::format("ball radius R = {} is outside (0, {})", R, sf.hemisphere_radius()));
  }
  const AxisFrame frame = AxisFrame::standard(sf);
  MeridianProfile::Evaluator eval;
  double s_star = R;

  if (H == 0.0) {
    eval = [](double s) { return MeridianState{s, 0.0, s, 0.0, 0.0, 0.0}; };
  } else {
    if (H < 0.0 || (sf.model() == Model::Hyperbolic && H <= sf.k())) {
      throw Error(ErrorCode::NoSuchCap,
                  fmt::format("no geodesic sphere of mean curvature {} exists for c = {}", H, c));
    }
    double rho_s = 0.0, d = 0.0;
    const double k = sf.k();
    switch (sf.model()) {
      case Model::Euclidean:
        rho_s = 1.0 / H;
        d = std::hypot(R, rho_s);
        break;
      case Model::Sphere:
        rho_s = std::atan(k / H) / k;
        d = std::acos(std::cos(k * R) * std::cos(k * rho_s)) / k;
        break;
      case Model::Hyperbolic:
        rho_s = std::atanh(k / H) / k;
        d = std::acosh(std::cosh(k * R) * std::cosh(k * rho_s)) / k;
        break;
    }
    const double psi_star = std::acos(std::clamp(sf.tan(rho_s) / sf.tan(d), -1.0, 1.0));
    const double radius = sf.sn(rho_s);
    s_star = radius * psi_star;
    const Vec4 Q = frame.point(sf, d, 0.0, 0.0).x;
    const Vec4 V = -frame.e_t(sf, d);
    const Vec4 E = frame.e1;
    eval = [sf, frame, rho_s, radius, Q, V, E, H](double s) {
      const double psi = s / radius;
      const Vec4 X = sf.project(sf.cs(rho_s) * Q + radius * (std::cos(psi) * V + std::sin(psi) * E)).x;
      const Vec4 T = -std::sin(psi) * V + std::cos(psi) * E;
      return fermi_state(sf, frame, X, T, s, H);
    };
  }

  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(s_star / ds - 1e-9)));
  std::vector<MeridianState> samples;
  samples.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    samples.push_back(eval(i == n ? s_star : s_star * static_cast<double>(i) / static_cast<double>(n)));
  }
  FreeBoundaryPiece piece{PieceKind::Cap,
                          Topology::Disk,
                          RotationSurface{MeridianProfile(sf, H, std::move(samples), eval), frame},
                          sf.origin(),
                          c,
                          H,
                          std::nullopt,
                          R,
                          s_star,
                          0.0,
                          0.0};
  const Probe end = probe(piece.surface, piece.center, piece.surface.profile.samples().back());
  piece.r_residual = end.r - R;
  piece.orth_residual = end.g;
  return piece;
}

BoundaryCurvature boundary_geodesic_curvature(const FreeBoundaryPiece& piece, double h) {
  const RotationSurface& surf = piece.surface;
  const SpaceForm& sf = surf.profile.space();
  const double s_b = surf.profile.s_end();
  const MeridianState m = surf.profile.at(s_b);

  BoundaryCurvature out;
  out.analytic = sf.cot(m.rho) * std::cos(m.phi);

  const double theta = 0.0;
  const Vec4 x = surf.point(m, theta).x;
  const Vec4 xp = surf.point(m, theta + h).x;
  const Vec4 xm = surf.point(m, theta - h).x;
  const AmbientPoint base{x};
  const Vec4 vel = (xp - xm) / (2.0 * h);
  const Vec4 acc = sf.tangent_part(base, (xp - 2.0 * x + xm) / (h * h));
  const double speed_sq = sf.inner(vel, vel);

  const double hs = 1e-5;
  Vec4 eta = -(surf.point(s_b + hs, theta).x - surf.point(s_b - hs, theta).x) / (2.0 * hs);
  eta = sf.tangent_part(base, eta);
  eta = eta / sf.norm(eta);
  out.finite_difference = sf.inner(acc, eta) / speed_sq;
  return out;
}

GaussBonnetAudit gauss_bonnet_audit(const FreeBoundaryPiece& piece, std::size_t n_s, int chi) {
  const RotationSurface& surf = piece.surface;
  const SpaceForm& sf = surf.profile.space();
  const double a = surf.profile.s_begin();
  const double b = surf.profile.s_end();
  n_s = std::max<std::size_t>(n_s, 2);
  const double h = (b - a) / static_cast<double>(n_s - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < n_s; ++i) {
    const double s = i + 1 == n_s ? b : a + h * static_cast<double>(i);
    const MeridianState m = surf.profile.at(s);
    const double F = (sf.c() + m.lambda * m.mu) * sf.sn(m.rho);
    sum += (i == 0 || i + 1 == n_s) ? 0.5 * F : F;
  }
  GaussBonnetAudit out;
  out.chi = chi;
  out.interior = 2.0 * kPi * h * sum;
  const MeridianState end = surf.profile.at(b);
  const double kappa = sf.cot(end.rho) * std::cos(end.phi);
  const double circles = piece.topology == Topology::Annulus ? 2.0 : 1.0;
  out.boundary = circles * 2.0 * kPi * sf.sn(end.rho) * kappa;
  out.defect = out.interior + out.boundary - 2.0 * kPi * chi;
  return out;
}

GaussBonnetAudit gauss_bonnet_audit(const FreeBoundaryPiece& piece, std::size_t n_s) {
  return gauss_bonnet_audit(piece, n_s, piece.topology == Topology::Disk ? 1 : 0);
}

double lemma_uniqueness_crosscheck(double c, double H, double u0, int a, double s_max, double ds,
                                   std::size_t n_s, std::size_t n_theta) {
  const DelaunayParams p = make_params(c, H, u0, a);
  const SpaceForm sf(c);

  const auto [l1, m1] = delaunay_curvatures(p);
  const RotationSurface closed{reconstruct_meridian(sf, l1, m1, s_max, ds), AxisFrame::standard(sf)};

  const USolution num = u_numeric(p, s_max + ds, 0.5 * ds);
  if (num.breakdown_s) {
    throw Error(ErrorCode::Breakdown, fmt::format("u reaches the floor at s = {}", *num.breakdown_s));
  }
  const auto [l2, m2] = curvatures_from_u(u_interpolant(num), p.a, H);
  const RotationSurface numeric{reconstruct_meridian(sf, l2, m2, s_max, ds), AxisFrame::standard(sf)};

  const TriMesh a_mesh = mesh(closed, n_s, n_theta);
  const TriMesh b_mesh = mesh(numeric, n_s, n_theta);
  double worst = 0.0;
  for (std::size_t i = 0; i < a_mesh.vertices.size(); ++i) {
    worst = std::max(worst, distance(sf, {a_mesh.vertices[i]}, {b_mesh.vertices[i]}));
  }
  return worst;
}

SampleGrid sample_piece(const FreeBoundaryPiece& piece, std::size_t n_s, std::size_t n_theta) {
  return sample(piece.surface, piece.center, n_s, n_theta);
}

}  // namespace cmclab
