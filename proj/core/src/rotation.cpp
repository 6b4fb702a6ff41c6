#include "cmclab/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace cmclab {

namespace {

constexpr double kPi = std::numbers::pi;

struct FrameState {
  double t;
  double rho;
  double phi;
};

FrameState operator+(const FrameState& a, const FrameState& b) {
  return {a.t + b.t, a.rho + b.rho, a.phi + b.phi};
}
FrameState operator*(double s, const FrameState& a) { return {s * a.t, s * a.rho, s * a.phi}; }

// phi' carries the feedback term (lambda - cot_c(rho) sin(phi)) / 2, which
// vanishes on exact solutions; without it the parallel-curvature constraint
// drifts exponentially in the curved models.
FrameState frame_rhs(const SpaceForm& sf, const FrameState& y, double lambda, double mu) {
  const double sp = std::sin(y.phi);
  return {sp / sf.cs(y.rho), std::cos(y.phi),
          mu + sf.c() * sf.tan(y.rho) * sp + 0.5 * (lambda - sf.cot(y.rho) * sp)};
}

FrameState rk4_step(const SpaceForm& sf, const CurvatureFn& lambda, const CurvatureFn& mu, double s,
                    const FrameState& y, double h) {
  const double sm = s + 0.5 * h;
  const double lm = lambda(sm), mm = mu(sm);
  const FrameState k1 = frame_rhs(sf, y, lambda(s), mu(s));
  const FrameState k2 = frame_rhs(sf, y + (0.5 * h) * k1, lm, mm);
  const FrameState k3 = frame_rhs(sf, y + (0.5 * h) * k2, lm, mm);
  const FrameState k4 = frame_rhs(sf, y + h * k3, lambda(s + h), mu(s + h));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::size_t nearest_index(const std::vector<MeridianState>& samples, double s) {
  auto it = std::lower_bound(samples.begin(), samples.end(), s,
                             [](const MeridianState& m, double v) { return m.s < v; });
  if (it == samples.end()) return samples.size() - 1;
  const auto i = static_cast<std::size_t>(it - samples.begin());
  if (i > 0 && std::abs(samples[i - 1].s - s) <= std::abs(samples[i].s - s)) return i - 1;
  return i;
}

}  // namespace

AxisFrame AxisFrame::standard(const SpaceForm& sf) {
  if (sf.model() == Model::Euclidean) {
    return {sf.origin(), Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}};
  }
  return {sf.origin(), Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}, Vec4{0, 0, 0, 1}};
}

AmbientPoint AxisFrame::point(const SpaceForm& sf, double t, double rho, double theta) const {
  const Vec4 axis = sf.cs(t) * p.x + sf.sn(t) * e3;
  const Vec4 x = sf.cs(rho) * axis + sf.sn(rho) * (std::cos(theta) * e1 + std::sin(theta) * e2);
  return sf.project(x);
}

Vec4 AxisFrame::e_rho(const SpaceForm& sf, double t, double rho, double theta) const {
  const Vec4 axis = sf.cs(t) * p.x + sf.sn(t) * e3;
  return (-sf.c() * sf.sn(rho)) * axis + sf.cs(rho) * (std::cos(theta) * e1 + std::sin(theta) * e2);
}

Vec4 AxisFrame::e_t(const SpaceForm& sf, double t) const {
  return (-sf.c() * sf.sn(t)) * p.x + sf.cs(t) * e3;
}

Vec4 AxisFrame::e_theta(double theta) const { return -std::sin(theta) * e1 + std::cos(theta) * e2; }

Vec4 AxisFrame::reflect(const Vec4& x) const {
  // e3 is orthogonal to p, e1, e2 under every model's bilinear form and is a
  // unit spacelike vector, so the Euclidean coefficient suffices.
  return x - (2.0 * dot(x, e3)) * e3;
}

MeridianState reflect(const MeridianState& m) {
  return {-m.s, -m.t, m.rho, kPi - m.phi, m.lambda, m.mu};
}

MeridianProfile::MeridianProfile(SpaceForm sf, double H, std::vector<MeridianState> samples,
                                 Evaluator eval, double consistency_error)
    : sf_(sf),
      H_(H),
      samples_(std::make_shared<const std::vector<MeridianState>>(std::move(samples))),
      eval_(std::move(eval)),
      consistency_error_(consistency_error) {}

MeridianProfile mirrored(const MeridianProfile& profile) {
  const auto& half = profile.samples();
  std::vector<MeridianState> full;
  full.reserve(2 * half.size());
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (it->s > 0.0) full.push_back(reflect(*it));
  }
  for (const auto& m : half) full.push_back(m);
  auto eval = [profile](double s) {
    return s < 0.0 ? reflect(profile.at(-s)) : profile.at(s);
  };
  return MeridianProfile(profile.space(), profile.mean_curvature(), std::move(full), eval,
                         profile.consistency_error());
}

AmbientPoint RotationSurface::point(const MeridianState& m, double theta) const {
  return frame.point(profile.space(), m.t, m.rho, theta);
}

Vec4 RotationSurface::normal(const MeridianState& m, double theta) const {
  const SpaceForm& sf = profile.space();
  return -std::sin(m.phi) * frame.e_rho(sf, m.t, m.rho, theta) +
         std::cos(m.phi) * frame.e_t(sf, m.t);
}

Vec4 RotationSurface::meridian_tangent(const MeridianState& m, double theta) const {
  const SpaceForm& sf = profile.space();
  return std::cos(m.phi) * frame.e_rho(sf, m.t, m.rho, theta) +
         std::sin(m.phi) * frame.e_t(sf, m.t);
}

std::pair<double, double> principal_from_u(double u, int a, double H) {
  if (!(u > 0.0)) throw Error(ErrorCode::NonPositiveU, fmt::format("u = {} must be positive", u));
  const double lambda = H + static_cast<double>(a) / u;
  return {lambda, 2.0 * H - lambda};
}

double phi_norm_sq(double l1, double l2, double H) {
  if (std::abs(0.5 * (l1 + l2) - H) > 1e-10) {
    throw Error(ErrorCode::InconsistentMeanCurvature,
                fmt::format("(l1 + l2)/2 = {} but H = {}", 0.5 * (l1 + l2), H));
  }
  const double d1 = l1 - H;
  const double d2 = l2 - H;
  return d1 * d1 + d2 * d2;
}

double gauss_product(double H, double phi_sq) { return H * H - 0.5 * phi_sq; }

double axis_distance_for_parallel_curvature(const SpaceForm& sf, double lambda0) {
  const double k = sf.k();
  switch (sf.model()) {
    case Model::Euclidean:
      if (lambda0 > 0.0) return 1.0 / lambda0;
      break;
    case Model::Sphere:
      if (lambda0 > 0.0) return std::atan(k / lambda0) / k;
      break;
    case Model::Hyperbolic:
      if (lambda0 > k) return std::atanh(k / lambda0) / k;
      break;
  }
  throw Error(ErrorCode::InvalidGeometry,
              fmt::format("no geodesic circle on P has curvature {} in the {} model (c = {})",
                          lambda0, to_string(sf.model()), sf.c()));
}

MeridianState meridian_start(const SpaceForm& sf, const CurvatureFn& lambda, const CurvatureFn& mu) {
  const double l0 = lambda(0.0);
  return {0.0, 0.0, axis_distance_for_parallel_curvature(sf, l0), 0.5 * kPi, l0, mu(0.0)};
}

MeridianState advance_meridian(const SpaceForm& sf, const CurvatureFn& lambda,
                               const CurvatureFn& mu, const MeridianState& m, double h) {
  const FrameState y = rk4_step(sf, lambda, mu, m.s, FrameState{m.t, m.rho, m.phi}, h);
  const double s = m.s + h;
  return {s, y.t, y.rho, y.phi, lambda(s), mu(s)};
}

MeridianProfile reconstruct_meridian(const SpaceForm& sf, CurvatureFn lambda, CurvatureFn mu,
                                     double s_begin, double s_end, double ds) {
  if (!(ds > 0.0) || s_begin > 0.0 || s_end < 0.0) {
    throw Error(ErrorCode::OutOfDomain,
                fmt::format("invalid meridian range [{}, {}] with ds = {}", s_begin, s_end, ds));
  }
  const double H = 0.5 * (lambda(0.0) + mu(0.0));
  const double rho0 = axis_distance_for_parallel_curvature(sf, lambda(0.0));

  auto make_state = [&](double s, const FrameState& y) {
    const double l = lambda(s);
    const double m = mu(s);
    if (std::abs(l + m - 2.0 * H) > 1e-8) {
      throw Error(ErrorCode::InconsistentMeanCurvature,
                  fmt::format("lambda + mu = {} at s = {} differs from 2H = {}", l + m, s, 2.0 * H));
    }
    return MeridianState{s, y.t, y.rho, y.phi, l, m};
  };

  auto check = [&](double s, const FrameState& y) {
    if (!(y.rho > 0.0)) {
      throw Error(ErrorCode::AxisCollision, fmt::format("meridian reaches the axis at s = {}", s));
    }
    if (sf.model() == Model::Sphere && sf.cs(y.rho) <= 1e-12) {
      throw Error(ErrorCode::OutOfDomain,
                  fmt::format("meridian leaves the hemisphere at s = {} (rho = {})", s, y.rho));
    }
  };

  const FrameState start{0.0, rho0, 0.5 * kPi};

  auto integrate = [&](double s_stop) {
    std::vector<MeridianState> out;
    const auto n = static_cast<std::size_t>(std::ceil(std::abs(s_stop) / ds - 1e-9));
    if (n == 0) return out;
    const double h = s_stop / static_cast<double>(n);
    FrameState y = start;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = h * static_cast<double>(i);
      y = rk4_step(sf, lambda, mu, s, y, h);
      const double s_next = (i + 1 == n) ? s_stop : h * static_cast<double>(i + 1);
      check(s_next, y);
      out.push_back(make_state(s_next, y));
    }
    return out;
  };

  std::vector<MeridianState> backward = integrate(s_begin);
  std::vector<MeridianState> forward = integrate(s_end);

  std::vector<MeridianState> samples;
  samples.reserve(backward.size() + forward.size() + 1);
  samples.insert(samples.end(), backward.rbegin(), backward.rend());
  samples.push_back(make_state(0.0, start));
  samples.insert(samples.end(), forward.begin(), forward.end());

  double consistency = 0.0;
  for (const auto& m : samples) {
    consistency = std::max(consistency, std::abs(m.lambda - sf.cot(m.rho) * std::sin(m.phi)));
  }

  auto shared = std::make_shared<const std::vector<MeridianState>>(samples);
  auto eval = [sf, lambda, mu, shared](double s) {
    const MeridianState& base = (*shared)[nearest_index(*shared, s)];
    if (s == base.s) return base;
    MeridianState m = advance_meridian(sf, lambda, mu, base, s - base.s);
    m.s = s;
    return m;
  };
  return MeridianProfile(sf, H, std::move(samples), eval, consistency);
}

SurfaceSample sample_at(const RotationSurface& surface, const AmbientPoint& center, double s,
                        double theta) {
  const SpaceForm& sf = surface.profile.space();
  const MeridianState m = surface.profile.at(s);
  SurfaceSample out;
  out.s = s;
  out.theta = theta;
  out.rho = m.rho;
  out.pos = surface.point(m, theta);
  out.nu = {out.pos, surface.normal(m, theta)};
  out.r = distance(sf, center, out.pos);
  out.H = surface.profile.mean_curvature();
  out.lambda1 = m.lambda;
  out.lambda2 = m.mu;
  out.phi_sq = phi_norm_sq(out.lambda1, out.lambda2, out.H);
  out.K = sf.c() + out.lambda1 * out.lambda2;
  if (sf.model() == Model::Sphere && out.r >= sf.hemisphere_radius()) {
    throw SampleDomainError(out, fmt::format("sample at s = {}, theta = {} has r = {} >= {}", s,
                                             theta, out.r, sf.hemisphere_radius()));
  }
  if (out.r > 1e-12) {
    out.nu_dot_grad_r = sf.inner(out.nu.dir, grad_r(sf, center, out.pos).dir);
  }
  out.grad_nu_f = f_eval(sf, out.r).df * out.nu_dot_grad_r;
  return out;
}

SampleGrid sample(const RotationSurface& surface, const AmbientPoint& center, std::size_t n_s,
                  std::size_t n_theta) {
  SampleGrid grid;
  grid.n_s = n_s;
  grid.n_theta = n_theta;
  grid.samples.reserve(n_s * n_theta);
  const double s0 = surface.profile.s_begin();
  const double s1 = surface.profile.s_end();
  for (std::size_t i = 0; i < n_s; ++i) {
    const double s =
        n_s > 1 ? (i + 1 == n_s ? s1 : s0 + (s1 - s0) * static_cast<double>(i) / static_cast<double>(n_s - 1))
                : s0;
    for (std::size_t j = 0; j < n_theta; ++j) {
      const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_theta);
      SurfaceSample smp = sample_at(surface, center, s, theta);
      smp.i_s = i;
      smp.i_theta = j;
      grid.samples.push_back(smp);
    }
  }
  return grid;
}

namespace {

// Euclidean-orthogonal complement of three vectors in R^4 (generalized cross
// product via cofactors).
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
  auto det3 = [](double a00, double a01, double a02, double a10, double a11, double a12,
                 double a20, double a21, double a22) {
    return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
           a02 * (a10 * a21 - a11 * a20);
  };
  return Vec4{det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]),
              -det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]),
              det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]),
              -det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2])};
}

}  // namespace

FundamentalFormFd second_fundamental_form_fd(const SpaceForm& sf, const Patch& patch, double u,
                                             double v, double h, const Vec4* orientation) {
  const Vec4 x = patch(u, v);
  const Vec4 xpu = patch(u + h, v), xmu = patch(u - h, v);
  const Vec4 xpv = patch(u, v + h), xmv = patch(u, v - h);
  const Vec4 xu = (xpu - xmu) / (2.0 * h);
  const Vec4 xv = (xpv - xmv) / (2.0 * h);
  const Vec4 xuu = (xpu - 2.0 * x + xmu) / (h * h);
  const Vec4 xvv = (xpv - 2.0 * x + xmv) / (h * h);
  const Vec4 xuv = (patch(u + h, v + h) - patch(u + h, v - h) - patch(u - h, v + h) +
                    patch(u - h, v - h)) /
                   (4.0 * h * h);

  const double E = sf.inner(xu, xu);
  const double F = sf.inner(xu, xv);
  const double G = sf.inner(xv, xv);
  const double det = E * G - F * F;
  if (!(det >= 1e-12)) {
    throw Error(ErrorCode::DegenerateMetric,
                fmt::format("first fundamental form determinant {} at ({}, {})", det, u, v));
  }

  Vec4 n;
  if (sf.model() == Model::Euclidean) {
    n = Vec4{xu[1] * xv[2] - xu[2] * xv[1], xu[2] * xv[0] - xu[0] * xv[2],
             xu[0] * xv[1] - xu[1] * xv[0], 0.0};
  } else {
    n = cross4(x, xu, xv);
    if (sf.model() == Model::Hyperbolic) n[0] = -n[0];
  }
  n = n / sf.norm(n);
  if (orientation != nullptr && sf.inner(n, *orientation) < 0.0) n = -n;

  const double L = sf.inner(xuu, n);
  const double M = sf.inner(xuv, n);
  const double N = sf.inner(xvv, n);

  FundamentalFormFd out;
  out.normal = n;
  out.H = (L * G - 2.0 * M * F + N * E) / (2.0 * det);
  out.K_extrinsic = (L * N - M * M) / det;
  const double disc = std::sqrt(std::max(0.0, out.H * out.H - out.K_extrinsic));
  out.lambda1 = out.H + disc;
  out.lambda2 = out.H - disc;
  out.phi_sq = 2.0 * disc * disc;
  out.kappa_u = L / E;
  out.kappa_v = N / G;
  return out;
}

double chordal_triangle_area(const SpaceForm& sf, const Vec4& a, const Vec4& b, const Vec4& c) {
  const Vec4 ab = b - a;
  const Vec4 ac = c - a;
  const double g = sf.inner(ab, ab) * sf.inner(ac, ac) - std::pow(sf.inner(ab, ac), 2);
  return 0.5 * std::sqrt(std::max(0.0, g));
}

double chordal_area(const SpaceForm& sf, const TriMesh& m) {
  double area = 0.0;
  for (const auto& tri : m.triangles) {
    area += chordal_triangle_area(sf, m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]);
  }
  return area;
}

TriMesh mesh(const RotationSurface& surface, std::size_t n_s, std::size_t n_theta) {
  if (n_s < 2 || n_theta < 3) {
    throw Error(ErrorCode::OutOfDomain,
                fmt::format("mesh needs n_s >= 2 and n_theta >= 3 (got {}, {})", n_s, n_theta));
  }
  const SpaceForm& sf = surface.profile.space();
  TriMesh out;
  out.vertices.reserve(n_s * n_theta);
  out.normals.reserve(n_s * n_theta);
  auto& phi_field = out.fields["phi_sq"];
  auto& k_field = out.fields["K"];
  const double s0 = surface.profile.s_begin();
  const double s1 = surface.profile.s_end();
  for (std::size_t i = 0; i < n_s; ++i) {
    const double s = i + 1 == n_s ? s1 : s0 + (s1 - s0) * static_cast<double>(i) / static_cast<double>(n_s - 1);
    const MeridianState m = surface.profile.at(s);
    const double H = surface.profile.mean_curvature();
    for (std::size_t j = 0; j < n_theta; ++j) {
      const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_theta);
      out.vertices.push_back(surface.point(m, theta).x);
      out.normals.push_back(surface.normal(m, theta));
      phi_field.push_back(phi_norm_sq(m.lambda, m.mu, H));
      k_field.push_back(sf.c() + m.lambda * m.mu);
    }
  }
  auto idx = [n_theta](std::size_t i, std::size_t j) {
    return static_cast<std::uint32_t>(i * n_theta + (j % n_theta));
  };
  auto push = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (chordal_triangle_area(sf, out.vertices[a], out.vertices[b], out.vertices[c]) > 1e-14) {
      out.triangles.push_back({a, b, c});
    }
  };
  for (std::size_t i = 0; i + 1 < n_s; ++i) {
    for (std::size_t j = 0; j < n_theta; ++j) {
      push(idx(i, j), idx(i + 1, j), idx(i + 1, j + 1));
      push(idx(i, j), idx(i + 1, j + 1), idx(i, j + 1));
    }
  }
  return out;
}

}  // namespace cmclab
