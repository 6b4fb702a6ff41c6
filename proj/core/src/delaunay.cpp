#include "cmclab/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <fmt/format.h>

namespace cmclab {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

Branch branch_of(double q) {
  if (q > 0.0) return Branch::Oscillatory;
  if (q < 0.0) return Branch::Hyperbolic;
  return Branch::Parabolic;
}

// C - 2H, evaluated from u0 to avoid cancellation for large H.
double linear_coefficient(const DelaunayParams& p) {
  return (p.q() * p.u0 * p.u0 + 1.0) / p.u0;
}

// sqrt(C^2 - 4HC - 4c) / (2|q|); the radicand equals (q u0^2 - 1)^2 / u0^2.
double amplitude(const DelaunayParams& p) {
  const double q = p.q();
  return std::abs(q * p.u0 * p.u0 - 1.0) / (2.0 * std::abs(q) * p.u0);
}

void require_branch(const DelaunayParams& p) {
  const Branch actual = branch_of(p.q());
  if (actual != p.branch) {
    throw Error(ErrorCode::BranchMismatch,
                fmt::format("branch {} requested but c + H^2 = {} selects {}", to_string(p.branch),
                            p.q(), to_string(actual)));
  }
}

template <typename T>
T inv_pow(T w, int n) {
  T acc = 1;
  for (int i = 0; i < n; ++i) acc *= w;
  return T(1) / acc;
}

template <typename T>
T general_bracket(T q, T H, int n, int a, T y) {
  return q + T(a * (2 - n)) * H * y + T(1 - n) * y * y;
}

}  // namespace

const char* to_string(Branch b) noexcept {
  switch (b) {
    case Branch::Oscillatory: return "Oscillatory";
    case Branch::Hyperbolic: return "Hyperbolic";
    case Branch::Parabolic: return "Parabolic";
  }
  return "Unknown";
}

const char* to_string(Source s) noexcept {
  return s == Source::ClosedForm ? "ClosedForm" : "Numeric";
}

DelaunayParams make_params(double c, double H, double u0, int a) {
  if (!(u0 > 0.0) || !std::isfinite(u0)) {
    throw Error(ErrorCode::NonPositiveU0, fmt::format("u0 = {} must be positive", u0));
  }
  DelaunayParams p;
  p.c = c;
  p.H = H;
  p.a = a >= 0 ? 1 : -1;
  p.u0 = u0;
  p.C = 2.0 * H + (p.q() * u0 * u0 + 1.0) / u0;
  p.branch = branch_of(p.q());
  if (p.branch == Branch::Oscillatory) {
    const double mid = linear_coefficient(p) / (2.0 * p.q());
    p.D = u0 >= mid ? -kHalfPi : kHalfPi;
  }
  return p;
}

double u_closed(const DelaunayParams& p, double s) {
  require_branch(p);
  const double q = p.q();
  switch (p.branch) {
    case Branch::Oscillatory: {
      const double mid = linear_coefficient(p) / (2.0 * q);
      return mid + amplitude(p) * std::sin(2.0 * std::sqrt(q) * s - p.D);
    }
    case Branch::Hyperbolic: {
      const double mid = linear_coefficient(p) / (2.0 * q);
      return mid + amplitude(p) * std::cosh(2.0 * std::sqrt(-q) * s);
    }
    case Branch::Parabolic: {
      const double b = linear_coefficient(p);
      return 1.0 / b + b * s * s;
    }
  }
  return 0.0;
}

double uprime_closed(const DelaunayParams& p, double s) {
  require_branch(p);
  const double q = p.q();
  switch (p.branch) {
    case Branch::Oscillatory: {
      const double omega = 2.0 * std::sqrt(q);
      return amplitude(p) * omega * std::cos(omega * s - p.D);
    }
    case Branch::Hyperbolic: {
      const double omega = 2.0 * std::sqrt(-q);
      return amplitude(p) * omega * std::sinh(omega * s);
    }
    case Branch::Parabolic: return 2.0 * linear_coefficient(p) * s;
  }
  return 0.0;
}

USolution u_closed_solution(const DelaunayParams& p, double s_max, double ds) {
  if (!(ds > 0.0) || !(s_max >= 0.0)) {
    throw Error(ErrorCode::OutOfDomain, fmt::format("invalid grid s_max = {}, ds = {}", s_max, ds));
  }
  USolution out;
  out.params = p;
  out.source = Source::ClosedForm;
  const auto n = static_cast<std::size_t>(std::ceil(s_max / ds - 1e-9));
  const double h = n > 0 ? s_max / static_cast<double>(n) : 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double s = i == n ? s_max : h * static_cast<double>(i);
    out.s.push_back(s);
    out.u.push_back(i == 0 ? p.u0 : u_closed(p, s));
    out.uprime.push_back(i == 0 ? 0.0 : uprime_closed(p, s));
  }
  return out;
}

USolution u_numeric(const DelaunayParams& p, double s_max, double ds) {
  if (!(ds > 0.0) || !(s_max >= 0.0)) {
    throw Error(ErrorCode::OutOfDomain, fmt::format("invalid grid s_max = {}, ds = {}", s_max, ds));
  }
  using LD = long double;
  const LD q = static_cast<LD>(p.c) + static_cast<LD>(p.H) * static_cast<LD>(p.H);
  auto accel = [q](LD w) {
    const LD y = inv_pow(w, 2);
    return -w * (q - y * y);
  };

  USolution out;
  out.params = p;
  out.source = Source::Numeric;
  const auto n = static_cast<std::size_t>(std::ceil(s_max / ds - 1e-9));
  const LD h = n > 0 ? static_cast<LD>(s_max) / static_cast<LD>(n) : 0.0L;
  out.s.reserve(n + 1);
  out.u.reserve(n + 1);
  out.uprime.reserve(n + 1);

  LD w = std::sqrt(static_cast<LD>(p.u0));
  LD v = 0.0L;
  out.s.push_back(0.0);
  out.u.push_back(p.u0);
  out.uprime.push_back(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const LD k1w = v, k1v = accel(w);
    const LD k2w = v + 0.5L * h * k1v, k2v = accel(w + 0.5L * h * k1w);
    const LD k3w = v + 0.5L * h * k2v, k3v = accel(w + 0.5L * h * k2w);
    const LD k4w = v + h * k3v, k4v = accel(w + h * k3w);
    w += h / 6.0L * (k1w + 2.0L * k2w + 2.0L * k3w + k4w);
    v += h / 6.0L * (k1v + 2.0L * k2v + 2.0L * k3v + k4v);
    const double s = i + 1 == n ? s_max : static_cast<double>(h * static_cast<LD>(i + 1));
    const double u = static_cast<double>(w * w);
    if (!(w > 0.0L) || !(u > kUFloor)) {
      out.breakdown_s = s;
      break;
    }
    out.s.push_back(s);
    out.u.push_back(u);
    out.uprime.push_back(static_cast<double>(2.0L * w * v));
  }
  return out;
}

std::function<double(double)> u_interpolant(const USolution& sol) {
  struct Table {
    std::vector<double> s, u, up;
  };
  auto table = std::make_shared<const Table>(Table{sol.s, sol.u, sol.uprime});
  return [table](double s) {
    const auto& t = *table;
    s = std::abs(s);
    if (t.s.size() < 2) return t.u.front();
    auto it = std::upper_bound(t.s.begin(), t.s.end(), s);
    std::size_t i = it == t.s.begin() ? 0 : static_cast<std::size_t>(it - t.s.begin()) - 1;
    i = std::min(i, t.s.size() - 2);
    const double h = t.s[i + 1] - t.s[i];
    const double x = (s - t.s[i]) / h;
    const double x2 = x * x, x3 = x2 * x;
    const double h00 = 2 * x3 - 3 * x2 + 1;
    const double h10 = x3 - 2 * x2 + x;
    const double h01 = -2 * x3 + 3 * x2;
    const double h11 = x3 - x2;
    return h00 * t.u[i] + h10 * h * t.up[i] + h01 * t.u[i + 1] + h11 * h * t.up[i + 1];
  };
}

double first_integral_residual(double u, double uprime, const DelaunayParams& p) {
  return 0.25 * uprime * uprime + p.q() * u * u - (p.C - 2.0 * p.H) * u + 1.0;
}

double ode_residual_general_n(double w, double w2, double c, double H, int n, int a) {
  if (!(w > 0.0)) throw Error(ErrorCode::NonPositiveW, fmt::format("w = {} must be positive", w));
  const double y = inv_pow(w, n);
  return w2 + w * general_bracket(c + H * H, H, n, a, y);
}

double ode_residual(const DelaunayParams& p, double w, double w2) {
  if (!(w > 0.0)) throw Error(ErrorCode::NonPositiveW, fmt::format("w = {} must be positive", w));
  const double y = inv_pow(w, 2);
  return w2 + w * (p.q() - y * y);
}

double w_acceleration(const DelaunayParams& p, double w) {
  const double y = inv_pow(w, 2);
  return -w * (p.q() - y * y);
}

URange u_range(const DelaunayParams& p) {
  if (p.branch != Branch::Oscillatory) return {p.u0, std::numeric_limits<double>::infinity()};
  const double mid = linear_coefficient(p) / (2.0 * p.q());
  const double amp = amplitude(p);
  return {mid - amp, mid + amp};
}

std::vector<double> constant_solutions(double c, double H, int n, int a) {
  const double qa = 1.0 - n;
  const double qb = static_cast<double>(a * (2 - n)) * H;
  const double qc = c + H * H;
  std::vector<double> ys;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return {};
  const double root = std::sqrt(disc);
  const double t = -0.5 * (qb + (qb >= 0.0 ? root : -root));
  if (t != 0.0) {
    ys.push_back(t / qa);
    ys.push_back(qc / t);
  } else {
    ys.push_back(0.0);
  }
  std::vector<double> ws;
  for (double y : ys) {
    if (y > 0.0) ws.push_back(std::pow(y, -1.0 / n));
  }
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  return ws;
}

double period(const DelaunayParams& p) {
  if (p.branch != Branch::Oscillatory) return std::numeric_limits<double>::infinity();
  return std::numbers::pi / std::sqrt(p.q());
}

}  // namespace cmclab
