#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "cmclab/error.hpp"

namespace cmclab {

/// Sign of q = c + H^2 selects the shape of the closed-form solution.
enum class Branch { Oscillatory, Hyperbolic, Parabolic };

const char* to_string(Branch b) noexcept;

/// Parameters of one rotational CMC meridian written in the variable
/// u = |lambda - H|^{-1}, where lambda is the principal curvature along
/// parallels. u solves the first-order equation
///
///   (u')^2 / 4 + q u^2 - (C - 2H) u + 1 = 0,   q = c + H^2,
///
/// with u(0) = u0 and u'(0) = 0.
struct DelaunayParams {
  double c = 0.0;
  double H = 0.0;
  int n = 2;
  int a = 1;
  double u0 = 1.0;
  double C = 0.0;
  Branch branch = Branch::Parabolic;
  /// Phase of the oscillatory branch: -pi/2 when u0 is the maximum of u,
  /// +pi/2 when it is the minimum. Zero on the other branches.
  double D = 0.0;

  double q() const noexcept { return c + H * H; }
  double discriminant() const noexcept { return C * C - 4.0 * H * C - 4.0 * c; }
};

/// Throws NonPositiveU0 for u0 <= 0 (or non-finite).
DelaunayParams make_params(double c, double H, double u0, int a = 1);

/// Closed-form u(s). Throws BranchMismatch when p.branch disagrees with the
/// sign of c + H^2.
double u_closed(const DelaunayParams& p, double s);
double uprime_closed(const DelaunayParams& p, double s);

enum class Source { ClosedForm, Numeric };

const char* to_string(Source s) noexcept;

struct USolution {
  DelaunayParams params;
  std::vector<double> s;
  std::vector<double> u;
  std::vector<double> uprime;
  Source source = Source::Numeric;
  /// Set when integration stopped because u fell to the floor.
  std::optional<double> breakdown_s;
};

inline constexpr double kUFloor = 1e-10;

/// Tabulates the closed form on a uniform grid over [0, s_max].
USolution u_closed_solution(const DelaunayParams& p, double s_max, double ds);

/// Integrates w'' = -w (q - w^-4), w = sqrt(u), w(0) = sqrt(u0), w'(0) = 0
/// with fixed-step RK4 carried in extended precision. Stops early and sets
/// breakdown_s once u <= kUFloor.
USolution u_numeric(const DelaunayParams& p, double s_max, double ds);

/// Cubic Hermite interpolant of a tabulated solution, extended evenly to s < 0.
std::function<double(double)> u_interpolant(const USolution& sol);

/// (u')^2/4 + q u^2 - (C - 2H) u + 1.
double first_integral_residual(double u, double uprime, const DelaunayParams& p);

/// w'' + w (q + a (2 - n) H w^-n + (1 - n) w^-2n). Throws NonPositiveW.
double ode_residual_general_n(double w, double w2, double c, double H, int n, int a);

/// The n = 2 residual w'' + w (q - w^-4) used by the integrator.
double ode_residual(const DelaunayParams& p, double w, double w2);

/// Second derivative of w demanded by the n = 2 equation.
double w_acceleration(const DelaunayParams& p, double w);

struct URange {
  double u_min = 0.0;
  double u_max = std::numeric_limits<double>::infinity();
  bool bounded() const noexcept { return u_max < std::numeric_limits<double>::infinity(); }
};

URange u_range(const DelaunayParams& p);

/// Positive constant solutions w of the general-n equation, from the roots
/// y = w^-n of (1 - n) y^2 + a (2 - n) H y + (c + H^2) = 0.
std::vector<double> constant_solutions(double c, double H, int n, int a);

/// pi / sqrt(q) on the oscillatory branch, +inf otherwise.
double period(const DelaunayParams& p);

}  // namespace cmclab
