#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include <fmt/format.h>

#include "cmclab/delaunay.hpp"
#include "cmclab/rotation.hpp"
#include "cmclab/spaceform.hpp"

namespace cmclab::test {

inline constexpr double kPi = std::numbers::pi;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  int sign() { return integer(0, 1) == 0 ? -1 : 1; }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  /// Random unit vector of the tangent space at p.
  Vec4 unit_tangent(const SpaceForm& sf, const AmbientPoint& p) {
    for (;;) {
      Vec4 w(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), sf.dim() == 4 ? uniform(-1, 1) : 0.0);
      w = sf.tangent_part(p, w);
      const double n = sf.norm(w);
      if (n > 0.1) return w / n;
    }
  }

  /// Random point at distance at most r_max from the origin of the model.
  AmbientPoint point(const SpaceForm& sf, double r_max) {
    const AmbientPoint o = sf.origin();
    return exp_map(sf, TangentVec{o, unit_tangent(sf, o)}, uniform(0.0, r_max));
  }

 private:
  std::mt19937_64 eng_;
};

struct Triple {
  double c = 0.0;
  double H = 0.0;
  double u0 = 1.0;
  int a = 1;
};

inline std::string describe(const Triple& t) {
  return fmt::format("(c={}, H={}, u0={}, a={})", t.c, t.H, t.u0, t.a);
}

/// Admissible parameters on one branch: c, H in [-1, 1], u0 in [0.25, 2],
/// |c + H^2| >= 0.01, and c + H^2 >= -0.25 on the hyperbolic branch.
inline Triple admissible(Gen& g, Branch branch) {
  Triple t;
  t.u0 = g.uniform(0.25, 2.0);
  t.a = g.sign();
  switch (branch) {
    case Branch::Parabolic:
      t.H = g.uniform(-1.0, 1.0);
      t.c = -t.H * t.H;
      break;
    case Branch::Hyperbolic: {
      const double q = g.uniform(-0.25, -0.01);
      t.H = g.uniform(-0.8, 0.8);
      t.c = q - t.H * t.H;
      break;
    }
    case Branch::Oscillatory:
      do {
        t.c = g.uniform(-1.0, 1.0);
        t.H = g.uniform(-1.0, 1.0);
      } while (t.c + t.H * t.H < 0.01);
      break;
  }
  return t;
}

inline Branch branch_of(int i) { return static_cast<Branch>(i % 3); }

/// Largest s to examine on a branch: one period when oscillatory, capped at cap.
inline double span(const DelaunayParams& p, double cap) { return std::min(cap, period(p)); }

/// |a - b| / max(1, |b|).
inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace cmclab::test
