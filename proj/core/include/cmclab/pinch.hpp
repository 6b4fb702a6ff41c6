#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cmclab/rotation.hpp"
#include "cmclab/spaceform.hpp"

namespace cmclab {

enum class Topology { Disk, Annulus };

const char* to_string(Topology t) noexcept;

/// Pointwise pinching data with g = f'(r) <nu, grad r>:
///   lhs = |Phi|^2 g^2 / 2,  rhs = (f'' + H g)^2,
///   L(e_i, e_i) = f'' + lambda_i g.
struct PinchSample {
  SurfaceSample base;
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
  double g = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double detL = 0.0;
  double trL = 0.0;
  double trace_half = 0.0;
  std::pair<double, double> hess_sigma_diag{0.0, 0.0};
};

/// Throws OutOfDomain when r is outside the domain of f.
PinchSample pinch_values(const SurfaceSample& s, const SpaceForm& sf);

/// f'' + lambda_i g for direction 1 (parallel) or 2 (meridian).
double hess_sigma_f(const SurfaceSample& s, const SpaceForm& sf, int direction);

struct PinchTolerances {
  double eq = 1e-6;
  double umb = 1e-8;
  double r = 1e-8;
};

enum class Verdict { SphericalCapConsistent, DelaunayConsistent, HypothesisViolated, Inconclusive };
enum class SignPattern { AllNonpositive, AllNonnegative, Mixed };
enum class LocusShape { Point, Ring, Cluster };
enum class UmbilicKind { None, Isolated, Total };

const char* to_string(Verdict v) noexcept;
const char* to_string(SignPattern s) noexcept;
const char* to_string(LocusShape s) noexcept;
const char* to_string(UmbilicKind k) noexcept;

struct MinRLocus {
  double r_min = 0.0;
  std::vector<std::size_t> indices;
  LocusShape shape = LocusShape::Point;
};

struct UmbilicReport {
  UmbilicKind kind = UmbilicKind::None;
  /// Connected components (4-neighbourhood, periodic in theta) of umbilic samples.
  std::vector<std::vector<std::size_t>> clusters;
};

/// Samples with r <= min r + tol_r. The locus is a Ring when it contains a
/// full theta row off the axis, a Point when all its samples coincide.
MinRLocus min_r_locus(const SampleGrid& grid, double tol_r);

UmbilicReport umbilic_detect(const SampleGrid& grid, double tol_umb);

struct PinchReport {
  std::size_t n_s = 0;
  std::size_t n_theta = 0;
  std::vector<PinchSample> samples;
  PinchTolerances tol;
  double min_margin = 0.0;
  std::size_t argmin = 0;
  std::vector<std::size_t> equality_points;
  std::vector<std::size_t> umbilic_points;
  MinRLocus min_r;
  UmbilicReport umbilic;
  Verdict verdict = Verdict::Inconclusive;
};

PinchReport pinch_report(const SampleGrid& grid, const SpaceForm& sf, Topology topology,
                         const PinchTolerances& tol = {});

Verdict classify(const PinchReport& report, Topology topology);

/// Signs of both diagonal entries of L over all samples. Entries within
/// tol_eq of zero count for either sign; an all-zero report follows c.
SignPattern sign_analysis(const PinchReport& report, double c);

}  // namespace cmclab
