#include "cmclab/pinch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmclab {

const char* to_string(Topology t) noexcept { return t == Topology::Disk ? "Disk" : "Annulus"; }

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::SphericalCapConsistent: return "SphericalCapConsistent";
    case Verdict::DelaunayConsistent: return "DelaunayConsistent";
    case Verdict::HypothesisViolated: return "HypothesisViolated";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

const char* to_string(SignPattern s) noexcept {
  switch (s) {
    case SignPattern::AllNonpositive: return "AllNonpositive";
    case SignPattern::AllNonnegative: return "AllNonnegative";
    case SignPattern::Mixed: return "Mixed";
  }
  return "Unknown";
}

const char* to_string(LocusShape s) noexcept {
  switch (s) {
    case LocusShape::Point: return "point";
    case LocusShape::Ring: return "ring";
    case LocusShape::Cluster: return "cluster";
  }
  return "unknown";
}

const char* to_string(UmbilicKind k) noexcept {
  switch (k) {
    case UmbilicKind::None: return "none";
    case UmbilicKind::Isolated: return "isolated";
    case UmbilicKind::Total: return "total";
  }
  return "unknown";
}

PinchSample pinch_values(const SurfaceSample& s, const SpaceForm& sf) {
  const FValues fv = f_eval(sf, s.r);
  PinchSample p;
  p.base = s;
  p.f = fv.f;
  p.df = fv.df;
  p.d2f = fv.d2f;
  p.g = s.grad_nu_f;
  p.trace_half = fv.d2f + s.H * p.g;
  p.lhs = 0.5 * s.phi_sq * p.g * p.g;
  p.rhs = p.trace_half * p.trace_half;
  p.margin = p.rhs - p.lhs;
  p.hess_sigma_diag = {fv.d2f + s.lambda1 * p.g, fv.d2f + s.lambda2 * p.g};
  p.detL = p.hess_sigma_diag.first * p.hess_sigma_diag.second;
  p.trL = 2.0 * p.trace_half;
  return p;
}

double hess_sigma_f(const SurfaceSample& s, const SpaceForm& sf, int direction) {
  const double lambda = direction == 1 ? s.lambda1 : s.lambda2;
  return f_eval(sf, s.r).d2f + lambda * s.grad_nu_f;
}

namespace {

// Connected components of the marked grid cells, periodic in theta.
std::vector<std::vector<std::size_t>> components(const SampleGrid& grid,
                                                 const std::vector<char>& marked) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<char> seen(marked.size(), 0);
  const std::size_t nt = grid.n_theta;
  for (std::size_t start = 0; start < marked.size(); ++start) {
    if (!marked[start] || seen[start]) continue;
    std::vector<std::size_t> comp;
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      comp.push_back(idx);
      const std::size_t i = idx / nt;
      const std::size_t j = idx % nt;
      std::size_t nbrs[4];
      std::size_t count = 0;
      nbrs[count++] = i * nt + (j + 1) % nt;
      nbrs[count++] = i * nt + (j + nt - 1) % nt;
      if (i > 0) nbrs[count++] = (i - 1) * nt + j;
      if (i + 1 < grid.n_s) nbrs[count++] = (i + 1) * nt + j;
      for (std::size_t k = 0; k < count; ++k) {
        if (marked[nbrs[k]] && !seen[nbrs[k]]) {
          seen[nbrs[k]] = 1;
          stack.push_back(nbrs[k]);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

MinRLocus min_r_locus(const SampleGrid& grid, double tol_r) {
  MinRLocus out;
  out.r_min = std::numeric_limits<double>::infinity();
  for (const auto& s : grid.samples) out.r_min = std::min(out.r_min, s.r);
  std::vector<char> marked(grid.samples.size(), 0);
  for (std::size_t i = 0; i < grid.samples.size(); ++i) {
    if (grid.samples[i].r <= out.r_min + tol_r) {
      out.indices.push_back(i);
      marked[i] = 1;
    }
  }

  double spread = 0.0;
  const Vec4& first = grid.samples[out.indices.front()].pos.x;
  for (std::size_t idx : out.indices) {
    spread = std::max(spread, euclidean_norm(grid.samples[idx].pos.x - first));
  }
  if (spread <= 1e-12) {
    out.shape = LocusShape::Point;
    return out;
  }
  out.shape = LocusShape::Cluster;
  for (std::size_t i = 0; i < grid.n_s; ++i) {
    bool full = grid.n_theta > 0;
    for (std::size_t j = 0; j < grid.n_theta && full; ++j) full = marked[i * grid.n_theta + j] != 0;
    if (full && grid.at(i, 0).rho > tol_r) {
      out.shape = LocusShape::Ring;
      break;
    }
  }
  return out;
}

UmbilicReport umbilic_detect(const SampleGrid& grid, double tol_umb) {
  UmbilicReport out;
  std::vector<char> marked(grid.samples.size(), 0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < grid.samples.size(); ++i) {
    if (grid.samples[i].phi_sq <= tol_umb) {
      marked[i] = 1;
      ++count;
    }
  }
  out.clusters = components(grid, marked);
  if (count == 0) {
    out.kind = UmbilicKind::None;
  } else if (count == grid.samples.size()) {
    out.kind = UmbilicKind::Total;
  } else {
    out.kind = UmbilicKind::Isolated;
  }
  return out;
}

Verdict classify(const PinchReport& report, Topology topology) {
  if (report.min_margin < -report.tol.eq) return Verdict::HypothesisViolated;
  if (topology == Topology::Disk) {
    return report.umbilic.kind == UmbilicKind::Total ? Verdict::SphericalCapConsistent
                                                     : Verdict::Inconclusive;
  }
  return report.equality_points.empty() ? Verdict::Inconclusive : Verdict::DelaunayConsistent;
}

PinchReport pinch_report(const SampleGrid& grid, const SpaceForm& sf, Topology topology,
                         const PinchTolerances& tol) {
  PinchReport report;
  report.n_s = grid.n_s;
  report.n_theta = grid.n_theta;
  report.tol = tol;
  report.samples.reserve(grid.samples.size());
  report.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.samples.size(); ++i) {
    PinchSample p = pinch_values(grid.samples[i], sf);
    if (p.margin < report.min_margin) {
      report.min_margin = p.margin;
      report.argmin = i;
    }
    if (std::abs(p.margin) <= tol.eq) report.equality_points.push_back(i);
    if (p.base.phi_sq <= tol.umb) report.umbilic_points.push_back(i);
    report.samples.push_back(p);
  }
  report.min_r = min_r_locus(grid, tol.r);
  report.umbilic = umbilic_detect(grid, tol.umb);
  report.verdict = classify(report, topology);
  return report;
}

SignPattern sign_analysis(const PinchReport& report, double c) {
  bool any_pos = false;
  bool any_neg = false;
  const double tol = report.tol.eq;
  for (const auto& s : report.samples) {
    for (double v : {s.hess_sigma_diag.first, s.hess_sigma_diag.second}) {
      if (v > tol) any_pos = true;
      if (v < -tol) any_neg = true;
    }
  }
  if (any_pos && any_neg) return SignPattern::Mixed;
  if (any_pos) return SignPattern::AllNonnegative;
  if (any_neg) return SignPattern::AllNonpositive;
  return c > 0.0 ? SignPattern::AllNonpositive : SignPattern::AllNonnegative;
}

}  // namespace cmclab
