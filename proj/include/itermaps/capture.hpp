#pragma once

// Grid-scan capture: apply two iterations of a map to every vertex of a
// rectangular grid and keep the second iterates where |f| <= tolerance.
//
// Per seed X0:
//   1. skip if f(X0) is not finite or J(X0) is undefined/singular
//   2. X1 = t(X0), X2 = t(X1); skip on step failure, or if X1 and X2 both
//      lie outside the domain (a single excursion is allowed)
//   3. capture X2 iff ||f(X2)|| <= tolerance
// Captured points are then clustered greedily in grid order.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "itermaps/cluster.hpp"
#include "itermaps/iterative_map.hpp"
#include "itermaps/linalg.hpp"
#include "itermaps/mapsnd.hpp"
#include "itermaps/vector_problem.hpp"

namespace itermaps {

/// nx * ny vertices spanning the 2-D box, edges included.
struct GridSpec {
  Box domain;
  int nx = 2;
  int ny = 2;

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  double dx() const { return (domain.upper(0) - domain.lower(0)) / (nx - 1); }
  double dy() const { return (domain.upper(1) - domain.lower(1)) / (ny - 1); }

  void validate() const {
    if (domain.dim() != 2) throw std::invalid_argument("GridSpec: domain must be 2-D");
    if (nx < 2 || ny < 2) throw std::invalid_argument("GridSpec: nx and ny must be >= 2");
  }

  // (lo (n-1-i) + hi i) / (n-1): exact endpoints, and an exact 0 at the
  // midpoint of a symmetric axis.
  static double axis(double lo, double hi, int i, int n) {
    return (lo * (n - 1 - i) + hi * i) / (n - 1);
  }

  Vector vertex(int i, int j) const {
    Vector v(2);
    v << axis(domain.lower(0), domain.upper(0), i, nx), axis(domain.lower(1), domain.upper(1), j, ny);
    return v;
  }

  /// Row-major: index = j * nx + i, i along x.
  Vector vertex(std::size_t index) const {
    return vertex(static_cast<int>(index % static_cast<std::size_t>(nx)),
                  static_cast<int>(index / static_cast<std::size_t>(nx)));
  }
};

inline std::vector<Vector> make_grid(const GridSpec& spec) {
  spec.validate();
  std::vector<Vector> pts;
  pts.reserve(spec.size());
  for (std::size_t idx = 0; idx < spec.size(); ++idx) pts.push_back(spec.vertex(idx));
  return pts;
}

enum class NormKind { Max, Euclidean };

inline double norm_of(const Vector& v, NormKind kind) {
  return kind == NormKind::Max ? v.lpNorm<Eigen::Infinity>() : v.norm();
}

inline constexpr double kDefaultClusterRadius = 1e-3;

struct CaptureConfig {
  GridSpec grid;
  double tolerance = 1e-3;
  IterativeMap map = IterativeMap::newton();
  double cluster_radius = kDefaultClusterRadius;
  NormKind norm = NormKind::Max;
  unsigned threads = 1;  // 0 = hardware concurrency
  VectorStepOptions step{};
};

struct CapturedPoint {
  std::size_t index = 0;  // grid index of the seed
  int grid_i = 0;
  int grid_j = 0;
  Vector seed;   // X0
  Vector point;  // X2
  double fnorm = 0.0;
  std::optional<double> g;
};

struct CaptureCounts {
  std::size_t seeded = 0;
  std::size_t skipped_singular = 0;
  std::size_t skipped_outside = 0;
  std::size_t step_failures = 0;
  std::size_t rejected_tolerance = 0;
  std::size_t captured = 0;
};

struct CaptureResult {
  std::vector<CapturedPoint> captured;  // ascending grid index
  std::vector<Cluster> clusters;
  CaptureCounts counts;
};

namespace detail {

enum class SeedOutcome { Singular, Outside, StepFailure, Rejected, Captured };

struct SeedResult {
  SeedOutcome outcome = SeedOutcome::Singular;
  Vector point;
  double fnorm = 0.0;
};

inline SeedResult process_seed(const VectorProblem& p, const CaptureConfig& cfg, const Vector& x0) {
  SeedResult r;
  const Vector f0 = p.f(x0);
  if (!all_finite(f0)) return r;
  const auto j0 = p.jacobian(x0);
  if (!j0 || !all_finite(*j0) || is_singular(*j0, cfg.step.pivot_threshold)) return r;

  const auto s1 = vector_step(p, cfg.map, x0, cfg.step);
  if (!s1.ok()) {
    r.outcome = SeedOutcome::StepFailure;
    return r;
  }
  const auto s2 = vector_step(p, cfg.map, s1.next, cfg.step);
  if (!s2.ok()) {
    r.outcome = SeedOutcome::StepFailure;
    return r;
  }
  const Box& dom = cfg.grid.domain;
  if (!dom.contains(s1.next) && !dom.contains(s2.next)) {
    r.outcome = SeedOutcome::Outside;
    return r;
  }
  const Vector f2 = p.f(s2.next);
  if (!all_finite(f2)) {
    r.outcome = SeedOutcome::StepFailure;
    return r;
  }
  r.point = s2.next;
  r.fnorm = norm_of(f2, cfg.norm);
  r.outcome = r.fnorm <= cfg.tolerance ? SeedOutcome::Captured : SeedOutcome::Rejected;
  return r;
}

}  // namespace detail

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Result is independent of cfg.threads: per-seed outcomes are stored by grid
/// index and merged sequentially before clustering.
inline CaptureResult run_capture(const VectorProblem& p, const CaptureConfig& cfg) {
  cfg.grid.validate();
  if (!(cfg.tolerance > 0)) throw std::invalid_argument("run_capture: tolerance must be positive");
  if (!(cfg.cluster_radius > 0)) throw std::invalid_argument("run_capture: cluster radius must be positive");
  if (p.n != 2) throw std::invalid_argument("run_capture: problem must be 2-D");

  const std::size_t total = cfg.grid.size();
  std::vector<detail::SeedResult> outcomes(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1))
      outcomes[idx] = detail::process_seed(p, cfg, cfg.grid.vertex(idx));
  };

  const unsigned nthreads = std::min<std::size_t>(resolve_threads(cfg.threads), std::max<std::size_t>(total, 1));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }

  CaptureResult res;
  res.counts.seeded = total;
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto& o = outcomes[idx];
    switch (o.outcome) {
      case detail::SeedOutcome::Singular: ++res.counts.skipped_singular; break;
      case detail::SeedOutcome::Outside: ++res.counts.skipped_outside; break;
      case detail::SeedOutcome::StepFailure: ++res.counts.step_failures; break;
      case detail::SeedOutcome::Rejected: ++res.counts.rejected_tolerance; break;
      case detail::SeedOutcome::Captured: {
        CapturedPoint c;
        c.index = idx;
        c.grid_i = static_cast<int>(idx % static_cast<std::size_t>(cfg.grid.nx));
        c.grid_j = static_cast<int>(idx / static_cast<std::size_t>(cfg.grid.nx));
        c.seed = cfg.grid.vertex(idx);
        c.point = std::move(o.point);
        c.fnorm = o.fnorm;
        if (p.objective) c.g = (*p.objective)(c.point);
        res.captured.push_back(std::move(c));
        break;
      }
    }
  }
  res.counts.captured = res.captured.size();

  std::vector<Vector> pts;
  pts.reserve(res.captured.size());
  for (const auto& c : res.captured) pts.push_back(c.point);
  res.clusters = cluster_points(pts, cfg.cluster_radius);
  return res;
}

}  // namespace itermaps
