#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "itermaps/linalg.hpp"

namespace itermaps {

struct Cluster {
  Vector representative;  // mean of members
  std::size_t count = 0;
};

/// Greedy clustering in input order. A point joins the first cluster whose
/// current representative lies within `radius` (Euclidean), otherwise it
/// starts a new cluster.
inline std::vector<Cluster> cluster_points(const std::vector<Vector>& points, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("cluster_points: radius must be positive");
  std::vector<Cluster> clusters;
  std::vector<Vector> sums;
  for (const auto& p : points) {
    bool joined = false;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if ((clusters[c].representative - p).norm() <= radius) {
        sums[c] += p;
        clusters[c].count += 1;
        clusters[c].representative = sums[c] / static_cast<double>(clusters[c].count);
        joined = true;
        break;
      }
    }
    if (!joined) {
      clusters.push_back({p, 1});
      sums.push_back(p);
    }
  }
  return clusters;
}

}  // namespace itermaps
