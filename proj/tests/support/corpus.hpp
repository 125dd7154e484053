#pragma once

#include <random>
#include <stdexcept>

#include "ehz/polytope.hpp"

namespace testsupport {

// Random convex polygon with the requested facet-count range and vertex
// coordinates in [-box, box]. Rejects slivers so the numeric tolerances in
// the tests stay meaningful.
inline ehz::HPolytope random_polygon(std::mt19937& rng, int min_facets = 3, int max_facets = 6,
                                     double box = 2.0) {
  std::uniform_real_distribution<double> coord(-box, box);
  std::uniform_int_distribution<int> point_count(min_facets, max_facets + 2);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    const int m = point_count(rng);
    Eigen::MatrixXd pts(m, 2);
    for (int i = 0; i < m; ++i) {
      pts(i, 0) = coord(rng);
      pts(i, 1) = coord(rng);
    }
    try {
      ehz::HPolytope k = ehz::from_vertices({2, pts});
      if (k.facet_count() < min_facets || k.facet_count() > max_facets) continue;
      if (ehz::volume(k) < 0.05) continue;
      const Eigen::MatrixXd verts = ehz::vertices(k);
      double min_edge = 1e30;
      for (int i = 0; i < verts.rows(); ++i)
        for (int j = i + 1; j < verts.rows(); ++j)
          min_edge = std::min(min_edge, (verts.row(i) - verts.row(j)).norm());
      if (min_edge < 0.1) continue;
      return k;
    } catch (const std::exception&) {
      continue;
    }
  }
  throw std::runtime_error("random_polygon: rejection sampling failed");
}

inline ehz::HPolytope random_triangle(std::mt19937& rng, double box = 2.0) {
  return random_polygon(rng, 3, 3, box);
}

}  // namespace testsupport
