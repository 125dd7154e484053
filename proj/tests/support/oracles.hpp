#pragma once

// Test-only oracles. Each one recomputes a quantity along a route that is
// independent of the library code path it is used to check.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ehz/polytope.hpp"
#include "ehz/symplectic.hpp"

namespace testsupport {

// Polygon area straight from the vertex list (own angular sort + shoelace).
inline double shoelace_area(const Eigen::MatrixXd& points) {
  const int v = static_cast<int>(points.rows());
  const double cx = points.col(0).mean();
  const double cy = points.col(1).mean();
  std::vector<int> order(v);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::atan2(points(a, 1) - cy, points(a, 0) - cx) <
           std::atan2(points(b, 1) - cy, points(b, 0) - cx);
  });
  double twice = 0.0;
  for (int i = 0; i < v; ++i) {
    const auto& p = points.row(order[i]);
    const auto& q = points.row(order[(i + 1) % v]);
    twice += p(0) * q(1) - q(0) * p(1);
  }
  return 0.5 * std::abs(twice);
}

inline double polygon_area(const ehz::HPolytope& k) { return shoelace_area(ehz::vertices(k)); }

// Grid scan of f(x) = sum (h_i - <n_i, x>)^2 over the polytope, refined by
// zooming onto the best cell a few times.
inline double grid_min_sum_squared(const ehz::HPolytope& k, int grid = 200, int levels = 3) {
  const Eigen::MatrixXd verts = ehz::vertices(k);
  const int d = k.dim;
  Eigen::VectorXd lo = verts.colwise().minCoeff();
  Eigen::VectorXd hi = verts.colwise().maxCoeff();
  const auto value = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd slack = k.heights - k.normals * x;
    return slack.squaredNorm();
  };

  double best = 1e300;
  Eigen::VectorXd best_x = verts.colwise().mean();
  for (int level = 0; level < levels; ++level) {
    Eigen::VectorXd x(d);
    if (d != 2) throw std::runtime_error("grid_min_sum_squared: planar oracle only");
    for (int i = 0; i <= grid; ++i) {
      x(0) = lo(0) + (hi(0) - lo(0)) * i / grid;
      for (int j = 0; j <= grid; ++j) {
        x(1) = lo(1) + (hi(1) - lo(1)) * j / grid;
        if (((k.normals * x) - k.heights).maxCoeff() > 1e-12) continue;
        const double f = value(x);
        if (f < best) {
          best = f;
          best_x = x;
        }
      }
    }
    const Eigen::VectorXd cell =
        2.0 * (hi - lo) / grid + Eigen::VectorXd::Constant(d, 1e-12);
    lo = best_x - cell;
    hi = best_x + cell;
  }
  return best;
}

// Exhaustive capacity for small polytopes: every support subset, every order
// of it (all k!, no symmetry reductions), with the coefficient maximization
// done by a zooming grid over the feasible affine family. Independent of the
// solver's stationarity route. Intended for N <= 5.
inline double brute_force_capacity(const ehz::SymplecticSpace& space, const ehz::HPolytope& k) {
  const int n = k.facet_count();
  const int d = k.dim;
  const Eigen::MatrixXd w = k.normals * space.form * k.normals.transpose();

  double best_q = 0.0;
  for (int bits = 0; bits < (1 << n); ++bits) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (bits & (1 << i)) subset.push_back(i);
    const int size = static_cast<int>(subset.size());
    if (size < 2) continue;

    // Feasible family on this support: beta = particular + kernel * c.
    Eigen::MatrixXd constraints(d + 1, size);
    for (int p = 0; p < size; ++p) {
      constraints(0, p) = k.heights(subset[p]);
      constraints.col(p).tail(d) = k.normals.row(subset[p]).transpose();
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
    rhs(0) = 1.0;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(constraints);
    cod.setThreshold(1e-10);
    const Eigen::VectorXd particular = cod.solve(rhs);
    if ((constraints * particular - rhs).lpNorm<Eigen::Infinity>() > 1e-8) continue;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(constraints);
    lu.setThreshold(1e-10);
    const Eigen::MatrixXd kernel = lu.kernel();
    const int family = (kernel.cols() == 1 && kernel.col(0).norm() < 1e-14)
                           ? 0
                           : static_cast<int>(kernel.cols());
    if (family > 2) continue;  // oracle scope: small instances only

    const auto q_of = [&](const Eigen::VectorXd& beta_s, const std::vector<int>& order) {
      double q = 0.0;
      for (size_t i = 1; i < order.size(); ++i)
        for (size_t j = 0; j < i; ++j)
          q += beta_s(order[i]) * beta_s(order[j]) * w(subset[order[j]], subset[order[i]]);
      return q;
    };

    std::vector<int> order(size);
    std::iota(order.begin(), order.end(), 0);
    do {
      if (family == 0) {
        if (particular.minCoeff() >= -1e-9) best_q = std::max(best_q, q_of(particular, order));
        continue;
      }
      // Zooming grid over the family coordinates.
      Eigen::VectorXd center = Eigen::VectorXd::Zero(family);
      double radius = 10.0;
      double local_best = -1e300;
      Eigen::VectorXd local_c = center;
      for (int level = 0; level < 5; ++level) {
        const int steps = 40;
        if (family == 1) {
          for (int i = 0; i <= steps; ++i) {
            Eigen::VectorXd c(1);
            c(0) = center(0) - radius + 2.0 * radius * i / steps;
            const Eigen::VectorXd beta_s = particular + kernel * c;
            if (beta_s.minCoeff() < -1e-9) continue;
            const double q = q_of(beta_s, order);
            if (q > local_best) {
              local_best = q;
              local_c = c;
            }
          }
        } else {
          for (int i = 0; i <= steps; ++i)
            for (int j = 0; j <= steps; ++j) {
              Eigen::VectorXd c(2);
              c(0) = center(0) - radius + 2.0 * radius * i / steps;
              c(1) = center(1) - radius + 2.0 * radius * j / steps;
              const Eigen::VectorXd beta_s = particular + kernel * c;
              if (beta_s.minCoeff() < -1e-9) continue;
              const double q = q_of(beta_s, order);
              if (q > local_best) {
                local_best = q;
                local_c = c;
              }
            }
        }
        if (local_best > -1e299) center = local_c;
        radius = radius * 4.0 / steps;
      }
      best_q = std::max(best_q, local_best);
    } while (std::next_permutation(order.begin(), order.end()));
  }

  if (best_q <= 0.0) throw std::runtime_error("brute_force_capacity: no positive value");
  return 1.0 / (2.0 * best_q);
}

}  // namespace testsupport
