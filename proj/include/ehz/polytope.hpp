#pragma once

#include <Eigen/Dense>

namespace ehz {

/// Tolerances used by the polytope routines. Values are the documented
/// defaults; override per call where needed.
struct GeometryTol {
  double normal_merge = 1e-10;   // angular tolerance for duplicate normals
  double feasibility = 1e-9;     // half-space / incidence slack
  double vertex_dedup = 1e-9;    // absolute vertex deduplication distance
  double rank = 1e-10;           // rank decisions in linear solves
  double interior = 1e-10;       // strict-interior margin, scaled by diameter
};

/// Convex polytope as an intersection of half-spaces <n_i, x> <= h_i with
/// unit outer normals n_i (rows of `normals`) and oriented heights h_i.
///
/// Instances produced by from_halfspaces / from_vertices are bounded,
/// full-dimensional and irredundant, with facets in a deterministic order.
struct HPolytope {
  int dim = 0;
  Eigen::MatrixXd normals;  // N x dim, unit rows
  Eigen::VectorXd heights;  // N

  int facet_count() const { return static_cast<int>(normals.rows()); }
};

/// Convex polytope as a list of points (rows). Input convenience only.
struct VPolytope {
  int dim = 0;
  Eigen::MatrixXd points;  // V x dim
};

/// Normalizes, merges duplicate normals (keeping the lower height), prunes
/// half-spaces that support no (dim-1)-face, and validates all invariants.
/// Throws UnboundedError, EmptyInteriorError or DegenerateError.
HPolytope from_halfspaces(int dim, const Eigen::MatrixXd& raw_normals,
                          const Eigen::VectorXd& raw_heights, const GeometryTol& tol = {});

/// Facet enumeration by brute force over dim-subsets of the points.
HPolytope from_vertices(const VPolytope& v, const GeometryTol& tol = {});

/// Vertex enumeration by brute force over dim-subsets of the facets.
/// Rows of the result are the deduplicated vertices, lexicographically sorted.
Eigen::MatrixXd vertices(const HPolytope& k, const GeometryTol& tol = {});

/// Support function value sup_{x in K} <x, direction/|direction|>.
double support_height(const HPolytope& k, const Eigen::VectorXd& direction,
                      const GeometryTol& tol = {});

/// Same normals, heights shifted by <n_i, t>.
HPolytope translate(const HPolytope& k, const Eigen::VectorXd& t);

/// Image polytope {Ax : x in K} for invertible A. Throws SingularMatrixError.
HPolytope apply_linear(const HPolytope& k, const Eigen::MatrixXd& a, const GeometryTol& tol = {});

/// Euclidean volume. Shoelace for dim = 2, recursive centroid-cone
/// decomposition for dim >= 3.
double volume(const HPolytope& k, const GeometryTol& tol = {});

struct DistanceMinimum {
  Eigen::VectorXd point;
  double value = 0.0;
};

/// Minimizes sum_i (h_i - <n_i, x>)^2, the sum of squared distances from x
/// to the facet hyperplanes, over x in K. Convex QP solved by an active-set
/// iteration; the returned point satisfies the KKT conditions.
DistanceMinimum min_sum_squared_distances(const HPolytope& k, const GeometryTol& tol = {});

/// Regular m-gon with the given circumradius, centered at the origin.
HPolytope regular_polygon(int m, double circumradius, const GeometryTol& tol = {});

}  // namespace ehz
