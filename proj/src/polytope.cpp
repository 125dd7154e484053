#include "ehz/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ehz/errors.hpp"

namespace ehz {

namespace {

// Advances `idx` to the next k-subset of {0..n-1} in ascending order.
bool next_subset(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<int> first_subset(int k) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

// Dimension of the affine hull of the rows of `points`.
int affine_rank(const Eigen::MatrixXd& points, double tol) {
  if (points.rows() <= 1) return 0;
  Eigen::MatrixXd diffs(points.rows() - 1, points.cols());
  for (int i = 1; i < points.rows(); ++i) diffs.row(i - 1) = points.row(i) - points.row(0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs);
  const double cutoff = tol * std::max(1.0, svd.singularValues()(0));
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > cutoff) ++rank;
  return rank;
}

double max_pairwise_distance(const Eigen::MatrixXd& points) {
  double best = 0.0;
  for (int i = 0; i < points.rows(); ++i)
    for (int j = i + 1; j < points.rows(); ++j)
      best = std::max(best, (points.row(i) - points.row(j)).norm());
  return best;
}

bool lex_less_rows(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

// Candidate vertices of the half-space system, feasibility-filtered and
// deduplicated. Does not require the system to be irredundant.
Eigen::MatrixXd enumerate_vertices(int dim, const Eigen::MatrixXd& normals,
                                   const Eigen::VectorXd& heights, const GeometryTol& tol) {
  const int n = static_cast<int>(normals.rows());
  const double feas = tol.feasibility * std::max(1.0, heights.cwiseAbs().maxCoeff());
  std::vector<Eigen::VectorXd> found;
  if (n < dim) return Eigen::MatrixXd(0, dim);
  std::vector<int> idx = first_subset(dim);
  do {
    Eigen::MatrixXd a(dim, dim);
    Eigen::VectorXd b(dim);
    for (int i = 0; i < dim; ++i) {
      a.row(i) = normals.row(idx[i]);
      b(i) = heights(idx[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(tol.rank);
    if (!lu.isInvertible()) continue;
    Eigen::VectorXd x = lu.solve(b);
    if (((normals * x) - heights).maxCoeff() > feas) continue;
    bool duplicate = false;
    for (const auto& v : found) {
      if ((v - x).norm() <= tol.vertex_dedup * std::max(1.0, x.norm())) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) found.push_back(std::move(x));
  } while (next_subset(idx, n));

  std::sort(found.begin(), found.end(), lex_less_rows);
  Eigen::MatrixXd out(static_cast<int>(found.size()), dim);
  for (int i = 0; i < out.rows(); ++i) out.row(i) = found[i];
  return out;
}

// True when the recession cone {u : <n_i, u> <= 0 for all i} is nontrivial.
// Assumes the normals span R^dim; extreme rays then lie on dim-1 linearly
// independent active constraints, so enumerating those subsets is complete.
bool has_recession_ray(int dim, const Eigen::MatrixXd& normals, const GeometryTol& tol) {
  const int n = static_cast<int>(normals.rows());
  const int k = dim - 1;
  if (k == 0) {
    // dim == 1: unbounded iff all normals share a sign.
    const double lo = normals.col(0).minCoeff();
    const double hi = normals.col(0).maxCoeff();
    return lo > -tol.feasibility || hi < tol.feasibility;
  }
  std::vector<int> idx = first_subset(k);
  do {
    Eigen::MatrixXd a(k, dim);
    for (int i = 0; i < k; ++i) a.row(i) = normals.row(idx[i]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const double cutoff = tol.rank * std::max(1.0, svd.singularValues()(0));
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > cutoff) ++rank;
    if (rank != k) continue;
    const Eigen::VectorXd u = svd.matrixV().col(dim - 1);
    for (const double sign : {1.0, -1.0}) {
      if ((normals * (sign * u)).maxCoeff() <= tol.feasibility) return true;
    }
  } while (next_subset(idx, n));
  return false;
}

// Orthonormal basis of the hyperplane orthogonal to n (columns).
Eigen::MatrixXd hyperplane_basis(const Eigen::VectorXd& n) {
  const int d = static_cast<int>(n.size());
  Eigen::MatrixXd a(d, 1);
  a.col(0) = n;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(d - 1);
}

double shoelace_area(const Eigen::MatrixXd& points) {
  const int v = static_cast<int>(points.rows());
  if (v < 3) return 0.0;
  const Eigen::RowVector2d c = points.colwise().mean();
  std::vector<int> order(v);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::atan2(points(a, 1) - c(1), points(a, 0) - c(0)) <
           std::atan2(points(b, 1) - c(1), points(b, 0) - c(0));
  });
  double twice = 0.0;
  for (int i = 0; i < v; ++i) {
    const auto& p = points.row(order[i]);
    const auto& q = points.row(order[(i + 1) % v]);
    twice += p(0) * q(1) - q(0) * p(1);
  }
  return 0.5 * std::abs(twice);
}

double volume_of_points(int dim, const Eigen::MatrixXd& points, const GeometryTol& tol);

// Centroid-cone decomposition: vol = sum over facets of
// facet_volume * distance(centroid, facet hyperplane) / dim.
double cone_volume(const HPolytope& k, const Eigen::MatrixXd& verts, const GeometryTol& tol) {
  const int d = k.dim;
  const Eigen::VectorXd centroid = verts.colwise().mean();
  const double feas = tol.feasibility * std::max(1.0, k.heights.cwiseAbs().maxCoeff());
  double total = 0.0;
  for (int f = 0; f < k.facet_count(); ++f) {
    const Eigen::VectorXd n = k.normals.row(f);
    std::vector<int> incident;
    for (int i = 0; i < verts.rows(); ++i)
      if (std::abs(verts.row(i).dot(n) - k.heights(f)) <= feas) incident.push_back(i);
    if (static_cast<int>(incident.size()) < d) continue;
    const Eigen::MatrixXd basis = hyperplane_basis(n);
    Eigen::MatrixXd flat(static_cast<int>(incident.size()), d - 1);
    const Eigen::VectorXd origin = verts.row(incident[0]);
    for (size_t i = 0; i < incident.size(); ++i)
      flat.row(static_cast<int>(i)) = (verts.row(incident[i]).transpose() - origin).transpose() * basis;
    const double facet_vol = volume_of_points(d - 1, flat, tol);
    total += facet_vol * (k.heights(f) - n.dot(centroid)) / d;
  }
  return total;
}

double volume_of_points(int dim, const Eigen::MatrixXd& points, const GeometryTol& tol) {
  if (dim == 1) return points.col(0).maxCoeff() - points.col(0).minCoeff();
  if (dim == 2) return shoelace_area(points);
  VPolytope v{dim, points};
  const HPolytope hull = from_vertices(v, tol);
  return cone_volume(hull, vertices(hull, tol), tol);
}

}  // namespace

HPolytope from_halfspaces(int dim, const Eigen::MatrixXd& raw_normals,
                          const Eigen::VectorXd& raw_heights, const GeometryTol& tol) {
  if (dim < 1) throw DegenerateError("from_halfspaces: dimension must be positive");
  if (raw_normals.rows() == 0) throw DegenerateError("from_halfspaces: empty half-space list");
  if (raw_normals.cols() != dim || raw_heights.size() != raw_normals.rows())
    throw DimensionMismatchError("from_halfspaces: normals/heights shape mismatch");

  // Normalize, then merge near-identical normals keeping the tighter height.
  std::vector<Eigen::VectorXd> normals;
  std::vector<double> heights;
  for (int i = 0; i < raw_normals.rows(); ++i) {
    const double norm = raw_normals.row(i).norm();
    if (norm <= 1e-14) throw DegenerateError("from_halfspaces: zero normal");
    const Eigen::VectorXd n = raw_normals.row(i) / norm;
    const double h = raw_heights(i) / norm;
    bool merged = false;
    for (size_t j = 0; j < normals.size(); ++j) {
      if (n.dot(normals[j]) >= 1.0 - tol.normal_merge) {
        heights[j] = std::min(heights[j], h);
        merged = true;
        break;
      }
    }
    if (!merged) {
      normals.push_back(n);
      heights.push_back(h);
    }
  }

  const int m = static_cast<int>(normals.size());
  Eigen::MatrixXd nmat(m, dim);
  Eigen::VectorXd hvec(m);
  for (int i = 0; i < m; ++i) {
    nmat.row(i) = normals[i];
    hvec(i) = heights[i];
  }

  // Boundedness: normals must span R^dim and the recession cone must be {0}.
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(nmat);
    const double cutoff = tol.rank * std::max(1.0, svd.singularValues()(0));
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > cutoff) ++rank;
    if (rank < dim) throw UnboundedError("from_halfspaces: normals do not span the space");
  }
  if (has_recession_ray(dim, nmat, tol))
    throw UnboundedError("from_halfspaces: normals do not positively span the space");

  const Eigen::MatrixXd verts = enumerate_vertices(dim, nmat, hvec, tol);
  if (verts.rows() == 0) throw EmptyInteriorError("from_halfspaces: no feasible point");

  // Strict interior: the vertex centroid must clear every facet by a margin
  // proportional to the diameter.
  const Eigen::VectorXd centroid = verts.colwise().mean();
  const double diameter = std::max(1e-12, max_pairwise_distance(verts));
  if ((hvec - nmat * centroid).minCoeff() <= tol.interior * diameter)
    throw EmptyInteriorError("from_halfspaces: interior is empty");

  // Irredundancy: keep a half-space only when its hyperplane carries at
  // least dim affinely independent vertices, i.e. a (dim-1)-face.
  const double feas = tol.feasibility * std::max(1.0, hvec.cwiseAbs().maxCoeff());
  std::vector<int> kept;
  for (int f = 0; f < m; ++f) {
    std::vector<int> incident;
    for (int i = 0; i < verts.rows(); ++i)
      if (std::abs(verts.row(i).dot(nmat.row(f).transpose()) - hvec(f)) <= feas)
        incident.push_back(i);
    if (static_cast<int>(incident.size()) < dim) continue;
    Eigen::MatrixXd pts(static_cast<int>(incident.size()), dim);
    for (size_t i = 0; i < incident.size(); ++i) pts.row(static_cast<int>(i)) = verts.row(incident[i]);
    if (affine_rank(pts, tol.rank) == dim - 1) kept.push_back(f);
  }
  if (static_cast<int>(kept.size()) < dim + 1)
    throw DegenerateError("from_halfspaces: fewer than dim+1 facets survive pruning");

  // Deterministic facet order: lexicographic by normal, then height.
  std::sort(kept.begin(), kept.end(), [&](int a, int b) {
    for (int i = 0; i < dim; ++i) {
      if (nmat(a, i) < nmat(b, i)) return true;
      if (nmat(a, i) > nmat(b, i)) return false;
    }
    return hvec(a) < hvec(b);
  });

  HPolytope out;
  out.dim = dim;
  out.normals.resize(static_cast<int>(kept.size()), dim);
  out.heights.resize(static_cast<int>(kept.size()));
  for (size_t i = 0; i < kept.size(); ++i) {
    out.normals.row(static_cast<int>(i)) = nmat.row(kept[i]);
    out.heights(static_cast<int>(i)) = hvec(kept[i]);
  }
  return out;
}

HPolytope from_vertices(const VPolytope& v, const GeometryTol& tol) {
  const int dim = v.dim;
  if (dim < 1) throw DegenerateError("from_vertices: dimension must be positive");
  if (v.points.cols() != dim) throw DimensionMismatchError("from_vertices: point width != dim");
  const int npts = static_cast<int>(v.points.rows());
  if (npts < dim + 1 || affine_rank(v.points, tol.rank) < dim)
    throw DegenerateError("from_vertices: points are not full-dimensional");

  const double scale = std::max(1.0, v.points.cwiseAbs().maxCoeff());
  std::vector<Eigen::VectorXd> cand_normals;
  std::vector<double> cand_heights;
  std::vector<int> idx = first_subset(dim);
  do {
    Eigen::MatrixXd diffs(dim - 1, dim);
    for (int i = 1; i < dim; ++i) diffs.row(i - 1) = v.points.row(idx[i]) - v.points.row(idx[0]);
    Eigen::VectorXd n;
    if (dim == 1) {
      n = Eigen::VectorXd::Ones(1);
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeFullV);
      const double cutoff = tol.rank * std::max(1.0, svd.singularValues()(0));
      int rank = 0;
      for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > cutoff) ++rank;
      if (rank != dim - 1) continue;  // subset does not span a hyperplane
      n = svd.matrixV().col(dim - 1);
    }
    double h = n.dot(v.points.row(idx[0]));
    const Eigen::VectorXd slacks = v.points * n - Eigen::VectorXd::Constant(npts, h);
    const double eps = tol.feasibility * scale;
    if (slacks.maxCoeff() <= eps) {
      cand_normals.push_back(n);
      cand_heights.push_back(h);
    } else if (slacks.minCoeff() >= -eps) {
      cand_normals.push_back(-n);
      cand_heights.push_back(-h);
    }
    // Otherwise points lie on both sides: not a supporting hyperplane.
  } while (next_subset(idx, npts));

  if (cand_normals.empty()) throw DegenerateError("from_vertices: no supporting hyperplanes");
  Eigen::MatrixXd nmat(static_cast<int>(cand_normals.size()), dim);
  Eigen::VectorXd hvec(static_cast<int>(cand_normals.size()));
  for (size_t i = 0; i < cand_normals.size(); ++i) {
    nmat.row(static_cast<int>(i)) = cand_normals[i];
    hvec(static_cast<int>(i)) = cand_heights[i];
  }
  return from_halfspaces(dim, nmat, hvec, tol);
}

Eigen::MatrixXd vertices(const HPolytope& k, const GeometryTol& tol) {
  return enumerate_vertices(k.dim, k.normals, k.heights, tol);
}

double support_height(const HPolytope& k, const Eigen::VectorXd& direction,
                      const GeometryTol& tol) {
  if (direction.size() != k.dim) throw DimensionMismatchError("support_height: direction size");
  const double norm = direction.norm();
  if (norm <= 1e-14) throw std::invalid_argument("support_height: direction must be nonzero");
  const Eigen::VectorXd u = direction / norm;
  return (vertices(k, tol) * u).maxCoeff();
}

HPolytope translate(const HPolytope& k, const Eigen::VectorXd& t) {
  if (t.size() != k.dim) throw DimensionMismatchError("translate: vector size");
  HPolytope out = k;
  out.heights += k.normals * t;
  return out;
}

HPolytope apply_linear(const HPolytope& k, const Eigen::MatrixXd& a, const GeometryTol& tol) {
  if (a.rows() != k.dim || a.cols() != k.dim)
    throw DimensionMismatchError("apply_linear: matrix shape");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a.transpose());
  if (std::abs(lu.determinant()) <= 1e-12)
    throw SingularMatrixError("apply_linear: matrix is singular");
  // {Ax : <n, x> <= h} = {y : <A^{-T} n, y> <= h}.
  Eigen::MatrixXd raw = lu.solve(k.normals.transpose()).transpose();
  return from_halfspaces(k.dim, raw, k.heights, tol);
}

double volume(const HPolytope& k, const GeometryTol& tol) {
  const Eigen::MatrixXd verts = vertices(k, tol);
  if (k.dim == 1) return verts.col(0).maxCoeff() - verts.col(0).minCoeff();
  if (k.dim == 2) return shoelace_area(verts);
  return cone_volume(k, verts, tol);
}

DistanceMinimum min_sum_squared_distances(const HPolytope& k, const GeometryTol& tol) {
  const int d = k.dim;
  const int n = k.facet_count();
  // f(x) = x^T P x - 2 r^T x + s with P = sum n n^T (positive definite).
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(d);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd ni = k.normals.row(i);
    p += ni * ni.transpose();
    r += k.heights(i) * ni;
    s += k.heights(i) * k.heights(i);
  }
  const auto objective = [&](const Eigen::VectorXd& x) {
    return x.dot(p * x) - 2.0 * r.dot(x) + s;
  };

  const Eigen::MatrixXd verts = vertices(k, tol);
  Eigen::VectorXd x = verts.colwise().mean();
  const double scale = std::max(1.0, k.heights.cwiseAbs().maxCoeff());

  std::vector<int> active;
  Eigen::VectorXd lambda;
  const int max_iter = 100 + 20 * n;
  for (int iter = 0; iter < max_iter; ++iter) {
    const int m = static_cast<int>(active.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(d + m, d + m);
    kkt.topLeftCorner(d, d) = 2.0 * p;
    Eigen::VectorXd rhs(d + m);
    rhs.head(d) = 2.0 * r;
    for (int i = 0; i < m; ++i) {
      kkt.block(d + i, 0, 1, d) = k.normals.row(active[i]);
      kkt.block(0, d + i, d, 1) = k.normals.row(active[i]).transpose();
      rhs(d + i) = k.heights(active[i]);
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(kkt);
    cod.setThreshold(tol.rank);
    const Eigen::VectorXd sol = cod.solve(rhs);
    const Eigen::VectorXd xeq = sol.head(d);
    lambda = sol.tail(m);

    const Eigen::VectorXd step = xeq - x;
    if (step.lpNorm<Eigen::Infinity>() <= 1e-11 * scale) {
      x = xeq;
      if (m == 0 || lambda.minCoeff() >= -1e-10) break;
      int drop = 0;
      lambda.minCoeff(&drop);
      active.erase(active.begin() + drop);
      continue;
    }

    double alpha = 1.0;
    int blocker = -1;
    for (int i = 0; i < n; ++i) {
      if (std::find(active.begin(), active.end(), i) != active.end()) continue;
      const double along = k.normals.row(i).dot(step);
      if (along <= 1e-14) continue;
      const double room = (k.heights(i) - k.normals.row(i).dot(x)) / along;
      if (room < alpha) {
        alpha = std::max(room, 0.0);
        blocker = i;
      }
    }
    x += alpha * step;
    if (blocker >= 0) active.push_back(blocker);
  }

  // KKT audit: stationarity, feasibility, multiplier signs.
  Eigen::VectorXd grad = 2.0 * (p * x - r);
  for (size_t i = 0; i < active.size(); ++i)
    grad += lambda(static_cast<int>(i)) * k.normals.row(active[i]).transpose();
  if (grad.lpNorm<Eigen::Infinity>() > 1e-9 * scale ||
      (k.normals * x - k.heights).maxCoeff() > 1e-9 * scale ||
      (active.size() > 0 && lambda.minCoeff() < -1e-10)) {
    throw Error("min_sum_squared_distances: active-set iteration failed the KKT audit");
  }
  return {x, objective(x)};
}

HPolytope regular_polygon(int m, double circumradius, const GeometryTol& tol) {
  if (m < 3) throw std::invalid_argument("regular_polygon: need at least 3 sides");
  if (circumradius <= 0.0) throw std::invalid_argument("regular_polygon: radius must be positive");
  Eigen::MatrixXd pts(m, 2);
  for (int i = 0; i < m; ++i) {
    const double angle = 2.0 * M_PI * i / m;
    pts(i, 0) = circumradius * std::cos(angle);
    pts(i, 1) = circumradius * std::sin(angle);
  }
  return from_vertices({2, pts}, tol);
}

}  // namespace ehz
