#include "ehz/capacity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "ehz/errors.hpp"

namespace ehz {

namespace {

// Pairwise form values W(a, b) = omega(n_a, n_b) for all facets.
Eigen::MatrixXd pair_form(const SymplecticSpace& space, const HPolytope& k) {
  return k.normals * space.form * k.normals.transpose();
}

double quadratic_from_pairs(const Eigen::MatrixXd& w, const std::vector<int>& order,
                            const Eigen::VectorXd& beta) {
  double q = 0.0;
  for (size_t i = 1; i < order.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      q += beta(order[i]) * beta(order[j]) * w(order[j], order[i]);
  return q;
}

// Stationarity of the quadratic form on the open support of `order` under
// sum beta h = 1 and sum beta n = 0: a linear KKT system in beta and the
// multipliers. Least-norm solution; candidates must be strictly supported,
// feasible and have a positive value. Boundary maxima belong to smaller
// supports, which the outer enumeration visits separately.
//
// Reversing the order negates the pair matrix, so the stationary beta is
// shared between an order and its reverse while the value flips sign. With
// `allow_flip` a negative stationary value is returned as a candidate for
// the reversed order; the class enumeration relies on this, while the public
// fixed-order entry point keeps the order as given.
std::optional<Candidate> solve_support(const Eigen::MatrixXd& w, const HPolytope& k,
                                       const std::vector<int>& order, const Tolerances& tol,
                                       bool allow_flip) {
  const int ns = static_cast<int>(order.size());
  const int d = k.dim;
  const int m = ns + 1 + d;

  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m, m);
  for (int p = 0; p < ns; ++p)
    for (int q = p + 1; q < ns; ++q) {
      const double v = w(order[p], order[q]);
      kkt(p, q) = v;
      kkt(q, p) = v;
    }
  for (int p = 0; p < ns; ++p) {
    const double h = k.heights(order[p]);
    kkt(p, ns) = -h;
    kkt(ns, p) = h;
    for (int j = 0; j < d; ++j) {
      const double nj = k.normals(order[p], j);
      kkt(p, ns + 1 + j) = -nj;
      kkt(ns + 1 + j, p) = nj;
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(ns) = 1.0;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(kkt);
  cod.setThreshold(tol.rank);
  const Eigen::VectorXd sol = cod.solve(rhs);
  if ((kkt * sol - rhs).lpNorm<Eigen::Infinity>() > tol.feasibility) return std::nullopt;

  const Eigen::VectorXd beta_s = sol.head(ns);
  if (beta_s.minCoeff() <= tol.positivity) return std::nullopt;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k.facet_count());
  for (int p = 0; p < ns; ++p) beta(order[p]) = beta_s(p);
  if (std::abs(beta.dot(k.heights) - 1.0) > tol.feasibility) return std::nullopt;
  if ((k.normals.transpose() * beta).lpNorm<Eigen::Infinity>() > tol.feasibility)
    return std::nullopt;

  const double q = quadratic_from_pairs(w, order, beta);
  if (q > tol.q_positive) return Candidate{order, std::move(beta), q};
  if (allow_flip && q < -tol.q_positive) {
    std::vector<int> reversed(order.rbegin(), order.rend());
    const double q_rev = quadratic_from_pairs(w, reversed, beta);
    return Candidate{std::move(reversed), std::move(beta), q_rev};
  }
  return std::nullopt;
}

// Deterministic total order on candidates: larger q first, then the
// lexicographically smaller facet order.
bool better_candidate(const Candidate& a, const Candidate& b) {
  if (a.q_value != b.q_value) return a.q_value > b.q_value;
  return std::lexicographical_compare(a.order.begin(), a.order.end(), b.order.begin(),
                                      b.order.end());
}

std::vector<std::vector<int>> subsets_up_to(int n, int cap) {
  std::vector<std::vector<int>> out;
  for (int size = 2; size <= cap; ++size) {
    if (size > n) break;
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      out.push_back(idx);
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

struct SubsetOutcome {
  std::optional<Candidate> best;
  std::int64_t examined = 0;
};

// Evaluates one representative per rotation/reversal class of the subset:
// rotations preserve both stationarity and the value on feasible
// coefficients, and reversals negate the value, so at most one of each pair
// can be positive. Fixing the smallest element first picks the rotation
// representative; comparing the tail against its reverse picks one of the
// two directions.
SubsetOutcome scan_subset(const Eigen::MatrixXd& w, const HPolytope& k,
                          const std::vector<int>& subset, const Tolerances& tol) {
  SubsetOutcome outcome;
  const int size = static_cast<int>(subset.size());
  std::vector<int> tail(subset.begin() + 1, subset.end());
  std::vector<int> order(size);
  order[0] = subset[0];
  do {
    const bool keep = !std::lexicographical_compare(
        tail.rbegin(), tail.rend(), tail.begin(), tail.end());
    if (!keep) continue;
    std::copy(tail.begin(), tail.end(), order.begin() + 1);
    ++outcome.examined;
    auto cand = solve_support(w, k, order, tol, /*allow_flip=*/true);
    if (cand && (!outcome.best || better_candidate(*cand, *outcome.best)))
      outcome.best = std::move(cand);
  } while (std::next_permutation(tail.begin(), tail.end()));
  return outcome;
}

struct EnumerationOutcome {
  std::optional<Candidate> best;
  std::int64_t examined = 0;
};

EnumerationOutcome enumerate_supports(const Eigen::MatrixXd& w, const HPolytope& k, int cap,
                                      const Tolerances& tol, int jobs) {
  const auto subsets = subsets_up_to(k.facet_count(), cap);
  std::vector<SubsetOutcome> outcomes(subsets.size());

  if (jobs <= 1 || subsets.size() < 2) {
    for (size_t i = 0; i < subsets.size(); ++i) outcomes[i] = scan_subset(w, k, subsets[i], tol);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= subsets.size()) break;
        outcomes[i] = scan_subset(w, k, subsets[i], tol);
      }
    };
    std::vector<std::thread> pool;
    const int count = std::min<int>(jobs, static_cast<int>(subsets.size()));
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Merge in subset order so the result is schedule-independent.
  EnumerationOutcome merged;
  for (auto& outcome : outcomes) {
    merged.examined += outcome.examined;
    if (outcome.best && (!merged.best || better_candidate(*outcome.best, *merged.best)))
      merged.best = std::move(outcome.best);
  }
  return merged;
}

void check_inputs(const SymplecticSpace& space, const HPolytope& k) {
  if (k.dim % 2 != 0) throw OddDimensionError("ehz_capacity: polytope dimension must be even");
  if (space.dim != k.dim)
    throw DimensionMismatchError("ehz_capacity: space and polytope dimensions differ");
}

CapacityResult result_from(const Candidate& best, std::string strategy, std::int64_t examined,
                           bool cross_checked) {
  CapacityResult result;
  result.value = 1.0 / (2.0 * best.q_value);
  result.best = best;
  result.strategy = std::move(strategy);
  result.candidates_examined = examined;
  result.cross_checked = cross_checked;
  return result;
}

}  // namespace

double quadratic_value(const SymplecticSpace& space, const HPolytope& k,
                       const std::vector<int>& order, const Eigen::VectorXd& beta) {
  if (beta.size() != k.facet_count())
    throw DimensionMismatchError("quadratic_value: beta length != facet count");
  std::vector<bool> seen(k.facet_count(), false);
  for (int idx : order) {
    if (idx < 0 || idx >= k.facet_count())
      throw InvalidIndexError("quadratic_value: facet index out of range");
    if (seen[idx]) throw InvalidIndexError("quadratic_value: repeated facet index");
    seen[idx] = true;
  }
  double q = 0.0;
  for (size_t i = 1; i < order.size(); ++i) {
    const Eigen::VectorXd wrow = space.form * k.normals.row(order[i]).transpose();
    for (size_t j = 0; j < i; ++j)
      q += beta(order[i]) * beta(order[j]) * k.normals.row(order[j]).dot(wrow);
  }
  return q;
}

std::optional<Candidate> fixed_support_max(const SymplecticSpace& space, const HPolytope& k,
                                           const std::vector<int>& order, const Tolerances& tol) {
  check_inputs(space, k);
  if (order.size() < 2) throw InvalidIndexError("fixed_support_max: support needs >= 2 facets");
  std::vector<bool> seen(k.facet_count(), false);
  for (int idx : order) {
    if (idx < 0 || idx >= k.facet_count())
      throw InvalidIndexError("fixed_support_max: facet index out of range");
    if (seen[idx]) throw InvalidIndexError("fixed_support_max: repeated facet index");
    seen[idx] = true;
  }
  return solve_support(pair_form(space, k), k, order, tol, /*allow_flip=*/false);
}

CapacityResult planar_boundary_capacity(const SymplecticSpace& space, const HPolytope& k,
                                        const Tolerances& tol) {
  check_inputs(space, k);
  if (k.dim != 2) throw DimensionMismatchError("planar_boundary_capacity: dim must be 2");
  const int n = k.facet_count();
  GeometryTol gtol;
  gtol.feasibility = tol.feasibility;
  const Eigen::MatrixXd verts = vertices(k, gtol);
  const double feas = tol.feasibility * std::max(1.0, k.heights.cwiseAbs().maxCoeff());

  // The boundary is the closed characteristic: beta_i is the length of edge i
  // over 2*area, so sum beta_i h_i = 1 and sum beta_i n_i telescopes to zero.
  const double area = volume(k, gtol);
  Eigen::VectorXd beta(n);
  for (int f = 0; f < n; ++f) {
    std::vector<int> incident;
    for (int i = 0; i < verts.rows(); ++i)
      if (std::abs(verts.row(i).dot(k.normals.row(f).transpose()) - k.heights(f)) <= feas)
        incident.push_back(i);
    if (incident.size() != 2)
      throw Error("planar_boundary_capacity: facet without a proper edge");
    beta(f) = (verts.row(incident[0]) - verts.row(incident[1])).norm() / (2.0 * area);
  }

  // Facets in boundary order = increasing normal angle, rotated so the
  // smallest facet index leads (rotation does not change the value).
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::atan2(k.normals(a, 1), k.normals(a, 0)) <
           std::atan2(k.normals(b, 1), k.normals(b, 0));
  });
  std::rotate(order.begin(), std::min_element(order.begin(), order.end()), order.end());

  const double q = quadratic_value(space, k, order, beta);
  if (q <= tol.q_positive) throw Error("planar_boundary_capacity: boundary candidate not positive");
  if (std::abs(beta.dot(k.heights) - 1.0) > tol.feasibility ||
      (k.normals.transpose() * beta).lpNorm<Eigen::Infinity>() > tol.feasibility)
    throw Error("planar_boundary_capacity: boundary candidate infeasible");

  return result_from(Candidate{order, beta, q}, "planar-boundary-order", 1, true);
}

CapacityResult ehz_capacity(const SymplecticSpace& space, const HPolytope& k,
                            const SearchOptions& options) {
  check_inputs(space, k);
  const int n = k.facet_count();
  const Eigen::MatrixXd w = pair_form(space, k);

  if (options.full_enumeration) {
    const auto outcome = enumerate_supports(w, k, n, options.tol, options.jobs);
    if (!outcome.best)
      throw NoPositiveCandidateError("ehz_capacity: no positive candidate under full enumeration");
    return result_from(*outcome.best, "full-permutation", outcome.examined, true);
  }

  if (options.support_cap) {
    const int cap = *options.support_cap;
    if (cap < 2) throw std::invalid_argument("ehz_capacity: support cap must be >= 2");
    const auto outcome = enumerate_supports(w, k, std::min(cap, n), options.tol, options.jobs);
    if (!outcome.best)
      throw NoPositiveCandidateError("ehz_capacity: no positive candidate at the requested cap");
    std::ostringstream strategy;
    strategy << "support-capped(" << std::min(cap, n) << ")";
    return result_from(*outcome.best, strategy.str(), outcome.examined, cap >= n);
  }

  // Default policy: exact enumeration where affordable, the exact planar
  // candidate beyond that in dimension 2, and a capped search in higher
  // dimension that escalates only when a cap finds nothing positive.
  constexpr int kExhaustiveFacetLimit = 8;
  if (n <= kExhaustiveFacetLimit) {
    const auto outcome = enumerate_supports(w, k, n, options.tol, options.jobs);
    if (!outcome.best)
      throw NoPositiveCandidateError("ehz_capacity: no positive candidate under full enumeration");
    return result_from(*outcome.best, "full-permutation", outcome.examined, true);
  }
  if (k.dim == 2) return planar_boundary_capacity(space, k, options.tol);

  // On a Lagrangian product the closure constraint splits over the two
  // factor blocks, so a support of size dim+1 can never carry a candidate
  // unless a factor has antiparallel normals; dim+2 is the smallest cap that
  // works generically (two per block plus three per block patterns).
  std::int64_t examined = 0;
  const int initial_cap = std::min(n, k.dim + 2);
  for (int cap = initial_cap; cap <= n; ++cap) {
    const auto outcome = enumerate_supports(w, k, cap, options.tol, options.jobs);
    examined += outcome.examined;
    if (outcome.best) {
      std::ostringstream strategy;
      strategy << "support-capped(" << cap << ")";
      if (cap > initial_cap) strategy << ";escalated-from(" << initial_cap << ")";
      return result_from(*outcome.best, strategy.str(), examined, cap >= n);
    }
  }
  throw NoPositiveCandidateError("ehz_capacity: no positive candidate on any ordered support");
}

double upper_bound_from_candidate(const SymplecticSpace& space, const HPolytope& k,
                                  const std::vector<int>& order, const Eigen::VectorXd& beta,
                                  const Tolerances& tol) {
  check_inputs(space, k);
  if (beta.size() != k.facet_count())
    throw DimensionMismatchError("upper_bound_from_candidate: beta length != facet count");

  std::vector<bool> in_order(k.facet_count(), false);
  for (int idx : order) {
    if (idx < 0 || idx >= k.facet_count())
      throw InvalidIndexError("upper_bound_from_candidate: facet index out of range");
    if (in_order[idx]) throw InvalidIndexError("upper_bound_from_candidate: repeated facet index");
    in_order[idx] = true;
  }
  for (int i = 0; i < beta.size(); ++i) {
    if (beta(i) < -1e-12) {
      std::ostringstream msg;
      msg << "candidate infeasible: beta[" << i << "] = " << beta(i) << " is negative";
      throw InfeasibleCandidateError(msg.str());
    }
    if (beta(i) > tol.positivity && !in_order[i]) {
      std::ostringstream msg;
      msg << "candidate infeasible: beta[" << i << "] > 0 but facet " << i
          << " is missing from the order";
      throw InfeasibleCandidateError(msg.str());
    }
  }
  const double height_sum = beta.dot(k.heights);
  if (std::abs(height_sum - 1.0) > tol.feasibility) {
    std::ostringstream msg;
    msg << "candidate infeasible: sum beta_i h_i = " << height_sum << ", off by "
        << height_sum - 1.0;
    throw InfeasibleCandidateError(msg.str());
  }
  const Eigen::VectorXd normal_sum = k.normals.transpose() * beta;
  if (normal_sum.lpNorm<Eigen::Infinity>() > tol.feasibility) {
    int coord = 0;
    normal_sum.cwiseAbs().maxCoeff(&coord);
    std::ostringstream msg;
    msg << "candidate infeasible: sum beta_i n_i has residual " << normal_sum(coord)
        << " in coordinate " << coord;
    throw InfeasibleCandidateError(msg.str());
  }

  const double q = quadratic_value(space, k, order, beta);
  if (q <= tol.q_positive) {
    std::ostringstream msg;
    msg << "candidate has nonpositive quadratic value " << q;
    throw NonpositiveQError(msg.str());
  }
  return 1.0 / (2.0 * q);
}

}  // namespace ehz
