#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ehz/polytope.hpp"
#include "ehz/symplectic.hpp"

namespace ehz {

/// Solver tolerances. One record, overridable per call.
struct Tolerances {
  double feasibility = 1e-9;   // constraint residuals on candidates
  double positivity = 1e-10;   // strict-support threshold for beta
  double rank = 1e-10;         // rank decisions in the stationarity solve
  double q_positive = 1e-14;   // smallest quadratic value counted as positive
};

/// A facet ordering together with a coefficient vector: an upper-bound
/// certificate for the capacity. `order` lists the support in sigma-order;
/// `beta` is indexed by all facets and vanishes off the support.
struct Candidate {
  std::vector<int> order;
  Eigen::VectorXd beta;
  double q_value = 0.0;
};

struct SearchOptions {
  std::optional<int> support_cap;  // enumerate supports up to this size
  bool full_enumeration = false;   // enumerate every support size
  Tolerances tol;
  int jobs = 1;                    // parallel workers for the enumeration
};

struct CapacityResult {
  double value = 0.0;
  Candidate best;
  std::string strategy;              // full-permutation | support-capped(k) | planar-boundary-order
  std::int64_t candidates_examined = 0;
  bool cross_checked = true;         // false when a capped search was not verified against
                                     // full enumeration (instance too large to cross-run)
};

/// The order-dependent quadratic form
///   sum_{j < i} beta_{o_i} beta_{o_j} omega(n_{o_j}, n_{o_i})
/// over the positions of `order`. Depends only on the relative order of the
/// indices carrying nonzero beta.
double quadratic_value(const SymplecticSpace& space, const HPolytope& k,
                       const std::vector<int>& order, const Eigen::VectorXd& beta);

/// Maximizes the quadratic form over beta supported exactly on `order`,
/// subject to sum beta_i h_i = 1 and sum beta_i n_i = 0, by solving the
/// Lagrangian stationarity system. Returns the candidate only when the
/// least-norm stationary point is strictly supported and feasible; absence
/// means the maximum over this support lies on a smaller support.
std::optional<Candidate> fixed_support_max(const SymplecticSpace& space, const HPolytope& k,
                                           const std::vector<int>& order,
                                           const Tolerances& tol = {});

/// EHZ capacity c = 1/(2 q_max), where q_max is the maximum of the quadratic
/// form over ordered facet supports and feasible coefficient vectors.
///
/// Search strategy, unless overridden by the options:
///   - up to 8 facets: exhaustive enumeration of ordered supports (exact);
///   - dim 2 with more facets: closed-form boundary-order candidate (exact,
///     the planar capacity equals the area);
///   - dim >= 4 with more facets: supports capped at dim+2 (the smallest
///     size a Lagrangian-product candidate can have without antiparallel
///     factor normals), escalating the cap when nothing positive exists.
/// Enumeration visits one representative per rotation/reversal class: for
/// feasible coefficients the quadratic value is invariant under cyclic
/// rotation and negated by reversal, so this loses no candidates.
/// Deterministic across runs and job counts; ties break toward the
/// lexicographically smallest order.
CapacityResult ehz_capacity(const SymplecticSpace& space, const HPolytope& k,
                            const SearchOptions& options = {});

/// The planar exact strategy as a standalone entry point: facets in boundary
/// (angular) order with beta proportional to edge lengths. Dim-2 only.
CapacityResult planar_boundary_capacity(const SymplecticSpace& space, const HPolytope& k,
                                        const Tolerances& tol = {});

/// Validates (order, beta) as a capacity certificate and returns the bound
/// 1/(2q). Throws InfeasibleCandidateError naming the violated constraint,
/// or NonpositiveQError.
double upper_bound_from_candidate(const SymplecticSpace& space, const HPolytope& k,
                                  const std::vector<int>& order, const Eigen::VectorXd& beta,
                                  const Tolerances& tol = {});

}  // namespace ehz
