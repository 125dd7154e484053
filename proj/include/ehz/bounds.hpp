#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ehz/capacity.hpp"
#include "ehz/polytope.hpp"
#include "ehz/products.hpp"

namespace ehz {

/// Evaluated left/right sides of one inequality, with slack = rhs - lhs.
/// `passed` is slack >= -1e-8. When `error` is set the check could not run
/// and lhs/rhs are meaningless.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool passed = false;
  std::optional<Candidate> certificate;
  nlohmann::json metadata = nlohmann::json::object();
  std::optional<std::string> error;
};

inline constexpr double kSlackTol = 1e-8;

/// c(K x_L JK) <= 2 c(K), with the lifted factor certificate attached as an
/// independent witness of the right-hand side.
BoundReport check_theorem_jk(const HPolytope& k, const SearchOptions& options = {});

/// c(K x_L JK) <= 2 Vol(K) for planar K.
BoundReport check_corollary_area(const HPolytope& k, const SearchOptions& options = {});

/// c(K x_L K) <= 2 sum h_i^2. The right side depends on the translate of K;
/// the distance corollary below is its translation-invariant refinement.
BoundReport check_theorem_kk(const HPolytope& k, const SearchOptions& options = {});

/// c(K x_L K) <= 2 min_{x in K} sum dist(x, F_i)^2.
BoundReport check_corollary_distance(const HPolytope& k, const SearchOptions& options = {});

/// c(K) / (n! Vol(K))^{1/n} for K of dimension 2n.
double viterbo_ratio(const HPolytope& k, const SearchOptions& options = {});

/// Every applicable check plus the capacity axiom spot-checks (translation
/// invariance, conformality with factor 2, monotonicity against the bounding
/// box). Checks that throw are reported as per-check error records; the
/// bundle order is fixed.
std::vector<BoundReport> full_report(const HPolytope& k, const SearchOptions& options = {});

}  // namespace ehz
