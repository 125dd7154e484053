#include "ehz/products.hpp"

#include <cmath>
#include <sstream>

#include "ehz/errors.hpp"

namespace ehz {

namespace {

void validate_factor_candidate(const HPolytope& k, const std::vector<int>& order,
                               const Eigen::VectorXd& beta, const Tolerances& tol) {
  if (beta.size() != k.facet_count())
    throw DimensionMismatchError("lift: beta length != factor facet count");
  std::vector<bool> in_order(k.facet_count(), false);
  for (int idx : order) {
    if (idx < 0 || idx >= k.facet_count())
      throw InvalidIndexError("lift: facet index out of range");
    if (in_order[idx]) throw InvalidIndexError("lift: repeated facet index");
    in_order[idx] = true;
  }
  for (int i = 0; i < beta.size(); ++i) {
    if (beta(i) < -1e-12) throw InfeasibleCandidateError("lift: beta has a negative entry");
    if (beta(i) > tol.positivity && !in_order[i])
      throw InfeasibleCandidateError("lift: beta support not covered by the order");
  }
  if (std::abs(beta.dot(k.heights) - 1.0) > tol.feasibility)
    throw InfeasibleCandidateError("lift: sum beta_i h_i != 1");
  if ((k.normals.transpose() * beta).lpNorm<Eigen::Infinity>() > tol.feasibility)
    throw InfeasibleCandidateError("lift: sum beta_i n_i != 0");
}

Eigen::VectorXd halved_duplicate(const Eigen::VectorXd& beta) {
  Eigen::VectorXd out(2 * beta.size());
  out.head(beta.size()) = 0.5 * beta;
  out.tail(beta.size()) = 0.5 * beta;
  return out;
}

void check_lift_feasible(const ProductPolytope& product, const std::vector<int>& order,
                         const Eigen::VectorXd& beta, const Tolerances& tol) {
  Tolerances relaxed = tol;
  relaxed.feasibility = std::max(tol.feasibility, 1e-9);
  validate_factor_candidate(product.base, order, beta, relaxed);
}

ProductPolytope make_product(const HPolytope& k, const HPolytope& t, ProductKind kind) {
  if (k.dim != t.dim)
    throw DimensionMismatchError("lagrangian_product: factors must share a dimension");
  if (k.dim % 2 != 0) throw OddDimensionError("lagrangian_product: factor dimension must be even");
  const int half = k.dim;
  const int n1 = k.facet_count();
  const int n2 = t.facet_count();

  HPolytope base;
  base.dim = 2 * half;
  base.normals = Eigen::MatrixXd::Zero(n1 + n2, base.dim);
  base.heights.resize(n1 + n2);
  base.normals.topLeftCorner(n1, half) = k.normals;
  base.heights.head(n1) = k.heights;
  base.normals.bottomRightCorner(n2, half) = t.normals;
  base.heights.tail(n2) = t.heights;

  ProductPolytope product;
  product.base = std::move(base);
  product.factor_dim = half;
  product.kind = kind;
  product.factor_first = k;
  product.factor_second = t;
  product.space = product_space(half / 2);
  return product;
}

}  // namespace

std::string to_string(ProductKind kind) {
  switch (kind) {
    case ProductKind::jk: return "jk";
    case ProductKind::kk: return "kk";
    case ProductKind::general: return "general";
  }
  return "general";
}

ProductPolytope lagrangian_product(const HPolytope& k, const HPolytope& t) {
  return make_product(k, t, ProductKind::general);
}

ProductPolytope jk_product(const HPolytope& k) {
  if (k.dim % 2 != 0) throw OddDimensionError("jk_product: dimension must be even");
  const SymplecticSpace factor_space = standard_space(k.dim / 2);
  // J is orthogonal, so (J n_i, h_i) is the H-representation of JK with the
  // facets aligned to K's order; the lift formulas rely on this pairing.
  HPolytope image = k;
  image.normals = k.normals * factor_space.complex_structure.transpose();
  return make_product(k, image, ProductKind::jk);
}

ProductPolytope kk_product(const HPolytope& k) { return make_product(k, k, ProductKind::kk); }

Candidate lift_certificate_jk(const ProductPolytope& product, const std::vector<int>& order,
                              const Eigen::VectorXd& beta, const Tolerances& tol) {
  if (product.kind != ProductKind::jk)
    throw DimensionMismatchError("lift_certificate_jk: product is not a JK product");
  const HPolytope& k = product.factor_first;
  validate_factor_candidate(k, order, beta, tol);
  const int n = k.facet_count();

  // Interleave each factor facet with its second-block partner, running
  // through the order backwards: this is the orientation that makes the
  // lifted value positive under the product form used here.
  const int size = static_cast<int>(order.size());
  std::vector<int> lifted_order(2 * size);
  for (int t = 0; t < size; ++t) {
    const int src = order[size - 1 - t];
    lifted_order[2 * t] = src;
    lifted_order[2 * t + 1] = src + n;
  }
  Eigen::VectorXd lifted_beta = halved_duplicate(beta);
  check_lift_feasible(product, lifted_order, lifted_beta, tol);

  const double factor_q = quadratic_value(standard_space(k.dim / 2), k, order, beta);
  const double lifted_q = quadratic_value(product.space, product.base, lifted_order, lifted_beta);
  if (std::abs(lifted_q - 0.5 * factor_q) > 1e-12 * std::max(1.0, std::abs(factor_q))) {
    std::ostringstream msg;
    msg << "lift_certificate_jk: lifted value " << lifted_q << " != half of " << factor_q;
    throw Error(msg.str());
  }
  return Candidate{std::move(lifted_order), std::move(lifted_beta), lifted_q};
}

Candidate lift_certificate_kk(const ProductPolytope& product, const std::vector<int>& order,
                              const Eigen::VectorXd& beta, const Tolerances& tol) {
  if (product.kind != ProductKind::kk)
    throw DimensionMismatchError("lift_certificate_kk: product is not a KK product");
  const HPolytope& k = product.factor_first;
  validate_factor_candidate(k, order, beta, tol);
  const int n = k.facet_count();

  const int size = static_cast<int>(order.size());
  std::vector<int> lifted_order(2 * size);
  for (int t = 0; t < size; ++t) {
    lifted_order[2 * t] = order[t];
    lifted_order[2 * t + 1] = order[t] + n;
  }
  Eigen::VectorXd lifted_beta = halved_duplicate(beta);
  check_lift_feasible(product, lifted_order, lifted_beta, tol);

  const double lifted_q = quadratic_value(product.space, product.base, lifted_order, lifted_beta);
  const double quarter_sq = 0.25 * beta.squaredNorm();
  if (std::abs(lifted_q - quarter_sq) > 1e-12 * std::max(1.0, quarter_sq)) {
    std::ostringstream msg;
    msg << "lift_certificate_kk: lifted value " << lifted_q << " != quarter beta norm "
        << quarter_sq;
    throw Error(msg.str());
  }
  return Candidate{std::move(lifted_order), std::move(lifted_beta), lifted_q};
}

bool cauchy_schwarz_tight(const Eigen::VectorXd& beta, const Eigen::VectorXd& heights,
                          double tol) {
  return std::abs(beta.squaredNorm() * heights.squaredNorm() - 1.0) <= tol;
}

}  // namespace ehz
