#pragma once

#include <string>

#include "ehz/capacity.hpp"
#include "ehz/polytope.hpp"
#include "ehz/symplectic.hpp"

namespace ehz {

enum class ProductKind { jk, kk, general };

std::string to_string(ProductKind kind);

/// Lagrangian product K x_L T in R^{4n}: the first N1 facets are (n_i, 0)
/// with K's heights, the next N2 are (0, m_j) with T's heights. Block order
/// is preserved so factor facet i pairs with product facets i and N1+i.
struct ProductPolytope {
  HPolytope base;          // dimension 4n
  int factor_dim = 0;      // 2n
  ProductKind kind = ProductKind::general;
  HPolytope factor_first;
  HPolytope factor_second;
  SymplecticSpace space;   // the product form pairing the two blocks
};

ProductPolytope lagrangian_product(const HPolytope& k, const HPolytope& t);

/// K x_L JK: second-block facets are (0, J n_i) with K's heights, in K's
/// facet order.
ProductPolytope jk_product(const HPolytope& k);

/// K x_L K.
ProductPolytope kk_product(const HPolytope& k);

/// Lifts a factor certificate (order, beta) in M(K) to a certificate of the
/// JK product: beta halves and duplicates across the two blocks, and the
/// order interleaves each factor facet with its second-block partner. The
/// lifted quadratic value equals half the factor value; both identities and
/// feasibility in M(K x JK) are checked before returning.
Candidate lift_certificate_jk(const ProductPolytope& product, const std::vector<int>& order,
                              const Eigen::VectorXd& beta, const Tolerances& tol = {});

/// Lift to the KK product: the lifted quadratic value equals
/// (1/4) sum_i beta_i^2, checked against direct evaluation of the double sum.
Candidate lift_certificate_kk(const ProductPolytope& product, const std::vector<int>& order,
                              const Eigen::VectorXd& beta, const Tolerances& tol = {});

/// Cauchy-Schwarz equality diagnostic for the KK bound: true when
/// |sum beta^2 * sum h^2 - 1| <= tol, i.e. beta is proportional to h.
bool cauchy_schwarz_tight(const Eigen::VectorXd& beta, const Eigen::VectorXd& heights,
                          double tol = 1e-9);

}  // namespace ehz
