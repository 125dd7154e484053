#pragma once

#include <Eigen/Dense>

namespace ehz {

/// Fixed-convention symplectic linear algebra on R^{2n}.
///
/// Coordinates are ordered (x_1..x_n, y_1..y_n). The complex structure maps
/// (x, y) -> (-y, x) and the form is omega(u, v) = <Ju, v>, which makes the
/// compatibility identity omega(x, Jy) = <x, y> hold by construction.
struct SymplecticSpace {
  int dim = 0;                        // ambient dimension, always even
  Eigen::MatrixXd form;               // Omega: antisymmetric, invertible
  Eigen::MatrixXd complex_structure;  // J: J^2 = -I

  double omega(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    return u.dot(form * v);
  }

  /// Checks antisymmetry, invertibility, J^2 = -I and the compatibility
  /// identity entrywise. Throws ehz::Error on violation.
  void validate(double tol = 1e-12) const;
};

/// Standard space of dimension 2n.
SymplecticSpace standard_space(int n);

/// Product space of dimension 4n for Lagrangian products: coordinates are
/// (a, b) with a, b in R^{2n}, and omega((a,b),(c,d)) = <a,d> - <c,b>.
/// Both factor copies of R^{2n} are Lagrangian. Under the block coordinate
/// convention this is the same matrix as standard_space(2n).
SymplecticSpace product_space(int n);

/// Permutation T (4n x 4n, |det T| = 1) sending interleaved Darboux
/// coordinates (a_1, b_1, ..., a_2n, b_2n) to block order (a, b).
/// T^T * product_space(n).form * T equals the canonical 2x2-block form,
/// i.e. T is a linear symplectomorphism between the two conventions, so
/// capacities computed either way agree.
Eigen::MatrixXd block_to_interleaved(int n);

/// The space whose form is the canonical 2x2-block form reached by
/// block_to_interleaved. Used to cross-check convention independence.
SymplecticSpace interleaved_space(int n);

}  // namespace ehz
