#include "ehz/symplectic.hpp"

#include <stdexcept>

#include "ehz/errors.hpp"

namespace ehz {

void SymplecticSpace::validate(double tol) const {
  const int d = dim;
  if (d <= 0 || d % 2 != 0) throw Error("symplectic space dimension must be even and positive");
  if (form.rows() != d || form.cols() != d || complex_structure.rows() != d ||
      complex_structure.cols() != d) {
    throw Error("symplectic space matrices have wrong shape");
  }
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(d, d);
  if ((form + form.transpose()).cwiseAbs().maxCoeff() > tol)
    throw Error("form is not antisymmetric");
  if (std::abs(form.determinant()) <= 1e-12) throw Error("form is not invertible");
  if ((complex_structure * complex_structure + identity).cwiseAbs().maxCoeff() > tol)
    throw Error("complex structure does not square to -identity");
  // omega(x, Jy) = <x, y> for all x, y  <=>  Omega * J = I.
  if ((form * complex_structure - identity).cwiseAbs().maxCoeff() > tol)
    throw Error("form and complex structure are not compatible");
}

SymplecticSpace standard_space(int n) {
  if (n <= 0) throw std::invalid_argument("standard_space: n must be positive");
  const int d = 2 * n;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d, d);
  j.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  j.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  SymplecticSpace space;
  space.dim = d;
  space.complex_structure = j;
  space.form = j.transpose();  // omega(u, v) = <Ju, v> = u^T J^T v
  return space;
}

SymplecticSpace product_space(int n) {
  if (n <= 0) throw std::invalid_argument("product_space: n must be positive");
  // (a, b) |-> (-b, a) on the two R^{2n} blocks; same matrices as
  // standard_space(2n) under the block coordinate order.
  return standard_space(2 * n);
}

Eigen::MatrixXd block_to_interleaved(int n) {
  if (n <= 0) throw std::invalid_argument("block_to_interleaved: n must be positive");
  const int m = 2 * n;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    t(i, 2 * i) = 1.0;      // a_i <- z_{2i}
    t(m + i, 2 * i + 1) = 1.0;  // b_i <- z_{2i+1}
  }
  return t;
}

SymplecticSpace interleaved_space(int n) {
  const SymplecticSpace block = product_space(n);
  const Eigen::MatrixXd t = block_to_interleaved(n);
  SymplecticSpace space;
  space.dim = block.dim;
  space.form = t.transpose() * block.form * t;
  space.complex_structure = t.transpose() * block.complex_structure * t;
  space.validate();
  return space;
}

}  // namespace ehz
