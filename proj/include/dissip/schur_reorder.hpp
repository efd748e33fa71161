#pragma once

#include <Eigen/Dense>

#include <vector>

namespace dissip {

struct SchurPair {
  Eigen::MatrixXcd Q, T;  // A = Q T Q^*, T upper triangular
};

SchurPair complex_schur(const Eigen::MatrixXcd& a);

// Moves the diagonal entries of T flagged in `select` to the leading
// positions (their mutual order preserved) via unitary swaps, accumulating
// into Q. The leading k Schur vectors then span the invariant subspace for
// the selected spectrum.
void move_selected_front(Eigen::MatrixXcd& t, Eigen::MatrixXcd& q,
                         std::vector<bool> select);

// In-place swap of adjacent diagonal entries k, k+1 of an upper triangular T.
void schur_swap(Eigen::MatrixXcd& t, Eigen::MatrixXcd& q, int k);

}  // namespace dissip
