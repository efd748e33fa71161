#include "dissip/schur_reorder.hpp"

#include <Eigen/Eigenvalues>

namespace dissip {

void schur_swap(Eigen::MatrixXcd& t, Eigen::MatrixXcd& q, int k) {
  using Cx = std::complex<double>;
  const Cx a = t(k, k), b = t(k + 1, k + 1), c = t(k, k + 1);
  // eigenvector of [a c; 0 b] for eigenvalue b is [c; b - a]
  const Cx v0 = c, v1 = b - a;
  const double nv = std::sqrt(std::norm(v0) + std::norm(v1));
  if (nv < 1e-300) return;  // equal eigenvalues in a Jordan chain: no-op
  const Cx cs = v0 / nv, sn = v1 / nv;
  Eigen::Matrix2cd g;
  g << cs, -std::conj(sn), sn, std::conj(cs);
  t.middleCols(k, 2) = t.middleCols(k, 2) * g;
  t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
  q.middleCols(k, 2) = q.middleCols(k, 2) * g;
  t(k + 1, k) = 0.0;
}

SchurPair complex_schur(const Eigen::MatrixXcd& a) {
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a, true);
  return {schur.matrixU(), schur.matrixT()};
}

void move_selected_front(Eigen::MatrixXcd& t, Eigen::MatrixXcd& q,
                         std::vector<bool> select) {
  const int n = static_cast<int>(t.rows());
  int front = 0;
  for (int i = 0; i < n; ++i) {
    if (!select[i]) continue;
    for (int k = i - 1; k >= front; --k) {
      schur_swap(t, q, k);
      std::swap(select[k], select[k + 1]);
    }
    ++front;
  }
}

}  // namespace dissip
