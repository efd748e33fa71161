#pragma once

#include <Eigen/Dense>

#include <vector>

namespace dissip {

struct IOPartition {
  std::vector<int> inputs;
  std::vector<int> outputs;
};

// Observable i/s/o form: d/dt x = A x + B w1, w2 = C x + D w1.
struct StateSpace {
  Eigen::MatrixXd A, B, C, D;

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(D.cols()); }
  int p_out() const { return static_cast<int>(D.rows()); }
};

// T^{-1} A T = [A_c A_cp; 0 A_u], T^{-1} B = [B_c; 0], C T = [C_c C_u].
struct KalmanForm {
  Eigen::MatrixXd T;
  Eigen::MatrixXd A_c, A_cp, A_u, B_c, C_c, C_u;
  int n_c = 0, n_u = 0;
};

}  // namespace dissip
