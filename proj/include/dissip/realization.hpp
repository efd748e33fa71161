#pragma once

#include "dissip/behavior.hpp"

namespace dissip {

// Observable i/s/o realization of a kernel behavior for the given i/o
// partition. Requires the output block square, nonsingular and the induced
// transfer proper; throws ImproperTransfer / SingularOutputBlock.
StateSpace realize(const Behavior& b, const IOPartition& io);

// Controllability decomposition via an orthogonal basis of the
// controllability subspace.
KalmanForm kalman(const StateSpace& ss, double tol = 1e-10);

// Feed-through of W2 W1^{-1} for an image matrix partitioned by rows:
// the first block (input rows) is W1 (square). Exact polynomial division,
// no numerical limit.
Eigen::MatrixXd feedthrough(const PolyMat& m, const IOPartition& io);

// C (sI - A)^{-1} B + D; throws PoleEvaluation at (near-)poles.
ComplexMat transfer_eval(const StateSpace& ss, const std::complex<double>& s);

// PBH test: rank [lambda I - A; C] = n at every eigenvalue of A.
bool is_observable(const StateSpace& ss, double tol = 1e-8);

// Exact left matrix fraction (D_L, N_L) with D_L row proper,
// G = D_L^{-1} N_L and ker [-N_L D_L] the original behavior (columns
// rearranged per the partition). Exposed for tests.
struct LeftFraction {
  PolyMat DL, NL;
  std::vector<int> row_degrees;
};
LeftFraction row_proper_fraction(const PolyMat& R, const IOPartition& io);

}  // namespace dissip
