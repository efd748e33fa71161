#pragma once

#include <map>

#include "dissip/polymat.hpp"

namespace dissip {

// Two-variable polynomial matrix sum_{j,k} Phi_jk zeta^j eta^k with square
// rational coefficient matrices of fixed size w. Carrier of quadratic
// differential forms.
class TwoVarPolyMat {
 public:
  TwoVarPolyMat() = default;
  explicit TwoVarPolyMat(int w) : w_(w) {}

  int dim() const { return w_; }
  const std::map<std::pair<int, int>, RatMat>& coeffs() const { return c_; }

  // accumulates into the (j,k) coefficient
  void add_coeff(int j, int k, const RatMat& m);
  RatMat coeff(int j, int k) const;

  bool is_zero() const;
  bool is_symmetric() const;  // Phi_jk == Phi_kj^T

 private:
  int w_ = 0;
  std::map<std::pair<int, int>, RatMat> c_;
};

// del Phi(xi) = Phi(-xi, xi) = sum_{j,k} Phi_jk (-xi)^j xi^k
PolyMat partial_op(const TwoVarPolyMat& phi);

// M1^T(zeta) * Sigma * M2(eta)
TwoVarPolyMat two_var_from_images(const PolyMat& m1, const RatMat& sigma,
                                  const PolyMat& m2);

}  // namespace dissip
