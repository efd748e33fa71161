#pragma once

#include "dissip/polymat.hpp"

namespace dissip {

// U * S * V = original with U, V unimodular and S = [diag(d_1..d_r) 0],
// d_i monic and d_i | d_{i+1}. The inverses are tracked during elimination
// so downstream consumers (kernel/image conversions) stay exact.
struct SmithDecomposition {
  PolyMat U, S, V;
  PolyMat Uinv, Vinv;
  std::vector<Poly> invariant_factors;  // nonzero diagonal entries, monic

  int rank() const { return static_cast<int>(invariant_factors.size()); }
  // invariant factors of degree >= 1
  std::vector<Poly> nontrivial_factors() const;
};

SmithDecomposition smith_form(const PolyMat& p);

// Rank over the rational-function field (count of nonzero invariant factors).
int normal_rank(const PolyMat& p);

}  // namespace dissip
