#include "dissip/twovar.hpp"

#include "dissip/errors.hpp"

namespace dissip {

void TwoVarPolyMat::add_coeff(int j, int k, const RatMat& m) {
  if (m.rows() != w_ || m.cols() != w_)
    throw ShapeMismatch("TwoVarPolyMat coefficient size");
  auto it = c_.find({j, k});
  if (it == c_.end()) {
    c_.emplace(std::make_pair(j, k), m);
    return;
  }
  RatMat& acc = it->second;
  for (int a = 0; a < w_; ++a)
    for (int b = 0; b < w_; ++b) acc(a, b) += m(a, b);
}

RatMat TwoVarPolyMat::coeff(int j, int k) const {
  auto it = c_.find({j, k});
  if (it != c_.end()) return it->second;
  return RatMat(w_, w_);
}

bool TwoVarPolyMat::is_zero() const {
  for (const auto& [jk, m] : c_)
    for (int a = 0; a < w_; ++a)
      for (int b = 0; b < w_; ++b)
        if (m(a, b) != 0) return false;
  return true;
}

bool TwoVarPolyMat::is_symmetric() const {
  for (const auto& [jk, m] : c_) {
    RatMat other = coeff(jk.second, jk.first);
    for (int a = 0; a < w_; ++a)
      for (int b = 0; b < w_; ++b)
        if (m(a, b) != other(b, a)) return false;
  }
  return true;
}

PolyMat partial_op(const TwoVarPolyMat& phi) {
  const int w = phi.dim();
  PolyMat out(w, w);
  for (const auto& [jk, m] : phi.coeffs()) {
    auto [j, k] = jk;
    Rational sign = (j % 2 == 0) ? Rational(1) : Rational(-1);
    for (int a = 0; a < w; ++a)
      for (int b = 0; b < w; ++b) {
        if (m(a, b) == 0) continue;
        out(a, b) = out(a, b) + Poly::constant(sign * m(a, b)).shifted(j + k);
      }
  }
  return out;
}

TwoVarPolyMat two_var_from_images(const PolyMat& m1, const RatMat& sigma,
                                  const PolyMat& m2) {
  if (sigma.rows() != m1.rows() || sigma.cols() != m2.rows())
    throw ShapeMismatch("two_var_from_images: Sigma vs image row counts");
  if (m1.cols() != m2.cols())
    throw ShapeMismatch("two_var_from_images: latent dimensions differ");
  const int w = m1.cols();
  TwoVarPolyMat phi(w);
  // Phi_{jk}(a,b) = sum_{r,s} M1(r,a)_j Sigma(r,s) M2(s,b)_k
  for (int a = 0; a < w; ++a)
    for (int b = 0; b < w; ++b)
      for (int r = 0; r < m1.rows(); ++r) {
        if (m1(r, a).is_zero()) continue;
        for (int s = 0; s < m2.rows(); ++s) {
          if (sigma(r, s) == 0 || m2(s, b).is_zero()) continue;
          for (int j = 0; j <= m1(r, a).degree(); ++j) {
            Rational cj = m1(r, a).coeff(j);
            if (cj == 0) continue;
            for (int k = 0; k <= m2(s, b).degree(); ++k) {
              Rational ck = m2(s, b).coeff(k);
              if (ck == 0) continue;
              RatMat add(w, w);
              add(a, b) = cj * sigma(r, s) * ck;
              phi.add_coeff(j, k, add);
            }
          }
        }
      }
  return phi;
}

}  // namespace dissip
