#pragma once

#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

#include "dissip/rational.hpp"

namespace dissip {

// Univariate polynomial with exact rational coefficients, stored
// ascending-power. Canonical form: no trailing zero coefficients; the zero
// polynomial has an empty coefficient list.
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { normalize(); }
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    normalize();
  }
  static Poly constant(const Rational& r) {
    return Poly(std::vector<Rational>{r});
  }
  static Poly variable() {
    return Poly(std::vector<Rational>{Rational(0), Rational(1)});
  }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1 by convention
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0);
  }
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }
  bool is_constant() const { return degree() <= 0; }

  std::complex<double> eval(const std::complex<double>& x) const;
  Rational eval_rational(const Rational& x) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  // p(-xi); used when forming adjoints of polynomial matrices
  Poly para() const;

  // multiply by xi^k
  Poly shifted(int k) const;

  Poly monic() const;

  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

 private:
  void normalize();
  std::vector<Rational> c_;
};

// Euclidean division: a = q*b + r with deg r < deg b. b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(Poly a, Poly b);

// Exact quotient; throws if b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);

bool divides(const Poly& b, const Poly& a);

std::string format_poly(const Poly& p);

// Roots via the balanced companion matrix of the monic normalization.
std::vector<std::complex<double>> poly_roots(const Poly& p);

}  // namespace dissip
