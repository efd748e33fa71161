#include "dissip/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <sstream>

#include "dissip/errors.hpp"

namespace dissip {

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::complex<double> Poly::eval(const std::complex<double>& x) const {
  std::complex<double> acc(0.0, 0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * x + to_complex(*it);
  return acc;
}

Rational Poly::eval_rational(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Rational> r = c_;
  for (auto& x : r) x = -x;
  return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(r));
}

Poly Poly::operator*(const Rational& s) const {
  std::vector<Rational> r = c_;
  for (auto& x : r) x *= s;
  return Poly(std::move(r));
}

Poly Poly::para() const {
  std::vector<Rational> r = c_;
  for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
  return Poly(std::move(r));
}

Poly Poly::shifted(int k) const {
  if (is_zero()) return Poly();
  std::vector<Rational> r(c_.size() + k, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
  return Poly(std::move(r));
}

Poly Poly::monic() const {
  if (is_zero()) return Poly();
  return *this * (Rational(1) / leading());
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error("divmod: division by zero polynomial");
  std::vector<Rational> rem = a.c_;
  const int db = b.degree();
  const Rational lb = b.leading();
  std::vector<Rational> quot;
  int dr = static_cast<int>(rem.size()) - 1;
  while (dr >= 0 && rem[dr] == 0) --dr;
  if (dr >= db) quot.assign(dr - db + 1, Rational(0));
  while (dr >= db) {
    Rational f = rem[dr] / lb;
    quot[dr - db] = f;
    for (int i = 0; i <= db; ++i) rem[dr - db + i] -= f * b.c_[i];
    --dr;
    while (dr >= 0 && rem[dr] == 0) --dr;
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error("exact_div: remainder nonzero");
  return q;
}

bool divides(const Poly& b, const Poly& a) {
  if (a.is_zero()) return true;
  if (b.is_zero()) return false;
  return divmod(a, b).second.is_zero();
}

std::string format_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(k);
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rational ac = c < 0 ? Rational(-c) : c;
    if (k == 0 || ac != 1) os << format_rational(ac);
    if (k >= 1) {
      if (ac != 1) os << "*";
      os << "xi";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

std::vector<std::complex<double>> poly_roots(const Poly& p) {
  const int n = p.degree();
  if (n <= 0) return {};
  Poly m = p.monic();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -to_double(m.coeff(i));
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

Rational parse_rational(const std::string& s) {
  auto pos = s.find('/');
  try {
    if (pos == std::string::npos) {
      // allow decimal literals, which are exact in base 10
      auto dot = s.find('.');
      if (dot == std::string::npos) return Rational(BigInt(s));
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      BigInt den = 1;
      for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      return Rational(BigInt(digits), den);
    }
    return Rational(BigInt(s.substr(0, pos)), BigInt(s.substr(pos + 1)));
  } catch (const std::exception&) {
    throw ParseError("cannot parse rational: " + s);
  }
}

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

}  // namespace dissip
