#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dissip/errors.hpp"
#include "dissip/twovar.hpp"
#include "helpers.hpp"

using namespace dissip;
using testutil::P;

TEST_CASE("polynomial arithmetic and canonical form") {
  Poly a = P({1, 1});   // 1 + xi
  Poly b = P({1, -1});  // 1 - xi
  CHECK(a * b == P({1, 0, -1}));
  CHECK((a - a).is_zero());
  CHECK((a - a).degree() == -1);
  CHECK(a.degree() == 1);
  CHECK(P({0, 0, 0}).is_zero());
  CHECK(P({2, 4}).monic() == Poly({Rational(1), Rational(2)}));
  CHECK(Poly::variable().shifted(2) == P({0, 0, 0, 1}));
  CHECK(P({1, 2, 3}).para() == P({1, -2, 3}));
}

TEST_CASE("euclidean division and gcd") {
  auto [q, r] = divmod(P({1, 2, 0, 1}), P({1, 0, 1}));  // xi^3+2xi+1 / xi^2+1
  CHECK(q == P({0, 1}));
  CHECK(r == P({1, 1}));
  CHECK(poly_gcd(P({-1, 0, 1}), P({1, 2, 1})) == P({1, 1}));  // monic
  CHECK(poly_gcd(Poly(), Poly()).is_zero());
  CHECK(exact_div(P({1, 0, -1}), P({1, 1})) == P({1, -1}));
  CHECK(divides(P({1, 1}), P({1, 2, 1})));
  CHECK(!divides(P({1, 1}), P({1, 0, 1})));
  CHECK_THROWS_AS(exact_div(P({1, 0, 1}), P({1, 1})), Error);
}

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(parse_rational("-1.25") == Rational(-5, 4));
  CHECK(format_rational(Rational(3, 4)) == "3/4");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK(rational_from_double(0.125) == Rational(1, 8));
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("roots via companion matrix") {
  auto roots = poly_roots(P({1, 0, 1}));  // xi^2 + 1
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(),
            [](auto a, auto b) { return a.imag() < b.imag(); });
  CHECK(std::abs(roots[0] - std::complex<double>(0, -1)) < 1e-12);
  CHECK(std::abs(roots[1] - std::complex<double>(0, 1)) < 1e-12);
  CHECK(poly_roots(P({7})).empty());
}

namespace {
// kernel row of Example 1: [xi^2+2xi+1, -(2xi^2+3xi+1)]
PolyMat example1_kernel() {
  PolyMat r(1, 2);
  r(0, 0) = P({1, 2, 1});
  r(0, 1) = P({-1, -3, -2});
  return r;
}
}  // namespace

TEST_CASE("polymat evaluation") {
  CHECK((eval(PolyMat::identity(2), 5.0) -
         Eigen::MatrixXcd::Identity(2, 2))
            .norm() == 0.0);

  // both kernel entries vanish at the uncontrollable mode -1
  Eigen::MatrixXcd at = eval(example1_kernel(), -1.0);
  CHECK(at.cwiseAbs().maxCoeff() < 1e-15);

  PolyMat m(2, 1);
  m(0, 0) = P({4, 1});
  m(1, 0) = P({3});
  Eigen::MatrixXcd v = eval(m, std::complex<double>(0, 1));
  CHECK(std::abs(v(0, 0) - std::complex<double>(4, 1)) < 1e-15);
  CHECK(std::abs(v(1, 0) - 3.0) < 1e-15);
}

TEST_CASE("normal rank and pointwise rank") {
  CHECK(normal_rank(PolyMat(2, 2)) == 0);
  CHECK(normal_rank(example1_kernel()) == 1);
  PolyMat d(2, 2);
  d(0, 0) = P({0, 1});
  d(1, 1) = P({0, 0, 1});
  CHECK(normal_rank(d) == 2);

  CHECK(rank_at(example1_kernel(), -1.0) == 0);
  CHECK(rank_at(example1_kernel(), 0.0) == 1);
  CHECK(rank_at(PolyMat::identity(2), std::complex<double>(2, 3)) == 2);
}

TEST_CASE("exact determinants") {
  PolyMat r9(2, 2);  // [-3, xi+4; xi+5, -2]
  r9(0, 0) = P({-3});
  r9(0, 1) = P({4, 1});
  r9(1, 0) = P({5, 1});
  r9(1, 1) = P({-2});
  CHECK(det(r9) == P({-14, -9, -1}));
  CHECK(det(PolyMat::identity(3)) == P({1}));
  PolyMat t(2, 2);
  t(0, 0) = P({1, 1});
  t(1, 0) = P({1});
  t(1, 1) = P({-1, 1});
  CHECK(det(t) == P({-1, 0, 1}));
  CHECK_THROWS_AS(det(PolyMat(1, 2)), NonSquare);
}

TEST_CASE("two-variable forms and the del operator") {
  // constant symmetric form passes through unchanged
  RatMat s(2, 2);
  s(0, 0) = 1;
  s(1, 1) = -1;
  TwoVarPolyMat cphi = two_var_from_images(PolyMat::identity(2), s,
                                           PolyMat::identity(2));
  PolyMat back = partial_op(cphi);
  CHECK(back(0, 0) == P({1}));
  CHECK(back(1, 1) == P({-1}));
  CHECK(back(0, 1).is_zero());

  // controllable part of Example 1: del Phi = -3 xi^2
  PolyMat m(2, 1);
  m(0, 0) = P({1, 2});
  m(1, 0) = P({1, 1});
  TwoVarPolyMat phi = two_var_from_images(m, s, m);
  CHECK(phi.is_symmetric());
  CHECK(phi.coeff(0, 0)(0, 0) == Rational(0));
  CHECK(phi.coeff(1, 1)(0, 0) == Rational(3));
  CHECK(phi.coeff(0, 1)(0, 0) == Rational(1));
  CHECK(phi.coeff(1, 0)(0, 0) == Rational(1));
  PolyMat dphi = partial_op(phi);
  CHECK(dphi(0, 0) == P({0, 0, -3}));

  // scalar zeta*eta picks up the sign rule
  TwoVarPolyMat ze(1);
  RatMat one(1, 1);
  one(0, 0) = 1;
  ze.add_coeff(1, 1, one);
  CHECK(partial_op(ze)(0, 0) == P({0, 0, -1}));

  // orthogonal constant images
  PolyMat e1(2, 1), e2(2, 1);
  e1(0, 0) = P({1});
  e2(1, 0) = P({1});
  RatMat id2 = RatMat::identity(2);
  CHECK(two_var_from_images(e1, id2, e2).is_zero());

  CHECK_THROWS_AS(two_var_from_images(e1, RatMat::identity(3), e2),
                  ShapeMismatch);
}

TEST_CASE("property: del Phi at j*omega equals the evaluated Popov matrix") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> omega(-10.0, 10.0);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    int w = 2 + trial % 2, c = 1 + trial % 2;
    PolyMat m = testutil::random_polymat(rng, w, c, 2);
    RatMat s(w, w);
    for (int i = 0; i < w; ++i) s(i, i) = sign(rng) ? 1 : -1;
    PolyMat dphi = partial_op(two_var_from_images(m, s, m));

    double om = omega(rng);
    std::complex<double> jw(0, om);
    Eigen::MatrixXcd lhs = eval(dphi, jw);
    Eigen::MatrixXcd e = eval(m, jw);
    Eigen::MatrixXcd rhs = e.adjoint() * s.to_double().cast<std::complex<double>>() * e;
    double scale = std::max(1.0, rhs.norm());
    CHECK((lhs - rhs).norm() <= 1e-10 * scale);
  }
}
