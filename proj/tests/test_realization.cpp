#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dissip/realization.hpp"
#include "dissip/errors.hpp"
#include "helpers.hpp"

using namespace dissip;
using testutil::P;

namespace {

Behavior example1_kernel() {
  PolyMat r(1, 2);
  r(0, 0) = P({1, 2, 1});
  r(0, 1) = P({-1, -3, -2});
  return Behavior::kernel(r);
}

StateSpace example1_ss() {
  StateSpace ss;
  ss.A.resize(2, 2);
  ss.A << 0, -0.5, 1, -1.5;
  ss.B.resize(2, 1);
  ss.B << -0.5, -0.5;
  ss.C.resize(1, 2);
  ss.C << 0, -0.5;
  ss.D.resize(1, 1);
  ss.D << 0.5;
  return ss;
}

StateSpace example2_ss() {
  StateSpace ss;
  ss.A.resize(2, 2);
  ss.A << 0, -1, 4, -4;
  ss.B.resize(2, 1);
  ss.B << 1, 2;
  ss.C.resize(1, 2);
  ss.C << 0, 1;
  ss.D.resize(1, 1);
  ss.D << 0;
  return ss;
}

std::vector<std::complex<double>> sorted_eigs(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  std::vector<std::complex<double>> v(es.eigenvalues().data(),
                                      es.eigenvalues().data() + a.rows());
  std::sort(v.begin(), v.end(), [](auto x, auto y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return v;
}

}  // namespace

TEST_CASE("realization of the running two-variable kernel example") {
  IOPartition io{{0}, {1}};
  StateSpace ss = realize(example1_kernel(), io);
  REQUIRE(ss.n() == 2);
  REQUIRE(ss.m() == 1);
  CHECK(is_observable(ss));

  // poles {-1/2, -1} of the transfer -R2^{-1} R1
  auto eigs = sorted_eigs(ss.A);
  CHECK(std::abs(eigs[0] - std::complex<double>(-1, 0)) < 1e-9);
  CHECK(std::abs(eigs[1] - std::complex<double>(-0.5, 0)) < 1e-9);

  // transfer agrees with the reference realization at random points
  StateSpace ref = example1_ss();
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> pt(-3.0, 3.0);
  for (int k = 0; k < 12; ++k) {
    std::complex<double> s(pt(rng), pt(rng) + 0.7);
    ComplexMat g = transfer_eval(ss, s), gr = transfer_eval(ref, s);
    CHECK((g - gr).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("static relation realizes with n = 0") {
  PolyMat r(1, 2);
  r(0, 0) = P({1});
  r(0, 1) = P({-1});
  StateSpace ss = realize(Behavior::kernel(r), IOPartition{{0}, {1}});
  CHECK(ss.n() == 0);
  REQUIRE(ss.D.rows() == 1);
  CHECK(ss.D(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("realize rejects improper partitions") {
  // choosing the degree-zero column as output makes the transfer improper
  PolyMat r(1, 2);
  r(0, 0) = P({1, 1});
  r(0, 1) = P({-1});
  CHECK_THROWS_AS(realize(Behavior::kernel(r), IOPartition{{0}, {1}}),
                  ImproperTransfer);
}

TEST_CASE("kalman decomposition") {
  StateSpace ss = example2_ss();
  KalmanForm kf = kalman(ss);
  CHECK(kf.n_c == 1);
  REQUIRE(kf.n_u == 1);
  CHECK(std::abs(kf.A_u(0, 0) - (-2.0)) < 1e-9);

  // reconstruction: T^{-1} A T upper block triangular, T^{-1} B zero below
  Eigen::MatrixXd Tinv = kf.T.inverse();
  Eigen::MatrixXd at = Tinv * ss.A * kf.T;
  CHECK(std::abs(at(1, 0)) < 1e-10);
  Eigen::MatrixXd bt = Tinv * ss.B;
  CHECK(std::abs(bt(1, 0)) < 1e-10);
  CHECK(std::abs(at(0, 0) - kf.A_c(0, 0)) < 1e-10);
  CHECK(std::abs(at(1, 1) - kf.A_u(0, 0)) < 1e-10);

  StateSpace nob;
  nob.A = Eigen::MatrixXd::Identity(2, 2);
  nob.B = Eigen::MatrixXd::Zero(2, 1);
  nob.C = Eigen::MatrixXd::Identity(2, 2);
  nob.D = Eigen::MatrixXd::Zero(2, 1);
  CHECK(kalman(nob).n_c == 0);
}

TEST_CASE("feedthrough from an image representation") {
  PolyMat m(2, 1);
  m(0, 0) = P({1, 2});  // input row: 2xi + 1
  m(1, 0) = P({1, 1});  // output row: xi + 1
  Eigen::MatrixXd d = feedthrough(m, IOPartition{{0}, {1}});
  REQUIRE(d.rows() == 1);
  CHECK(d(0, 0) == doctest::Approx(0.5));

  // output degree exceeds input degree: no finite feedthrough
  PolyMat c(2, 1);
  c(0, 0) = P({1});
  c(1, 0) = P({0, 1});
  CHECK_THROWS_AS(feedthrough(c, IOPartition{{0}, {1}}), ImproperTransfer);

  PolyMat z(2, 1);
  z(0, 0) = P({1});
  z(1, 0) = Poly();
  Eigen::MatrixXd d0 = feedthrough(z, IOPartition{{0}, {1}});
  CHECK(d0(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("transfer evaluation oracles") {
  StateSpace ss = example1_ss();
  // G(s) = (2s+1)/(2s^2+3s+1) for the reference realization at s=1: 3/6
  ComplexMat g1 = transfer_eval(ss, 1.0);
  CHECK(std::abs(g1(0, 0) - 0.5) < 1e-12);
  ComplexMat g0 = transfer_eval(ss, 0.0);
  CHECK(std::abs(g0(0, 0) - 1.0) < 1e-12);
  CHECK_THROWS_AS(transfer_eval(ss, -1.0), PoleEvaluation);
}

TEST_CASE("property: realized transfer matches -R2^{-1} R1") {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> pt(-2.0, 2.0);
  int done = 0;
  while (done < 10) {
    // R = [R1 R2] with R2 scalar of max degree so the transfer is proper
    PolyMat r(1, 2);
    r(0, 0) = testutil::random_polymat(rng, 1, 1, 2)(0, 0);
    PolyMat r2 = testutil::random_polymat(rng, 1, 1, 0);
    r(0, 1) = r2(0, 0) + P({0, 0, 0, 2});  // force degree 3, nonzero lead
    if (r(0, 0).is_zero()) continue;
    Behavior b = Behavior::kernel(r);
    IOPartition io{{0}, {1}};
    StateSpace ss = realize(b, io);
    CHECK(is_observable(ss));

    for (int k = 0; k < 5; ++k) {
      std::complex<double> s(pt(rng), pt(rng) + 1.3);
      std::complex<double> expect =
          -r(0, 0).eval(s) / r(0, 1).eval(s);
      ComplexMat g = transfer_eval(ss, s);
      CHECK(std::abs(g(0, 0) - expect) < 1e-8 * (1.0 + std::abs(expect)));
    }
    ++done;
  }
}

TEST_CASE("property: PBH observability detects unobservable pairs") {
  StateSpace good = example2_ss();
  CHECK(is_observable(good));

  StateSpace bad;
  bad.A.resize(2, 2);
  bad.A << -1, 0, 0, -2;
  bad.B = Eigen::MatrixXd::Zero(2, 1);
  bad.C.resize(1, 2);
  bad.C << 1, 0;  // the -2 mode is invisible
  bad.D = Eigen::MatrixXd::Zero(1, 1);
  CHECK(!is_observable(bad));
}
