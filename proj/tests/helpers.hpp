#pragma once

#include <random>

#include "dissip/behavior.hpp"

namespace testutil {

using dissip::Poly;
using dissip::PolyMat;
using dissip::Rational;

// ascending-power polynomial from integer coefficients
inline Poly P(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  return Poly(std::move(c));
}

inline PolyMat random_polymat(std::mt19937& rng, int rows, int cols,
                              int max_deg, int coeff_range = 4) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
  PolyMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      std::vector<Rational> c;
      int d = deg(rng);
      for (int k = 0; k <= d; ++k) c.emplace_back(coeff(rng));
      m(i, j) = Poly(std::move(c));
    }
  return m;
}

inline double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// largest principal angle between the column spans of two bases
inline double principal_angle(const Eigen::MatrixXcd& a,
                              const Eigen::MatrixXcd& b) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qa(a), qb(b);
  Eigen::MatrixXcd q1 =
      qa.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd q2 =
      qb.householderQ() * Eigen::MatrixXcd::Identity(b.rows(), b.cols());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(q1.adjoint() * q2);
  double smin = svd.singularValues().minCoeff();
  return std::acos(std::min(1.0, smin));
}

}  // namespace testutil
