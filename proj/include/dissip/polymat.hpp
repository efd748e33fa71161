#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "dissip/poly.hpp"

namespace dissip {

using ComplexMat = Eigen::MatrixXcd;

// Dense matrix of exact rationals. Small sizes only; used wherever a
// floating-point step would destroy an exact property.
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Rational(0)) {}
  static RatMat identity(int n);
  static RatMat from_double(const Eigen::MatrixXd& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return e_[i * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return e_[i * cols_ + j]; }

  RatMat operator*(const RatMat& o) const;
  RatMat transpose() const;
  Eigen::MatrixXd to_double() const;

  // Exact inverse via Gauss-Jordan; throws on singularity.
  RatMat inverse() const;
  int rank() const;
  Rational det() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> e_;
};

// Matrix of univariate polynomials over the rationals, row-major.
class PolyMat {
 public:
  PolyMat() = default;
  PolyMat(int rows, int cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  static PolyMat identity(int n);
  static PolyMat zero(int rows, int cols) { return PolyMat(rows, cols); }
  static PolyMat from_rational(const RatMat& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Poly& operator()(int i, int j) { return e_[i * cols_ + j]; }
  const Poly& operator()(int i, int j) const { return e_[i * cols_ + j]; }

  bool is_zero() const;
  bool operator==(const PolyMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

  PolyMat operator*(const PolyMat& o) const;
  PolyMat operator+(const PolyMat& o) const;
  PolyMat operator-(const PolyMat& o) const;
  PolyMat transpose() const;
  // entrywise p(xi) -> p(-xi)
  PolyMat para_transpose() const;

  PolyMat block(int i0, int j0, int nrows, int ncols) const;
  static PolyMat vstack(const PolyMat& top, const PolyMat& bottom);
  static PolyMat hstack(const PolyMat& left, const PolyMat& right);
  PolyMat select_columns(const std::vector<int>& idx) const;
  PolyMat select_rows(const std::vector<int>& idx) const;

  int max_degree() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Poly> e_;
};

// Entrywise evaluation; exact rational arithmetic lifted to complex floating
// point at the final step.
ComplexMat eval(const PolyMat& p, const std::complex<double>& lambda);

// Exact determinant by cofactor expansion; throws NonSquare.
Poly det(const PolyMat& p);

// Numerical rank of eval(p, lambda): singular values below
// tol * sigma_max count as zero.
int rank_at(const PolyMat& p, const std::complex<double>& lambda,
            double tol = 1e-8);

std::string format_polymat(const PolyMat& p);

}  // namespace dissip
