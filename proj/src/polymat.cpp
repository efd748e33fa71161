#include "dissip/polymat.hpp"

#include <Eigen/SVD>

#include <sstream>

#include "dissip/errors.hpp"

namespace dissip {

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::from_double(const Eigen::MatrixXd& d) {
  RatMat m(static_cast<int>(d.rows()), static_cast<int>(d.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rational_from_double(d(i, j));
  return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols_ != o.rows_) throw ShapeMismatch("RatMat multiply");
  RatMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

RatMat RatMat::transpose() const {
  RatMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Eigen::MatrixXd RatMat::to_double() const {
  Eigen::MatrixXd d(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) d(i, j) = dissip::to_double((*this)(i, j));
  return d;
}

RatMat RatMat::inverse() const {
  if (rows_ != cols_) throw NonSquare("RatMat::inverse");
  const int n = rows_;
  RatMat a = *this;
  RatMat inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (a(i, col) != 0) { piv = i; break; }
    if (piv < 0) throw Error("RatMat::inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    Rational p = a(col, col);
    for (int j = 0; j < n; ++j) { a(col, j) /= p; inv(col, j) /= p; }
    for (int i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

int RatMat::rank() const {
  RatMat a = *this;
  int rank = 0;
  for (int col = 0; col < cols_ && rank < rows_; ++col) {
    int piv = -1;
    for (int i = rank; i < rows_; ++i)
      if (a(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < cols_; ++j) std::swap(a(piv, j), a(rank, j));
    for (int i = rank + 1; i < rows_; ++i) {
      if (a(i, col) == 0) continue;
      Rational f = a(i, col) / a(rank, col);
      for (int j = col; j < cols_; ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

Rational RatMat::det() const {
  if (rows_ != cols_) throw NonSquare("RatMat::det");
  RatMat a = *this;
  Rational d(1);
  for (int col = 0; col < rows_; ++col) {
    int piv = -1;
    for (int i = col; i < rows_; ++i)
      if (a(i, col) != 0) { piv = i; break; }
    if (piv < 0) return Rational(0);
    if (piv != col) {
      for (int j = 0; j < cols_; ++j) std::swap(a(piv, j), a(col, j));
      d = -d;
    }
    d *= a(col, col);
    for (int i = col + 1; i < rows_; ++i) {
      if (a(i, col) == 0) continue;
      Rational f = a(i, col) / a(col, col);
      for (int j = col; j < cols_; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return d;
}

PolyMat PolyMat::identity(int n) {
  PolyMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Poly::constant(Rational(1));
  return m;
}

PolyMat PolyMat::from_rational(const RatMat& m) {
  PolyMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Poly::constant(m(i, j));
  return r;
}

bool PolyMat::is_zero() const {
  for (const auto& p : e_)
    if (!p.is_zero()) return false;
  return true;
}

PolyMat PolyMat::operator*(const PolyMat& o) const {
  if (cols_ != o.rows_) throw ShapeMismatch("PolyMat multiply");
  PolyMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Poly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        r(i, j) = r(i, j) + a * o(k, j);
    }
  return r;
}

PolyMat PolyMat::operator+(const PolyMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("PolyMat add");
  PolyMat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

PolyMat PolyMat::operator-(const PolyMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("PolyMat sub");
  PolyMat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

PolyMat PolyMat::transpose() const {
  PolyMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

PolyMat PolyMat::para_transpose() const {
  PolyMat r = transpose();
  for (int i = 0; i < r.rows_; ++i)
    for (int j = 0; j < r.cols_; ++j) r(i, j) = r(i, j).para();
  return r;
}

PolyMat PolyMat::block(int i0, int j0, int nrows, int ncols) const {
  PolyMat r(nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) r(i, j) = (*this)(i0 + i, j0 + j);
  return r;
}

PolyMat PolyMat::vstack(const PolyMat& top, const PolyMat& bottom) {
  if (top.cols_ != bottom.cols_) throw ShapeMismatch("PolyMat vstack");
  PolyMat r(top.rows_ + bottom.rows_, top.cols_);
  for (int i = 0; i < top.rows_; ++i)
    for (int j = 0; j < top.cols_; ++j) r(i, j) = top(i, j);
  for (int i = 0; i < bottom.rows_; ++i)
    for (int j = 0; j < top.cols_; ++j) r(top.rows_ + i, j) = bottom(i, j);
  return r;
}

PolyMat PolyMat::hstack(const PolyMat& left, const PolyMat& right) {
  if (left.rows_ != right.rows_) throw ShapeMismatch("PolyMat hstack");
  PolyMat r(left.rows_, left.cols_ + right.cols_);
  for (int i = 0; i < left.rows_; ++i) {
    for (int j = 0; j < left.cols_; ++j) r(i, j) = left(i, j);
    for (int j = 0; j < right.cols_; ++j) r(i, left.cols_ + j) = right(i, j);
  }
  return r;
}

PolyMat PolyMat::select_columns(const std::vector<int>& idx) const {
  PolyMat r(rows_, static_cast<int>(idx.size()));
  for (int i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j)
      r(i, static_cast<int>(j)) = (*this)(i, idx[j]);
  return r;
}

PolyMat PolyMat::select_rows(const std::vector<int>& idx) const {
  PolyMat r(static_cast<int>(idx.size()), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < cols_; ++j)
      r(static_cast<int>(i), j) = (*this)(idx[i], j);
  return r;
}

int PolyMat::max_degree() const {
  int d = -1;
  for (const auto& p : e_) d = std::max(d, p.degree());
  return d;
}

ComplexMat eval(const PolyMat& p, const std::complex<double>& lambda) {
  ComplexMat m(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) m(i, j) = p(i, j).eval(lambda);
  return m;
}

namespace {
Poly det_rec(const PolyMat& p, std::vector<int>& cols, int row) {
  const int n = p.rows();
  if (row == n) return Poly::constant(Rational(1));
  Poly acc;
  int sign = 1;
  for (size_t k = 0; k < cols.size(); ++k) {
    int c = cols[k];
    if (!p(row, c).is_zero()) {
      std::vector<int> rest;
      rest.reserve(cols.size() - 1);
      for (size_t t = 0; t < cols.size(); ++t)
        if (t != k) rest.push_back(cols[t]);
      Poly sub = det_rec(p, rest, row + 1);
      Poly term = p(row, c) * sub;
      acc = (sign > 0) ? acc + term : acc - term;
    }
    sign = -sign;
  }
  return acc;
}
}  // namespace

Poly det(const PolyMat& p) {
  if (p.rows() != p.cols()) throw NonSquare("det: matrix not square");
  if (p.rows() == 0) return Poly::constant(Rational(1));
  std::vector<int> cols(p.cols());
  for (int j = 0; j < p.cols(); ++j) cols[j] = j;
  return det_rec(p, cols, 0);
}

int rank_at(const PolyMat& p, const std::complex<double>& lambda, double tol) {
  if (p.rows() == 0 || p.cols() == 0) return 0;
  ComplexMat m = eval(p, lambda);
  Eigen::JacobiSVD<ComplexMat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return r;
}

std::string format_polymat(const PolyMat& p) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < p.rows(); ++i) {
    if (i) os << "; ";
    for (int j = 0; j < p.cols(); ++j) {
      if (j) os << ", ";
      os << format_poly(p(i, j));
    }
  }
  os << "]";
  return os.str();
}

}  // namespace dissip
