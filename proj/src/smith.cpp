#include "dissip/smith.hpp"

#include "dissip/errors.hpp"

namespace dissip {

std::vector<Poly> SmithDecomposition::nontrivial_factors() const {
  std::vector<Poly> out;
  for (const auto& d : invariant_factors)
    if (d.degree() >= 1) out.push_back(d);
  return out;
}

namespace {

struct Worker {
  PolyMat A, U, Uinv, V, Vinv;

  explicit Worker(const PolyMat& p)
      : A(p),
        U(PolyMat::identity(p.rows())),
        Uinv(PolyMat::identity(p.rows())),
        V(PolyMat::identity(p.cols())),
        Vinv(PolyMat::identity(p.cols())) {}

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < A.cols(); ++j) std::swap(A(a, j), A(b, j));
    for (int j = 0; j < Uinv.cols(); ++j) std::swap(Uinv(a, j), Uinv(b, j));
    for (int i = 0; i < U.rows(); ++i) std::swap(U(i, a), U(i, b));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < A.rows(); ++i) std::swap(A(i, a), A(i, b));
    for (int i = 0; i < Vinv.rows(); ++i) std::swap(Vinv(i, a), Vinv(i, b));
    for (int j = 0; j < V.cols(); ++j) std::swap(V(a, j), V(b, j));
  }
  // row[i] += f * row[t]
  void add_row(int i, int t, const Poly& f) {
    if (f.is_zero()) return;
    for (int j = 0; j < A.cols(); ++j) A(i, j) = A(i, j) + f * A(t, j);
    for (int j = 0; j < Uinv.cols(); ++j)
      Uinv(i, j) = Uinv(i, j) + f * Uinv(t, j);
    // U <- U * (I - f E_{it}) keeps U * A invariant
    for (int r = 0; r < U.rows(); ++r) U(r, t) = U(r, t) - f * U(r, i);
  }
  // col[j] += f * col[t]
  void add_col(int j, int t, const Poly& f) {
    if (f.is_zero()) return;
    for (int i = 0; i < A.rows(); ++i) A(i, j) = A(i, j) + f * A(i, t);
    for (int i = 0; i < Vinv.rows(); ++i)
      Vinv(i, j) = Vinv(i, j) + f * Vinv(i, t);
    for (int c = 0; c < V.cols(); ++c) V(t, c) = V(t, c) - f * V(j, c);
  }
  void scale_row(int i, const Rational& s) {
    Rational inv = Rational(1) / s;
    for (int j = 0; j < A.cols(); ++j) A(i, j) = A(i, j) * s;
    for (int j = 0; j < Uinv.cols(); ++j) Uinv(i, j) = Uinv(i, j) * s;
    for (int r = 0; r < U.rows(); ++r) U(r, i) = U(r, i) * inv;
  }

  // smallest-degree nonzero entry in the trailing block, ties broken by
  // smallest (row, col) index
  bool find_pivot(int t, int& pi, int& pj) const {
    int best = -1;
    for (int i = t; i < A.rows(); ++i)
      for (int j = t; j < A.cols(); ++j) {
        if (A(i, j).is_zero()) continue;
        if (best < 0 || A(i, j).degree() < best) {
          best = A(i, j).degree();
          pi = i;
          pj = j;
        }
      }
    return best >= 0;
  }
};

}  // namespace

SmithDecomposition smith_form(const PolyMat& p) {
  Worker w(p);
  const int tmax = std::min(p.rows(), p.cols());
  int t = 0;
  for (; t < tmax; ++t) {
    int pi, pj;
    if (!w.find_pivot(t, pi, pj)) break;
    for (;;) {
      w.find_pivot(t, pi, pj);
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      bool clean = true;
      for (int i = t + 1; i < w.A.rows(); ++i) {
        if (w.A(i, t).is_zero()) continue;
        auto [q, r] = divmod(w.A(i, t), w.A(t, t));
        w.add_row(i, t, -q);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;
      for (int j = t + 1; j < w.A.cols(); ++j) {
        if (w.A(t, j).is_zero()) continue;
        auto [q, r] = divmod(w.A(t, j), w.A(t, t));
        w.add_col(j, t, -q);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;
      // pivot must divide every remaining entry
      bool fixed = false;
      for (int i = t + 1; i < w.A.rows() && !fixed; ++i)
        for (int j = t + 1; j < w.A.cols() && !fixed; ++j)
          if (!divides(w.A(t, t), w.A(i, j))) {
            w.add_row(t, i, Poly::constant(Rational(1)));
            fixed = true;
          }
      if (!fixed) break;
    }
    w.scale_row(t, Rational(1) / w.A(t, t).leading());
  }

  SmithDecomposition out;
  out.S = PolyMat::zero(p.rows(), p.cols());
  for (int i = 0; i < t; ++i) {
    out.S(i, i) = w.A(i, i);
    out.invariant_factors.push_back(w.A(i, i));
  }
  out.U = std::move(w.U);
  out.Uinv = std::move(w.Uinv);
  out.V = std::move(w.V);
  out.Vinv = std::move(w.Vinv);
  return out;
}

int normal_rank(const PolyMat& p) {
  if (p.rows() == 0 || p.cols() == 0) return 0;
  return smith_form(p).rank();
}

}  // namespace dissip
