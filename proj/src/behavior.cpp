#include "dissip/behavior.hpp"

#include <algorithm>

#include "dissip/errors.hpp"

namespace dissip {

namespace {

// Full-row-rank kernel representation with the same behavior: the nonzero
// rows of S*V from the Smith form (dropping the unimodular left factor).
PolyMat reduce_kernel_rows(const PolyMat& R) {
  if (R.rows() == 0) return PolyMat(0, R.cols());
  SmithDecomposition sd = smith_form(R);
  const int r = sd.rank();
  PolyMat out(r, R.cols());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < R.cols(); ++j) {
      Poly acc;
      // row i of S*V = d_i * (row i of V)
      acc = sd.invariant_factors[i] * sd.V(i, j);
      out(i, j) = acc;
    }
  return out;
}

}  // namespace

Behavior Behavior::kernel(const PolyMat& R) {
  Behavior b;
  b.kind_ = ReprKind::Kernel;
  b.w_ = R.cols();
  b.mat_ = reduce_kernel_rows(R);
  return b;
}

Behavior Behavior::image(const PolyMat& M) {
  Behavior b;
  b.kind_ = ReprKind::Image;
  b.w_ = M.rows();
  b.mat_ = M;
  return b;
}

Behavior Behavior::iso(const StateSpace& ss, const IOPartition& io) {
  Behavior b;
  b.kind_ = ReprKind::Iso;
  b.w_ = ss.m() + ss.p_out();
  if (static_cast<int>(io.inputs.size()) != ss.m() ||
      static_cast<int>(io.outputs.size()) != ss.p_out())
    throw ShapeMismatch("iso behavior: partition sizes vs state-space shapes");
  b.ss_ = ss;
  b.io_ = io;
  return b;
}

PolyMat Behavior::kernel_matrix() const {
  switch (kind_) {
    case ReprKind::Kernel:
      return mat_;
    case ReprKind::Image:
      return reduce_kernel_rows(left_annihilator(mat_));
    case ReprKind::Iso: {
      const StateSpace& ss = *ss_;
      const int n = ss.n(), m = ss.m(), p = ss.p_out();
      // [xi I - A; -C] x = [B 0; D -I] w (columns arranged per partition)
      PolyMat F(n + p, n);
      RatMat Ar = RatMat::from_double(ss.A), Br = RatMat::from_double(ss.B);
      RatMat Cr = RatMat::from_double(ss.C), Dr = RatMat::from_double(ss.D);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          F(i, j) = Poly::constant(-Ar(i, j));
          if (i == j) F(i, j) = F(i, j) + Poly::variable();
        }
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < n; ++j) F(n + i, j) = Poly::constant(-Cr(i, j));
      PolyMat G(n + p, w_);
      for (int k = 0; k < m; ++k) {
        int col = io_->inputs[k];
        for (int i = 0; i < n; ++i) G(i, col) = Poly::constant(Br(i, k));
        for (int i = 0; i < p; ++i) G(n + i, col) = Poly::constant(Dr(i, k));
      }
      for (int k = 0; k < p; ++k) {
        int col = io_->outputs[k];
        G(n + k, col) = Poly::constant(Rational(-1));
      }
      PolyMat L = left_annihilator(F);
      return reduce_kernel_rows(L * G);
    }
  }
  throw Error("unreachable");
}

int input_cardinality(const Behavior& b) {
  switch (b.kind()) {
    case ReprKind::Kernel:
      return b.w() - b.matrix().rows();  // rows are full row rank
    case ReprKind::Image:
      return b.matrix().cols();
    case ReprKind::Iso:
      return static_cast<int>(b.io()->inputs.size());
  }
  throw Error("unreachable");
}

ModeSet invariant_factor_roots(const std::vector<Poly>& factors) {
  ModeSet out;
  for (const auto& d : factors) {
    if (d.degree() < 1) continue;
    auto roots = poly_roots(d);
    out.modes.insert(out.modes.end(), roots.begin(), roots.end());
  }
  // snap nearly-real roots onto the axis
  double scale = 0.0;
  for (auto& z : out.modes) scale = std::max(scale, std::abs(z));
  for (auto& z : out.modes)
    if (std::abs(z.imag()) <= 1e-7 * (1.0 + scale)) z = {z.real(), 0.0};
  return out;
}

ModeSet uncontrollable_modes(const Behavior& b) {
  SmithDecomposition sd = smith_form(b.kernel_matrix());
  return invariant_factor_roots(sd.nontrivial_factors());
}

bool is_controllable(const Behavior& b) {
  if (b.kind() == ReprKind::Image) return true;
  SmithDecomposition sd = smith_form(b.kernel_matrix());
  return sd.nontrivial_factors().empty();
}

bool unmixing_check(const ModeSet& modes, double tol) {
  double scale = 0.0;
  for (const auto& z : modes.modes) scale = std::max(scale, std::abs(z));
  for (const auto& a : modes.modes)
    for (const auto& b : modes.modes)
      if (std::abs(a + b) <= tol * (1.0 + scale)) return false;
  return true;
}

Behavior controllable_part(const Behavior& b) {
  PolyMat R = b.kernel_matrix();
  if (R.rows() == 0) return Behavior::kernel(R);
  SmithDecomposition sd = smith_form(R);
  // strip invariant factors: kernel [I_r 0] V
  PolyMat rows(sd.rank(), R.cols());
  for (int i = 0; i < sd.rank(); ++i)
    for (int j = 0; j < R.cols(); ++j) rows(i, j) = sd.V(i, j);
  return Behavior::kernel(rows);
}

PolyMat observable_image(const Behavior& b) {
  if (b.kind() == ReprKind::Image) {
    SmithDecomposition sd = smith_form(b.matrix());
    if (sd.nontrivial_factors().empty() && sd.rank() == b.matrix().cols())
      return b.matrix();
    // non-observable image: go through the kernel representation
    return observable_image(Behavior::kernel(b.kernel_matrix()));
  }
  if (!is_controllable(b)) throw NotControllable("observable_image");
  PolyMat R = b.kernel_matrix();
  const int w = b.w();
  if (R.rows() == 0) return PolyMat::identity(w);
  SmithDecomposition sd = smith_form(R);
  const int r = sd.rank();
  PolyMat M = sd.Vinv.block(0, r, w, w - r);
  if (!(R * M).is_zero()) throw Error("observable_image: R*M != 0");
  return M;
}

Behavior superbehavior(const Behavior& b, const std::optional<PolyMat>& F1,
                       const std::optional<PolyMat>& F2) {
  PolyMat R = b.kernel_matrix();
  const int w = b.w();
  SmithDecomposition sd = smith_form(R);
  const int r = sd.rank();
  auto nontriv = sd.nontrivial_factors();
  const int k = static_cast<int>(nontriv.size());
  const int keep = r - k;  // rows with trivial invariant factors come first

  PolyMat f1 = F1.value_or(PolyMat::identity(keep));
  PolyMat f2 = F2.value_or(PolyMat::zero(keep, k));
  if (f1.rows() != keep || f1.cols() != keep || f2.rows() != keep ||
      f2.cols() != k)
    throw ShapeMismatch("superbehavior: F1/F2 shapes");
  Poly df = det(f1);
  if (df.is_zero() || df.degree() != 0)
    throw NotUnimodular("superbehavior: F1 must be unimodular");

  // [F1  F2*diag(nontrivial d)  0] in the Smith-transformed coordinates
  PolyMat T(keep, w);
  for (int i = 0; i < keep; ++i) {
    for (int j = 0; j < keep; ++j) T(i, j) = f1(i, j);
    for (int j = 0; j < k; ++j) T(i, keep + j) = f2(i, j) * nontriv[j];
  }
  return Behavior::kernel(T * sd.V);
}

Behavior intersect(const Behavior& b1, const Behavior& b2) {
  if (b1.w() != b2.w()) throw ShapeMismatch("intersect: variable counts");
  return Behavior::kernel(
      PolyMat::vstack(b1.kernel_matrix(), b2.kernel_matrix()));
}

bool is_autonomous(const Behavior& b) {
  return b.kernel_matrix().rows() == b.w();
}

Behavior sigma_image(const Behavior& b, const RatMat& sigma) {
  if (sigma.rows() != b.w() || sigma.cols() != b.w())
    throw ShapeMismatch("sigma_image: Sigma shape");
  if (sigma.det() == 0) throw SingularSigma("sigma_image: Sigma singular");
  if (b.kind() == ReprKind::Image)
    return Behavior::image(PolyMat::from_rational(sigma) * b.matrix());
  PolyMat R = b.kernel_matrix();
  return Behavior::kernel(R * PolyMat::from_rational(sigma.inverse()));
}

bool kernel_rows_included(const PolyMat& sub_rows, const PolyMat& sup_kernel) {
  if (sub_rows.cols() != sup_kernel.cols())
    throw ShapeMismatch("kernel_rows_included");
  if (sub_rows.rows() == 0) return true;
  if (sup_kernel.rows() == 0) return sub_rows.is_zero();
  SmithDecomposition sd = smith_form(sup_kernel);
  const int r = sd.rank();
  PolyMat T = sub_rows * sd.Vinv;
  for (int i = 0; i < T.rows(); ++i) {
    for (int j = r; j < T.cols(); ++j)
      if (!T(i, j).is_zero()) return false;
    for (int j = 0; j < r; ++j)
      if (!divides(sd.invariant_factors[j], T(i, j))) return false;
  }
  return true;
}

bool behavior_equal(const Behavior& a, const Behavior& b) {
  if (a.w() != b.w()) return false;
  PolyMat ra = a.kernel_matrix(), rb = b.kernel_matrix();
  return kernel_rows_included(ra, rb) && kernel_rows_included(rb, ra);
}

PolyMat left_annihilator(const PolyMat& m) {
  SmithDecomposition sd = smith_form(m);
  const int r = sd.rank();
  return sd.Uinv.block(r, 0, m.rows() - r, m.rows());
}

}  // namespace dissip
