#include "dissip/realization.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dissip/errors.hpp"

namespace dissip {

namespace {

// one nonzero kernel vector of a rational matrix, or empty if injective
std::vector<Rational> rat_kernel_vector(const RatMat& m) {
  const int rows = m.rows(), cols = m.cols();
  RatMat a = m;
  std::vector<int> pivot_col(rows, -1);
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (a(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    for (int j = 0; j < cols; ++j) std::swap(a(piv, j), a(rank, j));
    Rational p = a(rank, col);
    for (int j = 0; j < cols; ++j) a(rank, j) /= p;
    for (int i = 0; i < rows; ++i) {
      if (i == rank || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (int j = 0; j < cols; ++j) a(i, j) -= f * a(rank, j);
    }
    pivot_col[rank] = col;
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int i = 0; i < rank; ++i) is_pivot[pivot_col[i]] = true;
  int free_col = -1;
  for (int j = 0; j < cols; ++j)
    if (!is_pivot[j]) { free_col = j; break; }
  if (free_col < 0) return {};
  std::vector<Rational> x(cols, Rational(0));
  x[free_col] = 1;
  for (int i = 0; i < rank; ++i) x[pivot_col[i]] = -a(i, free_col);
  return x;
}

int row_degree(const PolyMat& m, int row) {
  int d = -1;
  for (int j = 0; j < m.cols(); ++j) d = std::max(d, m(row, j).degree());
  return d;
}

}  // namespace

LeftFraction row_proper_fraction(const PolyMat& R, const IOPartition& io) {
  const int p = R.rows();
  if (static_cast<int>(io.outputs.size()) != p)
    throw SingularOutputBlock(
        "realize: output block must be square (outputs == kernel rows)");
  PolyMat DL = R.select_columns(io.outputs);
  PolyMat NL = R.select_columns(io.inputs);
  for (int i = 0; i < NL.rows(); ++i)
    for (int j = 0; j < NL.cols(); ++j) NL(i, j) = -NL(i, j);
  if (det(DL).is_zero())
    throw SingularOutputBlock("realize: det of output block is zero");

  // row-properize DL, applying the same unimodular row operations to NL
  for (;;) {
    std::vector<int> nu(p);
    RatMat lead(p, p);
    for (int i = 0; i < p; ++i) {
      nu[i] = row_degree(DL, i);
      for (int j = 0; j < p; ++j) lead(i, j) = DL(i, j).coeff(nu[i]);
    }
    std::vector<Rational> x = rat_kernel_vector(lead.transpose());
    if (x.empty()) {
      LeftFraction lf;
      lf.DL = std::move(DL);
      lf.NL = std::move(NL);
      lf.row_degrees = std::move(nu);
      return lf;
    }
    int tgt = -1;
    for (int i = 0; i < p; ++i)
      if (x[i] != 0 && (tgt < 0 || nu[i] > nu[tgt])) tgt = i;
    // replace row tgt by sum_i x_i xi^{nu_tgt - nu_i} row_i
    PolyMat newD(1, p), newN(1, NL.cols());
    for (int i = 0; i < p; ++i) {
      if (x[i] == 0) continue;
      Poly f = Poly::constant(x[i]).shifted(nu[tgt] - nu[i]);
      for (int j = 0; j < p; ++j) newD(0, j) = newD(0, j) + f * DL(i, j);
      for (int j = 0; j < NL.cols(); ++j)
        newN(0, j) = newN(0, j) + f * NL(i, j);
    }
    for (int j = 0; j < p; ++j) DL(tgt, j) = newD(0, j);
    for (int j = 0; j < NL.cols(); ++j) NL(tgt, j) = newN(0, j);
  }
}

StateSpace realize(const Behavior& b, const IOPartition& io) {
  PolyMat R = b.kernel_matrix();
  LeftFraction lf = row_proper_fraction(R, io);
  const int p = lf.DL.rows();
  const int m = lf.NL.cols();
  const auto& nu = lf.row_degrees;
  int n = 0;
  for (int i = 0; i < p; ++i) n += nu[i];

  RatMat lead(p, p), nhc(p, m);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) lead(i, j) = lf.DL(i, j).coeff(nu[i]);
    for (int j = 0; j < m; ++j) {
      if (lf.NL(i, j).degree() > nu[i])
        throw ImproperTransfer("realize: transfer not proper for partition");
      nhc(i, j) = lf.NL(i, j).coeff(nu[i]);
    }
  }
  RatMat lead_inv = lead.inverse();
  RatMat feed = lead_inv * nhc;
  // strictly proper remainder N - D * Dfeed; row i has degree < nu_i
  PolyMat nsp = lf.NL - lf.DL * PolyMat::from_rational(feed);

  StateSpace ss;
  ss.D = feed.to_double();
  if (n == 0) {
    ss.A.resize(0, 0);
    ss.B.resize(0, m);
    ss.C.resize(p, 0);
    return ss;
  }

  // controller form of the transposed fraction, then transpose back
  std::vector<int> off(p, 0);
  for (int i = 1; i < p; ++i) off[i] = off[i - 1] + nu[i - 1];
  RatMat dlc(p, n), nlc(m, n);
  for (int j = 0; j < p; ++j)
    for (int t = 0; t < nu[j]; ++t) {
      int deg = nu[j] - 1 - t;
      for (int i = 0; i < p; ++i) dlc(i, off[j] + t) = lf.DL(j, i).coeff(deg);
      for (int i = 0; i < m; ++i) nlc(i, off[j] + t) = nsp(j, i).coeff(deg);
    }
  RatMat a0(n, n), b0(n, p);
  for (int j = 0; j < p; ++j) {
    for (int t = 1; t < nu[j]; ++t) a0(off[j] + t, off[j] + t - 1) = 1;
    if (nu[j] > 0) b0(off[j], j) = 1;
  }
  RatMat hc_inv = lead.transpose().inverse();
  RatMat ac(n, n), bc = b0 * hc_inv;
  {
    RatMat corr = bc * dlc;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ac(i, j) = a0(i, j) - corr(i, j);
  }
  ss.A = ac.transpose().to_double();
  ss.B = nlc.transpose().to_double();
  ss.C = bc.transpose().to_double();
  if (!is_observable(ss))
    throw Error("realize: constructed realization failed the PBH test");
  return ss;
}

KalmanForm kalman(const StateSpace& ss, double tol) {
  const int n = ss.n();
  KalmanForm kf;
  if (n == 0) {
    kf.T.resize(0, 0);
    return kf;
  }
  Eigen::MatrixXd ctrb(n, n * std::max<int>(ss.B.cols(), 1));
  if (ss.B.cols() == 0) {
    ctrb = Eigen::MatrixXd::Zero(n, n);
  } else {
    Eigen::MatrixXd blk = ss.B;
    for (int k = 0; k < n; ++k) {
      ctrb.middleCols(k * ss.B.cols(), ss.B.cols()) = blk;
      blk = ss.A * blk;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      ctrb, Eigen::ComputeFullU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int n_c = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > tol * sv(0)) ++n_c;
  kf.T = svd.matrixU();  // orthogonal; first n_c columns span <A|B>
  kf.n_c = n_c;
  kf.n_u = n - n_c;
  Eigen::MatrixXd At = kf.T.transpose() * ss.A * kf.T;
  Eigen::MatrixXd Bt = kf.T.transpose() * ss.B;
  Eigen::MatrixXd Ct = ss.C * kf.T;
  kf.A_c = At.topLeftCorner(n_c, n_c);
  kf.A_cp = At.topRightCorner(n_c, kf.n_u);
  kf.A_u = At.bottomRightCorner(kf.n_u, kf.n_u);
  kf.B_c = Bt.topRows(n_c);
  kf.C_c = Ct.leftCols(n_c);
  kf.C_u = Ct.rightCols(kf.n_u);
  return kf;
}

namespace {
PolyMat adjugate(const PolyMat& m) {
  const int n = m.rows();
  if (n != m.cols()) throw NonSquare("adjugate");
  PolyMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = Poly::constant(Rational(1));
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> ridx, cidx;
      for (int r = 0; r < n; ++r)
        if (r != j) ridx.push_back(r);
      for (int c = 0; c < n; ++c)
        if (c != i) cidx.push_back(c);
      Poly minor = det(m.select_rows(ridx).select_columns(cidx));
      adj(i, j) = ((i + j) % 2 == 0) ? minor : -minor;
    }
  return adj;
}
}  // namespace

Eigen::MatrixXd feedthrough(const PolyMat& m, const IOPartition& io) {
  PolyMat w1 = m.select_rows(io.inputs);
  PolyMat w2 = m.select_rows(io.outputs);
  if (w1.rows() != w1.cols())
    throw ShapeMismatch("feedthrough: W1 must be square");
  Poly den = det(w1);
  if (den.is_zero()) throw SingularOutputBlock("feedthrough: det W1 = 0");
  PolyMat num = w2 * adjugate(w1);
  Eigen::MatrixXd d(w2.rows(), w1.cols());
  for (int i = 0; i < num.rows(); ++i)
    for (int j = 0; j < num.cols(); ++j) {
      Poly g = poly_gcd(num(i, j), den);
      Poly nn = g.is_zero() ? num(i, j) : exact_div(num(i, j), g);
      Poly dd = g.is_zero() ? den : exact_div(den, g);
      if (nn.degree() > dd.degree())
        throw ImproperTransfer("feedthrough: entry not proper");
      d(i, j) = (nn.degree() == dd.degree())
                    ? to_double(nn.leading() / dd.leading())
                    : 0.0;
    }
  return d;
}

ComplexMat transfer_eval(const StateSpace& ss,
                         const std::complex<double>& s) {
  const int n = ss.n();
  ComplexMat d = ss.D.cast<std::complex<double>>();
  if (n == 0) return d;
  ComplexMat resolvent =
      s * ComplexMat::Identity(n, n) - ss.A.cast<std::complex<double>>();
  Eigen::JacobiSVD<ComplexMat> svd(resolvent);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-12 * sv(0))
    throw PoleEvaluation("transfer_eval: s is (numerically) a pole");
  return ss.C.cast<std::complex<double>>() *
             resolvent.partialPivLu().solve(
                 ss.B.cast<std::complex<double>>()) +
         d;
}

bool is_observable(const StateSpace& ss, double tol) {
  const int n = ss.n();
  if (n == 0) return true;
  Eigen::EigenSolver<Eigen::MatrixXd> es(ss.A, false);
  for (int k = 0; k < n; ++k) {
    std::complex<double> lam = es.eigenvalues()(k);
    ComplexMat pbh(n + ss.C.rows(), n);
    pbh.topRows(n) =
        lam * ComplexMat::Identity(n, n) - ss.A.cast<std::complex<double>>();
    pbh.bottomRows(ss.C.rows()) = ss.C.cast<std::complex<double>>();
    Eigen::JacobiSVD<ComplexMat> svd(pbh);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= tol * std::max(1.0, sv(0))) return false;
  }
  return true;
}

}  // namespace dissip
