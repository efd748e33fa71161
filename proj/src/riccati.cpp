#include "dissip/riccati.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <sstream>

#include "dissip/errors.hpp"
#include "dissip/schur_reorder.hpp"

namespace dissip {

namespace {

using Cx = std::complex<double>;

struct Cluster {
  Cx center;
  std::vector<int> idx;
};

// greedy clustering; centers are first members, order of first appearance
std::vector<Cluster> cluster_values(const std::vector<Cx>& vals, double tol) {
  std::vector<Cluster> out;
  for (int i = 0; i < static_cast<int>(vals.size()); ++i) {
    bool placed = false;
    for (auto& c : out)
      if (std::abs(vals[i] - c.center) <= tol) {
        c.idx.push_back(i);
        placed = true;
        break;
      }
    if (!placed) out.push_back({vals[i], {i}});
  }
  return out;
}

double spectral_scale(const std::vector<Cx>& vals) {
  double s = 0.0;
  for (const auto& v : vals) s = std::max(s, std::abs(v));
  return s;
}

std::string fmt_cx(const Cx& z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "j";
  return os.str();
}

}  // namespace

CanonicalSupply canonicalize_supply(const Eigen::MatrixXd& sigma_raw, int m_b,
                                    double tol) {
  if (sigma_raw.rows() != sigma_raw.cols())
    throw NonSquare("canonicalize_supply: Sigma must be square");
  const int w = static_cast<int>(sigma_raw.rows());
  Eigen::MatrixXd sym = 0.5 * (sigma_raw + sigma_raw.transpose());
  if ((sigma_raw - sym).norm() > 1e-10 * std::max(1.0, sym.norm()))
    throw NonHermitian("canonicalize_supply: Sigma must be symmetric");

  // a canonical diagonal passes through unchanged (W = I)
  bool canonical = sym.isDiagonal(1e-14);
  if (canonical) {
    bool seen_neg = false;
    for (int i = 0; i < w; ++i) {
      double d = sym(i, i);
      if (std::abs(std::abs(d) - 1.0) > 1e-14) canonical = false;
      if (d < 0) seen_neg = true;
      if (d > 0 && seen_neg) canonical = false;
    }
  }

  Eigen::MatrixXd wmat;
  int sp = 0, sm = 0;
  if (canonical) {
    wmat = Eigen::MatrixXd::Identity(w, w);
    for (int i = 0; i < w; ++i) (sym(i, i) > 0 ? sp : sm)++;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    const auto& vals = es.eigenvalues();
    double scale = vals.cwiseAbs().maxCoeff();
    if (scale == 0.0) throw SingularSigma("canonicalize_supply: Sigma = 0");
    for (int i = 0; i < w; ++i)
      if (std::abs(vals(i)) <= tol * scale)
        throw SingularSigma("canonicalize_supply: Sigma is singular");
    std::vector<int> order;
    for (int i = w - 1; i >= 0; --i)
      if (vals(i) > 0) order.push_back(i);
    sp = static_cast<int>(order.size());
    for (int i = 0; i < w; ++i)
      if (vals(i) < 0) order.push_back(i);
    sm = w - sp;
    wmat.resize(w, w);
    for (int k = 0; k < w; ++k) {
      Eigen::VectorXd v = es.eigenvectors().col(order[k]);
      int imax = 0;
      v.cwiseAbs().maxCoeff(&imax);
      if (v(imax) < 0) v = -v;  // deterministic sign
      wmat.col(k) = v / std::sqrt(std::abs(vals(order[k])));
    }
  }

  if (m_b > sp)
    throw InputCardinalityExceeded(
        "canonicalize_supply: input cardinality exceeds sigma_plus");

  CanonicalSupply out;
  out.W = wmat;
  out.rate.m = m_b;
  out.rate.q = sp - m_b;
  out.rate.p = sm;
  out.rate.sigma = Eigen::MatrixXd::Identity(w, w);
  for (int i = sp; i < w; ++i) out.rate.sigma(i, i) = -1.0;
  const int qp = out.rate.q + out.rate.p;
  out.rate.J = Eigen::MatrixXd::Identity(qp, qp);
  for (int i = out.rate.q; i < qp; ++i) out.rate.J(i, i) = -1.0;
  return out;
}

double strictness_at_infinity(const Eigen::MatrixXd& D,
                              const Eigen::MatrixXd& J) {
  const int m = static_cast<int>(D.cols());
  Eigen::MatrixXd S =
      Eigen::MatrixXd::Identity(m, m) + D.transpose() * J * D;
  if (m == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
  return es.eigenvalues().minCoeff();
}

TildeTriple build_tilde(const StateSpace& ss, const Eigen::MatrixXd& J,
                        double tol) {
  const int m = static_cast<int>(ss.B.cols());
  Eigen::MatrixXd S =
      Eigen::MatrixXd::Identity(m, m) + ss.D.transpose() * J * ss.D;
  S = 0.5 * (S + S.transpose());
  if (m > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.eigenvalues().minCoeff() <= tol)
      throw StrictnessViolated("build_tilde: I + D^T J D is not positive definite");
  }
  Eigen::MatrixXd G = J + ss.D * ss.D.transpose();
  G = 0.5 * (G + G.transpose());
  Eigen::MatrixXd Ginv;
  if (G.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(G);
    double gmax = eg.eigenvalues().cwiseAbs().maxCoeff();
    if (gmax == 0.0 || eg.eigenvalues().cwiseAbs().minCoeff() <= 1e-12 * gmax)
      throw SingularJDD("build_tilde: J + D D^T is singular");
    Ginv = G.inverse();
  } else {
    Ginv.resize(0, 0);
  }
  Eigen::MatrixXd Sinv = S.inverse();

  TildeTriple t;
  t.Atilde = ss.A - ss.B * Sinv * ss.D.transpose() * J * ss.C;
  t.Dtilde = ss.B * Sinv * ss.B.transpose();
  t.Dtilde = 0.5 * (t.Dtilde + t.Dtilde.transpose()).eval();
  t.Ctilde = ss.C.transpose() * Ginv * ss.C;
  t.Ctilde = 0.5 * (t.Ctilde + t.Ctilde.transpose()).eval();
  return t;
}

HamiltonianData build_hamiltonian(const TildeTriple& t, double tol) {
  const int n = static_cast<int>(t.Atilde.rows());
  HamiltonianData hd;
  hd.tilde = t;
  hd.n = n;
  hd.H.resize(2 * n, 2 * n);
  hd.H << t.Atilde, t.Dtilde, t.Ctilde, -t.Atilde.transpose();
  hd.M = Cx(0, 1) * hd.H.cast<Cx>();
  Eigen::MatrixXd preal(2 * n, 2 * n);
  preal << -t.Ctilde, t.Atilde.transpose(), t.Atilde, t.Dtilde;
  hd.P = preal.cast<Cx>();
  hd.Phat.setZero(2 * n, 2 * n);
  hd.Phat.topRightCorner(n, n) =
      Cx(0, 1) * Eigen::MatrixXcd::Identity(n, n);
  hd.Phat.bottomLeftCorner(n, n) =
      Cx(0, -1) * Eigen::MatrixXcd::Identity(n, n);

  double res = (hd.P * hd.M - hd.M.adjoint() * hd.P).norm();
  if (res > tol * std::max(1.0, hd.P.norm() * hd.M.norm()))
    throw SelfAdjointnessFailed("build_hamiltonian: P M != M^* P");
  return hd;
}

SpectrumReport spectrum_identity_check(const Eigen::MatrixXd& H,
                                       const Poly& det_dphi,
                                       const ModeSet& lambda_un, double tol) {
  SpectrumReport rep;
  std::vector<Cx> expected = poly_roots(det_dphi);
  for (const auto& l : lambda_un.modes) {
    expected.push_back(l);
    expected.push_back(-l);
  }
  std::vector<Cx> sh;
  if (H.rows() > 0) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(H, false);
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      sh.push_back(es.eigenvalues()(i));
  }
  double scale = std::max(spectral_scale(expected), spectral_scale(sh));
  double atol = tol * (1.0 + scale);

  auto key = [](const Cx& a, const Cx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  };
  std::sort(expected.begin(), expected.end(), key);
  std::sort(sh.begin(), sh.end(), key);

  std::vector<bool> used(sh.size(), false);
  for (const auto& e : expected) {
    int best = -1;
    double bd = 0.0;
    for (int i = 0; i < static_cast<int>(sh.size()); ++i) {
      if (used[i]) continue;
      double d = std::abs(sh[i] - e);
      if (best < 0 || d < bd) {
        best = i;
        bd = d;
      }
    }
    if (best >= 0 && bd <= atol) {
      used[best] = true;
      rep.matched.emplace_back(sh[best], e);
    } else {
      rep.unmatched_expected.push_back(e);
    }
  }
  for (int i = 0; i < static_cast<int>(sh.size()); ++i)
    if (!used[i]) rep.unmatched_sigma_h.push_back(sh[i]);
  rep.pass = rep.unmatched_expected.empty() && rep.unmatched_sigma_h.empty();
  return rep;
}

std::vector<int> partial_multiplicities(const Eigen::MatrixXcd& m,
                                        const Cx& lambda, double tol) {
  const int nn = static_cast<int>(m.rows());
  Eigen::MatrixXcd N = m - lambda * Eigen::MatrixXcd::Identity(nn, nn);
  double ns = N.norm();
  if (ns > 0) N /= ns;

  auto num_rank = [&](const Eigen::MatrixXcd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > tol * sv(0)) ++r;
    if (r > 0 && r < sv.size() && sv(r) > 0.0 && sv(r - 1) / sv(r) < 10.0)
      throw IllConditioned(
          "partial_multiplicities: rank decision unstable at this tolerance");
    return r;
  };

  std::vector<int> ranks;  // ranks[k] = rank(N^k)
  ranks.push_back(nn);
  Eigen::MatrixXcd pw = Eigen::MatrixXcd::Identity(nn, nn);
  for (int k = 1; k <= nn; ++k) {
    pw = pw * N;
    double s = pw.norm();
    if (s > 0) pw /= s;  // keep singular values in range across powers
    ranks.push_back(num_rank(pw));
    if (ranks[k] == ranks[k - 1]) break;
  }
  if (ranks.size() == 1 || ranks[1] == nn) return {};  // not an eigenvalue
  while (ranks.size() < static_cast<size_t>(nn) + 2)
    ranks.push_back(ranks.back());

  std::vector<int> blocks;
  for (int k = 1; k <= nn; ++k) {
    int count = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1];
    for (int i = 0; i < count; ++i) blocks.push_back(k);
  }
  std::sort(blocks.rbegin(), blocks.rend());
  return blocks;
}

CSet build_cset(const std::vector<Cx>& m_spectrum, const ModeSet& lambda_un,
                double tol) {
  double scale = std::max(spectral_scale(m_spectrum),
                          spectral_scale(lambda_un.modes));
  double atol = tol * (1.0 + scale);
  if (!unmixing_check(lambda_un, tol))
    throw UnmixingViolated("build_cset: Lambda_un is mixed");

  std::vector<Cx> jl;
  for (const auto& l : lambda_un.modes) jl.push_back(Cx(0, 1) * l);

  auto near_jl = [&](const Cx& z) {
    for (const auto& c : jl)
      if (std::abs(z - c) <= std::max(atol, 1e-6 * (1.0 + scale))) return true;
    return false;
  };

  std::vector<Cx> nonreal;
  for (const auto& z : m_spectrum)
    if (std::abs(z.imag()) > atol) nonreal.push_back(z);

  CSet out;
  std::vector<Cluster> cl = cluster_values(nonreal, atol);
  std::vector<bool> done(cl.size(), false);
  for (size_t i = 0; i < cl.size(); ++i) {
    if (done[i]) continue;
    int mate = -1;
    for (size_t k = 0; k < cl.size(); ++k) {
      if (k == i || done[k]) continue;
      if (std::abs(std::conj(cl[i].center) - cl[k].center) <= atol) {
        mate = static_cast<int>(k);
        break;
      }
    }
    done[i] = true;
    if (mate >= 0) done[mate] = true;
    Cx a = cl[i].center;
    Cx b = mate >= 0 ? cl[mate].center : std::conj(a);
    Cx pick;
    if (near_jl(a))
      pick = a;
    else if (near_jl(b))
      pick = b;
    else
      pick = a.imag() > 0 ? a : b;  // default tie-break: Im > 0
    out.members.push_back(pick);
  }
  // every forced member must actually appear
  for (const auto& c : jl) {
    bool found = false;
    for (const auto& z : out.members)
      if (std::abs(z - c) <= std::max(atol, 1e-6 * (1.0 + scale)))
        found = true;
    if (!found)
      throw Error("build_cset: j*Lambda_un member " + fmt_cx(c) +
                  " not found among the nonreal eigenvalues of M");
  }
  return out;
}

Eigen::MatrixXcd neutral_invariant_subspace(const HamiltonianData& hd,
                                            const CSet& cset, double tol) {
  const int n = hd.n, nn = 2 * n;
  SchurPair sp = complex_schur(hd.M);
  std::vector<Cx> diag(nn);
  for (int i = 0; i < nn; ++i) diag[i] = sp.T(i, i);
  double scale = spectral_scale(diag);
  const double ctol = 1e-7 * (1.0 + scale);
  const double mtol = 1e-6 * (1.0 + scale);

  std::vector<bool> select(nn, false);
  std::vector<Cx> reals;
  std::vector<int> real_pos;
  for (int i = 0; i < nn; ++i) {
    if (std::abs(diag[i].imag()) <= ctol) {
      reals.push_back(diag[i]);
      real_pos.push_back(i);
    } else {
      for (const auto& c : cset.members)
        if (std::abs(diag[i] - c) <= mtol) {
          select[i] = true;
          break;
        }
    }
  }
  for (const auto& cl : cluster_values(reals, ctol)) {
    const int m = static_cast<int>(cl.idx.size());
    std::vector<int> pm =
        partial_multiplicities(hd.M, cl.center, 1e-6);
    for (int b : pm)
      if (b % 2 != 0)
        throw OddMultiplicity(
            "neutral_invariant_subspace: real eigenvalue " +
            fmt_cx(cl.center) + " of M has an odd partial multiplicity");
    for (int k = 0; k < m / 2; ++k) select[real_pos[cl.idx[k]]] = true;
  }

  int count = 0;
  for (bool s : select) count += s ? 1 : 0;
  if (count != n)
    throw NeutralityFailed(
        "neutral_invariant_subspace: selected dimension " +
        std::to_string(count) + " != n = " + std::to_string(n) +
        " (c-set does not account for the nonreal spectrum)");

  move_selected_front(sp.T, sp.Q, select);
  Eigen::MatrixXcd X = sp.Q.leftCols(n);

  // invariance holds by construction; neutrality is the real check
  double pn = hd.P.norm();
  double neu = (X.adjoint() * hd.P * X).norm();
  if (neu > std::max(tol, 1e-8) * std::max(1.0, pn))
    throw NeutralityFailed(
        "neutral_invariant_subspace: subspace is not P-neutral (residual " +
        std::to_string(neu) + ")");
  return X;
}

Eigen::MatrixXd extract_K(const Eigen::MatrixXcd& basis, double tol) {
  const int n = static_cast<int>(basis.cols());
  Eigen::MatrixXcd x1 = basis.topRows(n), x2 = basis.bottomRows(n);
  if (n == 0) return Eigen::MatrixXd(0, 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x1);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(sv.size() - 1) / sv(0) < 1e-10)
    throw NotGraphSubspace("extract_K: X1 is numerically singular");
  Eigen::MatrixXcd k = x2 * x1.partialPivLu().solve(
                                Eigen::MatrixXcd::Identity(n, n));
  double knorm = std::max(1.0, k.norm());
  Eigen::MatrixXcd herm = 0.5 * (k + k.adjoint());
  if ((k - herm).norm() > 1e-8 * knorm)
    throw NonHermitian("extract_K: K is not Hermitian within tolerance");
  if (herm.imag().norm() > std::max(tol, 1e-8) * knorm)
    throw NonReal("extract_K: Hermitian K has a nonreal part");
  Eigen::MatrixXd out = herm.real();
  return 0.5 * (out + out.transpose()).eval();
}

CertificateResiduals verify_certificate(const StateSpace& ss,
                                        const Eigen::MatrixXd& J,
                                        const Eigen::MatrixXd& K,
                                        double tol) {
  CertificateResiduals r;
  const int n = ss.n(), m = static_cast<int>(ss.B.cols());
  if (n == 0) return r;
  TildeTriple t = build_tilde(ss, J, tol);
  Eigen::MatrixXd are = K * t.Atilde + t.Atilde.transpose() * K +
                        K * t.Dtilde * K - t.Ctilde;
  r.are_residual = are.norm();

  Eigen::MatrixXd l(n + m, n + m);
  Eigen::MatrixXd a11 = K * ss.A + ss.A.transpose() * K -
                        ss.C.transpose() * J * ss.C;
  Eigen::MatrixXd a12 = K * ss.B - ss.C.transpose() * J * ss.D;
  Eigen::MatrixXd a22 = -(Eigen::MatrixXd::Identity(m, m) +
                          ss.D.transpose() * J * ss.D);
  l << a11, a12, a12.transpose(), a22;
  l = 0.5 * (l + l.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  r.lmi_max_eig = es.eigenvalues().maxCoeff();
  return r;
}

PopovVerdict controllable_dissipativity(const PolyMat& image,
                                        const Eigen::MatrixXd& sigma,
                                        const std::vector<double>& grid,
                                        double tol) {
  PopovVerdict v;
  RatMat srat = RatMat::from_double(sigma);
  TwoVarPolyMat phi = two_var_from_images(image, srat, image);
  Poly ddet = det(partial_op(phi));

  std::vector<double> omegas = grid;
  if (!ddet.is_zero() && ddet.degree() > 0)
    for (const auto& z : poly_roots(ddet)) {
      omegas.push_back(std::abs(z.imag()));
      omegas.push_back(std::abs(z.real()));
      omegas.push_back(std::abs(z));
    }

  Eigen::MatrixXcd sc = sigma.cast<Cx>();
  v.pass = true;
  v.strict = true;
  v.strict_margin = 1e-6;
  bool first = true;
  for (double om : omegas) {
    Eigen::MatrixXcd e = eval(image, Cx(0, om));
    Eigen::MatrixXcd pop = e.adjoint() * sc * e;
    pop = 0.5 * (pop + pop.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pop);
    double mn = es.eigenvalues().size() > 0 ? es.eigenvalues().minCoeff() : 0.0;
    if (first || mn < v.min_eig) {
      v.min_eig = mn;
      v.witness_omega = om;
      first = false;
    }
    if (mn < -tol * (1.0 + pop.norm())) v.pass = false;
    if (mn < v.strict_margin) v.strict = false;
  }
  if (first) v.min_eig = 0.0;
  return v;
}

std::vector<double> default_frequency_grid(int count) {
  std::vector<double> g;
  g.push_back(0.0);
  if (count < 2) return g;
  const int k = count - 1;
  for (int i = 0; i < k; ++i) {
    double t = k == 1 ? 0.0 : static_cast<double>(i) / (k - 1);
    g.push_back(std::pow(10.0, -3.0 + 6.0 * t));
  }
  return g;
}

namespace {

// iso data can be used directly when the raw supply already reads
// |u|^2 + y^T J y in the caller's channel ordering
bool iso_supply_direct(const Eigen::MatrixXd& sigma_raw, const IOPartition& io,
                       int m_b, Eigen::MatrixXd* J) {
  const int m = static_cast<int>(io.inputs.size());
  const int p = static_cast<int>(io.outputs.size());
  if (m != m_b) return false;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (std::abs(sigma_raw(io.inputs[a], io.inputs[b]) -
                   (a == b ? 1.0 : 0.0)) > 1e-12)
        return false;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < p; ++b)
      if (std::abs(sigma_raw(io.inputs[a], io.outputs[b])) > 1e-12)
        return false;
  Eigen::MatrixXd j(p, p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      j(a, b) = sigma_raw(io.outputs[a], io.outputs[b]);
      if (a != b && std::abs(j(a, b)) > 1e-12) return false;
      if (a == b && std::abs(std::abs(j(a, b)) - 1.0) > 1e-12) return false;
    }
  *J = j;
  return true;
}

}  // namespace

CertifyResult certify(const Behavior& b, const Eigen::MatrixXd& sigma_raw,
                      int m_b, const CertifyOptions& opts) {
  CertifyResult res;
  auto refuse = [&](const std::string& stage, const std::string& detail) {
    res.ok = false;
    res.refusal_stage = stage;
    res.refusal_detail = detail;
    return res;
  };

  const int mb = m_b >= 0 ? m_b : input_cardinality(b);

  // (1) m(B) <= sigma_plus
  CanonicalSupply cs;
  try {
    cs = canonicalize_supply(sigma_raw, mb);
  } catch (const Error& e) {
    res.assumptions["input_cardinality"] = false;
    return refuse("input-cardinality", e.what());
  }
  res.assumptions["input_cardinality"] = true;

  const int w = b.w();
  bool w_identity =
      (cs.W - Eigen::MatrixXd::Identity(w, w)).norm() <= 1e-12;
  Behavior bc = b;
  if (!w_identity)
    bc = sigma_image(b, RatMat::from_double(cs.W).inverse());

  // (2) uncontrollable modes and unmixing
  ModeSet lun = uncontrollable_modes(bc);
  res.lambda_un = lun;
  bool unmixed = unmixing_check(lun, opts.tol);
  res.assumptions["unmixing"] = unmixed;
  if (!unmixed)
    return refuse("unmixing",
                  "Lambda_un contains a pair summing to zero (UnmixingViolated)");

  // (3) observable realization
  StateSpace ss;
  Eigen::MatrixXd J;
  bool have = false;
  std::string realize_err = "no admissible input/output partition";
  if (b.kind() == ReprKind::Iso && w_identity && b.io().has_value() &&
      iso_supply_direct(sigma_raw, *b.io(), mb, &J) &&
      is_observable(b.state_space())) {
    ss = b.state_space();
    have = true;
  }
  if (!have) {
    Behavior bker = bc.kind() == ReprKind::Kernel
                        ? bc
                        : Behavior::kernel(bc.kernel_matrix());
    const int sp = cs.rate.sigma_plus();
    std::vector<char> mask(sp, 0);
    for (int i = 0; i < std::min(mb, sp); ++i) mask[i] = 1;
    // first mask tried is inputs {0..m-1}; prev_permutation walks the rest
    do {
      IOPartition io;
      for (int i = 0; i < sp; ++i)
        if (mask[i]) io.inputs.push_back(i);
      for (int i = 0; i < w; ++i)
        if (std::find(io.inputs.begin(), io.inputs.end(), i) ==
            io.inputs.end())
          io.outputs.push_back(i);
      try {
        ss = realize(bker, io);
        J.setIdentity(w - mb, w - mb);
        for (int k = 0; k < w - mb; ++k)
          if (io.outputs[k] >= sp) J(k, k) = -1.0;
        have = true;
        break;
      } catch (const Error& e) {
        realize_err = e.what();
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
    bc = bker;
  }
  res.assumptions["observable_realization"] = have;
  if (!have) return refuse("realization", realize_err);
  res.realization = ss;

  // (4) strictness at infinity
  double sinf = strictness_at_infinity(ss.D, J);
  res.assumptions["strictness_at_infinity"] = sinf > opts.tol;
  if (sinf <= opts.tol)
    return refuse("strictness-at-infinity",
                  "min eig(I + D^T J D) = " + std::to_string(sinf));

  // (5) Popov test on the controllable part
  Behavior bker = bc.kind() == ReprKind::Kernel
                      ? bc
                      : Behavior::kernel(bc.kernel_matrix());
  PolyMat mc = observable_image(controllable_part(bker));
  PopovVerdict pv = controllable_dissipativity(
      mc, cs.rate.sigma, default_frequency_grid(opts.grid), opts.tol);
  res.assumptions["controllable_part_dissipative"] = pv.pass;
  if (!pv.pass && opts.popov_gate)
    return refuse("controllable-dissipativity",
                  "Popov eigenvalue " + std::to_string(pv.min_eig) +
                      " at omega = " + std::to_string(pv.witness_omega));

  const int n = ss.n();
  if (n == 0) {
    StorageCertificate cert;
    cert.K.resize(0, 0);
    cert.basis.resize(0, 0);
    cert.state_map = "zero-dimensional state; storage function is zero";
    for (const char* k :
         {"even_partial_multiplicities", "cset_contains_juncontrollable",
          "neutral_subspace", "graph_subspace", "certificate_verified"})
      res.assumptions[k] = true;
    res.certificate = cert;
    res.ok = true;
    return res;
  }

  // (6) tilde matrices and Hamiltonian
  HamiltonianData hd;
  try {
    hd = build_hamiltonian(build_tilde(ss, J, opts.tol));
  } catch (const Error& e) {
    return refuse("hamiltonian", e.what());
  }

  // spectrum identity report (informational; Lemma on sigma(H))
  {
    TwoVarPolyMat phi =
        two_var_from_images(mc, RatMat::from_double(cs.rate.sigma), mc);
    res.spectrum =
        spectrum_identity_check(hd.H, det(partial_op(phi)), lun, 1e-6);
  }

  std::vector<Cx> mspec;
  {
    Eigen::EigenSolver<Eigen::MatrixXd> es(hd.H, false);
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      mspec.push_back(Cx(0, 1) * es.eigenvalues()(i));
  }
  double scale = spectral_scale(mspec);
  const double ctol = 1e-7 * (1.0 + scale);

  // (7) even partial multiplicities at the real eigenvalues of M
  bool even = true;
  std::string odd_detail;
  std::vector<Cx> reals;
  for (const auto& z : mspec)
    if (std::abs(z.imag()) <= ctol) reals.push_back(z.real());
  try {
    for (const auto& cl : cluster_values(reals, ctol)) {
      for (int bsz : partial_multiplicities(hd.M, cl.center, 1e-6))
        if (bsz % 2 != 0) {
          even = false;
          odd_detail = "real eigenvalue " + fmt_cx(cl.center) +
                       " of M has an odd partial multiplicity (OddMultiplicity)";
        }
    }
  } catch (const Error& e) {
    even = false;
    odd_detail = e.what();
  }
  res.assumptions["even_partial_multiplicities"] = even;
  if (!even) return refuse("even-multiplicities", odd_detail);

  // (8) c-set containing j*Lambda_un
  CSet cset;
  try {
    cset = build_cset(mspec, lun);
  } catch (const Error& e) {
    res.assumptions["cset_contains_juncontrollable"] = false;
    return refuse("cset", e.what());
  }
  res.assumptions["cset_contains_juncontrollable"] = true;

  // (9) P-neutral M-invariant subspace
  Eigen::MatrixXcd X;
  try {
    X = neutral_invariant_subspace(hd, cset, opts.tol);
  } catch (const Error& e) {
    res.assumptions["neutral_subspace"] = false;
    return refuse("neutral-subspace", e.what());
  }
  res.assumptions["neutral_subspace"] = true;

  // (10) K from the graph subspace
  Eigen::MatrixXd K;
  try {
    K = extract_K(X, opts.tol);
  } catch (const Error& e) {
    res.assumptions["graph_subspace"] = false;
    return refuse("graph-subspace", e.what());
  }
  res.assumptions["graph_subspace"] = true;

  // (11) residual verification
  CertificateResiduals cr = verify_certificate(ss, J, K, opts.tol);
  double vtol = 1e-5 * (1.0 + K.norm());
  bool verified = cr.are_residual <= vtol && cr.lmi_max_eig <= vtol;
  res.assumptions["certificate_verified"] = verified;
  if (!verified)
    return refuse("verification",
                  "ARE residual " + std::to_string(cr.are_residual) +
                      ", LMI max eig " + std::to_string(cr.lmi_max_eig));

  StorageCertificate cert;
  cert.K = K;
  cert.cset = cset;
  cert.basis = X;
  cert.are_residual = cr.are_residual;
  cert.lmi_max_eig = cr.lmi_max_eig;
  cert.state_map =
      "x is the state of the observable realization induced by the "
      "row-proper fraction of the kernel representation (iso inputs keep "
      "their own coordinates)";
  res.certificate = cert;
  res.ok = true;
  return res;
}

}  // namespace dissip
