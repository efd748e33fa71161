#pragma once

#include <map>
#include <string>

#include "dissip/behavior.hpp"
#include "dissip/realization.hpp"
#include "dissip/twovar.hpp"

namespace dissip {

// Supply rate in canonical coordinates: Sigma = diag(I_m, I_q, -I_p) with
// J = diag(I_q, -I_p) acting on the non-input channels.
struct SupplyRate {
  Eigen::MatrixXd sigma;  // canonical diagonal, w x w
  int m = 0, q = 0, p = 0;
  Eigen::MatrixXd J;  // (q+p) x (q+p)

  int w() const { return m + q + p; }
  int sigma_plus() const { return m + q; }
  int sigma_minus() const { return p; }
};

// Canonicalization result: W with W^T Sigma_raw W = diag(I, -I).
struct CanonicalSupply {
  SupplyRate rate;
  Eigen::MatrixXd W;
};

CanonicalSupply canonicalize_supply(const Eigen::MatrixXd& sigma_raw, int m_b,
                                    double tol = 1e-12);

// min eigenvalue of I_m + D^T J D; positive certifies strict dissipativity
// at the infinity frequency.
double strictness_at_infinity(const Eigen::MatrixXd& D,
                              const Eigen::MatrixXd& J);

struct TildeTriple {
  Eigen::MatrixXd Atilde, Dtilde, Ctilde;
};

TildeTriple build_tilde(const StateSpace& ss, const Eigen::MatrixXd& J,
                        double tol = 1e-9);

struct HamiltonianData {
  TildeTriple tilde;
  Eigen::MatrixXd H;       // [At Dt; Ct -At^T]
  Eigen::MatrixXcd M;      // j H
  Eigen::MatrixXcd P;      // [-Ct At^T; At Dt]
  Eigen::MatrixXcd Phat;   // j [0 I; -I 0]
  int n = 0;
};

HamiltonianData build_hamiltonian(const TildeTriple& t, double tol = 1e-12);

struct SpectrumReport {
  bool pass = false;
  std::vector<std::pair<std::complex<double>, std::complex<double>>> matched;
  std::vector<std::complex<double>> unmatched_sigma_h;
  std::vector<std::complex<double>> unmatched_expected;
};

// sigma(H) vs roots(det dPhi) + Lambda_un + (-Lambda_un), as multisets.
SpectrumReport spectrum_identity_check(const Eigen::MatrixXd& H,
                                       const Poly& det_dphi,
                                       const ModeSet& lambda_un, double tol);

// Jordan block sizes of `m` at lambda via the rank staircase of (m-lambda I)^k.
std::vector<int> partial_multiplicities(const Eigen::MatrixXcd& m,
                                        const std::complex<double>& lambda,
                                        double tol = 1e-8);

struct CSet {
  std::vector<std::complex<double>> members;
};

// c-set containing j*Lambda_un; remaining nonreal eigenvalue pairs contribute
// the member with positive imaginary part.
CSet build_cset(const std::vector<std::complex<double>>& m_spectrum,
                const ModeSet& lambda_un, double tol = 1e-7);

// Unique P-neutral M-invariant subspace of dimension n for the given c-set.
// Real eigenvalues of M contribute half-sized chains.
Eigen::MatrixXcd neutral_invariant_subspace(const HamiltonianData& hd,
                                            const CSet& cset,
                                            double tol = 1e-8);

// K = X2 X1^{-1} of a graph subspace, symmetrized and realified.
Eigen::MatrixXd extract_K(const Eigen::MatrixXcd& basis, double tol = 1e-8);

struct CertificateResiduals {
  double are_residual = 0.0;
  double lmi_max_eig = 0.0;
};

CertificateResiduals verify_certificate(const StateSpace& ss,
                                        const Eigen::MatrixXd& J,
                                        const Eigen::MatrixXd& K,
                                        double tol = 1e-9);

struct PopovVerdict {
  bool pass = false;
  double min_eig = 0.0;       // most negative eigenvalue seen
  double witness_omega = 0.0; // frequency attaining min_eig
  bool strict = false;        // min_eig >= strict margin
  double strict_margin = 0.0;
};

// Grid-certified Popov test: min eig of M^T(-jw) Sigma M(jw) over the grid
// and at boundary frequencies taken from the roots of det dPhi.
PopovVerdict controllable_dissipativity(const PolyMat& image,
                                        const Eigen::MatrixXd& sigma,
                                        const std::vector<double>& grid,
                                        double tol = 1e-8);

std::vector<double> default_frequency_grid(int count);

struct StorageCertificate {
  Eigen::MatrixXd K;
  CSet cset;
  Eigen::MatrixXcd basis;
  double are_residual = 0.0;
  double lmi_max_eig = 0.0;
  std::string state_map;  // description of the observable state as X(d/dt)w
};

struct CertifyOptions {
  double tol = 1e-8;
  int grid = 2000;
  // Diagnostic switch: run the Hamiltonian stages even when the sampled
  // Popov test already fails, so the downstream refusal reason (e.g. odd
  // partial multiplicities) can be inspected.
  bool popov_gate = true;
};

// Full pipeline outcome: a certificate, or the first failed assumption
// with its pipeline stage name.
struct CertifyResult {
  bool ok = false;
  std::string refusal_stage;   // empty on success
  std::string refusal_detail;
  std::map<std::string, bool> assumptions;
  std::optional<StorageCertificate> certificate;
  ModeSet lambda_un;
  std::optional<StateSpace> realization;  // coordinates K refers to
  std::optional<SpectrumReport> spectrum;
};

CertifyResult certify(const Behavior& b, const Eigen::MatrixXd& sigma_raw,
                      int m_b, const CertifyOptions& opts = {});

}  // namespace dissip
