#pragma once

#include <complex>
#include <optional>

#include "dissip/smith.hpp"
#include "dissip/state_space.hpp"

namespace dissip {

enum class ReprKind { Kernel, Image, Iso };

// Multiset of complex numbers; closed under conjugation for real behaviors.
struct ModeSet {
  std::vector<std::complex<double>> modes;

  bool empty() const { return modes.empty(); }
  size_t size() const { return modes.size(); }
};

// Linear differential behavior with a tagged representation.
class Behavior {
 public:
  // Kernel rows are reduced to full row rank via the Smith form.
  static Behavior kernel(const PolyMat& R);
  static Behavior image(const PolyMat& M);
  static Behavior iso(const StateSpace& ss, const IOPartition& io);

  ReprKind kind() const { return kind_; }
  int w() const { return w_; }
  const PolyMat& matrix() const { return mat_; }  // kernel R or image M
  const StateSpace& state_space() const { return ss_.value(); }
  const std::optional<IOPartition>& io() const { return io_; }
  void set_io(const IOPartition& io) { io_ = io; }

  // Exact full-row-rank kernel representation; derived on demand for image
  // and iso kinds (iso data is rationalized exactly first).
  PolyMat kernel_matrix() const;

 private:
  Behavior() = default;
  ReprKind kind_ = ReprKind::Kernel;
  int w_ = 0;
  PolyMat mat_;
  std::optional<StateSpace> ss_;
  std::optional<IOPartition> io_;
};

int input_cardinality(const Behavior& b);
ModeSet uncontrollable_modes(const Behavior& b);
bool is_controllable(const Behavior& b);

// no pair sums to zero within tol * (1 + max |mode|)
bool unmixing_check(const ModeSet& modes, double tol);

Behavior controllable_part(const Behavior& b);

// Observable polynomial image of a controllable behavior: R*M = 0 exactly,
// full column rank at every lambda. Throws NotControllable.
PolyMat observable_image(const Behavior& b);

// Smallest controllable superbehavior (input cardinality grows by the count
// of nontrivial invariant factors). F1 must be unimodular when supplied;
// F2 is free. Defaults (I, 0).
Behavior superbehavior(const Behavior& b,
                       const std::optional<PolyMat>& F1 = std::nullopt,
                       const std::optional<PolyMat>& F2 = std::nullopt);

Behavior intersect(const Behavior& b1, const Behavior& b2);
bool is_autonomous(const Behavior& b);

// { Sigma v : v in B }; Sigma nonsingular
Behavior sigma_image(const Behavior& b, const RatMat& sigma);

// Every row of sub's kernel matrix is an exact polynomial combination of
// sup's rows, i.e. sup's behavior contains sub's.
bool kernel_rows_included(const PolyMat& sub_rows, const PolyMat& sup_kernel);

// Mutual kernel-row inclusion.
bool behavior_equal(const Behavior& a, const Behavior& b);

// Left annihilator rows of a full-column-rank polynomial matrix.
PolyMat left_annihilator(const PolyMat& m);

// Multiset of roots of the product of nontrivial invariant factors.
ModeSet invariant_factor_roots(const std::vector<Poly>& factors);

}  // namespace dissip
