#pragma once

// Dense N-slot tensor-product states over a finite one-particle basis.
//
// Flat amplitude index convention: slot 0 is the most significant base-d
// digit, so for d = 2 and N = 3 the product |A>|B>|A> sits at index 0b010.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace idpart {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace tol {
inline constexpr double kNorm = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kPsd = 1e-10;
inline constexpr double kOrth = 1e-10;
}  // namespace tol

// Largest d^N accepted for dense storage.
inline constexpr std::size_t kMaxDenseDimension = std::size_t{1} << 24;

// d^n, throwing CapExceeded when it exceeds kMaxDenseDimension.
std::size_t checked_dimension(std::size_t d, std::size_t n);

class OneParticleBasis {
 public:
  OneParticleBasis() = default;
  explicit OneParticleBasis(std::vector<std::string> labels,
                            std::optional<std::vector<double>> energies = std::nullopt);

  // Modes labelled e1, e2, ..., ed.
  static OneParticleBasis numbered(std::size_t d);

  // Flattened space (x) spin basis, space-major, labels "L×up".
  static OneParticleBasis composite(const OneParticleBasis& space, const OneParticleBasis& spin);

  std::size_t dimension() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t mode) const { return labels_.at(mode); }
  std::optional<std::size_t> index_of(std::string_view label) const;
  const std::optional<std::vector<double>>& energies() const { return energies_; }

  bool operator==(const OneParticleBasis&) const = default;

 private:
  std::vector<std::string> labels_;
  std::optional<std::vector<double>> energies_;
};

// A unit-norm vector in the N-fold tensor product of a one-particle space.
class LabeledState {
 public:
  // Requires ||amplitudes|| = 1 within tol::kNorm.
  LabeledState(OneParticleBasis basis, std::size_t n_slots, std::vector<Complex> amplitudes);

  // Rescales to unit norm; throws DomainError for a (numerically) zero vector.
  static LabeledState normalized(OneParticleBasis basis, std::size_t n_slots,
                                 std::vector<Complex> amplitudes);

  // Product of basis modes, one mode index per slot.
  static LabeledState basis_product(OneParticleBasis basis, std::span<const std::size_t> modes);

  std::size_t n_slots() const { return n_slots_; }
  std::size_t modes() const { return basis_.dimension(); }
  std::size_t dimension() const { return amplitudes_.size(); }
  const OneParticleBasis& basis() const { return basis_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t flat) const { return amplitudes_[flat]; }

  // Mode per slot for a flat index, and the inverse.
  std::vector<std::size_t> digits(std::size_t flat) const;
  std::size_t flat_index(std::span<const std::size_t> digits) const;

 private:
  OneParticleBasis basis_;
  std::size_t n_slots_ = 0;
  std::vector<Complex> amplitudes_;
};

// Bijection on {0, ..., N-1}. Acting on a state, the content of slot s is
// moved to slot mapping[s].
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> mapping);

  static Permutation identity(std::size_t n);
  static Permutation transposition(std::size_t n, std::size_t i, std::size_t j);
  // All n! permutations in lexicographic order of their mapping.
  static std::vector<Permutation> all(std::size_t n);

  std::size_t size() const { return mapping_.size(); }
  std::size_t operator[](std::size_t s) const { return mapping_[s]; }
  const std::vector<std::size_t>& mapping() const { return mapping_; }
  // +1 for even, -1 for odd.
  int parity() const { return parity_; }
  Permutation inverse() const;

  bool operator==(const Permutation& other) const { return mapping_ == other.mapping_; }

 private:
  std::vector<std::size_t> mapping_;
  int parity_ = 1;
};

// outer ∘ inner: apply inner first.
Permutation compose(const Permutation& outer, const Permutation& inner);

// Raw amplitude-array kernels. They validate shapes but not norms, so the
// projector machinery can work on unnormalized intermediates.
namespace dense {

std::vector<Complex> permute(std::span<const Complex> amplitudes, std::size_t d,
                             std::size_t n_slots, const Permutation& p);

// Applies op to every slot (op ⊗ op ⊗ ... ⊗ op).
std::vector<Complex> apply_each_slot(std::span<const Complex> amplitudes, std::size_t d,
                                     std::size_t n_slots, const CMatrix& op);

double norm(std::span<const Complex> amplitudes);
Complex dot(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace dense

LabeledState tensor_product(const OneParticleBasis& basis, std::span<const CVector> factors);

// Conjugate-linear in the first argument.
Complex inner_product(const LabeledState& a, const LabeledState& b);

// |<a|b>|^2
double fidelity(const LabeledState& a, const LabeledState& b);

LabeledState apply_permutation(const LabeledState& state, const Permutation& p);

LabeledState apply_one_particle_unitary(const LabeledState& state, const CMatrix& u);

// Slot-averaged one-particle reduced density matrix, rho(a, b) = <a|rho|b>.
CMatrix reduce_one_particle(const LabeledState& state);

bool is_unitary(const CMatrix& u, double tolerance = tol::kUnitary);

// max_i |a_i - b_i| after rotating b onto a's global phase.
double max_deviation_up_to_phase(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace idpart
