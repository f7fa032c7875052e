#include "idpart/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "idpart/errors.hpp"

namespace idpart {

namespace {

bool all_finite(std::span<const Complex> values) {
  return std::all_of(values.begin(), values.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

// Stride of slot s in the flat index.
std::size_t slot_stride(std::size_t d, std::size_t n_slots, std::size_t slot) {
  std::size_t stride = 1;
  for (std::size_t k = slot + 1; k < n_slots; ++k) stride *= d;
  return stride;
}

}  // namespace

std::size_t checked_dimension(std::size_t d, std::size_t n) {
  if (d == 0) throw DimensionError("one-particle dimension must be positive");
  std::size_t size = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (size > kMaxDenseDimension / d) {
      throw CapExceeded("dense dimension " + std::to_string(d) + "^" + std::to_string(n) +
                        " exceeds the cap of 2^24 amplitudes");
    }
    size *= d;
  }
  return size;
}

// ---------------------------------------------------------------------------
// OneParticleBasis

OneParticleBasis::OneParticleBasis(std::vector<std::string> labels,
                                   std::optional<std::vector<double>> energies)
    : labels_(std::move(labels)), energies_(std::move(energies)) {
  if (labels_.empty()) throw DimensionError("one-particle basis must have at least one mode");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw DomainError("basis labels must be distinct");
  if (energies_ && energies_->size() != labels_.size()) {
    throw DimensionError("basis energies must match the number of labels");
  }
}

OneParticleBasis OneParticleBasis::numbered(std::size_t d) {
  std::vector<std::string> labels;
  labels.reserve(d);
  for (std::size_t i = 1; i <= d; ++i) labels.push_back("e" + std::to_string(i));
  return OneParticleBasis(std::move(labels));
}

OneParticleBasis OneParticleBasis::composite(const OneParticleBasis& space,
                                             const OneParticleBasis& spin) {
  std::vector<std::string> labels;
  labels.reserve(space.dimension() * spin.dimension());
  for (const auto& x : space.labels()) {
    for (const auto& s : spin.labels()) labels.push_back(x + "×" + s);
  }
  return OneParticleBasis(std::move(labels));
}

std::optional<std::size_t> OneParticleBasis::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

// ---------------------------------------------------------------------------
// LabeledState

LabeledState::LabeledState(OneParticleBasis basis, std::size_t n_slots,
                           std::vector<Complex> amplitudes)
    : basis_(std::move(basis)), n_slots_(n_slots), amplitudes_(std::move(amplitudes)) {
  if (n_slots_ == 0) throw DimensionError("a labeled state needs at least one slot");
  const std::size_t expected = checked_dimension(basis_.dimension(), n_slots_);
  if (amplitudes_.size() != expected) {
    throw DimensionError("expected " + std::to_string(expected) + " amplitudes, got " +
                         std::to_string(amplitudes_.size()));
  }
  if (!all_finite(amplitudes_)) throw DomainError("amplitudes must be finite");
  const double n = dense::norm(amplitudes_);
  if (std::abs(n - 1.0) > tol::kNorm) {
    std::ostringstream msg;
    msg << "state is not normalized (norm " << n << ")";
    throw DomainError(msg.str());
  }
}

LabeledState LabeledState::normalized(OneParticleBasis basis, std::size_t n_slots,
                                      std::vector<Complex> amplitudes) {
  if (!all_finite(amplitudes)) throw DomainError("amplitudes must be finite");
  const double n = dense::norm(amplitudes);
  if (n <= tol::kNorm) throw DomainError("cannot normalize a zero vector");
  for (auto& a : amplitudes) a /= n;
  return LabeledState(std::move(basis), n_slots, std::move(amplitudes));
}

LabeledState LabeledState::basis_product(OneParticleBasis basis,
                                         std::span<const std::size_t> modes) {
  const std::size_t d = basis.dimension();
  std::vector<Complex> amps(checked_dimension(d, modes.size()));
  std::size_t flat = 0;
  for (std::size_t m : modes) {
    if (m >= d) throw DimensionError("mode index out of range");
    flat = flat * d + m;
  }
  amps[flat] = 1.0;
  return LabeledState(std::move(basis), modes.size(), std::move(amps));
}

std::vector<std::size_t> LabeledState::digits(std::size_t flat) const {
  const std::size_t d = modes();
  std::vector<std::size_t> out(n_slots_);
  for (std::size_t s = n_slots_; s-- > 0;) {
    out[s] = flat % d;
    flat /= d;
  }
  return out;
}

std::size_t LabeledState::flat_index(std::span<const std::size_t> digits) const {
  if (digits.size() != n_slots_) throw DimensionError("digit count must equal slot count");
  std::size_t flat = 0;
  for (std::size_t m : digits) {
    if (m >= modes()) throw DimensionError("mode index out of range");
    flat = flat * modes() + m;
  }
  return flat;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> hit(mapping_.size(), false);
  for (std::size_t v : mapping_) {
    if (v >= mapping_.size() || hit[v]) throw DomainError("permutation mapping is not a bijection");
    hit[v] = true;
  }
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    for (std::size_t j = i + 1; j < mapping_.size(); ++j) {
      if (mapping_[i] > mapping_[j]) ++inversions;
    }
  }
  parity_ = (inversions % 2 == 0) ? 1 : -1;
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

Permutation Permutation::transposition(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw DimensionError("transposition index out of range");
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  std::swap(m[i], m[j]);
  return Permutation(std::move(m));
}

std::vector<Permutation> Permutation::all(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(m);
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(mapping_.size());
  for (std::size_t s = 0; s < mapping_.size(); ++s) inv[mapping_[s]] = s;
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw DimensionError("cannot compose permutations of different size");
  std::vector<std::size_t> m(inner.size());
  for (std::size_t s = 0; s < inner.size(); ++s) m[s] = outer[inner[s]];
  return Permutation(std::move(m));
}

// ---------------------------------------------------------------------------
// Dense kernels

namespace dense {

double norm(std::span<const Complex> amplitudes) {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return std::sqrt(sum);
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("inner product of vectors with different lengths");
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

std::vector<Complex> permute(std::span<const Complex> amplitudes, std::size_t d,
                             std::size_t n, const Permutation& p) {
  if (checked_dimension(d, n) != amplitudes.size()) {
    throw DimensionError("amplitude length does not match d^N");
  }
  if (p.size() != n) {
    throw DimensionError("permutation on " + std::to_string(p.size()) + " slots applied to a " +
                         std::to_string(n) + "-slot state");
  }
  std::vector<std::size_t> strides(n);
  for (std::size_t s = 0; s < n; ++s) strides[s] = slot_stride(d, n, s);

  std::vector<Complex> out(amplitudes.size());
  std::vector<std::size_t> digit(n, 0);
  for (std::size_t flat = 0; flat < amplitudes.size(); ++flat) {
    std::size_t target = 0;
    for (std::size_t s = 0; s < n; ++s) target += digit[s] * strides[p[s]];
    out[target] = amplitudes[flat];
    // odometer increment, last slot fastest
    for (std::size_t s = n; s-- > 0;) {
      if (++digit[s] < d) break;
      digit[s] = 0;
    }
  }
  return out;
}

std::vector<Complex> apply_each_slot(std::span<const Complex> amplitudes, std::size_t d,
                                     std::size_t n_slots, const CMatrix& op) {
  if (static_cast<std::size_t>(op.rows()) != d || static_cast<std::size_t>(op.cols()) != d) {
    throw DimensionError("one-particle operator must be " + std::to_string(d) + "x" +
                         std::to_string(d));
  }
  if (checked_dimension(d, n_slots) != amplitudes.size()) {
    throw DimensionError("amplitude length does not match d^N");
  }
  std::vector<Complex> current(amplitudes.begin(), amplitudes.end());
  std::vector<Complex> next(current.size());
  for (std::size_t s = 0; s < n_slots; ++s) {
    const std::size_t stride = slot_stride(d, n_slots, s);
    const std::size_t block = stride * d;
    std::fill(next.begin(), next.end(), Complex{});
    for (std::size_t base = 0; base < current.size(); base += block) {
      for (std::size_t r = 0; r < stride; ++r) {
        for (std::size_t a = 0; a < d; ++a) {
          Complex acc{};
          for (std::size_t b = 0; b < d; ++b) acc += op(a, b) * current[base + b * stride + r];
          next[base + a * stride + r] = acc;
        }
      }
    }
    std::swap(current, next);
  }
  return current;
}

}  // namespace dense

// ---------------------------------------------------------------------------
// Operations

LabeledState tensor_product(const OneParticleBasis& basis, std::span<const CVector> factors) {
  if (factors.empty()) throw DimensionError("tensor product needs at least one factor");
  const std::size_t d = basis.dimension();
  checked_dimension(d, factors.size());
  std::vector<Complex> amps{Complex{1.0, 0.0}};
  for (const auto& f : factors) {
    if (static_cast<std::size_t>(f.size()) != d) {
      throw DimensionError("factor of length " + std::to_string(f.size()) +
                           " does not match basis dimension " + std::to_string(d));
    }
    const double n = f.norm();
    if (!std::isfinite(n) || n <= tol::kNorm) throw DomainError("tensor product factor has zero norm");
    std::vector<Complex> next;
    next.reserve(amps.size() * d);
    for (const auto& a : amps) {
      for (std::size_t m = 0; m < d; ++m) next.push_back(a * f[static_cast<Eigen::Index>(m)] / n);
    }
    amps = std::move(next);
  }
  return LabeledState::normalized(basis, factors.size(), std::move(amps));
}

Complex inner_product(const LabeledState& a, const LabeledState& b) {
  if (a.n_slots() != b.n_slots() || a.modes() != b.modes()) {
    throw DimensionError("inner product of states with different shapes");
  }
  return dense::dot(a.amplitudes(), b.amplitudes());
}

double fidelity(const LabeledState& a, const LabeledState& b) {
  return std::norm(inner_product(a, b));
}

LabeledState apply_permutation(const LabeledState& state, const Permutation& p) {
  auto out = dense::permute(state.amplitudes(), state.modes(), state.n_slots(), p);
  return LabeledState(state.basis(), state.n_slots(), std::move(out));
}

bool is_unitary(const CMatrix& u, double tolerance) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  if (!u.allFinite()) return false;
  const CMatrix defect = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff() <= tolerance;
}

LabeledState apply_one_particle_unitary(const LabeledState& state, const CMatrix& u) {
  if (static_cast<std::size_t>(u.rows()) != state.modes() ||
      static_cast<std::size_t>(u.cols()) != state.modes()) {
    throw DimensionError("unitary size does not match the one-particle dimension");
  }
  if (!is_unitary(u)) throw DomainError("one-particle matrix is not unitary within tolerance");
  auto out = dense::apply_each_slot(state.amplitudes(), state.modes(), state.n_slots(), u);
  return LabeledState(state.basis(), state.n_slots(), std::move(out));
}

CMatrix reduce_one_particle(const LabeledState& state) {
  const std::size_t d = state.modes();
  const std::size_t n = state.n_slots();
  const auto amps = state.amplitudes();
  CMatrix rho = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t stride = slot_stride(d, n, s);
    const std::size_t block = stride * d;
    for (std::size_t base = 0; base < amps.size(); base += block) {
      for (std::size_t r = 0; r < stride; ++r) {
        for (std::size_t a = 0; a < d; ++a) {
          const Complex psi_a = amps[base + a * stride + r];
          if (psi_a == Complex{}) continue;
          for (std::size_t b = 0; b < d; ++b) {
            rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
                psi_a * std::conj(amps[base + b * stride + r]);
          }
        }
      }
    }
  }
  rho /= static_cast<double>(n);
  return rho;
}

double max_deviation_up_to_phase(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("vectors have different lengths");
  const Complex overlap = dense::dot(b, a);
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - phase * b[i]));
  return worst;
}

}  // namespace idpart
