#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "idpart/hilbert.hpp"

namespace idpart {

enum class ExchangeSector { kSymmetric, kAntisymmetric };

std::string_view to_string(ExchangeSector sector);
ExchangeSector parse_exchange_sector(std::string_view name);

namespace tol {
inline constexpr double kSector = 1e-9;
// Below this norm a projected product is treated as a Pauli violation.
inline constexpr double kIllConditioned = 1e-6;
}  // namespace tol

// (1/N!) sum_p (+-1)^p P_p applied to raw amplitudes, unnormalized.
std::vector<Complex> apply_sector_projector(std::span<const Complex> amplitudes, std::size_t d,
                                            std::size_t n_slots, ExchangeSector sector);

// Normalized projection, or nullopt when the image vanishes (norm <= tol::kNorm).
std::optional<LabeledState> sector_project(const LabeledState& state, ExchangeSector sector);

// Normalized (anti)symmetrized product of one-particle states.
// Throws DomainError when an antisymmetrized product degenerates (norm < 1e-6).
LabeledState symmetrized_product(const OneParticleBasis& basis, std::span<const CVector> factors,
                                 ExchangeSector sector);

// Orthonormal basis of the sector, one vector per occupation vector in the
// order of enumerate_distributions. First nonzero amplitude is real positive.
std::vector<LabeledState> sector_basis(const OneParticleBasis& basis, int n, ExchangeSector sector);
std::vector<LabeledState> sector_basis(int d, int n, ExchangeSector sector);

// The sector basis vector for one occupation vector.
LabeledState occupation_basis_vector(const OneParticleBasis& basis, std::span<const int> occupations,
                                     ExchangeSector sector);

bool is_in_sector(const LabeledState& state, ExchangeSector sector);

}  // namespace idpart
