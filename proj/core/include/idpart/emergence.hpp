#pragma once

// Decides whether a (anti)symmetric many-particle state is built from
// orthogonal one-particle states, and extracts those states.
//
// A state qualifies when it equals, up to a global phase, the (anti)symmetrized
// product of orthonormal one-particle states with integer multiplicities.
// Singly occupied states define individual particles; a multiply occupied one
// is a single undifferentiated excitation of that mode.

#include <span>
#include <string_view>
#include <vector>

#include "idpart/exchange.hpp"
#include "idpart/hilbert.hpp"

namespace idpart {

namespace tol {
// Allowed distance of N * lambda from the nearest integer.
inline constexpr double kOccupationGuard = 0.05;
inline constexpr double kFidelity = 1e-8;
inline constexpr double kSlaterSingular = 1e-9;
}  // namespace tol

enum class Verdict { kParticleDecomposition, kCondensedObject, kNoParticleDecomposition };

std::string_view to_string(Verdict verdict);

struct NaturalOrbital {
  double occupation = 0.0;  // eigenvalue of the one-particle density matrix
  CVector vector;
};

struct DefiningState {
  CVector state;
  int occupation = 0;
};

struct EmergenceReport {
  Verdict verdict = Verdict::kNoParticleDecomposition;
  // Empty for kNoParticleDecomposition.
  std::vector<DefiningState> defining_states;
  double fidelity = 0.0;
  // Natural occupations, descending, summing to 1.
  std::vector<double> natural_spectrum;
};

// Eigenpairs of a one-particle density matrix, descending eigenvalue. Each
// eigenvector's first component above tolerance is made real positive;
// equal eigenvalues are ordered by the index of that component.
std::vector<NaturalOrbital> natural_orbitals(const CMatrix& rdm);

EmergenceReport detect_emergent_particles(const LabeledState& state, ExchangeSector sector);

// Number of antisymmetrized products needed for a two-fermion state.
int slater_rank_two_fermions(const LabeledState& state);

// Evolves each one-particle state by u; inputs must be pairwise orthogonal.
std::vector<CVector> genidentity_track(std::span<const CVector> initial_states, const CMatrix& u);

}  // namespace idpart
