#include "idpart/exchange.hpp"

#include <algorithm>
#include <cmath>

#include "idpart/errors.hpp"
#include "idpart/statistics.hpp"

namespace idpart {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

int inversion_parity(std::span<const std::size_t> tuple) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      if (tuple[i] > tuple[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

std::string_view to_string(ExchangeSector sector) {
  return sector == ExchangeSector::kSymmetric ? "symmetric" : "antisymmetric";
}

ExchangeSector parse_exchange_sector(std::string_view name) {
  if (name == "symmetric" || name == "SYMMETRIC") return ExchangeSector::kSymmetric;
  if (name == "antisymmetric" || name == "ANTISYMMETRIC") return ExchangeSector::kAntisymmetric;
  throw ParseError("unknown exchange sector '" + std::string(name) + "'");
}

std::vector<Complex> apply_sector_projector(std::span<const Complex> amplitudes, std::size_t d,
                                            std::size_t n_slots, ExchangeSector sector) {
  std::vector<Complex> sum(amplitudes.size());
  const auto perms = Permutation::all(n_slots);
  for (const auto& p : perms) {
    const auto moved = dense::permute(amplitudes, d, n_slots, p);
    const double sign = (sector == ExchangeSector::kAntisymmetric) ? p.parity() : 1.0;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += sign * moved[i];
  }
  const double scale = 1.0 / static_cast<double>(perms.size());
  for (auto& a : sum) a *= scale;
  return sum;
}

std::optional<LabeledState> sector_project(const LabeledState& state, ExchangeSector sector) {
  auto image = apply_sector_projector(state.amplitudes(), state.modes(), state.n_slots(), sector);
  if (dense::norm(image) <= tol::kNorm) return std::nullopt;
  return LabeledState::normalized(state.basis(), state.n_slots(), std::move(image));
}

LabeledState symmetrized_product(const OneParticleBasis& basis, std::span<const CVector> factors,
                                 ExchangeSector sector) {
  const LabeledState product = tensor_product(basis, factors);
  auto image = apply_sector_projector(product.amplitudes(), product.modes(), product.n_slots(), sector);
  // For orthonormal factors the antisymmetrized image has norm 1/sqrt(N!).
  const double scaled = dense::norm(image) * std::sqrt(factorial(static_cast<int>(factors.size())));
  if (sector == ExchangeSector::kAntisymmetric && scaled < tol::kIllConditioned) {
    throw DomainError(
        "antisymmetrized product vanishes: the one-particle states are linearly dependent "
        "(Pauli exclusion)");
  }
  return LabeledState::normalized(basis, factors.size(), std::move(image));
}

LabeledState occupation_basis_vector(const OneParticleBasis& basis, std::span<const int> occupations,
                                     ExchangeSector sector) {
  const std::size_t d = basis.dimension();
  if (occupations.size() != d) {
    throw DimensionError("occupation vector has " + std::to_string(occupations.size()) +
                         " entries but the basis has " + std::to_string(d) + " modes");
  }
  std::vector<std::size_t> tuple;
  double multiplicity_factorials = 1.0;
  for (std::size_t m = 0; m < d; ++m) {
    const int n_m = occupations[m];
    if (n_m < 0) throw DomainError("occupations must be non-negative");
    if (sector == ExchangeSector::kAntisymmetric && n_m > 1) {
      throw DomainError("antisymmetric sector admits occupations 0 or 1 only (Pauli exclusion)");
    }
    multiplicity_factorials *= factorial(n_m);
    tuple.insert(tuple.end(), static_cast<std::size_t>(n_m), m);
  }
  const std::size_t n = tuple.size();
  if (n == 0) throw DomainError("occupation vector must hold at least one particle");

  std::vector<Complex> amps(checked_dimension(d, n));
  const double n_factorial = factorial(static_cast<int>(n));
  const double magnitude = sector == ExchangeSector::kSymmetric
                               ? std::sqrt(multiplicity_factorials / n_factorial)
                               : 1.0 / std::sqrt(n_factorial);
  // tuple starts sorted: the first arrangement is the smallest flat index and gets a + sign
  do {
    std::size_t flat = 0;
    for (std::size_t m : tuple) flat = flat * d + m;
    const double sign = sector == ExchangeSector::kAntisymmetric ? inversion_parity(tuple) : 1.0;
    amps[flat] = sign * magnitude;
  } while (std::next_permutation(tuple.begin(), tuple.end()));
  return LabeledState::normalized(basis, n, std::move(amps));
}

std::vector<LabeledState> sector_basis(const OneParticleBasis& basis, int n, ExchangeSector sector) {
  if (n < 1) throw DomainError("sector basis needs n >= 1");
  checked_dimension(basis.dimension(), static_cast<std::size_t>(n));
  const auto kind = sector == ExchangeSector::kSymmetric ? StatisticsKind::kBoseEinstein
                                                         : StatisticsKind::kFermiDirac;
  const auto occupations = enumerate_distributions(kind, n, static_cast<int>(basis.dimension()));
  std::vector<LabeledState> out;
  out.reserve(occupations.size());
  for (const auto& occ : occupations) out.push_back(occupation_basis_vector(basis, occ, sector));
  return out;
}

std::vector<LabeledState> sector_basis(int d, int n, ExchangeSector sector) {
  if (d < 1) throw DomainError("need at least one mode");
  return sector_basis(OneParticleBasis::numbered(static_cast<std::size_t>(d)), n, sector);
}

bool is_in_sector(const LabeledState& state, ExchangeSector sector) {
  const auto image = apply_sector_projector(state.amplitudes(), state.modes(), state.n_slots(), sector);
  double sq = 0.0;
  for (std::size_t i = 0; i < image.size(); ++i) sq += std::norm(image[i] - state[i]);
  return std::sqrt(sq) <= tol::kSector;
}

}  // namespace idpart
