#include "idpart/fock.hpp"

#include <cmath>
#include <numeric>

#include "idpart/errors.hpp"
#include "idpart/statistics.hpp"

namespace idpart {

namespace {

// Coefficients below this magnitude are dropped from FockVector terms.
constexpr double kTermCutoff = 1e-13;

void validate_occupations(const std::vector<int>& occupations, ExchangeSector sector) {
  for (int n : occupations) {
    if (n < 0) throw DomainError("occupation numbers must be non-negative");
    if (sector == ExchangeSector::kAntisymmetric && n > 1) {
      throw DomainError("antisymmetric occupation numbers must be 0 or 1 (Pauli exclusion)");
    }
  }
}

// Reads one digit (ASCII or Unicode subscript) at text[pos]; returns -1 if none.
int read_digit(std::string_view text, std::size_t& pos) {
  if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    return text[pos++] - '0';
  }
  // U+2080..U+2089 encode as E2 82 80..89
  if (pos + 3 <= text.size() &&
      static_cast<unsigned char>(text[pos]) == 0xE2 &&
      static_cast<unsigned char>(text[pos + 1]) == 0x82) {
    const auto low = static_cast<unsigned char>(text[pos + 2]);
    if (low >= 0x80 && low <= 0x89) {
      pos += 3;
      return low - 0x80;
    }
  }
  return -1;
}

bool read_epsilon(std::string_view text, std::size_t& pos) {
  if (pos < text.size() && text[pos] == 'e') {
    ++pos;
    return true;
  }
  // U+03B5 GREEK SMALL LETTER EPSILON
  if (pos + 2 <= text.size() && static_cast<unsigned char>(text[pos]) == 0xCE &&
      static_cast<unsigned char>(text[pos + 1]) == 0xB5) {
    pos += 2;
    return true;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// OccupationState / FockVector

OccupationState::OccupationState(std::vector<int> occupations, ExchangeSector sector)
    : occupations_(std::move(occupations)), sector_(sector) {
  if (occupations_.empty()) throw DimensionError("occupation state needs at least one mode");
  validate_occupations(occupations_, sector_);
}

int OccupationState::total() const {
  return std::accumulate(occupations_.begin(), occupations_.end(), 0);
}

int OccupationState::occupation(int mode) const {
  if (mode < 1 || static_cast<std::size_t>(mode) > occupations_.size()) {
    throw DimensionError("mode " + std::to_string(mode) + " is outside 1.." +
                         std::to_string(occupations_.size()));
  }
  return occupations_[static_cast<std::size_t>(mode - 1)];
}

FockVector::FockVector(Terms terms, ExchangeSector sector) : terms_(std::move(terms)), sector_(sector) {
  if (terms_.empty()) throw DomainError("a Fock vector needs at least one term");
  modes_ = terms_.begin()->first.size();
  total_number_ = std::accumulate(terms_.begin()->first.begin(), terms_.begin()->first.end(), 0);
  double sq = 0.0;
  for (const auto& [occ, c] : terms_) {
    if (occ.size() != modes_) throw DimensionError("Fock terms disagree on the number of modes");
    validate_occupations(occ, sector_);
    if (std::accumulate(occ.begin(), occ.end(), 0) != total_number_) {
      throw DomainError("Fock terms disagree on the total particle number");
    }
    sq += std::norm(c);
  }
  if (std::abs(std::sqrt(sq) - 1.0) > tol::kNorm) throw DomainError("Fock vector is not normalized");
}

Complex FockVector::coefficient(const std::vector<int>& occupations) const {
  auto it = terms_.find(occupations);
  return it == terms_.end() ? Complex{} : it->second;
}

// ---------------------------------------------------------------------------
// Symbols

OccupationState parse_symbol(std::string_view text, int d, ExchangeSector sector) {
  if (d < 1) throw DomainError("need at least one mode");
  constexpr std::string_view kOpen = "f_{";
  if (text.substr(0, kOpen.size()) != kOpen) {
    throw ParseError("quasi-function symbol must start with 'f_{'");
  }
  std::vector<int> occ(static_cast<std::size_t>(d), 0);
  std::size_t pos = kOpen.size();
  while (true) {
    if (pos >= text.size()) throw ParseError("quasi-function symbol is missing the closing '}'");
    if (text[pos] == '}') {
      ++pos;
      break;
    }
    if (!read_epsilon(text, pos)) {
      throw ParseError("expected a mode token 'e<k>' at byte " + std::to_string(pos));
    }
    long value = 0;
    int digits = 0;
    for (int digit = read_digit(text, pos); digit >= 0; digit = read_digit(text, pos)) {
      value = value * 10 + digit;
      if (++digits > 9) throw ParseError("mode index is too long");
    }
    if (digits == 0) throw ParseError("mode token is missing its index");
    if (value < 1 || value > d) {
      throw DomainError("mode index " + std::to_string(value) + " is outside 1.." + std::to_string(d));
    }
    auto& slot = occ[static_cast<std::size_t>(value - 1)];
    if (sector == ExchangeSector::kAntisymmetric && slot == 1) {
      throw DomainError("mode e" + std::to_string(value) +
                        " repeated in an antisymmetric symbol (Pauli exclusion)");
    }
    ++slot;
  }
  if (pos != text.size()) throw ParseError("trailing characters after the closing '}'");
  return OccupationState(std::move(occ), sector);
}

std::string format_symbol(const OccupationState& occ) {
  std::string out = "f_{";
  for (std::size_t m = 0; m < occ.modes(); ++m) {
    const std::string token = "e" + std::to_string(m + 1);
    for (int k = 0; k < occ.occupations()[m]; ++k) out += token;
  }
  out += "}";
  return out;
}

// ---------------------------------------------------------------------------
// Labeled <-> Fock

LabeledState occupation_to_labeled(const OccupationState& occ, const OneParticleBasis& basis) {
  if (occ.modes() != basis.dimension()) {
    throw DimensionError("occupation state has " + std::to_string(occ.modes()) +
                         " modes but the basis has " + std::to_string(basis.dimension()));
  }
  return occupation_basis_vector(basis, occ.occupations(), occ.sector());
}

FockVector labeled_to_fock(const LabeledState& state, ExchangeSector sector) {
  if (!is_in_sector(state, sector)) {
    throw DomainError(std::string("state is not in the ") + std::string(to_string(sector)) +
                      " sector");
  }
  const auto kind = sector == ExchangeSector::kSymmetric ? StatisticsKind::kBoseEinstein
                                                         : StatisticsKind::kFermiDirac;
  const auto occupations = enumerate_distributions(kind, static_cast<int>(state.n_slots()),
                                                   static_cast<int>(state.modes()));
  FockVector::Terms terms;
  for (const auto& occ : occupations) {
    const LabeledState b = occupation_basis_vector(state.basis(), occ, sector);
    const Complex c = inner_product(b, state);
    if (std::abs(c) > kTermCutoff) terms.emplace(occ, c);
  }
  return FockVector(std::move(terms), sector);
}

LabeledState fock_to_labeled(const FockVector& fock, const OneParticleBasis& basis) {
  if (fock.modes() != basis.dimension()) {
    throw DimensionError("Fock vector mode count does not match the basis");
  }
  const std::size_t n = static_cast<std::size_t>(fock.total_number());
  std::vector<Complex> amps(checked_dimension(basis.dimension(), n));
  for (const auto& [occ, c] : fock.terms()) {
    const LabeledState b = occupation_basis_vector(basis, occ, fock.sector());
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += c * b[i];
  }
  return LabeledState::normalized(basis, n, std::move(amps));
}

OccupationState replace_indistinguishable(const OccupationState& occ, int mode) {
  if (occ.occupation(mode) < 1) {
    throw DomainError("mode e" + std::to_string(mode) + " is empty: nothing to replace");
  }
  auto reduced = occ.occupations();
  auto& slot = reduced[static_cast<std::size_t>(mode - 1)];
  --slot;  // remove one excitation
  ++slot;  // add back one of the same kind
  return OccupationState(std::move(reduced), occ.sector());
}

}  // namespace idpart
