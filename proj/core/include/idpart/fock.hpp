#pragma once

// Label-free occupation-number states and their isometric embedding into the
// symmetric / antisymmetric sectors of the labeled tensor-product space.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "idpart/exchange.hpp"
#include "idpart/hilbert.hpp"

namespace idpart {

class OccupationState {
 public:
  OccupationState(std::vector<int> occupations, ExchangeSector sector = ExchangeSector::kSymmetric);

  const std::vector<int>& occupations() const { return occupations_; }
  ExchangeSector sector() const { return sector_; }
  std::size_t modes() const { return occupations_.size(); }
  int total() const;
  // 1-based mode number, matching the e<k> tokens of the symbol grammar.
  int occupation(int mode) const;

  bool operator==(const OccupationState&) const = default;

 private:
  std::vector<int> occupations_;
  ExchangeSector sector_;
};

// Orders keys as enumerate_distributions does (descending lexicographic).
struct OccupationOrder {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const { return a > b; }
};

class FockVector {
 public:
  using Terms = std::map<std::vector<int>, Complex, OccupationOrder>;

  // Requires unit norm and a uniform particle number across terms.
  FockVector(Terms terms, ExchangeSector sector);

  const Terms& terms() const { return terms_; }
  ExchangeSector sector() const { return sector_; }
  int total_number() const { return total_number_; }
  std::size_t modes() const { return modes_; }
  Complex coefficient(const std::vector<int>& occupations) const;

 private:
  Terms terms_;
  ExchangeSector sector_;
  int total_number_ = 0;
  std::size_t modes_ = 0;
};

// Grammar: "f_{" token* "}", token = "e" <positive integer>. The Greek
// epsilon (U+03B5) may replace 'e' and subscript digits may replace ASCII
// digits on input. No whitespace.
OccupationState parse_symbol(std::string_view text, int d,
                             ExchangeSector sector = ExchangeSector::kSymmetric);

// Canonical ASCII form, tokens ascending, e.g. "f_{e1e1e1e1e2e2e4}".
std::string format_symbol(const OccupationState& occ);

LabeledState occupation_to_labeled(const OccupationState& occ, const OneParticleBasis& basis);

// Coefficients against sector_basis. Throws DomainError if the state is not
// in the requested sector.
FockVector labeled_to_fock(const LabeledState& state, ExchangeSector sector);

LabeledState fock_to_labeled(const FockVector& fock, const OneParticleBasis& basis);

// Takes one excitation out of `mode` (1-based) and puts an indistinguishable
// one back. Throws DomainError when the mode is empty.
OccupationState replace_indistinguishable(const OccupationState& occ, int mode);

}  // namespace idpart
