#pragma once

// Exact counting of energy distributions and many-particle configurations.
// All counting paths use arbitrary-precision integers; nothing here rounds.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace idpart {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// P indivisible energy elements of size quantum_size shared by N resonators.
struct CountingProblem {
  int n_resonators = 1;
  int n_quanta = 0;
  double quantum_size = 1.0;  // display only

  void validate() const;
};

enum class Mark : unsigned char { kSeparator = 0, kQuantum = 1 };

// Distribution symbol: P quantum marks split into N groups by N-1 separators.
class SymbolString {
 public:
  explicit SymbolString(std::vector<Mark> marks);
  static SymbolString from_energies(const std::vector<int>& quanta_per_resonator);

  const std::vector<Mark>& marks() const { return marks_; }
  std::size_t resonators() const;
  int quanta() const;
  // Quanta held by each resonator, left to right.
  std::vector<int> energies() const;
  // ASCII rendering: 'e' per quantum, 'o' per separator, e.g. "eeeeoeeooe".
  std::string to_string() const;
  static SymbolString parse(std::string_view text);

  auto operator<=>(const SymbolString&) const = default;

 private:
  std::vector<Mark> marks_;
};

enum class StatisticsKind { kBoltzmann, kBoseEinstein, kFermiDirac };

std::string_view to_string(StatisticsKind kind);
// Accepts "boltzmann", "bose_einstein", "fermi_dirac" (case-insensitive).
StatisticsKind parse_statistics_kind(std::string_view name);

// n choose k; zero when k > n.
BigInt binomial(unsigned n, unsigned k);

// (N-1+P)! / ((N-1)! P!)
BigInt planck_count(const CountingProblem& problem);

// Every distinct symbol, lexicographic with separator < quantum.
// Throws CapExceeded when the count exceeds cap.
std::vector<SymbolString> enumerate_symbols(const CountingProblem& problem,
                                            std::size_t cap = kDefaultEnumerationCap);

BigInt count_microstates(StatisticsKind kind, int n_particles, int n_modes);

// Bose-Einstein / Fermi-Dirac: occupation vectors of length d summing to n,
// in descending lexicographic order. Boltzmann: length-n tuples of mode
// indices (one per particle), in ascending lexicographic order.
std::vector<std::vector<int>> enumerate_distributions(StatisticsKind kind, int n, int d,
                                                      std::size_t cap = kDefaultEnumerationCap);

// k ln W. Throws DomainError for W = 0.
double entropy(const BigInt& count, double k = 1.0);

}  // namespace idpart
