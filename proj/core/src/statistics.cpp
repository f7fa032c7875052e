#include "idpart/statistics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

#include "idpart/errors.hpp"

namespace idpart {

namespace {

void check_cap(const BigInt& count, std::size_t cap, std::string_view what) {
  if (count > BigInt(cap)) {
    throw CapExceeded(std::string(what) + " would produce " + count.str() +
                      " entries, above the cap of " + std::to_string(cap));
  }
}

// Occupation vectors in descending lexicographic order; max_per_mode < 0 means unbounded.
void fill_occupations(int remaining, int d, int max_per_mode, std::vector<int>& prefix,
                      std::vector<std::vector<int>>& out) {
  const int slot = static_cast<int>(prefix.size());
  if (slot == d - 1) {
    if (max_per_mode >= 0 && remaining > max_per_mode) return;
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  const int top = max_per_mode >= 0 ? std::min(remaining, max_per_mode) : remaining;
  for (int k = top; k >= 0; --k) {
    prefix.push_back(k);
    fill_occupations(remaining - k, d, max_per_mode, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

void CountingProblem::validate() const {
  if (n_resonators < 1) throw DomainError("need at least one resonator (N >= 1)");
  if (n_quanta < 0) throw DomainError("number of quanta must be non-negative (P >= 0)");
  if (!(quantum_size > 0.0) || !std::isfinite(quantum_size)) {
    throw DomainError("quantum size must be a positive finite number");
  }
}

// ---------------------------------------------------------------------------
// SymbolString

SymbolString::SymbolString(std::vector<Mark> marks) : marks_(std::move(marks)) {}

SymbolString SymbolString::from_energies(const std::vector<int>& quanta_per_resonator) {
  if (quanta_per_resonator.empty()) throw DomainError("need at least one resonator");
  std::vector<Mark> marks;
  for (std::size_t r = 0; r < quanta_per_resonator.size(); ++r) {
    if (quanta_per_resonator[r] < 0) throw DomainError("resonator energies must be non-negative");
    if (r > 0) marks.push_back(Mark::kSeparator);
    marks.insert(marks.end(), static_cast<std::size_t>(quanta_per_resonator[r]), Mark::kQuantum);
  }
  return SymbolString(std::move(marks));
}

std::size_t SymbolString::resonators() const {
  return 1 + static_cast<std::size_t>(std::count(marks_.begin(), marks_.end(), Mark::kSeparator));
}

int SymbolString::quanta() const {
  return static_cast<int>(std::count(marks_.begin(), marks_.end(), Mark::kQuantum));
}

std::vector<int> SymbolString::energies() const {
  std::vector<int> out(1, 0);
  for (Mark m : marks_) {
    if (m == Mark::kSeparator) {
      out.push_back(0);
    } else {
      ++out.back();
    }
  }
  return out;
}

std::string SymbolString::to_string() const {
  std::string s;
  s.reserve(marks_.size());
  for (Mark m : marks_) s.push_back(m == Mark::kQuantum ? 'e' : 'o');
  return s;
}

SymbolString SymbolString::parse(std::string_view text) {
  std::vector<Mark> marks;
  marks.reserve(text.size());
  for (char c : text) {
    if (c == 'e') {
      marks.push_back(Mark::kQuantum);
    } else if (c == 'o') {
      marks.push_back(Mark::kSeparator);
    } else {
      throw ParseError("symbol strings use only 'e' (quantum) and 'o' (separator)");
    }
  }
  return SymbolString(std::move(marks));
}

// ---------------------------------------------------------------------------

std::string_view to_string(StatisticsKind kind) {
  switch (kind) {
    case StatisticsKind::kBoltzmann:
      return "boltzmann";
    case StatisticsKind::kBoseEinstein:
      return "bose_einstein";
    case StatisticsKind::kFermiDirac:
      return "fermi_dirac";
  }
  return "unknown";
}

StatisticsKind parse_statistics_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "boltzmann") return StatisticsKind::kBoltzmann;
  if (lower == "bose_einstein") return StatisticsKind::kBoseEinstein;
  if (lower == "fermi_dirac") return StatisticsKind::kFermiDirac;
  throw ParseError("unknown statistics kind '" + std::string(name) + "'");
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  // Each partial product is itself a binomial coefficient, so the division is exact.
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt planck_count(const CountingProblem& problem) {
  problem.validate();
  const auto n = static_cast<unsigned>(problem.n_resonators);
  const auto p = static_cast<unsigned>(problem.n_quanta);
  return binomial(n - 1 + p, p);
}

std::vector<SymbolString> enumerate_symbols(const CountingProblem& problem, std::size_t cap) {
  check_cap(planck_count(problem), cap, "symbol enumeration");
  std::vector<Mark> marks(static_cast<std::size_t>(problem.n_resonators - 1), Mark::kSeparator);
  marks.insert(marks.end(), static_cast<std::size_t>(problem.n_quanta), Mark::kQuantum);
  std::vector<SymbolString> out;
  // marks start sorted, so next_permutation walks the distinct arrangements in lex order
  do {
    out.emplace_back(marks);
  } while (std::next_permutation(marks.begin(), marks.end()));
  return out;
}

BigInt count_microstates(StatisticsKind kind, int n_particles, int n_modes) {
  if (n_particles < 0) throw DomainError("particle number must be non-negative");
  if (n_modes < 1) throw DomainError("need at least one mode");
  const auto n = static_cast<unsigned>(n_particles);
  const auto d = static_cast<unsigned>(n_modes);
  switch (kind) {
    case StatisticsKind::kBoltzmann:
      return boost::multiprecision::pow(BigInt(d), n);
    case StatisticsKind::kBoseEinstein:
      return binomial(d + n - 1, n);
    case StatisticsKind::kFermiDirac:
      return binomial(d, n);
  }
  return 0;
}

std::vector<std::vector<int>> enumerate_distributions(StatisticsKind kind, int n, int d,
                                                      std::size_t cap) {
  check_cap(count_microstates(kind, n, d), cap, "distribution enumeration");
  std::vector<std::vector<int>> out;
  if (kind == StatisticsKind::kBoltzmann) {
    std::vector<int> tuple(static_cast<std::size_t>(n), 0);
    while (true) {
      out.push_back(tuple);
      int pos = n - 1;
      while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == d) {
        tuple[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    return out;
  }
  std::vector<int> prefix;
  fill_occupations(n, d, kind == StatisticsKind::kFermiDirac ? 1 : -1, prefix, out);
  return out;
}

double entropy(const BigInt& count, double k) {
  if (count <= 0) throw DomainError("entropy is undefined for W = 0 (no admissible configuration)");
  const auto top_bit = boost::multiprecision::msb(count);
  if (top_bit < 1000) return k * std::log(count.convert_to<double>());
  // Beyond double range: ln(leading digits) + (remaining digits) ln 10.
  const std::string digits = count.str();
  constexpr std::size_t kLead = 17;
  const double lead = std::stod(digits.substr(0, kLead));
  return k * (std::log(lead) + static_cast<double>(digits.size() - kLead) * std::log(10.0));
}

}  // namespace idpart
