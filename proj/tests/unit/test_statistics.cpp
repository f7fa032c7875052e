#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "idpart/errors.hpp"
#include "idpart/statistics.hpp"
#include "oracles.hpp"

namespace idpart {
namespace {

CountingProblem problem(int n, int p) { return CountingProblem{n, p, 1.0}; }

TEST(PlanckCount, GoldenValues) {
  EXPECT_EQ(planck_count(problem(2, 3)), 4);
  EXPECT_EQ(planck_count(problem(4, 7)), 120);
  EXPECT_EQ(planck_count(problem(1, 0)), 1);
  EXPECT_EQ(planck_count(problem(1, 5)), 1);
  EXPECT_EQ(planck_count(problem(2, 0)), 1);
  EXPECT_THROW(planck_count(problem(0, 3)), DomainError);
  EXPECT_THROW(planck_count(problem(2, -1)), DomainError);
}

TEST(PlanckCount, MatchesFactorialFormula) {
  for (unsigned n = 1; n <= 40; ++n) {
    for (unsigned p = 0; p <= 40; ++p) {
      EXPECT_EQ(planck_count(problem(static_cast<int>(n), static_cast<int>(p))), oracle::planck_by_factorials(n, p));
    }
  }
}

TEST(PlanckCount, ExactBeyondSixtyFourBits) {
  // C(299, 99) has ~81 decimal digits
  EXPECT_EQ(planck_count(problem(200, 100)), oracle::planck_by_factorials(200, 100));
  EXPECT_GT(planck_count(problem(200, 100)), BigInt(std::numeric_limits<unsigned long long>::max()));
}

TEST(CountMicrostates, GoldenValues) {
  EXPECT_EQ(count_microstates(StatisticsKind::kBoltzmann, 3, 2), 8);
  EXPECT_EQ(count_microstates(StatisticsKind::kBoseEinstein, 3, 2), 4);
  EXPECT_EQ(count_microstates(StatisticsKind::kFermiDirac, 3, 2), 0);
  EXPECT_EQ(count_microstates(StatisticsKind::kFermiDirac, 2, 4), 6);
  EXPECT_EQ(count_microstates(StatisticsKind::kBoseEinstein, 0, 3), 1);
}

TEST(CountMicrostates, MatchesBruteForceAssignments) {
  for (int n = 0; n <= 5; ++n) {
    for (int d = 1; d <= 5; ++d) {
      EXPECT_EQ(count_microstates(StatisticsKind::kBoltzmann, n, d),
                oracle::brute_force_microstates(oracle::Kind::kAll, n, d));
      EXPECT_EQ(count_microstates(StatisticsKind::kBoseEinstein, n, d),
                oracle::brute_force_microstates(oracle::Kind::kMultiset, n, d));
      EXPECT_EQ(count_microstates(StatisticsKind::kFermiDirac, n, d),
                oracle::brute_force_microstates(oracle::Kind::kSet, n, d));
    }
  }
}

TEST(CountMicrostates, OrderingAndOscillatorIdentification) {
  for (int n = 1; n <= 12; ++n) {
    for (int d = 1; d <= 12; ++d) {
      const BigInt mb = count_microstates(StatisticsKind::kBoltzmann, n, d);
      const BigInt be = count_microstates(StatisticsKind::kBoseEinstein, n, d);
      const BigInt fd = count_microstates(StatisticsKind::kFermiDirac, n, d);
      EXPECT_GE(mb, be);
      EXPECT_GE(be, fd);
      EXPECT_EQ(be, planck_count(problem(d, n)));
    }
  }
}

TEST(EnumerateSymbols, MatchesBruteForceExhaustively) {
  for (int n = 1; n <= 6; ++n) {
    for (int p = 0; p <= 8; ++p) {
      const auto got = enumerate_symbols(problem(n, p));
      const auto expected = oracle::brute_force_symbols(n, p);
      ASSERT_EQ(BigInt(got.size()), planck_count(problem(n, p)));
      ASSERT_EQ(got.size(), expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].to_string(), expected[i].text);
        EXPECT_EQ(got[i].energies(), expected[i].energies);
        EXPECT_EQ(got[i].quanta(), p);
        EXPECT_EQ(got[i].resonators(), static_cast<std::size_t>(n));
      }
    }
  }
}

TEST(EnumerateSymbols, ContainsTheFourTwoZeroOneDistribution) {
  const auto all = enumerate_symbols(problem(4, 7));
  ASSERT_EQ(all.size(), 120u);
  const auto target = SymbolString::from_energies({4, 2, 0, 1});
  EXPECT_EQ(target.to_string(), "eeeeoeeooe");
  EXPECT_EQ(std::count(all.begin(), all.end(), target), 1);
}

TEST(EnumerateSymbols, SmallOrderAndCap) {
  const auto two_three = enumerate_symbols(problem(2, 3));
  std::vector<std::vector<int>> e;
  for (const auto& s : two_three) e.push_back(s.energies());
  EXPECT_EQ(e, (std::vector<std::vector<int>>{{0, 3}, {1, 2}, {2, 1}, {3, 0}}));
  EXPECT_THROW(enumerate_symbols(problem(4, 7), 119), CapExceeded);
  EXPECT_EQ(enumerate_symbols(problem(3, 0)).size(), 1u);
}

TEST(SymbolString, ParseRoundTripAndErrors) {
  const auto s = SymbolString::parse("eeeeoeeooe");
  EXPECT_EQ(s.energies(), (std::vector<int>{4, 2, 0, 1}));
  EXPECT_EQ(SymbolString::from_energies(s.energies()), s);
  EXPECT_THROW(SymbolString::parse("eex"), ParseError);
}

TEST(EnumerateDistributions, BoseEinsteinBijectionWithSymbols) {
  for (int n = 1; n <= 5; ++n) {
    for (int p = 0; p <= 6; ++p) {
      const auto occ = enumerate_distributions(StatisticsKind::kBoseEinstein, p, n);
      std::set<std::vector<int>> from_symbols;
      for (const auto& s : enumerate_symbols(problem(n, p))) from_symbols.insert(s.energies());
      EXPECT_EQ(from_symbols.size(), occ.size());
      EXPECT_EQ(std::set<std::vector<int>>(occ.begin(), occ.end()), from_symbols);
    }
  }
}

TEST(EnumerateDistributions, OrderingAndFermiCase) {
  EXPECT_EQ(enumerate_distributions(StatisticsKind::kBoseEinstein, 3, 2),
            (std::vector<std::vector<int>>{{3, 0}, {2, 1}, {1, 2}, {0, 3}}));
  EXPECT_EQ(enumerate_distributions(StatisticsKind::kFermiDirac, 2, 3),
            (std::vector<std::vector<int>>{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
  EXPECT_TRUE(enumerate_distributions(StatisticsKind::kFermiDirac, 3, 2).empty());
  EXPECT_EQ(enumerate_distributions(StatisticsKind::kBoltzmann, 3, 2).size(), 8u);
}

TEST(Entropy, Values) {
  EXPECT_EQ(entropy(1, 2.5), 0.0);
  EXPECT_NEAR(entropy(4), 1.386294361, 1e-9);
  EXPECT_NEAR(entropy(8), 3.0 * std::log(2.0), 1e-15);
  EXPECT_GT(entropy(8), entropy(4));
  EXPECT_NEAR(entropy(4, 2.0), 2.0 * std::log(4.0), 1e-15);
  EXPECT_THROW(entropy(0), DomainError);
}

TEST(Entropy, HugeCounts) {
  BigInt w = 1;
  for (int i = 0; i < 2000; ++i) w *= 10;  // 10^2000 overflows double
  EXPECT_NEAR(entropy(w), 2000.0 * std::log(10.0), 1e-9);
  const BigInt f = oracle::factorial(500);
  EXPECT_NEAR(entropy(f), std::lgamma(501.0), 1e-9);
}

TEST(StatisticsKind, NamesRoundTrip) {
  for (auto k : {StatisticsKind::kBoltzmann, StatisticsKind::kBoseEinstein, StatisticsKind::kFermiDirac}) {
    EXPECT_EQ(parse_statistics_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_statistics_kind("maxwell"), ParseError);
}

}  // namespace
}  // namespace idpart
