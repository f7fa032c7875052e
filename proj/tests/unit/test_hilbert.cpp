#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "convert.hpp"
#include "idpart/errors.hpp"
#include "idpart/hilbert.hpp"
#include "oracles.hpp"
#include "random_states.hpp"

namespace idpart {
namespace {

using testing::max_abs_diff;
using testing::RandomStates;
using testing::to_state;
using testing::to_vec;

const OneParticleBasis kAB({"A", "B"});

TEST(OneParticleBasis, RejectsDuplicateLabelsAndMismatchedEnergies) {
  EXPECT_THROW(OneParticleBasis({"A", "A"}), DomainError);
  EXPECT_THROW(OneParticleBasis({"A", "B"}, std::vector<double>{1.0}), DimensionError);
  EXPECT_THROW(OneParticleBasis(std::vector<std::string>{}), DimensionError);
  EXPECT_NO_THROW(OneParticleBasis({"A", "B"}, std::vector<double>{0.0, 1.0}));
}

TEST(OneParticleBasis, CompositeIsSpaceMajor) {
  const auto b = OneParticleBasis::composite(OneParticleBasis({"L", "R"}), OneParticleBasis({"up", "down"}));
  EXPECT_EQ(b.labels(), (std::vector<std::string>{"L×up", "L×down", "R×up", "R×down"}));
  EXPECT_EQ(b.index_of("R×up"), 2u);
  EXPECT_FALSE(b.index_of("X").has_value());
}

TEST(LabeledState, ValidatesLengthNormAndFiniteness) {
  EXPECT_THROW(LabeledState(kAB, 2, {1.0, 0.0, 0.0}), DimensionError);
  EXPECT_THROW(LabeledState(kAB, 1, {1.0, 1.0}), DomainError);
  EXPECT_THROW(LabeledState(kAB, 1, {std::nan(""), 0.0}), DomainError);
  EXPECT_THROW(LabeledState::normalized(kAB, 1, {0.0, 0.0}), DomainError);
  const auto s = LabeledState::normalized(kAB, 1, {3.0, 4.0});
  EXPECT_NEAR(s[0].real(), 0.6, 1e-15);
}

TEST(LabeledState, FlatIndexSlotZeroMostSignificant) {
  const auto s = LabeledState::basis_product(OneParticleBasis::numbered(3), std::vector<std::size_t>{2, 0, 1});
  EXPECT_EQ(s.flat_index(std::vector<std::size_t>{2, 0, 1}), 2u * 9 + 0 * 3 + 1);
  EXPECT_EQ(std::abs(s[19]), 1.0);
  for (std::size_t f = 0; f < 27; ++f) EXPECT_EQ(s.digits(f), oracle::digits(f, 3, 3));
}

TEST(DenseCap, RejectsOversizedProducts) {
  EXPECT_EQ(checked_dimension(2, 24), std::size_t{1} << 24);
  EXPECT_THROW(checked_dimension(2, 25), CapExceeded);
  EXPECT_THROW(checked_dimension(1000, 3), CapExceeded);
}

TEST(Permutation, ParityMatchesCycleSignForAllUpToSix) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto all = Permutation::all(n);
    EXPECT_EQ(all.size(), oracle::factorial(static_cast<unsigned>(n)).convert_to<std::size_t>());
    for (const auto& p : all) EXPECT_EQ(p.parity(), oracle::sign_by_cycles(p.mapping()));
  }
  EXPECT_THROW(Permutation({0, 0, 1}), DomainError);
  EXPECT_EQ(Permutation::transposition(3, 0, 2).parity(), -1);
}

TEST(Permutation, ComposeAndInverse) {
  RandomStates rs(11);
  for (int t = 0; t < 100; ++t) {
    const auto p = rs.permutation(5);
    EXPECT_EQ(compose(p, p.inverse()), Permutation::identity(5));
    const auto q = rs.permutation(5);
    EXPECT_EQ(compose(q, p).parity(), q.parity() * p.parity());
  }
}

TEST(TensorProduct, MatchesKroneckerAndNormalizes) {
  const auto b = OneParticleBasis::numbered(3);
  CVector a(3), c(3);
  a << 1.0, 2.0, Complex(0, 2);
  c << 0.0, 1.0, 0.0;
  const std::vector<CVector> f{a, c};
  const auto s = tensor_product(b, f);
  const CVector expected = oracle::kron(Eigen::VectorXcd(a / 3.0), Eigen::VectorXcd(c));
  EXPECT_LE(max_abs_diff(to_vec(s), expected), 1e-15);
  const std::vector<CVector> zero{CVector::Zero(3)};
  EXPECT_THROW(tensor_product(b, zero), DomainError);
}

TEST(InnerProduct, Fidelity) {
  const auto s = LabeledState::basis_product(kAB, std::vector<std::size_t>{0, 1});
  const auto t = LabeledState::basis_product(kAB, std::vector<std::size_t>{1, 0});
  EXPECT_EQ(fidelity(s, t), 0.0);
  EXPECT_EQ(fidelity(s, s), 1.0);
}

TEST(ApplyPermutation, MatchesExplicitPermutationMatrix) {
  RandomStates rs(12);
  const auto b = OneParticleBasis::numbered(3);
  for (int t = 0; t < 100; ++t) {
    const auto s = rs.any_state(b, 4);
    const auto p = rs.permutation(4);
    const CVector expected = oracle::permutation_matrix(3, 4, p.mapping()) * to_vec(s);
    EXPECT_LE(max_abs_diff(to_vec(apply_permutation(s, p)), expected), 1e-14);
  }
}

TEST(ApplyPermutation, ProductExample) {
  const auto ab = LabeledState::basis_product(kAB, std::vector<std::size_t>{0, 1});
  const auto ba = apply_permutation(ab, Permutation::transposition(2, 0, 1));
  EXPECT_EQ(ba[2], Complex(1.0));
}

TEST(ApplyPermutation, GroupActionProperty) {
  RandomStates rs(13);
  const auto b = OneParticleBasis::numbered(2);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(rs.uniform_int(2, 5));
    const auto s = rs.any_state(b, static_cast<int>(n));
    const auto p = rs.permutation(n);
    const auto q = rs.permutation(n);
    const auto stepwise = apply_permutation(apply_permutation(s, p), q);
    const auto composed = apply_permutation(s, compose(q, p));
    EXPECT_LE(max_abs_diff(to_vec(stepwise), to_vec(composed)), 1e-14);
    EXPECT_EQ(to_vec(apply_permutation(s, Permutation::identity(n))), to_vec(s));
  }
}

TEST(ApplyPermutation, PreservesInnerProducts) {
  RandomStates rs(14);
  const auto b = OneParticleBasis::numbered(3);
  for (int t = 0; t < 100; ++t) {
    const auto s = rs.any_state(b, 3);
    const auto u = rs.any_state(b, 3);
    const auto p = rs.permutation(3);
    EXPECT_LE(std::abs(inner_product(apply_permutation(s, p), apply_permutation(u, p)) - inner_product(s, u)),
              1e-13);
  }
}

TEST(OneParticleUnitary, MatchesKroneckerPowerAndCommutesWithPermutations) {
  RandomStates rs(15);
  const auto b = OneParticleBasis::numbered(3);
  for (int t = 0; t < 100; ++t) {
    const CMatrix u = rs.unitary(3);
    const auto s = rs.any_state(b, 3);
    const CMatrix uuu = oracle::kron(oracle::kron(u, u), u);
    const auto us = apply_one_particle_unitary(s, u);
    EXPECT_LE(max_abs_diff(to_vec(us), uuu * to_vec(s)), 1e-13);
    const auto p = rs.permutation(3);
    EXPECT_LE(max_abs_diff(to_vec(apply_permutation(us, p)),
                           to_vec(apply_one_particle_unitary(apply_permutation(s, p), u))),
              1e-13);
  }
  CMatrix not_unitary = CMatrix::Identity(3, 3);
  not_unitary(0, 0) = 2.0;
  EXPECT_THROW(apply_one_particle_unitary(rs.any_state(b, 2), not_unitary), DomainError);
}

TEST(ReduceOneParticle, CanonicalExamples) {
  const auto aaa = to_state(kAB, 3, oracle::three_boson_all_a());
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  EXPECT_LE((reduce_one_particle(aaa) - expected).cwiseAbs().maxCoeff(), 1e-15);

  const auto sn = to_state(OneParticleBasis({"S", "N"}), 2, oracle::south_north_singlet());
  EXPECT_LE((reduce_one_particle(sn) - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);

  const auto one_b = to_state(kAB, 3, oracle::three_boson_one_b());
  expected(0, 0) = 2.0 / 3.0;
  expected(1, 1) = 1.0 / 3.0;
  EXPECT_LE((reduce_one_particle(one_b) - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ReduceOneParticle, MatchesExpectationValueOracle) {
  RandomStates rs(16);
  for (int t = 0; t < 100; ++t) {
    const int d = rs.uniform_int(2, 3);
    const int n = rs.uniform_int(1, 3);
    const auto s = rs.any_state(OneParticleBasis::numbered(static_cast<std::size_t>(d)), n);
    const CMatrix expected = oracle::rdm_by_expectations(to_vec(s), static_cast<std::size_t>(d),
                                                         static_cast<std::size_t>(n));
    EXPECT_LE((reduce_one_particle(s) - expected).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(ReduceOneParticle, TraceHermiticityAndSpectrumProperty) {
  RandomStates rs(17);
  for (int t = 0; t < 200; ++t) {
    const int d = rs.uniform_int(1, 4);
    const int n = rs.uniform_int(1, 4);
    const auto s = rs.any_state(OneParticleBasis::numbered(static_cast<std::size_t>(d)), n);
    const CMatrix rho = reduce_one_particle(s);
    EXPECT_NEAR(rho.trace().real(), 1.0, tol::kNorm);
    EXPECT_NEAR(rho.trace().imag(), 0.0, tol::kNorm);
    EXPECT_LE((rho - rho.adjoint()).cwiseAbs().maxCoeff(), tol::kPsd);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<CMatrix>(rho).eigenvalues();
    EXPECT_GE(ev.minCoeff(), -tol::kPsd);
    EXPECT_LE(ev.maxCoeff(), 1.0 + tol::kPsd);
  }
}

TEST(MaxDeviationUpToPhase, IgnoresGlobalPhase) {
  const std::vector<Complex> a{1.0, Complex(0, 1)};
  std::vector<Complex> b;
  for (auto x : a) b.push_back(std::polar(1.0, 0.7) * x);
  EXPECT_LE(max_deviation_up_to_phase(a, b), 1e-15);
  const std::vector<Complex> conj{1.0, Complex(0, -1)};
  EXPECT_GT(max_deviation_up_to_phase(a, conj), 0.5);
}

}  // namespace
}  // namespace idpart
