#include "idpart/emergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "idpart/errors.hpp"

namespace idpart {

namespace {

constexpr double kSignificant = 1e-10;
constexpr double kDegenerate = 1e-8;

Eigen::Index first_significant(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > kSignificant) return i;
  }
  return v.size();
}

void fix_phase(CVector& v) {
  const Eigen::Index i = first_significant(v);
  if (i == v.size()) return;
  v *= std::conj(v[i]) / std::abs(v[i]);
  v[i] = Complex{v[i].real(), 0.0};
}

std::vector<CVector> expand_factors(const std::vector<DefiningState>& states) {
  std::vector<CVector> factors;
  for (const auto& s : states) {
    for (int k = 0; k < s.occupation; ++k) factors.push_back(s.state);
  }
  return factors;
}

double candidate_fidelity(const LabeledState& state, const std::vector<DefiningState>& states,
                          ExchangeSector sector) {
  const auto factors = expand_factors(states);
  if (factors.size() != state.n_slots()) return 0.0;
  try {
    const LabeledState candidate = symmetrized_product(state.basis(), factors, sector);
    // |<state|candidate>|^2 is already independent of the candidate's global phase
    return std::min(1.0, fidelity(state, candidate));
  } catch (const DomainError&) {
    return 0.0;
  }
}

// Integer occupations summing to n: floors plus largest remainders, capped
// at one per orbital for fermions.
std::vector<int> apportion(const std::vector<double>& spectrum, int n, ExchangeSector sector) {
  std::vector<int> occ(spectrum.size(), 0);
  if (sector == ExchangeSector::kAntisymmetric) {
    for (std::size_t i = 0; i < spectrum.size() && static_cast<int>(i) < n; ++i) occ[i] = 1;
    return occ;
  }
  std::vector<std::pair<double, std::size_t>> remainders;
  int assigned = 0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double scaled = n * spectrum[i];
    occ[i] = static_cast<int>(std::floor(scaled));
    assigned += occ[i];
    remainders.emplace_back(scaled - occ[i], i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < n && k < remainders.size(); ++k, ++assigned) {
    ++occ[remainders[k].second];
  }
  return occ;
}

// Contracts every slot but the first two with z, giving a d x d matrix.
CMatrix contract_to_two_slots(const LabeledState& state, const CVector& z) {
  const std::size_t d = state.modes();
  std::vector<Complex> v(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t slots = state.n_slots(); slots > 2; --slots) {
    std::vector<Complex> next(v.size() / d);
    for (std::size_t j = 0; j < next.size(); ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < d; ++k) acc += v[j * d + k] * z[static_cast<Eigen::Index>(k)];
      next[j] = acc;
    }
    v = std::move(next);
  }
  CMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v[a * d + b];
    }
  }
  return m;
}

// Hessian of log P at z, where P(z) = sum psi[i1..iN] z_i1 ... z_iN,
// projected onto the span of q's columns.
std::optional<CMatrix> projected_log_hessian(const LabeledState& state, const CMatrix& q,
                                             const CVector& z) {
  const double n = static_cast<double>(state.n_slots());
  const CMatrix m = contract_to_two_slots(state, z);
  const CVector g = m * z;
  const Complex p = (z.transpose() * g)(0, 0);
  if (std::abs(p) < 1e-12) return std::nullopt;
  const CMatrix hessian = (n * (n - 1.0) / p) * m - (n * n / (p * p)) * (g * g.transpose());
  return CMatrix(q.adjoint() * hessian * q.conjugate());
}

// A bosonic product with several orbitals sharing an occupation has a
// degenerate density matrix, so its natural orbitals are not unique. For
// P(z) = prod_i (phi_i . z)^(n_i) the log-Hessian is -sum_i n_i phi_i phi_i^T / (phi_i . z)^2;
// two generic evaluation points diagonalize simultaneously in the phi_i.
std::optional<std::vector<CVector>> split_product_orbitals(const LabeledState& state, const CMatrix& q) {
  if (state.n_slots() < 2 || q.cols() == 0) return std::nullopt;
  std::mt19937_64 rng(0x5eed1dULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(state.modes());
  for (int attempt = 0; attempt < 4; ++attempt) {
    CVector z(d);
    CVector w(d);
    for (Eigen::Index i = 0; i < d; ++i) z[i] = Complex{gauss(rng), gauss(rng)};
    for (Eigen::Index i = 0; i < d; ++i) w[i] = Complex{gauss(rng), gauss(rng)};
    const auto hz = projected_log_hessian(state, q, z);
    const auto hw = projected_log_hessian(state, q, w);
    if (!hz || !hw) continue;
    Eigen::FullPivLU<CMatrix> lu(*hw);
    if (!lu.isInvertible()) continue;
    Eigen::ComplexEigenSolver<CMatrix> solver(*hz * lu.inverse());
    if (solver.info() != Eigen::Success) continue;
    std::vector<CVector> out;
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
      CVector phi = q * solver.eigenvectors().col(i);
      const double len = phi.norm();
      if (len < kSignificant) return std::nullopt;
      out.push_back(phi / len);
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kParticleDecomposition:
      return "PARTICLE_DECOMPOSITION";
    case Verdict::kCondensedObject:
      return "CONDENSED_OBJECT";
    case Verdict::kNoParticleDecomposition:
      return "NO_PARTICLE_DECOMPOSITION";
  }
  return "UNKNOWN";
}

std::vector<NaturalOrbital> natural_orbitals(const CMatrix& rdm) {
  if (rdm.rows() != rdm.cols() || rdm.rows() == 0) {
    throw DimensionError("density matrix must be square and non-empty");
  }
  if (!rdm.allFinite()) throw DomainError("density matrix has non-finite entries");
  if ((rdm - rdm.adjoint()).cwiseAbs().maxCoeff() > tol::kPsd) {
    throw DomainError("density matrix is not Hermitian within tolerance");
  }
  const CMatrix hermitian = 0.5 * (rdm + rdm.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) throw DomainError("eigen-decomposition failed");

  std::vector<NaturalOrbital> out;
  for (Eigen::Index i = solver.eigenvalues().size(); i-- > 0;) {
    CVector v = solver.eigenvectors().col(i);
    fix_phase(v);
    out.push_back({solver.eigenvalues()[i], std::move(v)});
  }
  // Eigen returns ascending eigenvalues; we walked them in reverse. Within
  // runs of equal eigenvalues, order by the first significant component.
  std::size_t start = 0;
  while (start < out.size()) {
    std::size_t end = start + 1;
    while (end < out.size() && out[end - 1].occupation - out[end].occupation <= kDegenerate) ++end;
    std::stable_sort(out.begin() + static_cast<std::ptrdiff_t>(start),
                     out.begin() + static_cast<std::ptrdiff_t>(end),
                     [](const NaturalOrbital& a, const NaturalOrbital& b) {
                       return first_significant(a.vector) < first_significant(b.vector);
                     });
    start = end;
  }
  return out;
}

EmergenceReport detect_emergent_particles(const LabeledState& state, ExchangeSector sector) {
  if (!is_in_sector(state, sector)) {
    throw DomainError(std::string("state is not in the ") + std::string(to_string(sector)) +
                      " sector");
  }
  const int n = static_cast<int>(state.n_slots());
  const CMatrix rdm = reduce_one_particle(state);
  const auto orbitals = natural_orbitals(rdm);

  EmergenceReport report;
  for (const auto& o : orbitals) report.natural_spectrum.push_back(std::max(0.0, o.occupation));

  std::vector<int> occupations(orbitals.size(), 0);
  bool integral = true;
  for (std::size_t i = 0; i < orbitals.size(); ++i) {
    const double scaled = n * report.natural_spectrum[i];
    occupations[i] = static_cast<int>(std::lround(scaled));
    if (std::abs(scaled - occupations[i]) > tol::kOccupationGuard) integral = false;
    if (sector == ExchangeSector::kAntisymmetric && occupations[i] > 1) integral = false;
  }
  if (std::accumulate(occupations.begin(), occupations.end(), 0) != n) integral = false;

  auto collect = [&](const std::vector<CVector>& vectors, const std::vector<int>& occ) {
    std::vector<DefiningState> states;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (occ[i] > 0) states.push_back({vectors[i], occ[i]});
    }
    return states;
  };
  std::vector<CVector> vectors;
  for (const auto& o : orbitals) vectors.push_back(o.vector);

  if (!integral) {
    const auto best = collect(vectors, apportion(report.natural_spectrum, n, sector));
    report.fidelity = candidate_fidelity(state, best, sector);
    report.verdict = Verdict::kNoParticleDecomposition;
    return report;
  }

  auto defining = collect(vectors, occupations);
  report.fidelity = candidate_fidelity(state, defining, sector);

  if (report.fidelity < 1.0 - tol::kFidelity && sector == ExchangeSector::kSymmetric &&
      defining.size() > 1) {
    // Natural orbitals are arbitrary inside degenerate eigenspaces; for
    // bosons the product is not basis independent, so recover the factors.
    CMatrix q(static_cast<Eigen::Index>(state.modes()), static_cast<Eigen::Index>(defining.size()));
    for (std::size_t i = 0; i < defining.size(); ++i) q.col(static_cast<Eigen::Index>(i)) = defining[i].state;
    if (auto split = split_product_orbitals(state, q)) {
      std::vector<DefiningState> refined;
      for (auto& phi : *split) {
        const double weight = (phi.adjoint() * rdm * phi)(0, 0).real();
        fix_phase(phi);
        refined.push_back({phi, static_cast<int>(std::lround(n * weight))});
      }
      std::stable_sort(refined.begin(), refined.end(), [](const auto& a, const auto& b) {
        if (a.occupation != b.occupation) return a.occupation > b.occupation;
        return first_significant(a.state) < first_significant(b.state);
      });
      const double refined_fidelity = candidate_fidelity(state, refined, sector);
      if (refined_fidelity > report.fidelity) {
        report.fidelity = refined_fidelity;
        defining = std::move(refined);
      }
    }
  }

  if (report.fidelity < 1.0 - tol::kFidelity) {
    report.verdict = Verdict::kNoParticleDecomposition;
    return report;
  }
  const bool condensed = std::any_of(defining.begin(), defining.end(),
                                     [](const DefiningState& s) { return s.occupation >= 2; });
  report.verdict = condensed ? Verdict::kCondensedObject : Verdict::kParticleDecomposition;
  report.defining_states = std::move(defining);
  return report;
}

int slater_rank_two_fermions(const LabeledState& state) {
  if (state.n_slots() != 2) {
    throw DimensionError("Slater rank is defined here for two-particle states only");
  }
  if (!is_in_sector(state, ExchangeSector::kAntisymmetric)) {
    throw DomainError("state is not in the antisymmetric sector");
  }
  const auto d = static_cast<Eigen::Index>(state.modes());
  CMatrix w(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) w(a, b) = state[static_cast<std::size_t>(a * d + b)];
  }
  Eigen::JacobiSVD<CMatrix> svd(w);
  const auto& sv = svd.singularValues();
  const auto nonzero = (sv.array() > tol::kSlaterSingular).count();
  // singular values of an antisymmetric matrix come in equal pairs
  return static_cast<int>((nonzero + 1) / 2);
}

std::vector<CVector> genidentity_track(std::span<const CVector> initial_states, const CMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("evolution matrix must be square");
  if (!is_unitary(u)) throw DomainError("evolution matrix is not unitary within tolerance");
  for (const auto& s : initial_states) {
    if (s.size() != u.rows()) throw DimensionError("one-particle state does not match the evolution");
    if (s.norm() <= tol::kNorm) throw DomainError("one-particle state has zero norm");
  }
  for (std::size_t i = 0; i < initial_states.size(); ++i) {
    for (std::size_t j = i + 1; j < initial_states.size(); ++j) {
      const auto& a = initial_states[i];
      const auto& b = initial_states[j];
      if (std::abs(a.dot(b)) / (a.norm() * b.norm()) > tol::kOrth) {
        throw DomainError("initial one-particle states are not pairwise orthogonal");
      }
    }
  }
  std::vector<CVector> out;
  out.reserve(initial_states.size());
  for (const auto& s : initial_states) out.emplace_back(u * s);
  return out;
}

}  // namespace idpart
