#include "idpart/interferometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "idpart/errors.hpp"

namespace idpart {

namespace {

constexpr double kMinCoincidence = 1e-12;

CMatrix spin_operator(char axis) {
  CMatrix s(2, 2);
  switch (axis) {
    case 'x':
      s << 0.0, 1.0, 1.0, 0.0;
      break;
    case 'y':
      s << Complex{0.0, 0.0}, Complex{0.0, -1.0}, Complex{0.0, 1.0}, Complex{0.0, 0.0};
      break;
    default:
      s << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void require_scenario_basis(const LabeledState& state) {
  if (state.basis() != BeamSplitterScenario::input_basis() &&
      state.basis() != BeamSplitterScenario::output_basis()) {
    throw DimensionError("state is not over the interferometer's (port x spin) basis");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Beam splitter

CMatrix BeamSplitterScenario::default_splitter() {
  CMatrix u(2, 2);
  const double h = 1.0 / std::numbers::sqrt2;
  u << h, h, h, -h;
  return u;
}

void BeamSplitterScenario::validate() const {
  if (splitter.rows() != 2 || splitter.cols() != 2) throw DimensionError("splitter must be 2x2");
  if (!is_unitary(splitter)) throw DomainError("splitter is not unitary within tolerance");
}

OneParticleBasis BeamSplitterScenario::input_basis() {
  return OneParticleBasis::composite(OneParticleBasis({"L", "R"}), OneParticleBasis({"up", "down"}));
}

OneParticleBasis BeamSplitterScenario::output_basis() {
  return OneParticleBasis::composite(OneParticleBasis({"L'", "R'"}), OneParticleBasis({"up", "down"}));
}

LabeledState build_initial_state(const BeamSplitterScenario& scenario) {
  scenario.validate();
  const std::size_t left_up = BeamSplitterScenario::mode(Port::kLeft, Spin::kUp);
  const std::size_t right_down = BeamSplitterScenario::mode(Port::kRight, Spin::kDown);
  std::vector<Complex> amps(16);
  const double h = 1.0 / std::numbers::sqrt2;
  amps[left_up * 4 + right_down] = h;
  amps[right_down * 4 + left_up] = -h;
  return LabeledState(BeamSplitterScenario::input_basis(), 2, std::move(amps));
}

LabeledState evolve_through_splitter(const LabeledState& state, const BeamSplitterScenario& scenario) {
  scenario.validate();
  require_scenario_basis(state);
  const CMatrix u = kron(scenario.splitter, CMatrix::Identity(2, 2));
  const LabeledState evolved = apply_one_particle_unitary(state, u);
  return LabeledState(BeamSplitterScenario::output_basis(), evolved.n_slots(),
                      {evolved.amplitudes().begin(), evolved.amplitudes().end()});
}

ExperimentResult measure_ports_and_spins(const LabeledState& state, const BeamSplitterScenario& scenario) {
  scenario.validate();
  require_scenario_basis(state);
  if (state.n_slots() != 2) throw DimensionError("port measurement needs a two-slot state");

  ExperimentResult result;
  auto amp = [&](std::size_t a, std::size_t b) { return state[a * 4 + b]; };
  auto outcome = [](std::size_t m) {
    return DetectionOutcome{static_cast<Port>(m / 2), static_cast<Spin>(m % 2)};
  };

  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a; b < 4; ++b) {
      double p = std::norm(amp(a, b));
      if (b != a) p += std::norm(amp(b, a));
      result.joint_probabilities.push_back({outcome(a), outcome(b), p});
      const bool a_left = a < 2;
      const bool b_left = b < 2;
      if (a_left && b_left) {
        result.p_both_left += p;
      } else if (!a_left && !b_left) {
        result.p_both_right += p;
      } else {
        result.p_coincidence += p;
      }
    }
  }
  if (result.p_coincidence < kMinCoincidence) {
    throw DomainError("coincidence probability is zero; conditional spin state undefined");
  }

  // Spin amplitudes with the left detection in slot 0 / in slot 1.
  CVector left_first(4);
  CVector right_first(4);
  for (std::size_t s_left = 0; s_left < 2; ++s_left) {
    for (std::size_t s_right = 0; s_right < 2; ++s_right) {
      const std::size_t l = BeamSplitterScenario::mode(Port::kLeft, static_cast<Spin>(s_left));
      const std::size_t r = BeamSplitterScenario::mode(Port::kRight, static_cast<Spin>(s_right));
      const auto k = static_cast<Eigen::Index>(s_left * 2 + s_right);
      left_first[k] = amp(l, r);
      right_first[k] = amp(r, l);
    }
  }
  // Which slot fired at which port is unobservable, so the orderings are traced out.
  CMatrix rho = left_first * left_first.adjoint() + right_first * right_first.adjoint();
  rho /= rho.trace().real();

  CVector conditional = left_first.norm() >= right_first.norm() ? left_first : right_first;
  conditional /= conditional.norm();
  for (Eigen::Index i = 0; i < 4; ++i) {
    if (std::abs(conditional[i]) > 1e-12) {
      conditional *= std::conj(conditional[i]) / std::abs(conditional[i]);
      break;
    }
  }
  for (std::size_t i = 0; i < 4; ++i) {
    result.conditional_coincidence_spin_state[i] = conditional[static_cast<Eigen::Index>(i)];
  }

  for (char axis : {'x', 'y', 'z'}) {
    const CMatrix op = kron(spin_operator(axis), spin_operator(axis));
    result.correlators[std::string(2, axis)] = (rho * op).trace().real();
  }
  return result;
}

// ---------------------------------------------------------------------------
// Gaussian packets

void GaussianPacket::validate() const {
  if (!std::isfinite(center) || !std::isfinite(wave_number)) {
    throw DomainError("packet parameters must be finite");
  }
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("packet width must be positive");
}

Complex GaussianPacket::operator()(double x) const {
  const double norm = std::pow(2.0 * std::numbers::pi * width * width, -0.25);
  const double u = x - center;
  return norm * std::exp(Complex{-u * u / (4.0 * width * width), wave_number * x});
}

Complex packet_overlap(const GaussianPacket& a, const GaussianPacket& b) {
  const double aa = 1.0 / (4.0 * a.width * a.width);
  const double ab = 1.0 / (4.0 * b.width * b.width);
  const double big_a = aa + ab;
  const Complex big_b{2.0 * (aa * a.center + ab * b.center), b.wave_number - a.wave_number};
  const double big_c = -(aa * a.center * a.center + ab * b.center * b.center);
  const double norms = std::pow(2.0 * std::numbers::pi * a.width * a.width, -0.25) *
                       std::pow(2.0 * std::numbers::pi * b.width * b.width, -0.25);
  return norms * std::sqrt(std::numbers::pi / big_a) * std::exp(big_b * big_b / (4.0 * big_a) + big_c);
}

GridSpec GridSpec::covering(const GaussianPacket& a, const GaussianPacket& b, int n_points) {
  GridSpec g;
  g.x_min = std::min(a.center - 6.0 * a.width, b.center - 6.0 * b.width);
  g.x_max = std::max(a.center + 6.0 * a.width, b.center + 6.0 * b.width);
  g.n_points = n_points;
  return g;
}

void GridSpec::validate() const {
  if (n_points < 2) throw DomainError("grid needs at least two points per axis");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw DomainError("grid range must satisfy x_min < x_max");
  }
  if (static_cast<std::size_t>(n_points) * static_cast<std::size_t>(n_points) > kMaxDenseDimension) {
    throw CapExceeded("density grid exceeds 2^24 points");
  }
}

DensityGrid joint_spatial_density(const GaussianPacket& packet_s, const GaussianPacket& packet_n,
                                  const GridSpec& grid) {
  packet_s.validate();
  packet_n.validate();
  grid.validate();
  const double distinct = 1.0 - std::norm(packet_overlap(packet_s, packet_n));
  if (distinct < tol::kIdenticalPackets * tol::kIdenticalPackets) {
    throw DomainError("packets coincide: the antisymmetrized state vanishes (Pauli exclusion)");
  }
  const double scale = 0.5 / distinct;

  const int n = grid.n_points;
  std::vector<Complex> s(static_cast<std::size_t>(n));
  std::vector<Complex> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    s[static_cast<std::size_t>(i)] = packet_s(grid.x(i));
    v[static_cast<std::size_t>(i)] = packet_n(grid.x(i));
  }

  DensityGrid out;
  out.grid = grid;
  out.values.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  double max_rho = 0.0;
  double max_cross = 0.0;
  const double h = grid.step();
  double integral = 0.0;
  for (int i = 0; i < n; ++i) {
    const double wi = (i == 0 || i == n - 1) ? 0.5 * h : h;
    for (int j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      const Complex direct = s[ui] * v[uj];
      const Complex exchanged = s[uj] * v[ui];
      const double cross = -2.0 * scale * (direct * std::conj(exchanged)).real();
      const double rho = std::max(0.0, scale * (std::norm(direct) + std::norm(exchanged)) + cross);
      out.values[ui * static_cast<std::size_t>(n) + uj] = rho;
      max_rho = std::max(max_rho, rho);
      max_cross = std::max(max_cross, std::abs(cross));
      const double wj = (j == 0 || j == n - 1) ? 0.5 * h : h;
      integral += wi * wj * rho;
    }
  }
  out.integral = integral;
  out.cross_term_max = max_rho > 0.0 ? max_cross / max_rho : 0.0;
  if (std::abs(integral - 1.0) > tol::kGrid) {
    throw DomainError("density grid is under-resolved: trapezoidal integral " +
                      std::to_string(integral) + " misses 1 by more than 1e-6");
  }
  return out;
}

}  // namespace idpart
