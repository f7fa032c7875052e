#pragma once

// Two-electron beam-splitter experiment and the two-packet joint density.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "idpart/hilbert.hpp"

namespace idpart {

enum class Port { kLeft = 0, kRight = 1 };
enum class Spin { kUp = 0, kDown = 1 };

struct BeamSplitterScenario {
  // Rows map |L>, |R> columns; default (1/sqrt2)[[1, 1], [1, -1]].
  CMatrix splitter = default_splitter();

  static CMatrix default_splitter();
  void validate() const;

  // (L×up, L×down, R×up, R×down) before the splitter, primed labels after.
  static OneParticleBasis input_basis();
  static OneParticleBasis output_basis();
  // Mode index in either basis.
  static std::size_t mode(Port port, Spin spin) {
    return static_cast<std::size_t>(port) * 2 + static_cast<std::size_t>(spin);
  }
};

struct DetectionOutcome {
  Port port;
  Spin spin;
  auto operator<=>(const DetectionOutcome&) const = default;
};

struct JointProbability {
  DetectionOutcome first;
  DetectionOutcome second;  // first <= second
  double probability = 0.0;
};

struct ExperimentResult {
  // All ten unordered outcome pairs, in ascending (first, second) order.
  std::vector<JointProbability> joint_probabilities;
  double p_both_left = 0.0;
  double p_both_right = 0.0;
  double p_coincidence = 0.0;
  // Spin at the left port (x) spin at the right port: (up up, up down, down up, down down).
  std::array<Complex, 4> conditional_coincidence_spin_state{};
  // "zz", "xx", "yy": <sigma_a (x) sigma_a> on the conditional state.
  std::map<std::string, double> correlators;
};

LabeledState build_initial_state(const BeamSplitterScenario& scenario);

// Applies splitter (x) 1_spin to both slots; output uses the primed basis.
LabeledState evolve_through_splitter(const LabeledState& state, const BeamSplitterScenario& scenario);

// Throws DomainError when the coincidence probability is below 1e-12.
ExperimentResult measure_ports_and_spins(const LabeledState& state, const BeamSplitterScenario& scenario);

// ---------------------------------------------------------------------------

// psi(x) = (2 pi width^2)^(-1/4) exp(-(x - center)^2 / (4 width^2) + i wave_number x),
// so |psi|^2 is a normal density with standard deviation `width`.
struct GaussianPacket {
  double center = 0.0;
  double width = 1.0;
  double wave_number = 0.0;

  void validate() const;
  Complex operator()(double x) const;
};

// <a|b> in closed form.
Complex packet_overlap(const GaussianPacket& a, const GaussianPacket& b);

struct GridSpec {
  double x_min = -11.0;
  double x_max = 11.0;
  int n_points = 128;

  // Spans +-6 widths around both packet centers.
  static GridSpec covering(const GaussianPacket& a, const GaussianPacket& b, int n_points = 128);
  void validate() const;
  double step() const { return (x_max - x_min) / (n_points - 1); }
  double x(int i) const { return x_min + i * step(); }
};

struct DensityGrid {
  GridSpec grid;
  // rho(x1, x2), row-major over x1 then x2.
  std::vector<double> values;
  // max |interference term| / max rho
  double cross_term_max = 0.0;
  // Trapezoidal double integral of values.
  double integral = 0.0;

  double at(int i1, int i2) const {
    return values[static_cast<std::size_t>(i1) * static_cast<std::size_t>(grid.n_points) +
                  static_cast<std::size_t>(i2)];
  }
};

namespace tol {
inline constexpr double kGrid = 1e-6;
inline constexpr double kIdenticalPackets = 1e-6;
}  // namespace tol

// Joint position density of the antisymmetrized two-packet state,
//   rho = c (|S(x1)N(x2)|^2 + |S(x2)N(x1)|^2 - 2 Re[S(x1)N(x2)S(x2)* N(x1)*]),
// with c = 1 / (2 (1 - |<S|N>|^2)) so that rho integrates to one.
// Throws DomainError for identical packets or when the trapezoidal integral
// misses 1 by more than tol::kGrid.
DensityGrid joint_spatial_density(const GaussianPacket& packet_s, const GaussianPacket& packet_n,
                                  const GridSpec& grid);

}  // namespace idpart
