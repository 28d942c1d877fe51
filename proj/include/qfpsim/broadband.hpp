#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "qfpsim/engine.hpp"

namespace qfp {

/// Single photon c0|0> + c1|1> with a rectangular (Nyquist) spectrum of full
/// width `bandwidth` (rad/s) in each of the two computational bins.
struct NyquistQubit {
  Complex c0{1.0, 0.0};
  Complex c1{0.0, 0.0};
  double bandwidth = 0.0;
  std::array<int, 2> modes{2, 3};

  static NyquistQubit zero(double bandwidth);
  static NyquistQubit one(double bandwidth);
  static NyquistQubit plus(double bandwidth);
  static NyquistQubit plus_i(double bandwidth);

  void validate() const;
};

/// Complex spectral amplitude per window bin (rows) and offset sample
/// (columns), with midpoint-rule weights.
struct Wavepacket {
  std::vector<double> offsets;  // rad/s, symmetric about zero
  std::vector<double> weights;  // quadrature weight of each offset, rad/s
  Eigen::MatrixXcd amplitudes;  // dim x offsets.size()
  std::vector<int> computational_rows;  // window rows of the qubit's two bins
};

/// Which output bins enter the y integrals.
enum class OutputSupport {
  computational,  // only the qubit's two bins
  all_modes,      // every bin of the window, guard bins included
};

/// sqrt(T_s / 2 pi) for |offset| < pi / T_s, else 0, with T_s = 2 pi / bandwidth.
double nyquist_spectrum(double bandwidth, double offset);

/// Midpoint quadrature nodes over (-bandwidth/2, bandwidth/2).
std::vector<double> quadrature_offsets(double bandwidth, int points);

struct PropagatedWavepackets {
  Wavepacket ideal;   // g
  Wavepacket actual;  // y
};

/// y(Omega) = V(Omega) x(Omega) over the full window; g is the target
/// unitary applied to (c0, c1) with the input's rectangular profile,
/// confined to the computational bins.
PropagatedWavepackets propagate(const QfpStack& stack, const Eigen::MatrixXcd& target,
                                const NyquistQubit& input, int quadrature_points = 201,
                                int threads = 1);

struct WavepacketMetrics {
  double fidelity = 0.0;
  double success_prob = 0.0;
};

/// F_y = |<g|y>|^2 / (<g|g><y|y>), P_y = <y|y> / <g|g>.
WavepacketMetrics wavepacket_metrics(const Wavepacket& g, const Wavepacket& y,
                                     OutputSupport support = OutputSupport::computational);

}  // namespace qfp
