#pragma once

#include <vector>

#include "qfpsim/ring_filter.hpp"
#include "qfpsim/waveguide.hpp"

namespace qfp {

/// Equispaced bins omega_m = omega0 + m * spacing, m = 0..count-1.
struct FrequencyGrid {
  double omega0 = 0.0;   // rad/s
  double spacing = 0.0;  // rad/s
  int count = 0;

  double bin(int m) const { return omega0 + m * spacing; }
  void validate() const;
  bool operator==(const FrequencyGrid&) const = default;
};

enum class ShaperMode { mrr, ideal };

struct ShaperChannel {
  RingFilter filter;  // used for both the download and the upload filter
  double phase = 0.0;

  bool operator==(const ShaperChannel&) const = default;
};

struct ShaperConfig {
  WaveguideModel waveguide;
  FrequencyGrid grid;
  std::vector<ShaperChannel> channels;
  ShaperMode mode = ShaperMode::mrr;

  void validate() const;
  std::vector<double> phases() const;
};

/// Parameters from which a ShaperConfig is (re)built, e.g. when a sweep
/// changes the bin spacing and every ring must be re-tuned.
struct ShaperDesign {
  WaveguideModel waveguide = default_silicon_waveguide();
  FrequencyGrid grid;
  std::vector<double> phases;
  ShaperMode mode = ShaperMode::mrr;
  double radius_um = 20.0;
  int filter_order = 1;
  double kappa_sq = 0.01;
  CouplingTable coupling_table = default_coupling_table();

  ShaperConfig build() const;
};

/// pi stairstep across `gates` consecutive blocks of six channels: each block
/// is {0, 0, 0, pi, pi, pi}.
std::vector<double> hadamard_stairstep(int gates);

/// H(omega) = sum_p D_p(omega)^2 e^{i phi_p} prod_{q != p} T_q(omega).
Complex shaper_response(const ShaperConfig& config, double omega);

/// Line-by-line reference: e^{i phi_m} for the nearest bin, 0 outside the band.
Complex ideal_response(const ShaperConfig& config, double omega);

/// Mode-appropriate dispatch.
Complex evaluate_shaper(const ShaperConfig& config, double omega);

/// Half-width at half-maximum (Hz) of channel `channel`, measured on the field
/// transmission |H| around omega_m with all other channels present.
double channel_linewidth(const ShaperConfig& config, int channel);

}  // namespace qfp
