#pragma once

#include <vector>

namespace qfp {

/// Effective-index dispersion and propagation loss of the ring waveguide.
///
/// n_eff(omega) = sum_k n_coeffs[k] * (omega - omega_ref)^k / k!, with
/// n_coeffs[k] in (s/rad)^k. The polynomial is only trusted within 5% of
/// omega_ref; evaluations outside that window throw ExtrapolationError.
struct WaveguideModel {
  double omega_ref = 0.0;          // rad/s
  std::vector<double> n_coeffs;    // [n0, dn/dw, d2n/dw2, ...]
  double alpha = 0.0;              // field-exponent attenuation, 1/cm

  void validate() const;
  bool operator==(const WaveguideModel&) const = default;
};

/// Silicon 480 nm x 220 nm strip at 193 THz: n_eff = 2.37, n_g = 4.226,
/// 0.5 dB/cm.
WaveguideModel default_silicon_waveguide();

/// Builds a first/second-order model from the phase index and group index at
/// omega_ref. `gvd_n2` is d2n_eff/domega2 in s^2/rad^2.
WaveguideModel make_waveguide(double omega_ref, double n_eff, double group_index,
                              double alpha_per_cm, double gvd_n2 = 0.0);

struct RingGeometry {
  double radius_um = 20.0;
  double phase_offset = 0.0;  // static tuning phase added to the round trip, rad

  double round_trip_length_um() const;
  void validate() const;
  bool operator==(const RingGeometry&) const = default;
};

double effective_index(const WaveguideModel& model, double omega);

/// n_g = n_eff + omega * dn_eff/domega.
double group_index(const WaveguideModel& model, double omega);

/// Free spectral range c / (n_g L_rt) in Hz.
double free_spectral_range_hz(const WaveguideModel& model, const RingGeometry& ring,
                              double omega);

/// omega * n_eff(omega) * L_rt / c + phase_offset, unwrapped.
double round_trip_phase(const WaveguideModel& model, const RingGeometry& ring, double omega);

/// Same phase reduced to (-pi, pi]. The reduction is carried out in extended
/// precision so that the ~1e6 rad absolute phase does not eat into the
/// residual.
double wrapped_round_trip_phase(const WaveguideModel& model, const RingGeometry& ring,
                                double omega);

/// A = exp(-alpha L_rt / 2).
double field_attenuation(const WaveguideModel& model, const RingGeometry& ring);

/// Returns a copy whose phase_offset puts a resonance exactly at omega_target,
/// using the smallest possible |offset|.
RingGeometry tune_ring(const WaveguideModel& model, const RingGeometry& ring,
                       double omega_target);

}  // namespace qfp
