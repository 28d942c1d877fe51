#pragma once

#include <cmath>
#include <numbers>

namespace qfp {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Linear frequency (Hz) to angular frequency (rad/s).
constexpr double angular(double hz) { return kTwoPi * hz; }
/// Angular frequency (rad/s) to linear frequency (Hz).
constexpr double linear(double rad_per_s) { return rad_per_s / kTwoPi; }

constexpr double from_thz(double thz) { return angular(thz * 1e12); }
constexpr double from_ghz(double ghz) { return angular(ghz * 1e9); }
constexpr double to_ghz(double rad_per_s) { return linear(rad_per_s) * 1e-9; }

/// Power attenuation in dB/cm to the field-exponent coefficient alpha (1/cm)
/// used in A = exp(-alpha L / 2).
inline double db_per_cm_to_alpha(double db_per_cm) { return db_per_cm * std::log(10.0) / 10.0; }
inline double alpha_to_db_per_cm(double alpha) { return alpha * 10.0 / std::log(10.0); }

/// Wraps an angle to (-pi, pi].
template <typename Real>
Real wrap_phase(Real phase) {
  constexpr Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  Real wrapped = phase - two_pi * std::round(phase / two_pi);
  if (wrapped <= -std::numbers::pi_v<Real>) wrapped += two_pi;
  return wrapped;
}

}  // namespace qfp
