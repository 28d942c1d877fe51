#include "qfpsim/waveguide.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qfpsim/error.hpp"
#include "qfpsim/units.hpp"

namespace qfp {

namespace {

constexpr double kExtrapolationWindow = 0.05;

void check_range(const WaveguideModel& model, double omega) {
  if (!(std::abs(omega - model.omega_ref) <= kExtrapolationWindow * model.omega_ref)) {
    throw ExtrapolationError(fmt::format(
        "omega = {:.6e} rad/s lies outside +/-5% of the dispersion reference {:.6e} rad/s",
        omega, model.omega_ref));
  }
}

// Taylor sum and its first derivative, Horner-style on (x^k / k!).
template <typename Real>
void taylor(const std::vector<double>& c, Real x, Real& value, Real& slope) {
  value = 0;
  slope = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    slope = slope * x / Real(k + 1) + (k + 1 < c.size() ? Real(c[k + 1]) : Real(0));
    value = value * x / Real(k + 1) + Real(c[k]);
  }
}

long double bare_phase(const WaveguideModel& model, const RingGeometry& ring, double omega) {
  check_range(model, omega);
  long double n = 0, dn = 0;
  taylor<long double>(model.n_coeffs, static_cast<long double>(omega) - model.omega_ref, n, dn);
  const long double length_m = 2.0L * std::numbers::pi_v<long double> * ring.radius_um * 1e-6L;
  return static_cast<long double>(omega) * n * length_m / kSpeedOfLight;
}

}  // namespace

void WaveguideModel::validate() const {
  if (n_coeffs.empty()) throw InvalidArgument("waveguide: n_coeffs must not be empty");
  if (!(n_coeffs.front() > 0.0)) throw InvalidArgument("waveguide: n0 must be positive");
  if (!(alpha >= 0.0)) throw InvalidArgument("waveguide: alpha must be non-negative");
  if (!(omega_ref > 0.0)) throw InvalidArgument("waveguide: omega_ref must be positive");
}

WaveguideModel make_waveguide(double omega_ref, double n_eff, double group_index,
                              double alpha_per_cm, double gvd_n2) {
  WaveguideModel model{omega_ref, {n_eff, (group_index - n_eff) / omega_ref}, alpha_per_cm};
  if (gvd_n2 != 0.0) model.n_coeffs.push_back(gvd_n2);
  model.validate();
  return model;
}

WaveguideModel default_silicon_waveguide() {
  return make_waveguide(from_thz(193.0), 2.37, 4.226, db_per_cm_to_alpha(0.5));
}

double RingGeometry::round_trip_length_um() const { return kTwoPi * radius_um; }

void RingGeometry::validate() const {
  if (!(radius_um > 0.0)) throw InvalidArgument("ring: radius must be positive");
}

double effective_index(const WaveguideModel& model, double omega) {
  check_range(model, omega);
  double n = 0, dn = 0;
  taylor<double>(model.n_coeffs, omega - model.omega_ref, n, dn);
  return n;
}

double group_index(const WaveguideModel& model, double omega) {
  check_range(model, omega);
  double n = 0, dn = 0;
  taylor<double>(model.n_coeffs, omega - model.omega_ref, n, dn);
  return n + omega * dn;
}

double free_spectral_range_hz(const WaveguideModel& model, const RingGeometry& ring,
                              double omega) {
  return kSpeedOfLight / (group_index(model, omega) * ring.round_trip_length_um() * 1e-6);
}

double round_trip_phase(const WaveguideModel& model, const RingGeometry& ring, double omega) {
  return static_cast<double>(bare_phase(model, ring, omega) + ring.phase_offset);
}

double wrapped_round_trip_phase(const WaveguideModel& model, const RingGeometry& ring,
                                double omega) {
  return static_cast<double>(
      wrap_phase<long double>(bare_phase(model, ring, omega) + ring.phase_offset));
}

double field_attenuation(const WaveguideModel& model, const RingGeometry& ring) {
  const double length_cm = ring.round_trip_length_um() * 1e-4;
  return std::exp(-model.alpha * length_cm / 2.0);
}

RingGeometry tune_ring(const WaveguideModel& model, const RingGeometry& ring,
                       double omega_target) {
  RingGeometry tuned = ring;
  tuned.phase_offset =
      -static_cast<double>(wrap_phase<long double>(bare_phase(model, ring, omega_target)));
  return tuned;
}

}  // namespace qfp
