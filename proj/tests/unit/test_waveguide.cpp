#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qfpsim/error.hpp"
#include "qfpsim/units.hpp"
#include "qfpsim/waveguide.hpp"

using namespace qfp;

TEST_CASE("default silicon waveguide reproduces its indices at the reference") {
  const auto wg = default_silicon_waveguide();
  const double w0 = from_thz(193.0);
  CHECK(effective_index(wg, w0) == doctest::Approx(2.37).epsilon(1e-14));
  CHECK(group_index(wg, w0) == doctest::Approx(4.226).epsilon(1e-14));
}

TEST_CASE("group index follows n + omega dn/domega away from the reference") {
  const auto wg = make_waveguide(from_thz(193.0), 2.37, 4.226, 0.0, 3e-31);
  const double w = from_thz(195.0);
  const double h = 1e9;
  const double dn = (effective_index(wg, w + h) - effective_index(wg, w - h)) / (2 * h);
  CHECK(group_index(wg, w) == doctest::Approx(effective_index(wg, w) + w * dn).epsilon(1e-9));
}

TEST_CASE("free spectral range of a 20 um ring") {
  const auto wg = default_silicon_waveguide();
  const double fsr = free_spectral_range_hz(wg, RingGeometry{}, from_thz(193.0));
  CHECK(fsr == doctest::Approx(oracle::fsr_hz(4.226, 20.0)).epsilon(1e-12));
  CHECK(fsr * 1e-9 == doctest::Approx(564.5).epsilon(5e-4));
}

TEST_CASE("round-trip phase is omega n L / c") {
  const auto wg = default_silicon_waveguide();
  const double w = from_thz(193.3);
  const double n = 2.37 + (4.226 - 2.37) / from_thz(193.0) * (w - from_thz(193.0));
  const double expected = w * n * 2 * oracle::pi * 20e-6 / oracle::c0;
  CHECK(round_trip_phase(wg, RingGeometry{}, w) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("wrapped phase agrees with the unwrapped phase modulo 2 pi") {
  const auto wg = default_silicon_waveguide();
  RingGeometry ring;
  ring.phase_offset = 0.3;
  for (double thz = 192.0; thz < 194.0; thz += 0.0137) {
    const double w = from_thz(thz);
    const double wrapped = wrapped_round_trip_phase(wg, ring, w);
    CHECK(wrapped > -oracle::pi);
    CHECK(wrapped <= oracle::pi);
    const long double full = round_trip_phase(wg, ring, w);
    const long double turns = (full - wrapped) / (2.0L * oracle::pi);
    // Absolute phase is ~1e5 rad, so double precision leaves ~1e-11 rad.
    CHECK(std::abs(turns - std::round(turns)) < 1e-9);
  }
}

TEST_CASE("field attenuation per round trip") {
  auto wg = default_silicon_waveguide();
  const double length_cm = 2 * oracle::pi * 20e-4;
  CHECK(field_attenuation(wg, RingGeometry{}) == doctest::Approx(std::pow(10.0, -0.5 * length_cm / 20.0)).epsilon(1e-14));
  wg.alpha = 0.0;
  CHECK(field_attenuation(wg, RingGeometry{}) == 1.0);
  CHECK(alpha_to_db_per_cm(db_per_cm_to_alpha(0.25)) == doctest::Approx(0.25));
}

TEST_CASE("tuning places a resonance at the target with the smallest offset") {
  const auto wg = default_silicon_waveguide();
  for (double ghz : {0.0, 15.0, 37.5, 281.0, -400.0}) {
    const double target = from_thz(193.0) + from_ghz(ghz);
    const auto tuned = tune_ring(wg, RingGeometry{}, target);
    CHECK(std::abs(tuned.phase_offset) <= oracle::pi);
    CHECK(std::abs(wrapped_round_trip_phase(wg, tuned, target)) < 1e-12);
    // One FSR (from the group index) away the phase has advanced by 2 pi
    // plus the curvature term n1 dw^2 L / c of the linear index model.
    const double dw = 2 * oracle::pi * free_spectral_range_hz(wg, tuned, target);
    const double n1 = (4.226 - 2.37) / from_thz(193.0);
    const double curvature = n1 * dw * dw * 2 * oracle::pi * 20e-6 / oracle::c0;
    CHECK(wrapped_round_trip_phase(wg, tuned, target + dw) == doctest::Approx(curvature).epsilon(1e-6));
  }
}

TEST_CASE("evaluations beyond 5% of the reference are rejected") {
  const auto wg = default_silicon_waveguide();
  CHECK_NOTHROW(effective_index(wg, from_thz(193.0 * 1.049)));
  CHECK_THROWS_AS(effective_index(wg, from_thz(193.0 * 1.06)), ExtrapolationError);
  CHECK_THROWS_AS(round_trip_phase(wg, RingGeometry{}, from_thz(180.0)), ExtrapolationError);
}

TEST_CASE("invalid geometry and models") {
  CHECK_THROWS_AS(RingGeometry{-1.0}.validate(), InvalidArgument);
  CHECK_THROWS_AS(make_waveguide(from_thz(193.0), 2.37, 4.226, -0.1), InvalidArgument);
  CHECK_THROWS_AS(make_waveguide(from_thz(193.0), 0.0, 4.226, 0.1), InvalidArgument);
}
