#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qfpsim/eom.hpp"
#include "qfpsim/error.hpp"

using namespace qfp;

TEST_CASE("sinusoidal drive sidebands are Bessel functions") {
  const double depth = 0.8283;
  const auto c = fourier_coefficients(ModulatorDrive::sinusoid(depth));
  for (int n = -16; n <= 16; ++n) {
    INFO("n = " << n);
    // e^{i d sin t} = sum_k J_k(d) e^{ikt}, and c_n picks k = -n.
    CHECK(std::abs(c(n) - oracle::bessel_j(-n, depth)) < 1e-9);
  }
  CHECK(c(17) == Complex{});
  CHECK(c(-40) == Complex{});
}

TEST_CASE("coefficients match a direct summation") {
  const auto drive = ModulatorDrive::log_voltage(6.0, 5.0, 0.85, 4.25, 0.4);
  const auto c = fourier_coefficients(drive, 16, 1024);
  for (int n = -10; n <= 10; ++n) {
    const auto ref = oracle::direct_coefficient([&](double t) { return phase_waveform(drive, t); }, n, 1024);
    CHECK(std::abs(c(n) - ref) < 1e-12);
  }
}

TEST_CASE("phase-only drives conserve energy") {
  std::vector<ModulatorDrive> drives = {
      ModulatorDrive::sinusoid(0.1),          ModulatorDrive::sinusoid(0.8283, 1.3),
      ModulatorDrive::sinusoid(2.5, -2.0),    ModulatorDrive::log_voltage(4.14, 4.14, 0.85, 4.25),
      ModulatorDrive::log_voltage(15.0, 9.0, 0.85, 4.25, 0.7),
      ModulatorDrive::log_voltage(0.0, 0.0, 2.0, 10.0)};
  for (const auto& d : drives) CHECK(fourier_coefficients(d).energy() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("voltage-dependent amplitude scales the energy") {
  auto drive = ModulatorDrive::log_voltage(5.0, 2.0, 0.85, 4.25);
  drive.amplitude = [](double) { return 0.5; };
  CHECK_FALSE(drive.phase_only());
  CHECK(fourier_coefficients(drive).energy() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("rf phase shift rotates sideband n by -n delta") {
  const double delta = 0.937;
  const auto base = fourier_coefficients(ModulatorDrive::sinusoid(1.2, 0.3));
  const auto moved = fourier_coefficients(ModulatorDrive::sinusoid(1.2, 0.3 + delta));
  const auto shifted = base.rf_shifted(delta);
  for (int n = -16; n <= 16; ++n) CHECK(std::abs(shifted(n) - moved(n)) < 1e-13);
}

TEST_CASE("identity coefficients") {
  const auto id = EomCoefficients::identity(4);
  CHECK(id(0) == Complex{1.0});
  CHECK(id(1) == Complex{});
  CHECK(id.energy() == 1.0);
  CHECK_THROWS_AS(EomCoefficients(3, std::vector<Complex>(5)), InvalidArgument);
}

TEST_CASE("insufficient truncation is reported with the tail energy") {
  try {
    fourier_coefficients(ModulatorDrive::sinusoid(8.0), 4, 256);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.tail_energy() > 1e-10);
    CHECK(e.kind() == "truncation_too_small");
  }
  CHECK_NOTHROW(fourier_coefficients(ModulatorDrive::sinusoid(8.0), 32, 4096));
}

TEST_CASE("sampling constraints") {
  const auto d = ModulatorDrive::sinusoid(0.5);
  CHECK_THROWS_AS(fourier_coefficients(d, 16, 100), InvalidArgument);
  CHECK_THROWS_AS(fourier_coefficients(d, 16, 64), InvalidArgument);
  CHECK_THROWS_AS(fourier_coefficients(d, 0, 64), InvalidArgument);
  CHECK_THROWS_AS(full_spectrum(d, 12), InvalidArgument);
}

TEST_CASE("log-voltage drive domain") {
  CHECK_THROWS_AS(ModulatorDrive::log_voltage(1.0, 2.0, 0.85, 4.25), InvalidArgument);
  CHECK_THROWS_AS(ModulatorDrive::log_voltage(1.0, 0.5, 0.85, 0.0), InvalidArgument);
  CHECK_THROWS_AS(ModulatorDrive::sinusoid(-1.0), InvalidArgument);
  ModulatorDrive raw;
  raw.kind = DriveKind::log_voltage;
  raw.v_dc = 0.0;
  raw.v_1 = 10.0;
  CHECK_THROWS_AS(phase_waveform(raw, 0.75), DomainError);
  const auto ok = ModulatorDrive::log_voltage(3.0, 3.0, 0.85, 4.25);
  CHECK(phase_waveform(ok, 0.75) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(phase_waveform(ok, 0.25) == doctest::Approx(0.85 * std::log(1.0 + 6.0 / 4.25)));
}

TEST_CASE("drive optimiser finds interior and boundary optima") {
  const GateEvaluator bowl = [](const ModulatorDrive& d) { return -(d.v_1 - 3.0) * (d.v_1 - 3.0); };
  const auto out = optimize_drive({2.0, 5.0}, 0.85, 4.25, bowl);
  REQUIRE(out.size() == 2);
  CHECK(out[0].v_1 == 2.0);
  CHECK(out[0].fidelity == doctest::Approx(-1.0));
  CHECK(out[1].v_1 == doctest::Approx(3.0).epsilon(1e-4));
}
