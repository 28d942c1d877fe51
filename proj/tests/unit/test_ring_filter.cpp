#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qfpsim/error.hpp"
#include "qfpsim/ring_filter.hpp"
#include "qfpsim/units.hpp"

using namespace qfp;

namespace {

const double kW0 = from_thz(193.0);

WaveguideModel lossless() {
  auto wg = default_silicon_waveguide();
  wg.alpha = 0.0;
  return wg;
}

double fsr_rad(const WaveguideModel& wg) { return kTwoPi * free_spectral_range_hz(wg, RingGeometry{}, kW0); }

}  // namespace

TEST_CASE("single ring closed form matches the round-trip sum") {
  const auto wg = default_silicon_waveguide();
  const auto filter = synthesize_flat_filter(wg, 20.0, 1, 0.01, default_coupling_table(), kW0);
  const double a = field_attenuation(wg, filter.rings[0]);
  for (double ghz = -30.0; ghz <= 30.0; ghz += 0.37) {
    const double w = kW0 + from_ghz(ghz);
    const auto r = single_ring_response(wg, filter, w);
    const auto ref = oracle::ring_by_round_trips(0.01, a, wrapped_round_trip_phase(wg, filter.rings[0], w));
    CHECK(std::abs(r.through - ref.through) < 1e-12);
    CHECK(std::abs(r.drop - ref.drop) < 1e-12);
  }
}

TEST_CASE("cascade reduces to the closed form for one ring") {
  for (double alpha : {0.0, db_per_cm_to_alpha(0.5), db_per_cm_to_alpha(3.0)}) {
    auto wg = default_silicon_waveguide();
    wg.alpha = alpha;
    for (double kappa : {0.001, 0.01, 0.3}) {
      const auto filter = synthesize_flat_filter(wg, 20.0, 1, kappa, default_coupling_table(), kW0);
      double worst = 0.0;
      for (int i = -2000; i <= 2000; ++i) {
        const double w = kW0 + i * fsr_rad(wg) / 1500.0;
        const auto a = single_ring_response(wg, filter, w);
        const auto b = nring_response(wg, filter, w);
        worst = std::max({worst, std::abs(a.through - b.through), std::abs(a.drop - b.drop)});
      }
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("lossless filters conserve power for orders 1 to 6") {
  const auto wg = lossless();
  const auto table = default_coupling_table();
  for (int order = 1; order <= 6; ++order) {
    for (double kappa : {0.01, 0.1}) {
      const auto filter = synthesize_flat_filter(wg, 20.0, order, kappa, table, kW0);
      double worst = 0.0;
      for (int i = -5000; i <= 5000; ++i) {
        const double w = kW0 + i * fsr_rad(wg) / 4000.0;
        const auto r = filter_response(wg, filter, w);
        worst = std::max(worst, std::abs(std::norm(r.through) + std::norm(r.drop) - 1.0));
      }
      INFO("order " << order << " kappa^2 " << kappa);
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("lossy filters dissipate") {
  const auto wg = default_silicon_waveguide();
  for (int order = 1; order <= 4; ++order) {
    const auto filter = synthesize_flat_filter(wg, 20.0, order, 0.01, default_coupling_table(), kW0);
    const auto r = filter_response(wg, filter, kW0);
    CHECK(std::norm(r.through) + std::norm(r.drop) < 1.0);
  }
}

TEST_CASE("lossless single ring drops everything on resonance") {
  const auto wg = lossless();
  const auto filter = synthesize_flat_filter(wg, 20.0, 1, 0.01, default_coupling_table(), kW0);
  const auto r = single_ring_response(wg, filter, kW0);
  CHECK(std::abs(r.through) < 1e-12);
  CHECK(std::abs(r.drop) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("maximally flat ratios") {
  const auto table = default_coupling_table();
  CHECK(table.ratios.at(2)[0] == doctest::Approx(0.25));
  CHECK(table.ratios.at(3)[0] == doctest::Approx(0.125));
  CHECK(table.ratios.at(3)[1] == doctest::Approx(0.125));
  CHECK(table.ratios.at(4)[0] == doctest::Approx(0.10355).epsilon(1e-4));
  CHECK(table.ratios.at(4)[1] == doctest::Approx(0.04289).epsilon(1e-4));
  CHECK(table.ratios.at(5)[1] == doctest::Approx(0.02951).epsilon(1e-4));
  CHECK(table.ratios.at(6)[2] == doctest::Approx(0.01795).epsilon(1e-3));
}

TEST_CASE("drop passband rolls off as detuning^(2N)") {
  // For a maximally flat order-N response, 1 - |D|^2 grows like delta^(2N)
  // close to the centre, so doubling delta multiplies it by 4^N. The ratios
  // are exact only to first order in kappa^2, hence the weak coupling here.
  const auto wg = lossless();
  const double kappa_sq = 1e-4;
  const double half_width = oracle::lorentzian_half_phase(kappa_sq, 1.0) / (2 * oracle::pi) *
                            free_spectral_range_hz(wg, RingGeometry{}, kW0);
  for (int order = 1; order <= 4; ++order) {
    const auto filter = synthesize_flat_filter(wg, 20.0, order, kappa_sq, default_coupling_table(), kW0);
    const double delta = kTwoPi * 0.1 * half_width;
    const double d1 = 1.0 - std::norm(filter_response(wg, filter, kW0 + delta).drop);
    const double d2 = 1.0 - std::norm(filter_response(wg, filter, kW0 + 2 * delta).drop);
    INFO("order " << order);
    CHECK(d2 / d1 == doctest::Approx(std::pow(4.0, order)).epsilon(0.05));
  }
}

TEST_CASE("synthesised couplings are palindromic") {
  const auto wg = default_silicon_waveguide();
  for (int order = 2; order <= 6; ++order) {
    const auto f = synthesize_flat_filter(wg, 20.0, order, 0.01, default_coupling_table(), kW0);
    REQUIRE(f.inter_kappa_sq.size() == static_cast<std::size_t>(order - 1));
    for (int i = 0; i < order - 1; ++i) CHECK(f.inter_kappa_sq[i] == doctest::Approx(f.inter_kappa_sq[order - 2 - i]));
  }
  CHECK(synthesize_flat_filter(wg, 20.0, 1, 0.01, default_coupling_table(), kW0).inter_kappa_sq.empty());
}

TEST_CASE("filter construction errors") {
  const auto wg = default_silicon_waveguide();
  CouplingTable partial;
  partial.ratios[2] = {0.25};
  CHECK_NOTHROW(synthesize_flat_filter(wg, 20.0, 2, 0.01, partial, kW0));
  CHECK_THROWS_AS(synthesize_flat_filter(wg, 20.0, 3, 0.01, partial, kW0), ConfigError);
  CHECK_THROWS_AS(synthesize_flat_filter(wg, 20.0, 1, 1.2, partial, kW0), InvalidArgument);
  CHECK_THROWS_AS(synthesize_flat_filter(wg, 20.0, 0, 0.01, partial, kW0), InvalidArgument);
  const auto two = synthesize_flat_filter(wg, 20.0, 2, 0.01, partial, kW0);
  CHECK_THROWS_AS(single_ring_response(wg, two, kW0), InvalidArgument);
  RingFilter bad = two;
  bad.inter_kappa_sq.clear();
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}
