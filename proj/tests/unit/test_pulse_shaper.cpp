#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qfpsim/error.hpp"
#include "qfpsim/pulse_shaper.hpp"
#include "qfpsim/units.hpp"

using namespace qfp;

namespace {

ShaperDesign baseline(int channels = 6) {
  ShaperDesign d;
  d.grid = {from_thz(193.0), from_ghz(15.0), channels};
  d.phases = hadamard_stairstep(channels / 6);
  return d;
}

// Naive O(M^2) evaluation of sum_p D_p^2 e^{i phi_p} prod_{q != p} T_q.
Complex naive_response(const ShaperConfig& cfg, double w) {
  Complex h = 0.0;
  for (std::size_t p = 0; p < cfg.channels.size(); ++p) {
    const auto rp = filter_response(cfg.waveguide, cfg.channels[p].filter, w);
    Complex term = rp.drop * rp.drop * std::polar(1.0, cfg.channels[p].phase);
    for (std::size_t q = 0; q < cfg.channels.size(); ++q) {
      if (q != p) term *= filter_response(cfg.waveguide, cfg.channels[q].filter, w).through;
    }
    h += term;
  }
  return h;
}

}  // namespace

TEST_CASE("stairstep phases") {
  const auto one = hadamard_stairstep(1);
  REQUIRE(one.size() == 6);
  for (int m = 0; m < 6; ++m) CHECK(one[m] == (m < 3 ? 0.0 : oracle::pi));
  const auto two = hadamard_stairstep(2);
  REQUIRE(two.size() == 12);
  CHECK(two[8] == 0.0);
  CHECK(two[9] == oracle::pi);
}

TEST_CASE("shaper response equals the explicit sum over channels") {
  const auto cfg = baseline().build();
  for (double ghz = -20.0; ghz <= 100.0; ghz += 0.731) {
    const double w = from_thz(193.0) + from_ghz(ghz);
    CHECK(std::abs(shaper_response(cfg, w) - naive_response(cfg, w)) < 1e-13);
  }
}

TEST_CASE("lossless single channel applies its phase on resonance") {
  auto d = baseline(6);
  d.grid.count = 1;
  d.phases = {1.1};
  d.waveguide.alpha = 0.0;
  const auto cfg = d.build();
  const Complex h = shaper_response(cfg, d.grid.omega0);
  CHECK(std::abs(h - std::polar(1.0, 1.1)) < 1e-12);
}

TEST_CASE("isolated channel linewidth matches the Lorentzian of |D|^2") {
  auto d = baseline();
  d.grid.count = 1;
  d.phases = {0.0};
  const auto cfg = d.build();
  const double a = field_attenuation(cfg.waveguide, cfg.channels[0].filter.rings[0]);
  const double fsr = free_spectral_range_hz(cfg.waveguide, RingGeometry{}, d.grid.omega0);
  const double expected = oracle::lorentzian_half_phase(0.01, a) / (2 * oracle::pi) * fsr;
  CHECK(channel_linewidth(cfg, 0) == doctest::Approx(expected).epsilon(1e-4));
  CHECK(expected * 1e-9 == doctest::Approx(0.97).epsilon(5e-3));
}

TEST_CASE("baseline channel half width is about 0.97 GHz") {
  const auto cfg = baseline().build();
  for (int m = 0; m < 6; ++m) CHECK(channel_linewidth(cfg, m) * 1e-9 == doctest::Approx(0.97).epsilon(0.03));
}

TEST_CASE("linewidth is undefined when channels overlap too strongly") {
  auto d = baseline();
  d.kappa_sq = 0.3;
  const auto cfg = d.build();
  CHECK_THROWS_AS(channel_linewidth(cfg, 2), LinewidthUndefined);
  CHECK_THROWS_AS(channel_linewidth(cfg, 6), InvalidArgument);
}

TEST_CASE("diagonal at zero offset carries the pi step between bins 2 and 3") {
  const auto cfg = baseline().build();
  const Complex h2 = shaper_response(cfg, cfg.grid.bin(2));
  const Complex h3 = shaper_response(cfg, cfg.grid.bin(3));
  const double step = std::remainder(std::arg(h3) - std::arg(h2), 2 * oracle::pi);
  const Complex n2 = naive_response(cfg, cfg.grid.bin(2));
  const Complex n3 = naive_response(cfg, cfg.grid.bin(3));
  CHECK(step == doctest::Approx(std::remainder(std::arg(n3) - std::arg(n2), 2 * oracle::pi)).epsilon(1e-12));
  // Neighbouring through ports pull each bin's phase; the step stays within
  // a few hundredths of a radian of pi.
  CHECK(std::abs(std::abs(step) - oracle::pi) < 0.05);
}

TEST_CASE("ideal shaper is a line-by-line phase mask") {
  auto d = baseline();
  d.mode = ShaperMode::ideal;
  const auto cfg = d.build();
  const double w0 = d.grid.omega0, dw = d.grid.spacing;
  CHECK(std::abs(ideal_response(cfg, w0 + 3 * dw) + 1.0) < 1e-15);
  CHECK(std::abs(ideal_response(cfg, w0 + 2.4 * dw) - 1.0) < 1e-15);
  CHECK(ideal_response(cfg, w0 - 0.6 * dw) == Complex{});
  CHECK(ideal_response(cfg, w0 + 5.6 * dw) == Complex{});
  CHECK(evaluate_shaper(cfg, w0 + 4 * dw) == ideal_response(cfg, w0 + 4 * dw));
}

TEST_CASE("design validation") {
  auto d = baseline();
  d.phases.pop_back();
  CHECK_THROWS_AS(d.build(), InvalidArgument);
  d = baseline();
  d.grid.spacing = -1.0;
  CHECK_THROWS_AS(d.build(), InvalidArgument);
  d = baseline();
  d.grid.count = 0;
  d.phases.clear();
  CHECK_THROWS_AS(d.build(), InvalidArgument);
}

TEST_CASE("shaper is passive on a dense grid") {
  const auto cfg = baseline().build();
  for (double ghz = -40.0; ghz <= 120.0; ghz += 0.013) {
    CHECK(std::abs(shaper_response(cfg, from_thz(193.0) + from_ghz(ghz))) <= 1.0);
  }
}

TEST_CASE("far from every resonance the shaper blocks") {
  auto d = baseline();
  d.phases.assign(6, 0.4);
  const auto cfg = d.build();
  // |T| <= 1, so |H| is bounded by the summed drop tails. Around five full
  // widths out the six tails together reach ~1e-2.
  for (double ghz : {10.0, 12.0, 20.0, 100.0, 250.0}) {
    for (double w : {cfg.grid.bin(0) - from_ghz(ghz), cfg.grid.bin(5) + from_ghz(ghz)}) {
      double bound = 0.0;
      for (const auto& ch : cfg.channels) bound += std::norm(filter_response(cfg.waveguide, ch.filter, w).drop);
      CHECK(std::abs(shaper_response(cfg, w)) <= bound);
      if (ghz >= 12.0) CHECK(std::abs(shaper_response(cfg, w)) < 1e-2);
    }
  }
}

TEST_CASE("swapping two channels together with their phases leaves H unchanged") {
  auto d = baseline();
  d.phases = {0.1, 0.7, 1.3, 2.9, -0.4, 2.2};
  const auto cfg = d.build();
  auto swapped = cfg;
  std::swap(swapped.channels[1], swapped.channels[4]);
  for (double ghz = -5.0; ghz <= 80.0; ghz += 0.77) {
    const double w = from_thz(193.0) + from_ghz(ghz);
    CHECK(std::abs(shaper_response(cfg, w) - shaper_response(swapped, w)) < 1e-15);
  }
}

TEST_CASE("equal phases shift the peak phase by the same constant") {
  auto zero = baseline();
  zero.phases.assign(6, 0.0);
  auto shifted = zero;
  shifted.phases.assign(6, 1.234);
  const auto a = zero.build(), b = shifted.build();
  for (int m = 0; m < 6; ++m) {
    const double diff = std::arg(shaper_response(b, b.grid.bin(m)) / shaper_response(a, a.grid.bin(m)));
    CHECK(diff == doctest::Approx(1.234).epsilon(1e-9));
  }
}

TEST_CASE("weakly coupled lossless shaper approaches the ideal phases at the peaks") {
  auto d = baseline();
  d.kappa_sq = 1e-5;
  d.waveguide.alpha = 0.0;
  d.phases = {0.0, 0.5, 1.0, 2.0, -2.5, 3.0};
  const auto cfg = d.build();
  for (int m = 0; m < 6; ++m) {
    const double err = std::remainder(std::arg(shaper_response(cfg, cfg.grid.bin(m))) - d.phases[m], 2 * oracle::pi);
    CHECK(std::abs(err) < 1e-3);
  }
}

TEST_CASE("stronger coupling broadens the channels") {
  auto d = baseline();
  const double narrow = channel_linewidth(d.build(), 2);
  d.kappa_sq = 0.02;
  CHECK(channel_linewidth(d.build(), 2) > narrow);
}
