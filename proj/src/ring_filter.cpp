#include "qfpsim/ring_filter.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qfpsim/error.hpp"

namespace qfp {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_coupling(double kappa_sq, const char* what) {
  if (!(kappa_sq > 0.0 && kappa_sq < 1.0)) {
    throw InvalidArgument(fmt::format("ring filter: {} coupling {} outside (0,1)", what, kappa_sq));
  }
}

// Two-port section seen from the input-bus side ("top") and drop-bus side
// ("bottom").
struct Section {
  Complex reflect_top;      // top -> top
  Complex transmit_down;    // top -> bottom
  Complex transmit_up;      // bottom -> top
  Complex reflect_bottom;   // bottom -> bottom
};

Section star(const Section& a, const Section& b) {
  const Complex loop = 1.0 - a.reflect_bottom * b.reflect_top;
  return {a.reflect_top + a.transmit_up * b.reflect_top * a.transmit_down / loop,
          b.transmit_down * a.transmit_down / loop,
          a.transmit_up * b.transmit_up / loop,
          b.reflect_bottom + b.transmit_down * a.reflect_bottom * b.transmit_up / loop};
}

Section coupler(double kappa_sq) {
  const double t = std::sqrt(1.0 - kappa_sq);
  const Complex cross = kI * std::sqrt(kappa_sq);
  return {t, cross, cross, t};
}

Section half_trip(Complex h) { return {0.0, h, h, 0.0}; }

}  // namespace

void RingFilter::validate() const {
  if (rings.empty()) throw InvalidArgument("ring filter: order must be >= 1");
  for (const auto& ring : rings) ring.validate();
  check_coupling(bus_kappa_sq, "bus");
  if (inter_kappa_sq.size() + 1 != rings.size()) {
    throw InvalidArgument(fmt::format("ring filter: order {} needs {} inter-ring couplings, got {}",
                                      rings.size(), rings.size() - 1, inter_kappa_sq.size()));
  }
  for (double k : inter_kappa_sq) check_coupling(k, "inter-ring");
}

CouplingTable default_coupling_table() {
  CouplingTable table;
  table.source =
      "maximally flat (Butterworth) serial coupled-ring filter; r_i = g1^2 / (4 g_i g_{i+1}), "
      "g_k = 2 sin((2k-1) pi / 2N)";
  for (int n = 2; n <= 6; ++n) {
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = 2.0 * std::sin((2.0 * (k + 1) - 1.0) * std::numbers::pi / (2.0 * n));
    std::vector<double> ratios(n - 1);
    for (int i = 0; i + 1 < n; ++i) ratios[i] = g[0] * g[0] / (4.0 * g[i] * g[i + 1]);
    table.ratios[n] = ratios;
  }
  return table;
}

FilterResponse single_ring_response(const WaveguideModel& model, const RingFilter& filter,
                                    double omega) {
  if (filter.order() != 1) throw InvalidArgument("single_ring_response: filter order must be 1");
  const RingGeometry& ring = filter.rings.front();
  const double phi = wrapped_round_trip_phase(model, ring, omega);
  const double a = field_attenuation(model, ring);
  const double t = std::sqrt(1.0 - filter.bus_kappa_sq);
  const Complex loop = a * std::exp(kI * phi);
  const Complex denom = 1.0 - t * t * loop;
  return {(t - t * loop) / denom,
          -filter.bus_kappa_sq * std::sqrt(a) * std::exp(kI * (phi / 2.0)) / denom};
}

FilterResponse nring_response(const WaveguideModel& model, const RingFilter& filter,
                              double omega) {
  const int n = filter.order();
  if (n < 1) throw InvalidArgument("nring_response: filter order must be >= 1");
  Section total = coupler(filter.bus_kappa_sq);
  for (int j = 0; j < n; ++j) {
    const RingGeometry& ring = filter.rings[j];
    const double phi = wrapped_round_trip_phase(model, ring, omega);
    const Complex h = std::sqrt(field_attenuation(model, ring)) * std::exp(kI * (phi / 2.0));
    total = star(total, half_trip(h));
    total = star(total, coupler(j + 1 < n ? filter.inter_kappa_sq[j] : filter.bus_kappa_sq));
  }
  return {total.reflect_top, total.transmit_down};
}

FilterResponse filter_response(const WaveguideModel& model, const RingFilter& filter,
                               double omega) {
  return filter.order() == 1 ? single_ring_response(model, filter, omega)
                             : nring_response(model, filter, omega);
}

RingFilter synthesize_flat_filter(const WaveguideModel& model, double radius_um, int order,
                                  double bus_kappa_sq, const CouplingTable& table,
                                  double omega_target) {
  if (order < 1) throw InvalidArgument("synthesize_flat_filter: order must be >= 1");
  RingFilter filter;
  filter.bus_kappa_sq = bus_kappa_sq;
  if (order > 1) {
    auto it = table.ratios.find(order);
    if (it == table.ratios.end()) {
      throw ConfigError(fmt::format("inter-coupling table has no entry for order {}", order));
    }
    if (static_cast<int>(it->second.size()) != order - 1) {
      throw ConfigError(fmt::format("inter-coupling table entry for order {} must have {} values",
                                    order, order - 1));
    }
    for (double r : it->second) filter.inter_kappa_sq.push_back(r * bus_kappa_sq * bus_kappa_sq);
  }
  const RingGeometry tuned = tune_ring(model, RingGeometry{radius_um, 0.0}, omega_target);
  filter.rings.assign(order, tuned);
  filter.validate();
  return filter;
}

}  // namespace qfp
