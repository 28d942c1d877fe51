#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "qfpsim/waveguide.hpp"

namespace qfp {

using Complex = std::complex<double>;

/// Serial add-drop filter: input bus, `rings.size()` coupled rings, drop bus.
/// Couplings are power coefficients kappa^2; bus couplers are symmetric.
struct RingFilter {
  std::vector<RingGeometry> rings;
  double bus_kappa_sq = 0.01;
  std::vector<double> inter_kappa_sq;  // ring-to-ring, size order()-1

  int order() const { return static_cast<int>(rings.size()); }
  void validate() const;
  bool operator==(const RingFilter&) const = default;
};

struct FilterResponse {
  Complex through;
  Complex drop;
};

/// Inter-ring coupling ratios keyed by filter order. For order N the entry
/// holds N-1 values r_i with inter_kappa_sq[i] = r_i * bus_kappa_sq^2.
struct CouplingTable {
  std::string source;
  std::map<int, std::vector<double>> ratios;

  bool operator==(const CouplingTable&) const = default;
};

/// Maximally flat (Butterworth) ratios for orders 2..6, from the
/// coupled-mode mapping kappa_i = (kappa_bus^2 / 2) g_1 / sqrt(g_i g_{i+1}).
CouplingTable default_coupling_table();

/// Closed-form single-ring add-drop response. Requires order() == 1.
FilterResponse single_ring_response(const WaveguideModel& model, const RingFilter& filter,
                                    double omega);

/// Any-order response by cascading coupler and half-round-trip sections.
/// Each section is a 2x2 scattering block (reflection toward the input bus,
/// transmission toward the drop bus) and blocks are combined with the Redheffer
/// star product, which stays unitary in the lossless limit instead of
/// amplifying 1/kappa factors the way the chain-matrix form does.
FilterResponse nring_response(const WaveguideModel& model, const RingFilter& filter,
                              double omega);

/// Dispatches to the closed form for order 1, otherwise the cascade.
FilterResponse filter_response(const WaveguideModel& model, const RingFilter& filter,
                               double omega);

/// Builds an order-N filter of identical rings, all tuned to omega_target.
RingFilter synthesize_flat_filter(const WaveguideModel& model, double radius_um, int order,
                                  double bus_kappa_sq, const CouplingTable& table,
                                  double omega_target);

}  // namespace qfp
