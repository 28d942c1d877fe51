#include "qfpsim/pulse_shaper.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qfpsim/error.hpp"

namespace qfp {

void FrequencyGrid::validate() const {
  if (!(spacing > 0.0)) throw InvalidArgument("grid: spacing must be positive");
  if (count < 1) throw InvalidArgument("grid: count must be >= 1");
  if (!(omega0 > 0.0)) throw InvalidArgument("grid: omega0 must be positive");
}

void ShaperConfig::validate() const {
  grid.validate();
  if (static_cast<int>(channels.size()) != grid.count) {
    throw InvalidArgument(fmt::format("shaper: {} channels for a grid of {} bins",
                                      channels.size(), grid.count));
  }
  if (mode == ShaperMode::mrr) {
    waveguide.validate();
    for (const auto& ch : channels) ch.filter.validate();
  }
}

std::vector<double> ShaperConfig::phases() const {
  std::vector<double> out;
  out.reserve(channels.size());
  for (const auto& ch : channels) out.push_back(ch.phase);
  return out;
}

ShaperConfig ShaperDesign::build() const {
  grid.validate();
  if (static_cast<int>(phases.size()) != grid.count) {
    throw InvalidArgument(fmt::format("shaper design: {} phases for {} channels", phases.size(),
                                      grid.count));
  }
  ShaperConfig config{waveguide, grid, {}, mode};
  config.channels.reserve(grid.count);
  for (int m = 0; m < grid.count; ++m) {
    ShaperChannel ch;
    ch.phase = phases[m];
    if (mode == ShaperMode::mrr) {
      ch.filter = synthesize_flat_filter(waveguide, radius_um, filter_order, kappa_sq,
                                         coupling_table, grid.bin(m));
    }
    config.channels.push_back(std::move(ch));
  }
  config.validate();
  return config;
}

std::vector<double> hadamard_stairstep(int gates) {
  std::vector<double> phases;
  for (int g = 0; g < gates; ++g) {
    for (int m = 0; m < 6; ++m) phases.push_back(m < 3 ? 0.0 : std::numbers::pi);
  }
  return phases;
}

Complex shaper_response(const ShaperConfig& config, double omega) {
  const std::size_t m = config.channels.size();
  std::vector<FilterResponse> resp(m);
  for (std::size_t p = 0; p < m; ++p) {
    resp[p] = filter_response(config.waveguide, config.channels[p].filter, omega);
  }
  // prefix[p] = prod_{q<p} T_q; products are built without division since a
  // tuned through port can be exactly zero.
  std::vector<Complex> prefix(m + 1, 1.0);
  for (std::size_t q = 0; q < m; ++q) prefix[q + 1] = prefix[q] * resp[q].through;
  Complex suffix = 1.0;
  Complex h = 0.0;
  for (std::size_t p = m; p-- > 0;) {
    const Complex drop = resp[p].drop;
    h += drop * drop * std::polar(1.0, config.channels[p].phase) * prefix[p] * suffix;
    suffix *= resp[p].through;
  }
  return h;
}

Complex ideal_response(const ShaperConfig& config, double omega) {
  const double x = (omega - config.grid.omega0) / config.grid.spacing;
  const double m = std::round(x);
  if (m < 0.0 || m >= config.grid.count || std::abs(x - m) > 0.5) return 0.0;
  return std::polar(1.0, config.channels[static_cast<std::size_t>(m)].phase);
}

Complex evaluate_shaper(const ShaperConfig& config, double omega) {
  return config.mode == ShaperMode::mrr ? shaper_response(config, omega)
                                        : ideal_response(config, omega);
}

double channel_linewidth(const ShaperConfig& config, int channel) {
  if (config.mode != ShaperMode::mrr) {
    throw InvalidArgument("channel_linewidth: only defined for the mrr shaper");
  }
  if (channel < 0 || channel >= config.grid.count) {
    throw InvalidArgument(fmt::format("channel_linewidth: no channel {}", channel));
  }
  const double center = config.grid.bin(channel);
  const double half = std::abs(shaper_response(config, center)) / 2.0;
  const double reach = config.grid.spacing / 2.0;
  const int steps = 2000;

  // Walk outward until |H| drops below half of its peak, then bisect.
  auto edge = [&](double direction) {
    double inside = 0.0;
    for (int k = 1; k <= steps; ++k) {
      const double outside = reach * k / steps;
      if (std::abs(shaper_response(config, center + direction * outside)) < half) {
        double lo = inside, hi = outside;
        for (int it = 0; it < 100 && hi - lo > 1e-9 * reach; ++it) {
          const double mid = 0.5 * (lo + hi);
          (std::abs(shaper_response(config, center + direction * mid)) < half ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
      }
      inside = outside;
    }
    throw LinewidthUndefined(fmt::format(
        "channel {}: half-maximum point not bracketed within half a bin spacing", channel));
  };
  const double width = edge(+1.0) + edge(-1.0);
  return width / 2.0 / (2.0 * std::numbers::pi);
}

}  // namespace qfp
