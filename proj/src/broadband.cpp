#include "qfpsim/broadband.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qfpsim/error.hpp"
#include "qfpsim/parallel.hpp"

namespace qfp {

NyquistQubit NyquistQubit::zero(double bandwidth) { return {1.0, 0.0, bandwidth}; }
NyquistQubit NyquistQubit::one(double bandwidth) { return {0.0, 1.0, bandwidth}; }
NyquistQubit NyquistQubit::plus(double bandwidth) {
  return {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), bandwidth};
}
NyquistQubit NyquistQubit::plus_i(double bandwidth) {
  return {1.0 / std::sqrt(2.0), Complex{0.0, 1.0 / std::sqrt(2.0)}, bandwidth};
}

void NyquistQubit::validate() const {
  const double norm = std::norm(c0) + std::norm(c1);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw InvalidArgument(fmt::format("qubit amplitudes are not normalised (|c0|^2+|c1|^2 = {})", norm));
  }
  if (!(bandwidth > 0.0)) throw InvalidArgument("qubit bandwidth must be positive");
}

double nyquist_spectrum(double bandwidth, double offset) {
  if (!(bandwidth > 0.0)) throw InvalidArgument("nyquist_spectrum: bandwidth must be positive");
  return std::abs(offset) < bandwidth / 2.0 ? std::sqrt(1.0 / bandwidth) : 0.0;
}

std::vector<double> quadrature_offsets(double bandwidth, int points) {
  if (points < 3 || points % 2 == 0) {
    throw InvalidArgument(fmt::format("quadrature needs an odd number >= 3 of points, got {}", points));
  }
  std::vector<double> out(points);
  const int half = points / 2;
  // Mirror-symmetric by construction; the centre node is exactly zero.
  for (int k = 0; k < points; ++k) out[k] = (k - half) * bandwidth / points;
  return out;
}

PropagatedWavepackets propagate(const QfpStack& stack, const Eigen::MatrixXcd& target,
                                const NyquistQubit& input, int quadrature_points, int threads) {
  input.validate();
  if (target.rows() != 2 || target.cols() != 2) {
    throw InvalidArgument("propagate: target must be a single-qubit (2x2) unitary");
  }
  if (!(input.bandwidth < stack.shaper.grid.spacing)) {
    throw BandwidthError(fmt::format(
        "input bandwidth {:.4g} GHz must be narrower than the bin spacing {:.4g} GHz",
        input.bandwidth / (2e9 * std::numbers::pi), stack.shaper.grid.spacing / (2e9 * std::numbers::pi)));
  }
  const int dim = stack.dim();
  const int row0 = input.modes[0] + stack.guard_modes;
  const int row1 = input.modes[1] + stack.guard_modes;
  if (row0 < 0 || row0 >= dim || row1 < 0 || row1 >= dim || row0 == row1) {
    throw IndexOutOfWindow("propagate: qubit modes must be distinct bins inside the window");
  }

  const auto offsets = quadrature_offsets(input.bandwidth, quadrature_points);
  const std::vector<double> weights(offsets.size(), input.bandwidth / quadrature_points);
  const int q = static_cast<int>(offsets.size());

  Eigen::Vector2cd in{input.c0, input.c1};
  const Eigen::Vector2cd out = target * in;

  PropagatedWavepackets result;
  result.ideal = {offsets, weights, Eigen::MatrixXcd::Zero(dim, q), {row0, row1}};
  result.actual = {offsets, weights, Eigen::MatrixXcd::Zero(dim, q), {row0, row1}};

  const auto c1 = fourier_coefficients(stack.eom1, stack.truncation, stack.samples);
  const auto c2 = fourier_coefficients(stack.eom2, stack.truncation, stack.samples);
  const auto e1 = eom_matrix(c1, dim);
  const auto e2 = eom_matrix(c2, dim);

  parallel_for(offsets.size(), threads, [&](std::size_t k) {
    const double s = nyquist_spectrum(input.bandwidth, offsets[k]);
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
    x(row0) = input.c0 * s;
    x(row1) = input.c1 * s;
    const auto diag = shaper_diagonal(stack.shaper, offsets[k], stack.guard_modes);
    result.actual.amplitudes.col(k) = e2 * (diag.asDiagonal() * (e1 * x));
    result.ideal.amplitudes(row0, k) = out(0) * s;
    result.ideal.amplitudes(row1, k) = out(1) * s;
  });
  return result;
}

WavepacketMetrics wavepacket_metrics(const Wavepacket& g, const Wavepacket& y,
                                     OutputSupport support) {
  if (g.amplitudes.rows() != y.amplitudes.rows() || g.amplitudes.cols() != y.amplitudes.cols() ||
      g.weights.size() != static_cast<std::size_t>(g.amplitudes.cols())) {
    throw InvalidArgument("wavepacket_metrics: wavepackets are sampled differently");
  }
  std::vector<bool> rows(g.amplitudes.rows(), support == OutputSupport::all_modes);
  if (support == OutputSupport::computational) {
    if (g.computational_rows.empty()) {
      for (Eigen::Index r = 0; r < g.amplitudes.rows(); ++r) rows[r] = g.amplitudes.row(r).squaredNorm() > 0.0;
    }
    for (int r : g.computational_rows) rows.at(r) = true;
  }
  Complex overlap = 0.0;
  double gg = 0.0, yy = 0.0;
  for (Eigen::Index k = 0; k < g.amplitudes.cols(); ++k) {
    const double w = g.weights[k];
    for (Eigen::Index r = 0; r < g.amplitudes.rows(); ++r) {
      gg += w * std::norm(g.amplitudes(r, k));
      if (!rows[r]) continue;
      overlap += w * std::conj(g.amplitudes(r, k)) * y.amplitudes(r, k);
      yy += w * std::norm(y.amplitudes(r, k));
    }
  }
  if (gg == 0.0) throw InvalidArgument("wavepacket_metrics: ideal wavepacket carries no energy");
  if (yy == 0.0) return {0.0, 0.0};
  return {std::norm(overlap) / (gg * yy), yy / gg};
}

}  // namespace qfp
