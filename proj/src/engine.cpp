#include "qfpsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qfpsim/error.hpp"
#include "qfpsim/optimize.hpp"
#include "qfpsim/parallel.hpp"
#include "qfpsim/units.hpp"

namespace qfp {

namespace {

constexpr int kAlignGrid = 90;
constexpr double kAlignTol = 1e-6;
constexpr int kAlignRounds = 25;

int window_index(int mode, int guard_modes, int dim) {
  const int i = mode + guard_modes;
  if (i < 0 || i >= dim) {
    throw IndexOutOfWindow(
        fmt::format("computational mode {} lies outside the simulated window", mode));
  }
  return i;
}

}  // namespace

void QfpStack::validate() const {
  shaper.validate();
  eom1.validate();
  eom2.validate();
  if (guard_modes < truncation) {
    throw InvalidArgument(fmt::format("stack: guard_modes ({}) must be >= EOM truncation ({})",
                                      guard_modes, truncation));
  }
}

QfpStack StackDesign::build() const {
  QfpStack stack{eom1, shaper.build(), eom2, guard_modes, truncation, samples};
  stack.validate();
  return stack;
}

GateSpec GateSpec::hadamard(int mode0, int mode1) {
  Eigen::MatrixXcd u(2, 2);
  u << 1.0, 1.0, 1.0, -1.0;
  u /= std::sqrt(2.0);
  GateSpec spec{u, {mode0, mode1}};
  spec.validate();
  return spec;
}

GateSpec GateSpec::parallel_hadamard() {
  const GateSpec single = hadamard();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  u.topLeftCorner(2, 2) = single.target;
  u.bottomRightCorner(2, 2) = single.target;
  GateSpec spec{u, {2, 3, 8, 9}};
  spec.validate();
  return spec;
}

void GateSpec::validate() const {
  const auto d = target.rows();
  if (d == 0 || target.cols() != d || static_cast<std::size_t>(d) != modes.size()) {
    throw InvalidArgument("gate: target must be d x d with d computational modes");
  }
  const double err = (target.adjoint() * target - Eigen::MatrixXcd::Identity(d, d)).norm();
  if (err > 1e-12) throw InvalidArgument(fmt::format("gate: target is not unitary ({:.2e})", err));
  for (std::size_t i = 1; i < modes.size(); ++i) {
    if (modes[i] <= modes[i - 1]) throw InvalidArgument("gate: modes must be strictly increasing");
  }
}

Eigen::MatrixXcd eom_matrix(const EomCoefficients& coeffs, int dim) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim, dim);
  const int k = coeffs.truncation();
  for (int m = 0; m < dim; ++m) {
    for (int n = std::max(0, m - k); n <= std::min(dim - 1, m + k); ++n) e(m, n) = coeffs(m - n);
  }
  return e;
}

Eigen::VectorXcd shaper_diagonal(const ShaperConfig& shaper, double offset, int guard_modes) {
  const int dim = shaper.grid.count + 2 * guard_modes;
  Eigen::VectorXcd d(dim);
  for (int i = 0; i < dim; ++i) {
    d(i) = evaluate_shaper(shaper, shaper.grid.bin(i - guard_modes) + offset);
  }
  return d;
}

Eigen::MatrixXcd shaper_matrix(const ShaperConfig& shaper, double offset, int guard_modes) {
  return shaper_diagonal(shaper, offset, guard_modes).asDiagonal();
}

Eigen::MatrixXcd compose_v(const QfpStack& stack, double offset) {
  const int dim = stack.dim();
  const auto e1 = eom_matrix(fourier_coefficients(stack.eom1, stack.truncation, stack.samples), dim);
  const auto e2 = eom_matrix(fourier_coefficients(stack.eom2, stack.truncation, stack.samples), dim);
  return e2 * shaper_diagonal(stack.shaper, offset, stack.guard_modes).asDiagonal() * e1;
}

Eigen::MatrixXcd extract_w(const Eigen::MatrixXcd& v, const GateSpec& spec, int guard_modes) {
  const int d = spec.size();
  const int dim = static_cast<int>(v.rows());
  Eigen::MatrixXcd w(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      w(r, c) = v(window_index(spec.modes[r], guard_modes, dim),
                  window_index(spec.modes[c], guard_modes, dim));
    }
  }
  return w;
}

GateMetrics fidelity_and_prob(const Eigen::MatrixXcd& w, const Eigen::MatrixXcd& target) {
  const double d = static_cast<double>(target.rows());
  const double p = w.squaredNorm() / target.squaredNorm();
  if (p == 0.0) return {0.0, 0.0, false};
  const double overlap = std::norm((w.adjoint() * target).trace());
  return {overlap / (d * d * p), p, true};
}

Eigen::MatrixXcd gate_submatrix(const EomCoefficients& first, const Eigen::VectorXcd& diagonal,
                                const EomCoefficients& second, const GateSpec& spec,
                                int guard_modes) {
  const int d = spec.size();
  const int dim = static_cast<int>(diagonal.size());
  std::vector<int> idx(d);
  for (int r = 0; r < d; ++r) idx[r] = window_index(spec.modes[r], guard_modes, dim);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const int lo = std::max({0, idx[r] - second.truncation(), idx[c] - first.truncation()});
      const int hi = std::min({dim - 1, idx[r] + second.truncation(), idx[c] + first.truncation()});
      Complex sum = 0.0;
      for (int n = lo; n <= hi; ++n) sum += second(idx[r] - n) * diagonal(n) * first(n - idx[c]);
      w(r, c) = sum;
    }
  }
  return w;
}

GateReport evaluate_gate(const QfpStack& stack, const GateSpec& spec, double offset) {
  const auto c1 = fourier_coefficients(stack.eom1, stack.truncation, stack.samples);
  const auto c2 = fourier_coefficients(stack.eom2, stack.truncation, stack.samples);
  const auto diag = shaper_diagonal(stack.shaper, offset, stack.guard_modes);
  GateReport report;
  report.offset = offset;
  report.w = gate_submatrix(c1, diag, c2, spec, stack.guard_modes);
  const auto m = fidelity_and_prob(report.w, spec.target);
  report.fidelity = m.fidelity;
  report.success_prob = m.success_prob;
  report.fidelity_defined = m.fidelity_defined;
  report.success_prob_normalized = 1.0;
  return report;
}

QfpStack align_eoms(const QfpStack& stack, const GateSpec& spec) {
  spec.validate();
  const auto base1 = fourier_coefficients(stack.eom1, stack.truncation, stack.samples);
  const auto base2 = fourier_coefficients(stack.eom2, stack.truncation, stack.samples);
  const auto diag = shaper_diagonal(stack.shaper, 0.0, stack.guard_modes);
  const double theta1 = stack.eom1.rf_phase;
  const double theta2 = stack.eom2.rf_phase;

  // chi: common RF phase (= eom1.rf_phase); rho: eom2 relative to eom1.
  auto fidelity = [&](double chi, double rho) {
    const auto c1 = base1.rf_shifted(chi - theta1);
    const auto c2 = base2.rf_shifted(chi + rho - theta2);
    return fidelity_and_prob(gate_submatrix(c1, diag, c2, spec, stack.guard_modes), spec.target)
        .fidelity;
  };

  // The landscape is not separable in (chi, rho), so start from a joint grid.
  double chi = theta1;
  double rho = theta2 - theta1;
  double best = fidelity(chi, rho);
  const double step = 2.0 * std::numbers::pi / kAlignGrid;
  for (int i = 0; i < kAlignGrid; ++i) {
    for (int j = 0; j < kAlignGrid; ++j) {
      const double f = fidelity(i * step, j * step);
      if (f > best) {
        best = f;
        chi = i * step;
        rho = j * step;
      }
    }
  }
  for (int round = 0; round < kAlignRounds; ++round) {
    const double chi_before = chi, rho_before = rho;
    auto r = golden_section_maximize([&](double x) { return fidelity(chi, x); }, rho - step,
                                     rho + step, kAlignTol);
    if (r.value > best) {
      rho = r.x;
      best = r.value;
    }
    auto c = golden_section_maximize([&](double x) { return fidelity(x, rho); }, chi - step,
                                     chi + step, kAlignTol);
    if (c.value > best) {
      chi = c.x;
      best = c.value;
    }
    if (std::abs(chi - chi_before) < kAlignTol && std::abs(rho - rho_before) < kAlignTol) break;
  }

  auto wrap = [](double x) {
    const double two_pi = 2.0 * std::numbers::pi;
    x = std::fmod(x, two_pi);
    return x < 0.0 ? x + two_pi : x;
  };
  QfpStack aligned = stack;
  aligned.eom1.rf_phase = wrap(chi);
  aligned.eom2.rf_phase = wrap(chi + rho);
  return aligned;
}

void normalize_probabilities(std::vector<GateReport>& reports) {
  double peak = 0.0;
  for (const auto& r : reports) peak = std::max(peak, r.success_prob);
  for (auto& r : reports) r.success_prob_normalized = peak > 0.0 ? r.success_prob / peak : 0.0;
}

std::vector<GateReport> sweep_offset(const QfpStack& stack, const GateSpec& spec,
                                     const std::vector<double>& offsets, int threads) {
  stack.validate();
  spec.validate();
  std::vector<GateReport> reports(offsets.size());
  parallel_for(offsets.size(), threads,
               [&](std::size_t i) { reports[i] = evaluate_gate(stack, spec, offsets[i]); });
  normalize_probabilities(reports);
  return reports;
}

namespace {

template <typename Mutate>
std::vector<GateReport> rebuild_sweep(const StackDesign& design, const GateSpec& spec,
                                      std::size_t n, int threads, Mutate mutate) {
  spec.validate();
  std::vector<GateReport> reports(n);
  parallel_for(n, threads, [&](std::size_t i) {
    StackDesign point = design;
    mutate(point, i);
    reports[i] = evaluate_gate(align_eoms(point.build(), spec), spec, 0.0);
  });
  return reports;
}

}  // namespace

std::vector<GateReport> sweep_spacing(const StackDesign& design, const GateSpec& spec,
                                      const std::vector<double>& spacings, int threads) {
  auto reports = rebuild_sweep(design, spec, spacings.size(), threads,
                               [&](StackDesign& d, std::size_t i) { d.shaper.grid.spacing = spacings[i]; });
  normalize_probabilities(reports);
  return reports;
}

std::vector<GateReport> sweep_loss(const StackDesign& design, const GateSpec& spec,
                                   const std::vector<double>& alphas, int threads) {
  auto reports = rebuild_sweep(design, spec, alphas.size(), threads,
                               [&](StackDesign& d, std::size_t i) { d.shaper.waveguide.alpha = alphas[i]; });
  normalize_probabilities(reports);
  return reports;
}

std::vector<OrderSweepPoint> sweep_order(const StackDesign& design, const GateSpec& spec,
                                         const std::vector<int>& orders,
                                         const std::vector<double>& spacings, int threads) {
  if (orders.empty() || spacings.empty()) return {};
  const std::size_t ns = spacings.size();
  auto reports = rebuild_sweep(design, spec, orders.size() * ns, threads,
                               [&](StackDesign& d, std::size_t i) {
                                 d.shaper.filter_order = orders[i / ns];
                                 d.shaper.grid.spacing = spacings[i % ns];
                               });
  const std::size_t widest =
      std::max_element(spacings.begin(), spacings.end()) - spacings.begin();
  const double reference = reports[widest].success_prob;
  std::vector<OrderSweepPoint> out;
  out.reserve(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    reports[i].success_prob_normalized = reference > 0.0 ? reports[i].success_prob / reference : 0.0;
    out.push_back({orders[i / ns], spacings[i % ns], std::move(reports[i])});
  }
  return out;
}

GateEvaluator ideal_gate_evaluator(const StackDesign& design, const GateSpec& spec) {
  StackDesign ideal = design;
  ideal.shaper.mode = ShaperMode::ideal;
  return [ideal, spec](const ModulatorDrive& drive) {
    StackDesign point = ideal;
    point.eom1 = drive;
    point.eom2 = drive;
    // Strong drives spread over more sidebands; widen the band until the
    // coefficients converge.
    for (;;) {
      try {
        return evaluate_gate(align_eoms(point.build(), spec), spec, 0.0).fidelity;
      } catch (const TruncationError&) {
        if (point.truncation * 2 * 8 > point.samples) throw;
        point.truncation *= 2;
        point.guard_modes = std::max(point.guard_modes, point.truncation);
      }
    }
  };
}

}  // namespace qfp
