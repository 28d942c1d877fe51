#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qfpsim/eom.hpp"
#include "qfpsim/pulse_shaper.hpp"

namespace qfp {

/// EOM -> pulse shaper -> EOM, simulated on the shaper grid extended by
/// guard_modes bins on each side. Window index i corresponds to grid bin
/// i - guard_modes.
struct QfpStack {
  ModulatorDrive eom1;
  ShaperConfig shaper;
  ModulatorDrive eom2;
  int guard_modes = 16;
  int truncation = kDefaultTruncation;
  int samples = kDefaultSamples;

  int dim() const { return shaper.grid.count + 2 * guard_modes; }
  void validate() const;
};

/// Buildable description of a stack; sweeps that alter the grid or the
/// filters rebuild from here.
struct StackDesign {
  ShaperDesign shaper;
  ModulatorDrive eom1;
  ModulatorDrive eom2;
  int guard_modes = 16;
  int truncation = kDefaultTruncation;
  int samples = kDefaultSamples;

  QfpStack build() const;
};

struct GateSpec {
  Eigen::MatrixXcd target;
  std::vector<int> modes;  // grid indices of the computational bins

  static GateSpec hadamard(int mode0 = 2, int mode1 = 3);
  /// Two Hadamards on (2,3) and (8,9) of a 12-bin grid.
  static GateSpec parallel_hadamard();

  int size() const { return static_cast<int>(modes.size()); }
  void validate() const;
};

struct GateMetrics {
  double fidelity = 0.0;
  double success_prob = 0.0;
  bool fidelity_defined = true;  // false when P = 0 and F is reported as 0
};

struct GateReport {
  double offset = 0.0;  // rad/s
  Eigen::MatrixXcd w;
  double fidelity = 0.0;
  double success_prob = 0.0;
  double success_prob_normalized = 0.0;
  bool fidelity_defined = true;
};

/// Banded Toeplitz matrix with entry (m, n) = c_{m-n}.
Eigen::MatrixXcd eom_matrix(const EomCoefficients& coeffs, int dim);

/// H(omega_n + offset) for every window bin, guard bins included.
Eigen::VectorXcd shaper_diagonal(const ShaperConfig& shaper, double offset, int guard_modes);
Eigen::MatrixXcd shaper_matrix(const ShaperConfig& shaper, double offset, int guard_modes);

/// V(offset) = E2 S(offset) E1.
Eigen::MatrixXcd compose_v(const QfpStack& stack, double offset);

Eigen::MatrixXcd extract_w(const Eigen::MatrixXcd& v, const GateSpec& spec, int guard_modes);

/// P = Tr(W^H W) / Tr(U^H U), F = |Tr(W^H U)|^2 / (d^2 P); F = 0 when P = 0.
GateMetrics fidelity_and_prob(const Eigen::MatrixXcd& w, const Eigen::MatrixXcd& target);

/// W for given coefficients and shaper diagonal without forming V.
Eigen::MatrixXcd gate_submatrix(const EomCoefficients& first, const Eigen::VectorXcd& diagonal,
                                const EomCoefficients& second, const GateSpec& spec,
                                int guard_modes);

GateReport evaluate_gate(const QfpStack& stack, const GateSpec& spec, double offset);

/// Chooses eom1.rf_phase = chi and eom2.rf_phase = chi + rho maximising
/// F_W(0): a 90 x 90 grid over (chi, rho), then alternating golden-section
/// refinement of both to 1e-6 rad.
QfpStack align_eoms(const QfpStack& stack, const GateSpec& spec);

/// Evaluates each offset; the normalised probability is relative to the
/// largest P in the sweep.
std::vector<GateReport> sweep_offset(const QfpStack& stack, const GateSpec& spec,
                                     const std::vector<double>& offsets, int threads = 1);

/// Rebuilds, re-tunes and re-aligns the stack for each bin spacing (rad/s);
/// reports at zero offset.
std::vector<GateReport> sweep_spacing(const StackDesign& design, const GateSpec& spec,
                                      const std::vector<double>& spacings, int threads = 1);

/// Same as sweep_spacing over the waveguide attenuation alpha (1/cm).
std::vector<GateReport> sweep_loss(const StackDesign& design, const GateSpec& spec,
                                   const std::vector<double>& alphas, int threads = 1);

struct OrderSweepPoint {
  int order = 1;
  double spacing = 0.0;  // rad/s
  GateReport report;
};

/// Filter order x spacing grid. Probabilities are normalised to the first
/// listed order at the widest spacing.
std::vector<OrderSweepPoint> sweep_order(const StackDesign& design, const GateSpec& spec,
                                         const std::vector<int>& orders,
                                         const std::vector<double>& spacings, int threads = 1);

/// F_W(0) with the shaper replaced by its ideal line-by-line counterpart, the
/// given drive on both EOMs and the EOMs aligned. Used by optimize_drive.
GateEvaluator ideal_gate_evaluator(const StackDesign& design, const GateSpec& spec);

void normalize_probabilities(std::vector<GateReport>& reports);

}  // namespace qfp
