#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace qfp {

using Complex = std::complex<double>;

enum class DriveKind { sinusoid, log_voltage };

/// Periodic phase drive of one modulator. The waveform period is one bin
/// spacing; t_norm in [0,1) is time in units of that period.
///
/// sinusoid:    phi(t) = depth * sin(2 pi t + rf_phase)
/// log_voltage: phi(t) = a * ln(1 + V(t)/v_0), V(t) = v_dc + v_1 sin(2 pi t + rf_phase)
struct ModulatorDrive {
  DriveKind kind = DriveKind::sinusoid;
  double depth = 0.0;
  double rf_phase = 0.0;
  double v_dc = 0.0;
  double v_1 = 0.0;
  double a = 0.85;
  double v_0 = 4.25;
  // Optional voltage-dependent field amplitude for log_voltage drives; empty
  // means lossless.
  std::function<double(double)> amplitude;

  static ModulatorDrive sinusoid(double depth, double rf_phase = 0.0);
  static ModulatorDrive log_voltage(double v_dc, double v_1, double a, double v_0,
                                    double rf_phase = 0.0);

  void validate() const;
  bool phase_only() const { return kind == DriveKind::sinusoid || !amplitude; }
};

/// Scattering amplitudes c_n, n in [-truncation, truncation].
class EomCoefficients {
 public:
  EomCoefficients() = default;
  EomCoefficients(int truncation, std::vector<Complex> coeffs);

  static EomCoefficients identity(int truncation);

  int truncation() const { return truncation_; }
  /// c_n, zero outside the retained band.
  Complex operator()(int n) const {
    return (n < -truncation_ || n > truncation_) ? Complex{} : coeffs_[n + truncation_];
  }
  const std::vector<Complex>& values() const { return coeffs_; }
  double energy() const;

  /// Coefficients of the same waveform delayed in RF phase by `delta`:
  /// c_n -> c_n e^{-i n delta}.
  EomCoefficients rf_shifted(double delta) const;

 private:
  int truncation_ = 0;
  std::vector<Complex> coeffs_;
};

inline constexpr int kDefaultTruncation = 16;
inline constexpr int kDefaultSamples = 4096;

double phase_waveform(const ModulatorDrive& drive, double t_norm);

/// All P coefficients c_n = (1/P) sum_j e^{i phi(t_j)} e^{i 2 pi n j / P},
/// index n stored at position n mod P.
std::vector<Complex> full_spectrum(const ModulatorDrive& drive, int samples);

/// Truncated coefficients; throws TruncationError when the energy outside
/// |n| <= truncation - 2 exceeds 1e-10.
EomCoefficients fourier_coefficients(const ModulatorDrive& drive, int truncation = kDefaultTruncation,
                                     int samples = kDefaultSamples);

struct DriveOptimum {
  double v_dc = 0.0;
  double v_1 = 0.0;
  double fidelity = 0.0;
};

using GateEvaluator = std::function<double(const ModulatorDrive&)>;

/// For each bias, maximises gate_eval over v_1 in [0, v_dc]: a 64-point grid
/// followed by golden-section refinement to 1e-4 V. Bracket endpoints are
/// compared explicitly so a boundary optimum is returned exactly.
std::vector<DriveOptimum> optimize_drive(const std::vector<double>& v_dc_grid, double a, double v_0,
                                         const GateEvaluator& gate_eval);

}  // namespace qfp
