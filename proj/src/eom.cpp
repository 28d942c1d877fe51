#include "qfpsim/eom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <fftw3.h>
#include <fmt/format.h>

#include "qfpsim/error.hpp"
#include "qfpsim/optimize.hpp"

namespace qfp {

namespace {

constexpr double kTailLimit = 1e-10;

// FFTW planning is not thread-safe; executing an existing plan on new arrays
// is. Plans are created once per size under a lock and reused.
class BackwardPlans {
 public:
  static fftw_plan get(int n) {
    static BackwardPlans instance;
    std::lock_guard lock(instance.mutex_);
    auto it = instance.plans_.find(n);
    if (it != instance.plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    instance.plans_.emplace(n, plan);
    return plan;
  }

 private:
  ~BackwardPlans() {
    for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
  }
  std::mutex mutex_;
  std::map<int, fftw_plan> plans_;
};

struct FftwBuffer {
  explicit FftwBuffer(int n) : data(fftw_alloc_complex(n)) {}
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

double drive_voltage(const ModulatorDrive& drive, double t_norm) {
  return drive.v_dc + drive.v_1 * std::sin(2.0 * std::numbers::pi * t_norm + drive.rf_phase);
}

Complex field_factor(const ModulatorDrive& drive, double t_norm) {
  const double phase = phase_waveform(drive, t_norm);
  double amp = 1.0;
  if (drive.kind == DriveKind::log_voltage && drive.amplitude) {
    amp = drive.amplitude(drive_voltage(drive, t_norm));
  }
  return std::polar(amp, phase);
}

}  // namespace

ModulatorDrive ModulatorDrive::sinusoid(double depth, double rf_phase) {
  ModulatorDrive d;
  d.kind = DriveKind::sinusoid;
  d.depth = depth;
  d.rf_phase = rf_phase;
  d.validate();
  return d;
}

ModulatorDrive ModulatorDrive::log_voltage(double v_dc, double v_1, double a, double v_0,
                                           double rf_phase) {
  ModulatorDrive d;
  d.kind = DriveKind::log_voltage;
  d.v_dc = v_dc;
  d.v_1 = v_1;
  d.a = a;
  d.v_0 = v_0;
  d.rf_phase = rf_phase;
  d.validate();
  return d;
}

void ModulatorDrive::validate() const {
  if (kind == DriveKind::sinusoid) {
    if (!(depth >= 0.0)) throw InvalidArgument("sinusoid drive: depth must be >= 0");
    return;
  }
  if (!(v_0 > 0.0)) throw InvalidArgument("log-voltage drive: v_0 must be positive");
  if (!(v_1 >= 0.0)) throw InvalidArgument("log-voltage drive: v_1 must be >= 0");
  // Small slack so that a golden-section boundary step does not trip this.
  if (!(v_dc >= v_1 - 1e-12)) {
    throw InvalidArgument(fmt::format(
        "log-voltage drive: v_1 = {} exceeds v_dc = {}; reverse voltage would go negative", v_1,
        v_dc));
  }
}

EomCoefficients::EomCoefficients(int truncation, std::vector<Complex> coeffs)
    : truncation_(truncation), coeffs_(std::move(coeffs)) {
  if (truncation < 0 || coeffs_.size() != static_cast<std::size_t>(2 * truncation + 1)) {
    throw InvalidArgument("EomCoefficients: need 2K+1 values");
  }
}

EomCoefficients EomCoefficients::identity(int truncation) {
  std::vector<Complex> c(2 * truncation + 1);
  c[truncation] = 1.0;
  return {truncation, std::move(c)};
}

double EomCoefficients::energy() const {
  double e = 0.0;
  for (const auto& c : coeffs_) e += std::norm(c);
  return e;
}

EomCoefficients EomCoefficients::rf_shifted(double delta) const {
  std::vector<Complex> shifted(coeffs_.size());
  for (int n = -truncation_; n <= truncation_; ++n) {
    shifted[n + truncation_] = coeffs_[n + truncation_] * std::polar(1.0, -n * delta);
  }
  return {truncation_, std::move(shifted)};
}

double phase_waveform(const ModulatorDrive& drive, double t_norm) {
  if (drive.kind == DriveKind::sinusoid) {
    return drive.depth * std::sin(2.0 * std::numbers::pi * t_norm + drive.rf_phase);
  }
  const double arg = 1.0 + drive_voltage(drive, t_norm) / drive.v_0;
  if (!(arg > 0.0)) {
    throw DomainError(fmt::format("log-voltage drive: 1 + V/V0 = {} is not positive", arg));
  }
  return drive.a * std::log(arg);
}

std::vector<Complex> full_spectrum(const ModulatorDrive& drive, int samples) {
  if (samples < 1 || (samples & (samples - 1)) != 0) {
    throw InvalidArgument(fmt::format("sample count {} is not a power of two", samples));
  }
  FftwBuffer in(samples), out(samples);
  for (int j = 0; j < samples; ++j) {
    const Complex v = field_factor(drive, static_cast<double>(j) / samples);
    in.data[j][0] = v.real();
    in.data[j][1] = v.imag();
  }
  fftw_execute_dft(BackwardPlans::get(samples), in.data, out.data);
  std::vector<Complex> spectrum(samples);
  for (int k = 0; k < samples; ++k) {
    spectrum[k] = Complex{out.data[k][0], out.data[k][1]} / static_cast<double>(samples);
  }
  return spectrum;
}

EomCoefficients fourier_coefficients(const ModulatorDrive& drive, int truncation, int samples) {
  if (truncation < 1) throw InvalidArgument("fourier_coefficients: truncation must be >= 1");
  if (samples < 8 * truncation) {
    throw InvalidArgument(fmt::format("fourier_coefficients: {} samples is fewer than 8K = {}",
                                      samples, 8 * truncation));
  }
  drive.validate();
  const auto spectrum = full_spectrum(drive, samples);
  auto at = [&](int n) { return spectrum[((n % samples) + samples) % samples]; };

  double total = 0.0;
  for (const auto& c : spectrum) total += std::norm(c);
  double core = 0.0;
  for (int n = -(truncation - 2); n <= truncation - 2; ++n) core += std::norm(at(n));
  const double tail = std::max(0.0, total - core) / total;
  if (tail >= kTailLimit) {
    throw TruncationError(
        fmt::format("EOM truncation K = {} leaves relative tail energy {:.3e} beyond |n| > {}",
                    truncation, tail, truncation - 2),
        tail);
  }
  std::vector<Complex> kept(2 * truncation + 1);
  for (int n = -truncation; n <= truncation; ++n) kept[n + truncation] = at(n);
  return {truncation, std::move(kept)};
}

std::vector<DriveOptimum> optimize_drive(const std::vector<double>& v_dc_grid, double a, double v_0,
                                         const GateEvaluator& gate_eval) {
  std::vector<DriveOptimum> out;
  out.reserve(v_dc_grid.size());
  for (double v_dc : v_dc_grid) {
    auto fidelity = [&](double v_1) {
      return gate_eval(ModulatorDrive::log_voltage(v_dc, std::clamp(v_1, 0.0, v_dc), a, v_0));
    };
    const auto best = maximize_on_grid_then_golden(fidelity, 0.0, v_dc, 64, 1e-4);
    out.push_back({v_dc, best.x, best.value});
  }
  return out;
}

}  // namespace qfp
