#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfpsim/broadband.hpp"
#include "qfpsim/engine.hpp"
#include "qfpsim/ring_filter.hpp"

namespace qfp {

/// Evenly spaced samples; steps == 1 yields only `start`.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  std::vector<double> values() const;
  bool operator==(const Range&) const = default;
};

// Frequencies are linear (THz/GHz) here and converted to rad/s when the
// simulation objects are built.
struct RunConfig {
  struct Waveguide {
    double ref_frequency_THz = 193.0;
    double n_eff = 2.37;
    double group_index = 4.226;
    double gvd_n2 = 0.0;  // d2 n_eff / d omega2, s^2/rad^2
    double loss_dB_per_cm = 0.5;
    bool operator==(const Waveguide&) const = default;
  } waveguide;

  struct Ring {
    double radius_um = 20.0;
    bool operator==(const Ring&) const = default;
  } ring;

  struct Shaper {
    std::string mode = "mrr";  // "mrr" | "ideal"
    std::optional<int> channels;
    int filter_order = 1;
    double kappa_sq = 0.01;
    std::optional<std::vector<double>> phases;
    CouplingTable inter_coupling_table = default_coupling_table();
    bool operator==(const Shaper&) const = default;
  } shaper;

  struct Grid {
    double f0_THz = 193.0;
    double spacing_GHz = 15.0;
    bool operator==(const Grid&) const = default;
  } grid;

  struct Eom {
    std::string kind = "sinusoid";  // "sinusoid" | "log_voltage"
    double depth = 0.8283;
    double rf_phase = 0.0;
    double v_dc = 15.5;
    double v_1 = 15.5;
    double a = 0.85;
    double v_0 = 4.25;
    int truncation = kDefaultTruncation;
    int samples = kDefaultSamples;
    int guard_modes = 16;
    bool operator==(const Eom&) const = default;
  } eom;

  struct Gate {
    std::string target = "hadamard";  // "hadamard" | "hadamard-parallel" | "explicit"
    std::optional<std::vector<int>> modes;
    std::optional<std::vector<std::vector<std::complex<double>>>> matrix;
    bool operator==(const Gate&) const = default;
  } gate;

  struct Sweep {
    Range offset_GHz{-3.0, 3.0, 601};
    Range spacing_GHz{1.0, 50.0, 50};
    std::vector<double> loss_dB_per_cm{0.0, 0.1, 0.25, 0.5, 1.0};
    std::vector<int> orders{1, 2, 3, 4, 5, 6};
    Range order_spacing_GHz{0.2, 5.0, 25};
    Range bandwidth_GHz{0.0, 2.0, 21};
    int quadrature_points = 201;
    std::string input_state = "plus";  // "zero" | "one" | "plus" | "plus_i"
    std::string output_support = "computational";  // "computational" | "all_modes"
    Range v_dc_V{2.0, 24.0, 23};
    double response_span_GHz = 60.0;
    double response_step_MHz = 10.0;
    bool operator==(const Sweep&) const = default;
  } sweep;

  struct Output {
    std::string dir = "out";
    bool svg = false;
    bool json = false;
    bool operator==(const Output&) const = default;
  } output;

  bool operator==(const RunConfig&) const = default;

  int channel_count() const;
};

/// Strict parse: unknown keys and type mismatches raise ConfigError naming the
/// offending path (e.g. "eom.depth").
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

/// FNV-1a over the canonical JSON dump, as 16 hex digits.
std::string config_hash(const RunConfig& config);

StackDesign make_design(const RunConfig& config);
GateSpec make_gate(const RunConfig& config);
NyquistQubit make_qubit(const RunConfig& config, double bandwidth);

}  // namespace qfp
