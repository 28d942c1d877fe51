#include "qfpsim/config.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "qfpsim/error.hpp"
#include "qfpsim/units.hpp"

namespace qfp {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(fmt::format("{}: {}", path.empty() ? "<root>" : path, what));
}

// Reads one JSON object, remembering which keys were consumed so that
// leftovers can be reported.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string path(const std::string& key) const { return join(path_, key); }

  template <typename T>
  void read(const std::string& key, T& out) {
    if (const json* v = find(key)) out = convert<T>(*v, path(key));
  }

  template <typename T>
  void read(const std::string& key, std::optional<T>& out) {
    if (const json* v = find(key)) out = convert<T>(*v, path(key));
  }

  void positive(const std::string& key, double& out) {
    read(key, out);
    if (!(out > 0.0)) fail(path(key), "must be positive");
  }

  void non_negative(const std::string& key, double& out) {
    read(key, out);
    if (!(out >= 0.0)) fail(path(key), "must be non-negative");
  }

  void one_of(const std::string& key, std::string& out, std::initializer_list<const char*> allowed) {
    read(key, out);
    for (const char* a : allowed) {
      if (out == a) return;
    }
    fail(path(key), fmt::format("unknown value \"{}\"", out));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(join(path_, it.key()), "unknown key");
    }
  }

  template <typename T>
  static T convert(const json& v, const std::string& path) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) fail(path, "expected a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) fail(path, "expected an integer");
      return v.get<int>();
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) fail(path, "expected a number");
      return v.get<double>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) fail(path, "expected a string");
      return v.get<std::string>();
    } else if constexpr (std::is_same_v<T, std::complex<double>>) {
      if (v.is_number()) return {v.get<double>(), 0.0};
      if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
      }
      fail(path, "expected a number or a [re, im] pair");
    } else {
      if (!v.is_array()) fail(path, "expected an array");
      T out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(convert<typename T::value_type>(v[i], fmt::format("{}[{}]", path, i)));
      }
      return out;
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename Fn>
void section(ObjectReader& parent, const std::string& key, Fn&& fn) {
  if (const json* v = parent.find(key)) {
    ObjectReader child(*v, parent.path(key));
    fn(child);
    child.finish();
  }
}

void read_range(ObjectReader& parent, const std::string& key, Range& range) {
  section(parent, key, [&](ObjectReader& r) {
    r.read("start", range.start);
    r.read("stop", range.stop);
    r.read("steps", range.steps);
    if (range.steps < 1) fail(r.path("steps"), "must be >= 1");
  });
}

json range_json(const Range& r) { return {{"start", r.start}, {"stop", r.stop}, {"steps", r.steps}}; }

json complex_json(std::complex<double> c) { return json::array({c.real(), c.imag()}); }

}  // namespace

std::vector<double> Range::values() const {
  if (steps <= 1) return {start};
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) out[i] = start + (stop - start) * i / (steps - 1);
  out.back() = stop;
  return out;
}

int RunConfig::channel_count() const {
  if (shaper.channels) return *shaper.channels;
  if (gate.target == "hadamard") return 6;
  if (gate.target == "hadamard-parallel") return 12;
  throw ConfigError("shaper.channels: required for an explicit gate");
}

RunConfig parse_config(const json& j) {
  RunConfig c;
  ObjectReader root(j, "");

  section(root, "waveguide", [&](ObjectReader& r) {
    r.positive("ref_frequency_THz", c.waveguide.ref_frequency_THz);
    r.positive("n_eff", c.waveguide.n_eff);
    r.positive("group_index", c.waveguide.group_index);
    r.read("gvd_n2", c.waveguide.gvd_n2);
    r.non_negative("loss_dB_per_cm", c.waveguide.loss_dB_per_cm);
  });
  section(root, "ring", [&](ObjectReader& r) { r.positive("radius_um", c.ring.radius_um); });
  section(root, "shaper", [&](ObjectReader& r) {
    r.one_of("mode", c.shaper.mode, {"mrr", "ideal"});
    r.read("channels", c.shaper.channels);
    if (c.shaper.channels && *c.shaper.channels < 1) fail(r.path("channels"), "must be >= 1");
    r.read("filter_order", c.shaper.filter_order);
    if (c.shaper.filter_order < 1) fail(r.path("filter_order"), "must be >= 1");
    r.read("kappa_sq", c.shaper.kappa_sq);
    if (!(c.shaper.kappa_sq > 0.0 && c.shaper.kappa_sq < 1.0)) fail(r.path("kappa_sq"), "must lie in (0,1)");
    r.read("phases", c.shaper.phases);
    section(r, "inter_coupling_table", [&](ObjectReader& t) {
      CouplingTable table;
      t.read("source", table.source);
      if (const json* ratios = t.find("ratios")) {
        for (auto it = ratios->begin(); it != ratios->end(); ++it) {
          const std::string path = fmt::format("{}.{}", t.path("ratios"), it.key());
          int order = 0;
          try {
            std::size_t used = 0;
            order = std::stoi(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument("trailing");
          } catch (const std::exception&) {
            fail(path, "order keys must be integers");
          }
          table.ratios[order] = ObjectReader::convert<std::vector<double>>(*it, path);
          if (static_cast<int>(table.ratios[order].size()) != order - 1) {
            fail(path, fmt::format("order {} needs {} ratios", order, order - 1));
          }
        }
      }
      c.shaper.inter_coupling_table = table;
    });
  });
  section(root, "grid", [&](ObjectReader& r) {
    r.positive("f0_THz", c.grid.f0_THz);
    r.positive("spacing_GHz", c.grid.spacing_GHz);
  });
  section(root, "eom", [&](ObjectReader& r) {
    r.one_of("kind", c.eom.kind, {"sinusoid", "log_voltage"});
    r.non_negative("depth", c.eom.depth);
    r.read("rf_phase", c.eom.rf_phase);
    r.non_negative("v_dc", c.eom.v_dc);
    r.non_negative("v_1", c.eom.v_1);
    r.positive("a", c.eom.a);
    r.positive("v_0", c.eom.v_0);
    r.read("truncation", c.eom.truncation);
    r.read("samples", c.eom.samples);
    r.read("guard_modes", c.eom.guard_modes);
    if (c.eom.truncation < 1) fail(r.path("truncation"), "must be >= 1");
    if (c.eom.samples < 8 * c.eom.truncation || (c.eom.samples & (c.eom.samples - 1)) != 0) {
      fail(r.path("samples"), "must be a power of two >= 8 * truncation");
    }
    if (c.eom.guard_modes < c.eom.truncation) fail(r.path("guard_modes"), "must be >= truncation");
    if (c.eom.v_1 > c.eom.v_dc) fail(r.path("v_1"), "must not exceed v_dc");
  });
  section(root, "gate", [&](ObjectReader& r) {
    r.one_of("target", c.gate.target, {"hadamard", "hadamard-parallel", "explicit"});
    r.read("modes", c.gate.modes);
    r.read("matrix", c.gate.matrix);
  });
  section(root, "sweep", [&](ObjectReader& r) {
    read_range(r, "offset_GHz", c.sweep.offset_GHz);
    read_range(r, "spacing_GHz", c.sweep.spacing_GHz);
    r.read("loss_dB_per_cm", c.sweep.loss_dB_per_cm);
    r.read("orders", c.sweep.orders);
    read_range(r, "order_spacing_GHz", c.sweep.order_spacing_GHz);
    read_range(r, "bandwidth_GHz", c.sweep.bandwidth_GHz);
    r.read("quadrature_points", c.sweep.quadrature_points);
    if (c.sweep.quadrature_points < 3 || c.sweep.quadrature_points % 2 == 0) {
      fail(r.path("quadrature_points"), "must be odd and >= 3");
    }
    r.one_of("input_state", c.sweep.input_state, {"zero", "one", "plus", "plus_i"});
    r.one_of("output_support", c.sweep.output_support, {"computational", "all_modes"});
    read_range(r, "v_dc_V", c.sweep.v_dc_V);
    r.positive("response_span_GHz", c.sweep.response_span_GHz);
    r.positive("response_step_MHz", c.sweep.response_step_MHz);
  });
  section(root, "output", [&](ObjectReader& r) {
    r.read("dir", c.output.dir);
    r.read("svg", c.output.svg);
    r.read("json", c.output.json);
  });
  root.finish();

  // Cross-field checks.
  const int channels = c.channel_count();
  if (c.shaper.phases && static_cast<int>(c.shaper.phases->size()) != channels) {
    fail("shaper.phases", fmt::format("expected {} phases, got {}", channels, c.shaper.phases->size()));
  }
  if (!c.shaper.phases && channels % 6 != 0) {
    fail("shaper.phases", "required unless channels is a multiple of six");
  }
  if (c.gate.target == "explicit" && (!c.gate.matrix || !c.gate.modes)) {
    fail("gate", "explicit target needs both matrix and modes");
  }
  make_gate(c);  // validates unitarity and mode ordering
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file {}", path.string()));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: invalid JSON: {}", path.string(), e.what()));
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["waveguide"] = {{"ref_frequency_THz", c.waveguide.ref_frequency_THz},
                    {"n_eff", c.waveguide.n_eff},
                    {"group_index", c.waveguide.group_index},
                    {"gvd_n2", c.waveguide.gvd_n2},
                    {"loss_dB_per_cm", c.waveguide.loss_dB_per_cm}};
  j["ring"] = {{"radius_um", c.ring.radius_um}};
  json ratios = json::object();
  for (const auto& [order, values] : c.shaper.inter_coupling_table.ratios) {
    ratios[std::to_string(order)] = values;
  }
  j["shaper"] = {{"mode", c.shaper.mode},
                 {"filter_order", c.shaper.filter_order},
                 {"kappa_sq", c.shaper.kappa_sq},
                 {"inter_coupling_table",
                  {{"source", c.shaper.inter_coupling_table.source}, {"ratios", ratios}}}};
  if (c.shaper.channels) j["shaper"]["channels"] = *c.shaper.channels;
  if (c.shaper.phases) j["shaper"]["phases"] = *c.shaper.phases;
  j["grid"] = {{"f0_THz", c.grid.f0_THz}, {"spacing_GHz", c.grid.spacing_GHz}};
  j["eom"] = {{"kind", c.eom.kind},       {"depth", c.eom.depth},
              {"rf_phase", c.eom.rf_phase}, {"v_dc", c.eom.v_dc},
              {"v_1", c.eom.v_1},         {"a", c.eom.a},
              {"v_0", c.eom.v_0},         {"truncation", c.eom.truncation},
              {"samples", c.eom.samples}, {"guard_modes", c.eom.guard_modes}};
  j["gate"] = {{"target", c.gate.target}};
  if (c.gate.modes) j["gate"]["modes"] = *c.gate.modes;
  if (c.gate.matrix) {
    json rows = json::array();
    for (const auto& row : *c.gate.matrix) {
      json r = json::array();
      for (const auto& v : row) r.push_back(complex_json(v));
      rows.push_back(r);
    }
    j["gate"]["matrix"] = rows;
  }
  j["sweep"] = {{"offset_GHz", range_json(c.sweep.offset_GHz)},
                {"spacing_GHz", range_json(c.sweep.spacing_GHz)},
                {"loss_dB_per_cm", c.sweep.loss_dB_per_cm},
                {"orders", c.sweep.orders},
                {"order_spacing_GHz", range_json(c.sweep.order_spacing_GHz)},
                {"bandwidth_GHz", range_json(c.sweep.bandwidth_GHz)},
                {"quadrature_points", c.sweep.quadrature_points},
                {"input_state", c.sweep.input_state},
                {"output_support", c.sweep.output_support},
                {"v_dc_V", range_json(c.sweep.v_dc_V)},
                {"response_span_GHz", c.sweep.response_span_GHz},
                {"response_step_MHz", c.sweep.response_step_MHz}};
  j["output"] = {{"dir", c.output.dir}, {"svg", c.output.svg}, {"json", c.output.json}};
  return j;
}

std::string config_hash(const RunConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

StackDesign make_design(const RunConfig& c) {
  StackDesign d;
  const int channels = c.channel_count();
  d.shaper.waveguide = make_waveguide(from_thz(c.waveguide.ref_frequency_THz), c.waveguide.n_eff,
                                      c.waveguide.group_index,
                                      db_per_cm_to_alpha(c.waveguide.loss_dB_per_cm), c.waveguide.gvd_n2);
  d.shaper.grid = {from_thz(c.grid.f0_THz), from_ghz(c.grid.spacing_GHz), channels};
  d.shaper.phases = c.shaper.phases ? *c.shaper.phases : hadamard_stairstep(channels / 6);
  d.shaper.mode = c.shaper.mode == "ideal" ? ShaperMode::ideal : ShaperMode::mrr;
  d.shaper.radius_um = c.ring.radius_um;
  d.shaper.filter_order = c.shaper.filter_order;
  d.shaper.kappa_sq = c.shaper.kappa_sq;
  d.shaper.coupling_table = c.shaper.inter_coupling_table;
  if (c.eom.kind == "sinusoid") {
    d.eom1 = ModulatorDrive::sinusoid(c.eom.depth, c.eom.rf_phase);
  } else {
    d.eom1 = ModulatorDrive::log_voltage(c.eom.v_dc, c.eom.v_1, c.eom.a, c.eom.v_0, c.eom.rf_phase);
  }
  d.eom2 = d.eom1;
  d.guard_modes = c.eom.guard_modes;
  d.truncation = c.eom.truncation;
  d.samples = c.eom.samples;
  return d;
}

GateSpec make_gate(const RunConfig& c) {
  GateSpec spec;
  if (c.gate.target == "hadamard") {
    spec = GateSpec::hadamard();
  } else if (c.gate.target == "hadamard-parallel") {
    spec = GateSpec::parallel_hadamard();
  } else {
    if (!c.gate.matrix) throw ConfigError("gate.matrix: required for an explicit gate");
    const auto& rows = *c.gate.matrix;
    const auto d = static_cast<Eigen::Index>(rows.size());
    spec.target.resize(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      if (static_cast<Eigen::Index>(rows[r].size()) != d) throw ConfigError("gate.matrix: must be square");
      for (Eigen::Index col = 0; col < d; ++col) spec.target(r, col) = rows[r][col];
    }
  }
  if (c.gate.modes) spec.modes = *c.gate.modes;
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(fmt::format("gate: {}", e.what()));
  }
  const int channels = c.channel_count();
  for (int m : spec.modes) {
    if (m < 0 || m >= channels) throw ConfigError(fmt::format("gate.modes: mode {} is outside the {} shaper channels", m, channels));
  }
  return spec;
}

NyquistQubit make_qubit(const RunConfig& c, double bandwidth) {
  const auto spec = make_gate(c);
  if (spec.size() < 2) throw ConfigError("sweep-bandwidth needs at least two computational modes");
  NyquistQubit q;
  if (c.sweep.input_state == "zero") q = NyquistQubit::zero(bandwidth);
  else if (c.sweep.input_state == "one") q = NyquistQubit::one(bandwidth);
  else if (c.sweep.input_state == "plus_i") q = NyquistQubit::plus_i(bandwidth);
  else q = NyquistQubit::plus(bandwidth);
  q.modes = {spec.modes[0], spec.modes[1]};
  return q;
}

}  // namespace qfp
