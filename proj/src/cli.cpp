#include "qfpsim/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "qfpsim/broadband.hpp"
#include "qfpsim/error.hpp"
#include "qfpsim/report.hpp"
#include "qfpsim/units.hpp"

namespace qfp {

using nlohmann::json;

namespace {

struct Context {
  const CliOptions& options;
  const RunConfig& config;
  std::ostream& log;
  std::filesystem::path dir;
  std::string hash;
  int threads = 1;
  bool want_svg = false;
  bool want_json = false;
  std::vector<std::filesystem::path> written;

  void emit(const std::string& stem, const Table& table, int x, const std::vector<int>& ys) {
    const auto csv = dir / (stem + ".csv");
    write_csv(csv, table, hash);
    written.push_back(csv);
    if (want_svg) {
      const auto plot = dir / (stem + ".svg");
      write_svg(plot, table, x, ys, stem);
      written.push_back(plot);
    }
  }

  void emit_json(const std::string& stem, const json& j) {
    const auto path = dir / (stem + ".json");
    std::filesystem::create_directories(dir);
    std::ofstream(path) << j.dump(2) << '\n';
    written.push_back(path);
  }
};

json matrix_json(const Eigen::MatrixXcd& w) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < w.cols(); ++c) row.push_back({w(r, c).real(), w(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

json report_json(double variable, const GateReport& r) {
  return {{"sweep_variable", variable},
          {"fidelity", r.fidelity},
          {"success_prob", r.success_prob},
          {"success_prob_normalized", r.success_prob_normalized},
          {"fidelity_defined", r.fidelity_defined},
          {"w", matrix_json(r.w)}};
}

void gate_sweep(Context& ctx, const std::string& stem, const std::string& variable,
                const std::vector<double>& xs, const std::vector<GateReport>& reports) {
  Table table{{variable, "fidelity", "success_prob", "success_prob_normalized"}, {}};
  json points = json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    table.add({xs[i], reports[i].fidelity, reports[i].success_prob, reports[i].success_prob_normalized});
    points.push_back(report_json(xs[i], reports[i]));
  }
  ctx.emit(stem, table, 0, {1, 2, 3});
  if (ctx.want_json) ctx.emit_json(stem, {{"config_hash", ctx.hash}, {"sweep_variable", variable}, {"points", points}});
  if (xs.size() == 1) {
    ctx.log << fmt::format("{} = {:.6g}: F = {:.10f}, P = {:.6f}\n", variable, xs[0], reports[0].fidelity,
                           reports[0].success_prob);
  }
}

void shaper_response_cmd(Context& ctx) {
  const auto design = make_design(ctx.config);
  const auto shaper = design.shaper.build();
  const double centre = shaper.grid.omega0 + 0.5 * (shaper.grid.count - 1) * shaper.grid.spacing;
  const double span = from_ghz(ctx.config.sweep.response_span_GHz);
  const double step = from_ghz(ctx.config.sweep.response_step_MHz * 1e-3);
  const auto n = static_cast<long>(std::llround(span / step));
  Table table{{"f_GHz", "abs_H_sq", "arg_H"}, {}};
  for (long k = -n; k <= n; ++k) {
    const double detuning = k * step;
    const Complex h = evaluate_shaper(shaper, centre + detuning);
    table.add({to_ghz(detuning), std::norm(h), std::arg(h)});
  }
  ctx.emit("shaper_response", table, 0, {1});
  if (shaper.mode == ShaperMode::mrr) {
    for (int m = 0; m < shaper.grid.count; ++m) {
      try {
        ctx.log << fmt::format("channel {} HWHM = {:.4f} GHz\n", m, channel_linewidth(shaper, m) * 1e-9);
      } catch (const LinewidthUndefined&) {
        ctx.log << fmt::format("channel {} HWHM undefined\n", m);
      }
    }
  }
}

void sweep_offset_cmd(Context& ctx) {
  const auto design = make_design(ctx.config);
  const auto gate = make_gate(ctx.config);
  const auto stack = align_eoms(design.build(), gate);
  const std::vector<double> ghz = ctx.options.at_GHz ? std::vector<double>{*ctx.options.at_GHz}
                                                     : ctx.config.sweep.offset_GHz.values();
  std::vector<double> offsets;
  for (double g : ghz) offsets.push_back(from_ghz(g));
  gate_sweep(ctx, "sweep_offset", "offset_GHz", ghz, sweep_offset(stack, gate, offsets, ctx.threads));
}

void sweep_spacing_cmd(Context& ctx) {
  const auto design = make_design(ctx.config);
  const auto gate = make_gate(ctx.config);
  const auto ghz = ctx.config.sweep.spacing_GHz.values();
  std::vector<double> spacings;
  for (double g : ghz) spacings.push_back(from_ghz(g));
  gate_sweep(ctx, "sweep_spacing", "spacing_GHz", ghz, sweep_spacing(design, gate, spacings, ctx.threads));
}

void sweep_loss_cmd(Context& ctx) {
  const auto design = make_design(ctx.config);
  const auto gate = make_gate(ctx.config);
  const auto& db = ctx.config.sweep.loss_dB_per_cm;
  std::vector<double> alphas;
  for (double d : db) alphas.push_back(db_per_cm_to_alpha(d));
  gate_sweep(ctx, "sweep_loss", "loss_dB_per_cm", db, sweep_loss(design, gate, alphas, ctx.threads));
}

void sweep_order_cmd(Context& ctx) {
  const auto design = make_design(ctx.config);
  const auto gate = make_gate(ctx.config);
  std::vector<double> spacings;
  for (double g : ctx.config.sweep.order_spacing_GHz.values()) spacings.push_back(from_ghz(g));
  const auto points = sweep_order(design, gate, ctx.config.sweep.orders, spacings, ctx.threads);
  Table table{{"order", "spacing_GHz", "fidelity", "success_prob", "success_prob_normalized"}, {}};
  json out = json::array();
  for (const auto& p : points) {
    const double ghz = to_ghz(p.spacing);
    table.add({static_cast<double>(p.order), ghz, p.report.fidelity, p.report.success_prob,
               p.report.success_prob_normalized});
    auto j = report_json(ghz, p.report);
    j["order"] = p.order;
    out.push_back(j);
  }
  ctx.emit("sweep_order", table, 1, {2, 4});
  if (ctx.want_json) ctx.emit_json("sweep_order", {{"config_hash", ctx.hash}, {"points", out}});
}

void sweep_bandwidth_cmd(Context& ctx) {
  RunConfig config = ctx.config;
  if (ctx.options.input_state) {
    const auto& s = *ctx.options.input_state;
    if (s != "zero" && s != "one" && s != "plus" && s != "plus_i") {
      throw ConfigError(fmt::format("--state: unknown input state \"{}\"", s));
    }
    config.sweep.input_state = s;
  }
  const auto design = make_design(config);
  const auto gate = make_gate(config);
  const auto stack = align_eoms(design.build(), gate);
  const auto support =
      config.sweep.output_support == "all_modes" ? OutputSupport::all_modes : OutputSupport::computational;
  Table table{{"bandwidth_GHz", "F_y", "P_y"}, {}};
  for (double ghz : config.sweep.bandwidth_GHz.values()) {
    if (ghz < 0.0) throw ConfigError("sweep.bandwidth_GHz: bandwidth must be non-negative");
    if (ghz == 0.0) {
      // Monochromatic limit: the gate metrics of W at zero offset.
      const auto r = evaluate_gate(stack, gate, 0.0);
      table.add({0.0, r.fidelity, r.success_prob});
      continue;
    }
    const auto qubit = make_qubit(config, from_ghz(ghz));
    const auto waves = propagate(stack, gate.target.topLeftCorner(2, 2), qubit,
                                 config.sweep.quadrature_points, ctx.threads);
    const auto m = wavepacket_metrics(waves.ideal, waves.actual, support);
    table.add({ghz, m.fidelity, m.success_prob});
  }
  ctx.emit("sweep_bandwidth", table, 0, {1, 2});
}

void optimize_eom_cmd(Context& ctx) {
  const auto design = make_design(ctx.config);
  const auto gate = make_gate(ctx.config);
  const auto evaluator = ideal_gate_evaluator(design, gate);
  const auto& eom = ctx.config.eom;
  const auto optima = optimize_drive(ctx.config.sweep.v_dc_V.values(), eom.a, eom.v_0, evaluator);
  Table bias{{"v_dc_V", "v_1_V", "fidelity"}, {}};
  for (const auto& o : optima) bias.add({o.v_dc, o.v_1, o.fidelity});
  ctx.emit("eom_bias_sweep", bias, 0, {1, 2});

  const auto best = optimize_drive({eom.v_dc}, eom.a, eom.v_0, evaluator).front();
  const auto drive = ModulatorDrive::log_voltage(best.v_dc, best.v_1, eom.a, eom.v_0);
  Table wave{{"t", "phase_rad"}, {}};
  constexpr int kPoints = 256;
  for (int j = 0; j <= kPoints; ++j) {
    const double t = static_cast<double>(j) / kPoints;
    wave.add({t, phase_waveform(drive, t)});
  }
  ctx.emit("eom_waveform", wave, 0, {1});
  ctx.log << fmt::format("v_dc = {:.4g} V: v_1* = {:.6g} V, F = {:.10f}\n", best.v_dc, best.v_1, best.fidelity);
}

}  // namespace

int resolve_threads(std::optional<int> requested) {
  if (requested) {
    if (*requested < 1) throw ConfigError("--threads: must be >= 1");
    return *requested;
  }
  if (const char* env = std::getenv("QFPSIM_THREADS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) throw ConfigError(fmt::format("QFPSIM_THREADS: invalid value \"{}\"", env));
    return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::filesystem::path> run(const CliOptions& options, const RunConfig& config, std::ostream& log) {
  Context ctx{options,
              config,
              log,
              options.out_dir ? *options.out_dir : std::filesystem::path(config.output.dir),
              config_hash(config),
              resolve_threads(options.threads),
              options.svg || config.output.svg,
              options.json || config.output.json,
              {}};

  const auto& cmd = options.subcommand;
  if (cmd == "shaper-response") shaper_response_cmd(ctx);
  else if (cmd == "sweep-offset") sweep_offset_cmd(ctx);
  else if (cmd == "sweep-spacing") sweep_spacing_cmd(ctx);
  else if (cmd == "sweep-loss") sweep_loss_cmd(ctx);
  else if (cmd == "sweep-order") sweep_order_cmd(ctx);
  else if (cmd == "sweep-bandwidth") sweep_bandwidth_cmd(ctx);
  else if (cmd == "optimize-eom") optimize_eom_cmd(ctx);
  else throw InvalidArgument(fmt::format("unknown subcommand \"{}\"", cmd));
  return ctx.written;
}

int run_main(const CliOptions& options, std::ostream& log, std::ostream& err) {
  try {
    const RunConfig config = options.config_path ? load_config(*options.config_path) : RunConfig{};
    for (const auto& path : run(options, config, log)) log << "wrote " << path.string() << '\n';
    return 0;
  } catch (const Error& e) {
    err << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump() << '\n';
  } catch (const std::exception& e) {
    err << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << '\n';
  }
  return 2;
}

}  // namespace qfp
