#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pskdiff/asymptotics.hpp"
#include "pskdiff/montecarlo.hpp"
#include "pskdiff/numkit.hpp"
#include "pskdiff/receivers.hpp"
#include "pskdiff/threshold.hpp"
#include "pskdiff/types.hpp"
#include "pskdiff/version.hpp"

namespace pskdiff::cli {

using json = nlohmann::ordered_json;

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

struct Envelope {
  std::string command;
  std::string format = "csv";
  json config = json::object();
  std::vector<std::string> columns;
  std::vector<json> rows;       // arrays aligned with columns
  json extra = json::object();  // summary/fit blocks
  int error_rows = 0;
};

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline std::string scalar_text(const json& v) {
  if (v.is_null()) return "nan";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt17(v.get<double>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  return v.dump();
}

inline void append_comments(std::string& out, const std::string& prefix, const json& obj) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it.value().is_object())
      append_comments(out, key, it.value());
    else
      out += "# " + key + ": " + scalar_text(it.value()) + "\n";
  }
}

inline std::string to_csv(const Envelope& env) {
  std::string out;
  out += "# tool: " + std::string(tool_name) + " " + std::string(tool_version) + "\n";
  out += "# schema_version: " + std::to_string(schema_version) + "\n";
  out += "# command: " + env.command + "\n";
  append_comments(out, "", env.config);
  append_comments(out, "", env.extra);
  for (std::size_t i = 0; i < env.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(env.columns[i]);
  }
  out += '\n';
  for (const json& row : env.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      const json& cell = row[i];
      out += cell.is_string() ? csv_escape(cell.get<std::string>()) : scalar_text(cell);
    }
    out += '\n';
  }
  return out;
}

inline std::string to_json(const Envelope& env) {
  json root = json::object();
  root["tool"] = tool_name;
  root["version"] = tool_version;
  root["schema_version"] = schema_version;
  root["command"] = env.command;
  root["config"] = env.config;
  for (const auto& [key, value] : env.extra.items()) root[key] = value;
  root["columns"] = env.columns;
  json rows = json::array();
  for (const json& row : env.rows) rows.push_back(row);
  root["rows"] = std::move(rows);
  return root.dump(2) + "\n";
}

struct NumericsOpts {
  std::size_t quad_order = 96;
  double trunc_eps = 1e-12;
  std::size_t max_dim = 512;
};

inline const std::vector<std::string> all_receiver_tokens = {"helstrom", "kennedy", "homodyne",
                                                             "paper_asymptotics"};

inline void validate_receiver_tokens(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw std::invalid_argument("at least one receiver must be selected");
  for (const std::string& t : tokens) {
    bool known = false;
    for (const std::string& k : all_receiver_tokens) known = known || t == k;
    if (!known) throw std::invalid_argument("unknown receiver: " + t);
  }
}

inline Receiver receiver_from_token(const std::string& t) {
  if (t == "helstrom") return Receiver::helstrom;
  if (t == "kennedy") return Receiver::kennedy;
  if (t == "homodyne") return Receiver::homodyne;
  throw std::invalid_argument("unknown receiver: " + t);
}

inline void append_point_columns(std::vector<std::string>& cols,
                                 const std::vector<std::string>& receivers) {
  for (const std::string& r : receivers) {
    if (r == "paper_asymptotics") {
      cols.push_back("asym_helstrom");
      cols.push_back("asym_kennedy");
      cols.push_back("asym_homodyne");
    } else {
      cols.push_back("P_" + r);
    }
  }
}

// One receiver failing (say, truncation overflow) must not take down the
// row; the cell goes null and the status column carries the message.
inline void append_point_cells(json& row, std::string& status, const SignalParams& params,
                               const std::vector<std::string>& receivers,
                               const numkit::QuadratureRule& rule,
                               const TruncationPolicy& policy) {
  for (const std::string& r : receivers) {
    if (r == "paper_asymptotics") {
      try {
        row.push_back(asymptotics::paper_small_alpha(Receiver::helstrom, params));
        row.push_back(asymptotics::paper_small_alpha(Receiver::kennedy, params));
        row.push_back(asymptotics::paper_small_alpha(Receiver::homodyne, params));
      } catch (const std::exception& e) {
        while (row.size() % 3 != 0) row.push_back(nullptr);
        if (!status.empty()) status += "; ";
        status += r + ": " + e.what();
      }
      continue;
    }
    try {
      double value = 0.0;
      if (r == "helstrom")
        value = receivers::helstrom(params, policy).value;
      else if (r == "kennedy")
        value = receivers::kennedy(params, rule).value;
      else
        value = receivers::homodyne(params, rule).value;
      row.push_back(value);
    } catch (const std::exception& e) {
      row.push_back(nullptr);
      if (!status.empty()) status += "; ";
      status += r + ": " + e.what();
    }
  }
}

struct FitOpts {
  bool enabled = false;
  double delta_min = 2.0;
  double delta_max = 3.0;
  std::size_t points = 9;
};

inline Envelope cmd_error_probs(const SignalParams& params, std::vector<std::string> receivers,
                                const NumericsOpts& num, const FitOpts& fit = {}) {
  validate(params);
  validate_receiver_tokens(receivers);
  const numkit::QuadratureRule rule = numkit::gauss_hermite(num.quad_order);
  const TruncationPolicy policy{num.trunc_eps, num.max_dim};

  Envelope env;
  env.command = "error-probs";
  env.config["alpha"] = params.alpha;
  env.config["delta"] = params.delta;
  env.config["energy"] = params.energy();
  env.config["receivers"] = receivers;
  env.config["quad_order"] = num.quad_order;
  env.config["trunc_eps"] = num.trunc_eps;
  env.config["max_dim"] = num.max_dim;

  env.columns = {"alpha", "delta"};
  append_point_columns(env.columns, receivers);
  env.columns.push_back("status");

  json row = json::array();
  row.push_back(params.alpha);
  row.push_back(params.delta);
  std::string status;
  append_point_cells(row, status, params, receivers, rule, policy);
  if (status.empty()) {
    status = "ok";
  } else {
    ++env.error_rows;
  }
  row.push_back(status);
  env.rows.push_back(std::move(row));

  if (fit.enabled) {
    env.config["fit_window"] = json::array({fit.delta_min, fit.delta_max});
    env.config["fit_points"] = fit.points;
    json fits = json::object();
    for (const std::string& r : receivers) {
      if (r == "paper_asymptotics") continue;
      try {
        const asymptotics::FitReport rep =
            asymptotics::fit_large_delta(receiver_from_token(r), params.alpha, fit.delta_min,
                                         fit.delta_max, fit.points, rule, policy);
        json f = json::object();
        f["prefactor"] = rep.estimated_prefactor;
        f["rate"] = rep.estimated_rate;
        f["residual"] = rep.residual;
        f["window"] = json::array({rep.delta_min, rep.delta_max});
        f["points"] = rep.points;
        fits[r] = std::move(f);
      } catch (const std::exception& e) {
        fits[r] = std::string("error: ") + e.what();
        ++env.error_rows;
      }
    }
    env.extra["fits"] = std::move(fits);
  }
  return env;
}

struct SweepSpec {
  std::string swept = "delta";  // "delta" or "energy"
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  double fixed_alpha = 1.0;  // used when sweeping delta
  double fixed_delta = 0.0;  // used when sweeping energy
  std::vector<std::string> receivers{"helstrom", "kennedy", "homodyne", "paper_asymptotics"};
};

inline Envelope cmd_sweep(const SweepSpec& spec, const NumericsOpts& num) {
  if (spec.swept != "delta" && spec.swept != "energy")
    throw std::invalid_argument("sweep: swept parameter must be delta or energy");
  if (!std::isfinite(spec.start) || !std::isfinite(spec.stop) || !(spec.start <= spec.stop))
    throw std::invalid_argument("sweep: need finite start <= stop");
  if (!(spec.step > 0.0)) throw std::invalid_argument("sweep: step must be > 0");
  validate_receiver_tokens(spec.receivers);
  const numkit::QuadratureRule rule = numkit::gauss_hermite(num.quad_order);
  const TruncationPolicy policy{num.trunc_eps, num.max_dim};

  Envelope env;
  env.command = "sweep";
  env.config["swept"] = spec.swept;
  env.config["start"] = spec.start;
  env.config["stop"] = spec.stop;
  env.config["step"] = spec.step;
  if (spec.swept == "delta")
    env.config["alpha"] = spec.fixed_alpha;
  else
    env.config["delta"] = spec.fixed_delta;
  env.config["receivers"] = spec.receivers;
  env.config["quad_order"] = num.quad_order;
  env.config["trunc_eps"] = num.trunc_eps;
  env.config["max_dim"] = num.max_dim;

  env.columns = {spec.swept};
  append_point_columns(env.columns, spec.receivers);
  env.columns.push_back("status");

  const std::size_t count =
      static_cast<std::size_t>(std::floor((spec.stop - spec.start) / spec.step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double value = spec.start + static_cast<double>(i) * spec.step;
    json row = json::array();
    row.push_back(value);
    std::string status;
    if (spec.swept == "energy" && value < 0.0) {
      for (const std::string& r : spec.receivers)
        for (int k = 0; k < (r == "paper_asymptotics" ? 3 : 1); ++k) row.push_back(nullptr);
      status = "energy must be >= 0";
    } else {
      const SignalParams params = spec.swept == "delta"
                                      ? SignalParams{spec.fixed_alpha, value}
                                      : SignalParams{std::sqrt(value), spec.fixed_delta};
      append_point_cells(row, status, params, spec.receivers, rule, policy);
    }
    if (status.empty()) {
      status = "ok";
    } else {
      ++env.error_rows;
    }
    row.push_back(status);
    env.rows.push_back(std::move(row));
  }
  return env;
}

inline Envelope cmd_simulate(const montecarlo::RunConfig& config, bool compare,
                             const NumericsOpts& num) {
  montecarlo::validate(config);
  const montecarlo::RunSummary summary = montecarlo::run_experiment(config);

  Envelope env;
  env.command = "simulate";
  env.format = "json";
  env.config["alpha"] = config.params.alpha;
  env.config["delta"] = config.params.delta;
  env.config["energy"] = config.params.energy();
  env.config["receiver"] = receiver_name(config.receiver);
  env.config["shots_per_run"] = config.shots_per_run;
  env.config["runs"] = config.runs;
  env.config["seed"] = config.seed;
  env.config["rng"] = "mt19937_64/splitmix64 per-run streams";
  if (compare) {
    env.config["quad_order"] = num.quad_order;
    env.config["trunc_eps"] = num.trunc_eps;
  }

  env.columns = {"run", "error_rate"};
  for (std::size_t i = 0; i < summary.per_run_error.size(); ++i) {
    json row = json::array();
    row.push_back(i);
    row.push_back(summary.per_run_error[i]);
    env.rows.push_back(std::move(row));
  }

  json s = json::object();
  s["mean_error"] = summary.mean_error;
  s["std_of_mean"] = summary.std_of_mean;
  s["spread_degenerate"] = summary.spread_degenerate;
  if (compare) {
    const numkit::QuadratureRule rule = numkit::gauss_hermite(num.quad_order);
    const double analytic = config.receiver == Receiver::kennedy
                                ? receivers::kennedy(config.params, rule).value
                                : receivers::homodyne(config.params, rule).value;
    s["analytic"] = analytic;
    if (summary.std_of_mean > 0.0)
      s["z_score"] = (summary.mean_error - analytic) / summary.std_of_mean;
    else
      s["z_score"] = nullptr;
  }
  env.extra["summary"] = std::move(s);
  return env;
}

inline Envelope cmd_trace(const SignalParams& params, const std::string& panel,
                          std::uint64_t count, std::uint64_t seed) {
  validate(params);
  if (count < 1) throw std::invalid_argument("trace: count must be >= 1");
  if (panel != "vs_angle" && panel != "vs_shot")
    throw std::invalid_argument("trace: panel must be vs_angle or vs_shot");

  std::vector<int> symbols;
  std::vector<double> psis;
  if (panel == "vs_angle") {
    // one full angle sweep per symbol
    symbols.reserve(2 * count);
    psis.reserve(2 * count);
    for (const int s : {1, 0}) {
      for (std::uint64_t i = 0; i < count; ++i) {
        symbols.push_back(s);
        psis.push_back(2.0 * std::numbers::pi * static_cast<double>(i) /
                       static_cast<double>(count));
      }
    }
  } else {
    // random keying observed at psi = 0
    montecarlo::Sampler keying(montecarlo::run_stream(seed, 1));
    symbols.reserve(count);
    psis.assign(count, 0.0);
    for (std::uint64_t i = 0; i < count; ++i) symbols.push_back(keying.bit());
  }
  const std::vector<montecarlo::TraceRow> rows =
      montecarlo::generate_trace(params, symbols, psis, seed);

  Envelope env;
  env.command = "trace";
  env.config["alpha"] = params.alpha;
  env.config["delta"] = params.delta;
  env.config["energy"] = params.energy();
  env.config["panel"] = panel;
  env.config["count"] = count;
  env.config["seed"] = seed;
  env.config["rng"] = "mt19937_64/splitmix64 per-run streams";

  env.columns = {"grid", "outcome", "symbol"};
  for (const montecarlo::TraceRow& r : rows) {
    json row = json::array();
    if (panel == "vs_angle")
      row.push_back(r.psi);
    else
      row.push_back(r.index);
    row.push_back(r.outcome);
    row.push_back(r.symbol);
    env.rows.push_back(std::move(row));
  }
  return env;
}

inline Envelope cmd_threshold(const std::vector<double>& energies, double tol, double delta_max,
                              const NumericsOpts& num) {
  const numkit::QuadratureRule rule = numkit::gauss_hermite(num.quad_order);
  const TruncationPolicy policy{num.trunc_eps, num.max_dim};
  const std::vector<threshold::CurveRow> curve =
      threshold::threshold_curve(energies, tol, delta_max, rule, policy);

  Envelope env;
  env.command = "threshold";
  env.config["energies"] = energies;
  env.config["tol"] = tol;
  env.config["delta_max"] = delta_max;
  env.config["quad_order"] = num.quad_order;
  env.config["trunc_eps"] = num.trunc_eps;
  env.config["max_dim"] = num.max_dim;

  env.columns = {"N", "delta_th", "residual", "status"};
  json recross = json::object();
  for (const threshold::CurveRow& row : curve) {
    json cells = json::array();
    cells.push_back(row.point.energy);
    cells.push_back(row.point.delta_th);
    cells.push_back(row.point.bracket_residual);
    std::string status;
    if (row.error.empty()) {
      status = threshold::status_name(row.point.status);
      if (std::isfinite(row.point.recross_delta))
        recross[fmt17(row.point.energy)] = row.point.recross_delta;
    } else {
      status = "error: " + row.error;
      ++env.error_rows;
    }
    cells.push_back(status);
    env.rows.push_back(std::move(cells));
  }
  if (!recross.empty()) env.extra["recross_delta"] = std::move(recross);
  return env;
}

inline int write_output(const Envelope& env, const std::string& out_path) {
  const std::string text = env.format == "json" ? to_json(env) : to_csv(env);
  if (out_path.empty()) {
    std::cout << text;
    return env.error_rows > 0 ? 1 : 0;
  }
  std::ofstream ofs(out_path, std::ios::binary);
  if (!ofs) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 2;
  }
  ofs << text;
  ofs.flush();
  if (!ofs.good()) {
    std::cerr << "error: write failed: " << out_path << "\n";
    return 2;
  }
  return env.error_rows > 0 ? 1 : 0;
}

inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"binary PSK receiver error probabilities under Gaussian phase diffusion"};
  app.require_subcommand(1);

  struct Common {
    double energy = 0.0;
    double alpha = 0.0;
    double delta = 0.0;
    std::size_t quad_order = 96;
    double trunc_eps = 1e-12;
    std::size_t max_dim = 512;
    std::string out;
    std::string format;
  };

  const auto add_signal = [](CLI::App* sub, Common& c) {
    CLI::Option* oe = sub->add_option("--energy", c.energy, "signal energy N; alpha = sqrt(N)");
    CLI::Option* oa = sub->add_option("--alpha", c.alpha, "coherent amplitude");
    oe->excludes(oa);
    oa->excludes(oe);
    sub->add_option("--delta", c.delta, "phase diffusion std dev in rad (default 0)");
  };
  const auto add_numerics = [](CLI::App* sub, Common& c) {
    sub->add_option("--quad-order", c.quad_order, "Gauss-Hermite order (default 96)");
    sub->add_option("--trunc-eps", c.trunc_eps, "photon-number tail mass bound (default 1e-12)");
    sub->add_option("--max-dim", c.max_dim, "largest allowed truncation dimension (default 512)");
  };
  const auto add_output = [](CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  const auto resolve_alpha = [](CLI::App* sub, const Common& c) -> double {
    if (sub->count("--energy")) {
      if (!(c.energy >= 0.0) || !std::isfinite(c.energy))
        throw std::invalid_argument("--energy must be finite and >= 0");
      return std::sqrt(c.energy);
    }
    if (sub->count("--alpha")) return c.alpha;
    throw std::invalid_argument("one of --energy or --alpha is required");
  };
  const auto numerics = [](const Common& c) {
    return NumericsOpts{c.quad_order, c.trunc_eps, c.max_dim};
  };

  // error-probs
  Common ep_c;
  std::vector<std::string> ep_receivers = {"helstrom", "kennedy", "homodyne"};
  std::vector<double> ep_fit_window;
  std::size_t ep_fit_points = 9;
  CLI::App* ep = app.add_subcommand(
      "error-probs", "error probabilities at one point (CSV: alpha,delta,P_*[,asym_*],status)");
  add_signal(ep, ep_c);
  add_numerics(ep, ep_c);
  add_output(ep, ep_c);
  ep->add_option("--receivers", ep_receivers,
                 "subset of helstrom,kennedy,homodyne,paper_asymptotics")
      ->delimiter(',');
  ep->add_option("--fit-window", ep_fit_window,
                 "two deltas in [1,4]: also report strong-noise fit per receiver")
      ->expected(2);
  ep->add_option("--fit-points", ep_fit_points, "fit sample count, >= 8 (default 9)");

  // sweep
  Common sw_c;
  SweepSpec sw_spec;
  CLI::App* sw = app.add_subcommand(
      "sweep", "sweep delta or energy (CSV: swept value,P_*[,asym_*],status)");
  add_signal(sw, sw_c);
  add_numerics(sw, sw_c);
  add_output(sw, sw_c);
  sw->add_option("--sweep", sw_spec.swept, "swept parameter: delta or energy (default delta)")
      ->check(CLI::IsMember({"delta", "energy"}));
  sw->add_option("--start", sw_spec.start, "first swept value")->required();
  sw->add_option("--stop", sw_spec.stop, "last swept value")->required();
  sw->add_option("--step", sw_spec.step, "swept value increment")->required();
  sw->add_option("--receivers", sw_spec.receivers,
                 "subset of helstrom,kennedy,homodyne,paper_asymptotics")
      ->delimiter(',');

  // simulate
  Common sim_c;
  std::string sim_receiver = "homodyne";
  std::uint64_t sim_shots = 5000;
  std::uint64_t sim_runs = 10;
  std::uint64_t sim_seed = 1;
  bool sim_compare = false;
  CLI::App* sim = app.add_subcommand(
      "simulate", "shot-by-shot run statistics (JSON summary; rows are per-run error rates)");
  add_signal(sim, sim_c);
  add_numerics(sim, sim_c);
  add_output(sim, sim_c);
  sim->add_option("--receiver", sim_receiver, "homodyne or kennedy (default homodyne)")
      ->check(CLI::IsMember({"homodyne", "kennedy"}));
  sim->add_option("--shots", sim_shots, "shots per run (default 5000)");
  sim->add_option("--runs", sim_runs, "number of runs (default 10)");
  sim->add_option("--seed", sim_seed, "RNG seed (default 1)");
  sim->add_flag("--compare", sim_compare, "include analytic probability and z-score");

  // trace
  Common tr_c;
  std::string tr_panel = "vs_shot";
  std::uint64_t tr_count = 200;
  std::uint64_t tr_seed = 1;
  CLI::App* tr = app.add_subcommand(
      "trace", "raw quadrature record (CSV: grid,outcome,symbol)");
  add_signal(tr, tr_c);
  add_output(tr, tr_c);
  tr->add_option("--panel", tr_panel, "vs_angle or vs_shot (default vs_shot)")
      ->check(CLI::IsMember({"vs_angle", "vs_shot"}));
  tr->add_option("--count", tr_count, "points per trace (default 200)");
  tr->add_option("--seed", tr_seed, "RNG seed (default 1)");

  // threshold
  Common th_c;
  std::vector<double> th_energies;
  double th_tol = 1e-9;
  double th_delta_max = 4.0;
  CLI::App* th = app.add_subcommand(
      "threshold", "homodyne/counter crossover noise levels (CSV: N,delta_th,residual,status)");
  add_numerics(th, th_c);
  add_output(th, th_c);
  th->add_option("--energies", th_energies, "signal energies N to solve")
      ->required()
      ->delimiter(',');
  th->add_option("--tol", th_tol, "crossing tolerance on |P_hom - P_ken| (default 1e-9)");
  th->add_option("--delta-max", th_delta_max, "search upper limit in rad (default 4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    Envelope env;
    const Common* active = nullptr;
    if (app.got_subcommand(ep)) {
      active = &ep_c;
      const SignalParams params{resolve_alpha(ep, ep_c), ep_c.delta};
      FitOpts fit;
      if (!ep_fit_window.empty()) {
        fit.enabled = true;
        fit.delta_min = ep_fit_window[0];
        fit.delta_max = ep_fit_window[1];
        fit.points = ep_fit_points;
      }
      env = cmd_error_probs(params, ep_receivers, numerics(ep_c), fit);
    } else if (app.got_subcommand(sw)) {
      active = &sw_c;
      if (sw_spec.swept == "delta") {
        if (sw->count("--delta"))
          throw std::invalid_argument("--delta conflicts with sweeping delta");
        sw_spec.fixed_alpha = resolve_alpha(sw, sw_c);
      } else {
        if (sw->count("--energy") || sw->count("--alpha"))
          throw std::invalid_argument("--energy/--alpha conflict with sweeping energy");
        sw_spec.fixed_delta = sw_c.delta;
      }
      env = cmd_sweep(sw_spec, numerics(sw_c));
    } else if (app.got_subcommand(sim)) {
      active = &sim_c;
      montecarlo::RunConfig config;
      config.params = SignalParams{resolve_alpha(sim, sim_c), sim_c.delta};
      config.shots_per_run = sim_shots;
      config.runs = sim_runs;
      config.seed = sim_seed;
      config.receiver = sim_receiver == "kennedy" ? Receiver::kennedy : Receiver::homodyne;
      env = cmd_simulate(config, sim_compare, numerics(sim_c));
    } else if (app.got_subcommand(tr)) {
      active = &tr_c;
      const SignalParams params{resolve_alpha(tr, tr_c), tr_c.delta};
      env = cmd_trace(params, tr_panel, tr_count, tr_seed);
    } else {
      active = &th_c;
      env = cmd_threshold(th_energies, th_tol, th_delta_max, numerics(th_c));
    }
    if (!active->format.empty()) env.format = active->format;
    env.config["format"] = env.format;
    return write_output(env, active->out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace pskdiff::cli
