#include "cnslab/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "cnslab/decay.hpp"
#include "cnslab/errors.hpp"
#include "cnslab/io.hpp"
#include "cnslab/verify.hpp"
#include "json.hpp"

namespace cnslab {

namespace {

namespace fs = std::filesystem;

struct Outputs {
  fs::path dir;
  const RunConfig* config;
};

void write_run_outputs(const Outputs& o, const RunResult& r, std::ostream& out) {
  const OutputConfig& oc = o.config->output;
  fs::create_directories(o.dir);
  if (oc.csv) write_series((o.dir / "series.csv").string(), r.series);
  if (oc.json) write_text((o.dir / "summary.json").string(), summary_json(*o.config, r));
  if (oc.plot) write_plot_data(o.dir.string(), r.series);
  out << "wrote " << r.series.size() << " snapshots to " << o.dir.string() << " (t = "
      << format_number(r.final_state.state.t) << ", config " << o.config->hash() << ")\n";
}

int finish_run(const Outputs& o, const RunResult& r, std::ostream& out, std::ostream& err) {
  write_run_outputs(o, r, out);
  if (r.fault) {
    err << "runtime fault at t = " << format_number(r.fault->t) << ": " << r.fault->message << "\n";
    return exit_runtime;
  }
  return exit_ok;
}

RunOptions checkpointing(const Outputs& o) {
  RunOptions opts;
  const RunConfig& c = *o.config;
  const fs::path file = o.dir / "checkpoint.bin";
  opts.checkpoint = [file, &c](const RunState& s) {
    write_checkpoint(file.string(), s, c.params);
  };
  return opts;
}

int do_run(const RunConfig& config, const std::string& dir_override, std::ostream& out,
           std::ostream& err) {
  const Outputs o{dir_override.empty() ? fs::path(config.output.directory) : fs::path(dir_override),
                  &config};
  if (config.scenario.kind == ScenarioKind::stability_pair) {
    const PairResult r = run_pair(config);
    fs::create_directories(o.dir);
    if (config.output.csv) write_series((o.dir / "pair_series.csv").string(), r.series);
    if (config.output.json) write_text((o.dir / "summary.json").string(), pair_summary_json(config, r));
    if (config.output.plot) write_plot_data(o.dir.string(), r.series);
    out << "wrote " << r.series.size() << " twin-run snapshots to " << o.dir.string() << "\n";
    if (r.fault) {
      err << "runtime fault at t = " << format_number(r.fault->t) << ": " << r.fault->message << "\n";
      return exit_runtime;
    }
    return exit_ok;
  }
  const RunResult r = run(config, checkpointing(o));
  return finish_run(o, r, out, err);
}

int do_resume(const std::string& path, const std::string& dir_override, std::ostream& out,
              std::ostream& err) {
  const Checkpoint cp = read_checkpoint(path);
  const RunConfig config = RunConfig::parse(cp.run.config_text);
  if (config.params.mu != cp.params.mu || config.params.lambda != cp.params.lambda ||
      config.params.gamma != cp.params.gamma)
    throw FormatError(path + ": header parameters disagree with the embedded config");
  if (config.scenario.kind == ScenarioKind::stability_pair)
    throw ConfigError("twin runs do not write checkpoints");
  const Outputs o{dir_override.empty() ? fs::path(config.output.directory) : fs::path(dir_override),
                  &config};
  RunOptions opts = checkpointing(o);
  opts.resume = &cp.run;
  const RunResult r = run(config, opts);
  return finish_run(o, r, out, err);
}

int do_analyze(const std::string& path, const std::string& key, std::optional<double> p0,
               const std::string& window, std::ostream& out) {
  const DiagnosticSeries s = read_series(path);
  DecayWindow w;
  if (!window.empty()) {
    const auto comma = window.find(',');
    if (comma == std::string::npos) throw ConfigError("--window expects t_a,t_b");
    w = {parse_real(window.substr(0, comma)), parse_real(window.substr(comma + 1))};
    if (!(w.t_b > w.t_a && w.t_a > 0.0)) throw ConfigError("--window needs t_b > t_a > 0");
  } else if (s.metadata.count("box_length")) {
    w = default_decay_window(parse_real(s.metadata.at("box_length")));
  }
  if (!s.has(key)) throw ConfigError("series has no column '" + key + "'");
  DecayFit f = fit_decay(s, key, w);
  nlohmann::ordered_json j;
  j["series"] = path;
  j["key"] = key;
  j["window"] = {f.window.t_a, f.window.t_b};
  j["samples"] = f.samples;
  j["beta_hat"] = f.beta_hat;
  j["prefactor"] = f.prefactor;
  j["residual"] = f.residual;
  j["power_law"] = f.power_law;
  if (p0) {
    j["p0"] = *p0;
    j["target"] = beta(*p0);
    j["deviation"] = f.beta_hat - beta(*p0);
  }
  if (s.metadata.count("config_hash")) j["config_hash"] = s.metadata.at("config_hash");
  out << j.dump(2) << "\n";
  return exit_ok;
}

int do_verify(const std::string& suite, std::ostream& out) {
  const auto results = run_verify(suite);
  int failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.suite << "/" << r.name << "  " << r.detail << "\n";
    failed += !r.passed;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed ? exit_verify : exit_ok;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cnslab: pseudo-spectral compressible Navier-Stokes laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir, series_path, fit_key, window, suite = "all", ckpt;
  std::optional<double> p0;
  auto* run_cmd = app.add_subcommand("run", "integrate a configured scenario");
  run_cmd->add_option("config", config_path, "config file")->required();
  run_cmd->add_option("-o,--output", out_dir, "output directory (overrides the config)");

  auto* analyze_cmd = app.add_subcommand("analyze", "fit a decay exponent from a stored series");
  analyze_cmd->add_option("series", series_path, "series CSV")->required();
  analyze_cmd->add_option("--fit", fit_key, "column to fit")->required();
  analyze_cmd->add_option("--p0", p0, "integrability class for the target exponent");
  analyze_cmd->add_option("--window", window, "fit window t_a,t_b");

  auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
  verify_cmd->add_option("--suite", suite, "all, lp, helmholtz, energy or decay");

  auto* scenario_cmd = app.add_subcommand("scenario", "scenario catalog");
  std::string scenario_action;
  scenario_cmd->add_option("action", scenario_action, "list")->required();

  auto* resume_cmd = app.add_subcommand("resume", "continue a run from a checkpoint");
  resume_cmd->add_option("checkpoint", ckpt, "checkpoint file")->required();
  resume_cmd->add_option("-o,--output", out_dir, "output directory (overrides the config)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_config;
  }

  try {
    if (*run_cmd) return do_run(RunConfig::load(config_path), out_dir, out, err);
    if (*resume_cmd) return do_resume(ckpt, out_dir, out, err);
    if (*analyze_cmd) return do_analyze(series_path, fit_key, p0, window, out);
    if (*verify_cmd) return do_verify(suite, out);
    if (*scenario_cmd) {
      if (scenario_action != "list") throw ConfigError("unknown scenario action '" + scenario_action + "'");
      for (const auto& s : scenario_catalog()) out << s.name << "  " << s.description << "\n";
      return exit_ok;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return exit_config;
  } catch (const RuntimeFault& e) {
    err << "runtime fault: " << e.what() << "\n";
    return exit_runtime;
  }
  return exit_config;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace cnslab
