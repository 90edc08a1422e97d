// Command-line harness: scenario runners, batch Monte Carlo, offline
// replay, and SVG rendering on top of the flowseek library.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "flowseek/config.hpp"
#include "flowseek/scenarios.hpp"
#include "flowseek/svg_render.hpp"
#include "flowseek/trial.hpp"
#include "flowseek/trial_log.hpp"

namespace {

namespace fs = std::filesystem;
using namespace flowseek;

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<double> noise;
  std::optional<std::string> out_dir;
  bool svg = false;
};

ScenarioConfig load_config(const CommonOpts& o) {
  ScenarioConfig cfg;
  if (!o.config_path.empty()) cfg = parse_config(read_file(o.config_path));
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.trials) cfg.trials = *o.trials;
  if (o.noise) cfg.sensor.noise_sigma_mT = *o.noise;
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.svg) cfg.write_svg = true;
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "Config file path (defaults are built in)");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--trials", o.trials, "Trial count (batch)");
  cmd->add_option("--noise", o.noise, "Sensor noise sigma, mT");
  cmd->add_option("--out", o.out_dir, "Output directory");
  cmd->add_flag("--svg", o.svg, "Write SVG trajectory plots");
}

std::string trial_name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "trial_%03d", i);
  return buf;
}

int cmd_characterize(const CommonOpts& o) {
  const ScenarioConfig cfg = load_config(o);
  const auto positions = run_characterize(cfg);
  std::printf("position  distance_m  speed_mps  rms_deg\n");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto& p = positions[i];
    std::printf("%8zu  %10.2f  %9.2f  %7.3f\n", i, p.distance_m, p.speed_mps, p.rms_deg);
    const std::string base = cfg.out_dir + "/characterize_d" + fmt_g6(p.distance_m);
    write_file(base + ".csv", write_tick_csv(p.log));
    write_file(base + "_samples.csv", write_sample_csv(p.samples));
    if (cfg.write_svg) write_file(base + ".svg", render_svg(p.log, cfg));
  }
  return 0;
}

int cmd_reorient(const CommonOpts& o) {
  const ScenarioConfig cfg = load_config(o);
  const auto cells = run_reorient(cfg, default_initial_errors(), cfg.write_svg);
  std::string csv = "distance_m,speed_mps,initial_error_deg,settled,settle_time_s\n";
  std::printf("distance_m  speed_mps  init_err_deg  settle_s\n");
  for (const auto& c : cells) {
    std::printf("%10.2f  %9.2f  %12.0f  %8.3f\n", c.distance_m, c.speed_mps,
                c.initial_error_deg, c.settle_time_s);
    csv += fmt_g6(c.distance_m);
    csv += ',';
    csv += fmt_g6(c.speed_mps);
    csv += ',';
    csv += fmt_g6(c.initial_error_deg);
    csv += ',';
    csv += c.settled ? '1' : '0';
    csv += ',';
    csv += c.settled ? fmt_g6(c.settle_time_s) : std::string("inf");
    csv += '\n';
  }
  write_file(cfg.out_dir + "/reorient_summary.csv", csv);
  return 0;
}

int cmd_seek(const CommonOpts& o) {
  const ScenarioConfig cfg = load_config(o);
  RngStream pose_rng(derive_seed(cfg.master_seed, 0));
  const QuadState start = random_start(cfg, pose_rng);
  const TrialResult trial = run_trial(cfg, start, derive_seed(derive_seed(cfg.master_seed, 0), 1));
  write_file(cfg.out_dir + "/seek.csv", write_tick_csv(trial.log));
  write_file(cfg.out_dir + "/seek_samples.csv", write_sample_csv(trial.samples));
  if (cfg.write_svg) write_file(cfg.out_dir + "/seek.svg", render_svg(trial.log, cfg));
  std::printf("outcome=%s time_s=%s final_dist_m=%s path_len_m=%s\n",
              to_string(trial.outcome), fmt_g6(trial.log.summary.completion_s).c_str(),
              fmt_g6(trial.log.summary.final_distance_m).c_str(),
              fmt_g6(trial.log.summary.path_length_m).c_str());
  return 0;
}

int cmd_batch(const CommonOpts& o) {
  const ScenarioConfig cfg = load_config(o);
  const BatchResult result = run_batch(cfg, [&](int i, const TrialResult& trial) {
    const std::string base = cfg.out_dir + "/" + trial_name(i);
    write_file(base + ".csv", write_tick_csv(trial.log));
    if (cfg.write_svg) write_file(base + ".svg", render_svg(trial.log, cfg));
  });
  write_file(cfg.out_dir + "/summary.csv", write_batch_summary_csv(result));
  std::printf("%s", write_batch_summary_csv(result).c_str());
  std::printf("success_rate=%.3f (%d/%d)  median_success_time_s=%s\n", result.success_rate,
              result.successes, cfg.trials,
              fmt_g6(result.median_success_time_s).c_str());
  return 0;
}

int cmd_replay(const CommonOpts& o, const std::string& input) {
  const ScenarioConfig cfg = load_config(o);
  const auto samples = parse_sample_csv(read_file(input));
  const auto estimates = run_replay(samples, cfg);
  write_file(cfg.out_dir + "/replay_estimates.csv", write_replay_csv(estimates));
  std::printf("replayed %zu samples -> %zu estimates\n", samples.size(), estimates.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Airflow source-seeking simulator and batch harness"};
  app.require_subcommand(1);

  CommonOpts oc, orr, os, ob, orp;
  std::string replay_input;

  CLI::App* c_char = app.add_subcommand("characterize", "Rotation test at the anchor distances");
  add_common(c_char, oc);
  CLI::App* c_reor = app.add_subcommand("reorient", "PD reorientation grid (speeds x errors)");
  add_common(c_reor, orr);
  CLI::App* c_seek = app.add_subcommand("seek", "One source-seeking trial");
  add_common(c_seek, os);
  CLI::App* c_batch = app.add_subcommand("batch", "Seeded Monte Carlo seek trials");
  add_common(c_batch, ob);
  CLI::App* c_replay = app.add_subcommand("replay", "Offline pipeline over a recorded sample CSV");
  add_common(c_replay, orp);
  c_replay->add_option("input", replay_input, "Sample CSV (t_s,bx_mT,by_mT)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_char->parsed()) return cmd_characterize(oc);
    if (c_reor->parsed()) return cmd_reorient(orr);
    if (c_seek->parsed()) return cmd_seek(os);
    if (c_batch->parsed()) return cmd_batch(ob);
    if (c_replay->parsed()) return cmd_replay(orp, replay_input);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
