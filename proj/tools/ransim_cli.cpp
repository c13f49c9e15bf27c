/* SPDX-License-Identifier: BSD-3-Clause */

// ransim: run, compare and serve the cell on/off energy-saving simulator.
//
// Exit codes: 0 success, 1 other failure, 2 configuration error,
// 3 aborted episode.

#include "ransim/csv.hpp"
#include "ransim/datalake.hpp"
#include "ransim/errors.hpp"
#include "ransim/runner.hpp"
#include "ransim/scenario.hpp"
#include "ransim/server.hpp"
#include "ransim/transcript.hpp"

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <boost/asio/io_context.hpp>
#include <boost/asio/signal_set.hpp>

#include <CLI11.hpp>

namespace fs = std::filesystem;
using namespace ransim;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAborted = 3;

struct CommonOptions
{
  std::string scenario;
  std::string controller{"ALL_ON"};
  std::uint64_t seed{42};
  std::uint64_t steps{0};
  std::string out{"."};
  std::string host{"127.0.0.1"};
  std::uint16_t port{5555};
  ThresholdParams threshold{};
};

ScenarioConfig
load_config(const CommonOptions& o)
{
  ScenarioConfig config = o.scenario.empty() ? build_default_scenario(o.seed) : load_scenario(o.scenario);
  if (o.steps > 0)
    config.episode_steps = o.steps;
  if (auto v = validate(config); !v.empty())
    throw ConfigError(std::move(v));
  return config;
}

ControllerSpec
controller_spec(const std::string& name, const CommonOptions& o)
{
  const auto kind = parse_policy_kind(name);
  if (!kind)
    throw ConfigError({"unknown controller '" + name + "' (ALL_ON, RANDOM, THRESHOLD, EXTERNAL)"});
  return ControllerSpec{.kind = *kind, .threshold = o.threshold, .agent_host = o.host, .agent_port = o.port};
}

void
print_report(const EpisodeReport& r)
{
  std::cout << r.controller << " seed=" << r.seed << " steps=" << r.steps.size()
            << " energy_j=" << csv::format_double(r.energy_j)
            << " mean_tput_mbps=" << csv::format_double(r.mean_tput_mbps) << " switches=" << r.switches
            << " reward_sum=" << csv::format_double(r.reward_sum) << '\n';
}

void
write_cell_history(const fs::path& path, const EnergySavingEnv& env)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot write " + path.string());
  out << "cell_id,timestamp_ms,dl_throughput_mbps,num_attached_ues,prb_utilization,avg_sinr_db,avg_rsrp_dbm,"
         "power_w,energy_j_last_period,is_active,ho_in,ho_out,avg_backlog_mbits,qos_violation_ratio\n";
  for (const auto& tick : env.cell_history())
    for (const auto& row : tick)
      {
        std::vector<std::string> fields{std::to_string(row.cell_id), std::to_string(row.timestamp_ms)};
        for (double v : row.kpms())
          fields.push_back(csv::format_double(v));
        out << csv::join(fields) << '\n';
      }
}

int
cmd_run(const CommonOptions& o)
{
  const ScenarioConfig config = load_config(o);
  fs::create_directories(o.out);
  try
    {
      auto report = run_episode(config, controller_spec(o.controller, o), o.seed, [&](const EnergySavingEnv& env) {
        env.datalake().export_csv(fs::path(o.out) / "kpm.csv");
        write_cell_history(fs::path(o.out) / "cells.csv", env);
      });
      write_steps_csv(fs::path(o.out) / "steps.csv", report.steps);
      print_report(report);
      return 0;
    }
  catch (const EpisodeAborted& e)
    {
      write_steps_csv(fs::path(o.out) / "steps.csv", e.partial().steps);
      std::cerr << "aborted after " << e.partial().steps.size() << " steps: " << e.partial().abort_reason << '\n';
      return kExitAborted;
    }
}

int
cmd_compare(const CommonOptions& o, const std::vector<std::string>& controllers, std::uint64_t num_seeds,
            unsigned jobs)
{
  const ScenarioConfig config = load_config(o);
  std::vector<ControllerSpec> specs;
  for (const auto& name : controllers)
    specs.push_back(controller_spec(name, o));
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < num_seeds; ++i)
    seeds.push_back(o.seed + i);

  fs::create_directories(o.out);
  try
    {
      const auto reports = compare(config, specs, seeds, jobs);
      for (const auto& r : reports)
        {
          write_steps_csv(fs::path(o.out) / steps_file_name(r), r.steps);
          print_report(r);
        }
      write_summary_csv(fs::path(o.out) / "summary.csv", reports);
      return 0;
    }
  catch (const EpisodeAborted& e)
    {
      std::cerr << "aborted: " << e.partial().abort_reason << '\n';
      return kExitAborted;
    }
}

int
cmd_export_plots(const CommonOptions& o)
{
  const ScenarioConfig config = load_config(o);
  fs::create_directories(o.out);
  const auto report = run_episode(config, controller_spec(o.controller, o), o.seed);
  const fs::path path = fs::path(o.out) / ("plot_" + report.controller + "_" + std::to_string(o.seed) + ".csv");
  write_plot_csv(path, report);
  std::cout << path.string() << '\n';
  return 0;
}

int
cmd_serve(const CommonOptions& o, const std::string& bind, const std::string& transcript_dir)
{
  Server server(bind, o.port);
  if (!transcript_dir.empty())
    {
      fs::create_directories(transcript_dir);
      server.record_transcripts(transcript_dir);
    }

  boost::asio::io_context signals_io;
  boost::asio::signal_set signals(signals_io, SIGINT, SIGTERM);
  signals.async_wait([&server](const boost::system::error_code& ec, int) {
    if (!ec)
      server.stop();
  });
  std::thread signal_thread([&signals_io] { signals_io.run(); });

  std::cout << "listening on " << bind << ":" << server.port() << std::endl;
  server.run();
  signals.cancel();
  signal_thread.join();
  return 0;
}

int
cmd_validate(const CommonOptions& o, bool dump)
{
  const ScenarioConfig config = o.scenario.empty() ? build_default_scenario(o.seed) : load_scenario(o.scenario);
  const auto violations = validate(config);
  if (dump)
    std::cout << nlohmann::json(config).dump(2) << '\n';
  for (const auto& v : violations)
    std::cerr << v << '\n';
  if (!violations.empty())
    return kExitConfig;
  if (!dump)
    std::cout << "ok\n";
  return 0;
}

int
cmd_replay(const std::string& transcript)
{
  try
    {
      std::cout << replay_transcript(load_transcript(transcript)) << '\n';
      return 0;
    }
  catch (const ReplayMismatch& e)
    {
      std::cerr << e.what() << "\n  expected: " << e.expected() << "\n  actual:   " << e.actual() << '\n';
      return kExitFailure;
    }
}

void
add_scenario_options(CLI::App* cmd, CommonOptions& o)
{
  cmd->add_option("--scenario", o.scenario, "Scenario JSON file (default: built-in dense-urban layout)");
  cmd->add_option("--seed", o.seed, "Simulation seed");
  cmd->add_option("--steps", o.steps, "Override episode length");
}

void
add_controller_options(CLI::App* cmd, CommonOptions& o)
{
  cmd->add_option("--u-low", o.threshold.u_low, "THRESHOLD: sleep below this many UEs");
  cmd->add_option("--theta-high", o.threshold.theta_high, "THRESHOLD: overload PRB utilization");
  cmd->add_option("--hold-steps", o.threshold.hold_steps, "Min steps between changes of one cell");
  cmd->add_option("--host", o.host, "EXTERNAL agent host");
  cmd->add_option("--port", o.port, "EXTERNAL agent port");
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Cell on/off energy-saving RAN simulator"};
  app.require_subcommand(1);
  CommonOptions o;

  auto* run = app.add_subcommand("run", "Run a single episode");
  add_scenario_options(run, o);
  add_controller_options(run, o);
  run->add_option("--controller", o.controller, "ALL_ON | RANDOM | THRESHOLD | EXTERNAL");
  run->add_option("--out", o.out, "Output directory");

  std::vector<std::string> controllers{"ALL_ON", "RANDOM", "THRESHOLD"};
  std::uint64_t num_seeds = 5;
  unsigned jobs = 0;
  auto* cmp = app.add_subcommand("compare", "Run controllers x seeds and write summary.csv");
  add_scenario_options(cmp, o);
  add_controller_options(cmp, o);
  cmp->add_option("--controller", controllers, "Controllers to compare")->delimiter(',');
  cmp->add_option("--num-seeds", num_seeds, "Seeds seed..seed+n-1");
  cmp->add_option("--jobs", jobs, "Parallel episodes (0 = hardware threads)");
  cmp->add_option("--out", o.out, "Output directory");

  std::string bind = "127.0.0.1";
  std::string transcript_dir;
  auto* serve = app.add_subcommand("serve", "Serve the agent protocol over TCP");
  serve->add_option("--bind", bind, "Bind address");
  serve->add_option("--port", o.port, "TCP port");
  serve->add_option("--transcript-dir", transcript_dir, "Record each session's transcript here");

  bool dump = false;
  auto* val = app.add_subcommand("validate", "Check a scenario file");
  val->add_option("--scenario", o.scenario, "Scenario JSON file (default: built-in)");
  val->add_option("--seed", o.seed, "Seed for the built-in scenario");
  val->add_flag("--dump", dump, "Print the resolved scenario as JSON");

  auto* plots = app.add_subcommand("export-plots", "Write per-step energy/throughput series as CSV");
  add_scenario_options(plots, o);
  add_controller_options(plots, o);
  plots->add_option("--controller", o.controller, "ALL_ON | RANDOM | THRESHOLD | EXTERNAL");
  plots->add_option("--out", o.out, "Output directory");

  std::string transcript;
  auto* replay = app.add_subcommand("replay", "Replay a recorded session transcript");
  replay->add_option("--transcript", transcript, "Transcript file")->required();

  CLI11_PARSE(app, argc, argv);

  try
    {
      if (*run)
        return cmd_run(o);
      if (*cmp)
        return cmd_compare(o, controllers, num_seeds, jobs);
      if (*serve)
        return cmd_serve(o, bind, transcript_dir);
      if (*val)
        return cmd_validate(o, dump);
      if (*plots)
        return cmd_export_plots(o);
      if (*replay)
        return cmd_replay(transcript);
    }
  catch (const ConfigError& e)
    {
      std::cerr << e.what() << '\n';
      return kExitConfig;
    }
  catch (const EpisodeAborted& e)
    {
      std::cerr << e.what() << '\n';
      return kExitAborted;
    }
  catch (const std::exception& e)
    {
      std::cerr << "error: " << e.what() << '\n';
      return kExitFailure;
    }
  return 0;
}
