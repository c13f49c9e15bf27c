/* SPDX-License-Identifier: BSD-3-Clause */

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. `acceptance <name>...` runs a subset.

#include "ransim/action.hpp"
#include "ransim/channel.hpp"
#include "ransim/csv.hpp"
#include "ransim/datalake.hpp"
#include "ransim/env.hpp"
#include "ransim/errors.hpp"
#include "ransim/runner.hpp"
#include "ransim/server.hpp"
#include "ransim/session.hpp"
#include "ransim/transcript.hpp"
#include "ransim/wire.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace ransim;

namespace {

struct Verdict
{
  bool pass{true};
  std::string detail;

  void require(bool ok, const std::string& what)
  {
    if (!ok)
      {
        pass = false;
        detail += (detail.empty() ? "" : "; ") + what;
      }
  }
};

struct Criterion
{
  std::string name;
  std::function<Verdict()> check;
};

fs::path
scratch_dir(const std::string& name)
{
  const fs::path dir = fs::temp_directory_path() / ("ransim-acceptance-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string
slurp(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double
seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// A switching action sequence: a fresh random index every 5 steps.
std::vector<ActionBits>
action_sequence(std::size_t n_gnbs, std::size_t steps, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n_gnbs) - 1);
  std::vector<ActionBits> out;
  ActionBits current = ActionBits::all_on(n_gnbs);
  for (std::size_t k = 0; k < steps; ++k)
    {
      if (k % 5 == 4)
        current = decode_action(pick(rng), n_gnbs);
      out.push_back(current);
    }
  return out;
}

std::vector<double>
power_trace(const ScenarioConfig& config, std::uint64_t seed, const std::vector<ActionBits>& actions)
{
  EnergySavingEnv env(config);
  env.reset(seed);
  std::vector<double> out;
  for (const auto& a : actions)
    out.push_back(env.step(a).info.power_w);
  return out;
}

Verdict
action_space()
{
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t ok = 0;
  for (std::uint64_t k = 0; k < 128; ++k)
    if (encode_action(decode_action(k, 7)) == k)
      ++ok;
  v.require(ok == 128, std::to_string(ok) + "/128 round-trips");

  EnergySavingEnv env(build_default_scenario(42));
  const auto obs = env.reset();
  const auto step = env.step(decode_action(127, 7));
  v.require(obs.size() == 85 && step.observation.size() == 85 && env.observation_length() == 85,
            "observation length " + std::to_string(step.observation.size()));
  const double dt = seconds_since(t0);
  v.require(dt < 1.0, "took " + std::to_string(dt) + " s");
  v.detail = v.pass ? "128/128 round-trips, observation length 85, " + std::to_string(dt) + " s" : v.detail;
  return v;
}

Verdict
path_loss()
{
  // Independent evaluation of the UMi street-canyon formulas at d2d=100 m,
  // fc=3.5 GHz, h_bs=10 m, h_ut=1.5 m (d3d = 100.3606 m).
  constexpr double kLosOracle = 85.31418910250133;
  constexpr double kNlosOracle = 104.64383201166098;
  Verdict v;
  const double los = path_loss_umi_db(100.0, 3.5, 10.0, 1.5, true);
  const double nlos = path_loss_umi_db(100.0, 3.5, 10.0, 1.5, false);
  v.require(std::abs(los - kLosOracle) <= 0.01, "LOS " + std::to_string(los));
  v.require(std::abs(nlos - kNlosOracle) <= 0.01, "NLOS " + std::to_string(nlos));
  if (v.pass)
    v.detail = "LOS " + std::to_string(los) + " dB, NLOS " + std::to_string(nlos) + " dB";
  return v;
}

Verdict
determinism()
{
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = scratch_dir("determinism");
  const ScenarioConfig config = build_default_scenario(42);
  const auto actions = action_sequence(config.n_gnbs, 600, 7);
  for (const char* name : {"a.csv", "b.csv"})
    {
      EnergySavingEnv env(config);
      env.reset(42);
      for (const auto& a : actions)
        env.step(a);
      env.datalake().export_csv(dir / name);
    }
  const std::string a = slurp(dir / "a.csv");
  const std::string b = slurp(dir / "b.csv");
  v.require(!a.empty() && a == b, "KPM exports differ");
  const double dt = seconds_since(t0);
  v.require(dt < 30.0, "took " + std::to_string(dt) + " s");
  if (v.pass)
    v.detail = std::to_string(a.size()) + " identical bytes, " + std::to_string(dt) + " s";
  return v;
}

Verdict
energy_monotonicity()
{
  Verdict v;
  const ScenarioConfig config = build_default_scenario(42);
  const std::size_t n = config.n_gnbs;

  const std::vector<ActionBits> all_on(config.episode_steps, ActionBits::all_on(n));
  const auto reference = power_trace(config, 42, all_on);

  const auto threshold = run_episode(config, ControllerSpec{.kind = PolicyKind::Threshold}, 42);
  std::size_t worse = 0;
  for (std::size_t k = 0; k < reference.size(); ++k)
    if (threshold.steps.at(k).power_w > reference[k])
      ++worse;
  v.require(worse == 0, "THRESHOLD above ALL_ON on " + std::to_string(worse) + " steps");

  std::size_t bad_subsets = 0;
  for (std::uint64_t a = 0; a + 1 < (std::uint64_t{1} << n); ++a)
    {
      const std::vector<ActionBits> fixed(config.episode_steps, decode_action(a, n));
      const auto trace = power_trace(config, 42, fixed);
      for (std::size_t k = 0; k < trace.size(); ++k)
        if (trace[k] > reference[k])
          {
            ++bad_subsets;
            break;
          }
    }
  v.require(bad_subsets == 0, std::to_string(bad_subsets) + " fixed subsets exceed ALL_ON power");

  // Empty active cell: seed-42 placement with gNB 6's UEs mirrored through
  // the origin, which leaves gNB 6 without UEs. The first tick in which it
  // stays empty under all-on is compared against the same state with gNB 6
  // switched off.
  const Simulation seeded(config);
  std::vector<Vec2> positions;
  for (const auto& ue : seeded.ues())
    positions.push_back(ue.serving_cell == 6 ? Vec2{-ue.position.x, -ue.position.y} : ue.position);
  Simulation sim(config, positions);
  ActionBits off6 = ActionBits::all_on(n);
  off6.set(6, false);
  std::optional<std::size_t> found;
  for (std::size_t k = 0; k < 600 && !found; ++k)
    {
      Simulation on = sim;
      on.apply_action(ActionBits::all_on(n));
      on.tick();
      if (sim.cells()[6].attached_ues.empty() && on.cells()[6].attached_ues.empty())
        {
          Simulation off = sim;
          off.apply_action(off6);
          off.tick();
          bool same = true;
          for (std::size_t u = 0; u < on.ues().size(); ++u)
            same = same && on.ues()[u].serving_cell == off.ues()[u].serving_cell;
          v.require(same, "serving cells changed after deactivating empty gNB 6");
          v.require(off.total_power_w() < on.total_power_w(),
                    "power " + std::to_string(off.total_power_w()) + " W not below " +
                        std::to_string(on.total_power_w()) + " W");
          found = k;
          if (v.pass)
            v.detail = "127 fixed subsets and THRESHOLD pointwise <= ALL_ON; empty gNB 6 off at tick " +
                       std::to_string(k + 1) + ": " + std::to_string(on.total_power_w()) + " -> " +
                       std::to_string(off.total_power_w()) + " W";
        }
      sim = std::move(on);
    }
  v.require(found.has_value(), "no tick with an empty active gNB 6 found");
  return v;
}

Verdict
reward_decay()
{
  constexpr double kRatioOracle = 19930.370438230286; // e^-0.1 / e^-10
  Verdict v;
  RewardWeights w; // tau = 1 s
  // Switch set: two cells turned off, none turned on.
  const double quick = switching_penalty(w, 0, 2, 0.1);
  const double slow = switching_penalty(w, 0, 2, 10.0);
  v.require(std::abs(quick / slow - kRatioOracle) <= 1e-9, "ratio " + std::to_string(quick / slow));

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dt(0.0, 20.0);
  std::uniform_int_distribution<std::uint64_t> changed(1, 7);
  std::size_t violations = 0;
  std::size_t pairs = 0;
  while (pairs < 1000)
    {
      double a = dt(rng);
      double b = dt(rng);
      if (a == b)
        continue;
      if (a > b)
        std::swap(a, b);
      const std::uint64_t m = changed(rng);
      const std::uint64_t on = std::uniform_int_distribution<std::uint64_t>(0, m)(rng);
      if (!(switching_penalty(w, on, m, a) > switching_penalty(w, on, m, b)))
        ++violations;
      ++pairs;
    }
  v.require(violations == 0, std::to_string(violations) + "/1000 pairs out of order");
  if (v.pass)
    {
      std::ostringstream s;
      s.precision(17);
      s << "ratio " << quick / slow << ", 1000/1000 pairs strictly ordered";
      v.detail = s.str();
    }
  return v;
}

Verdict
conservation()
{
  Verdict v;
  const ScenarioConfig config = build_default_scenario(42);
  const auto actions = action_sequence(config.n_gnbs, 600, 11);
  EnergySavingEnv env(config);
  env.reset(42);
  std::vector<StepRecord> steps;
  std::size_t mismatched_ticks = 0;
  for (const auto& a : actions)
    {
      const auto r = env.step(a);
      double cell_sum = 0.0;
      for (const auto& row : env.cell_history().back())
        cell_sum += row.dl_throughput_mbps;
      double ue_sum = 0.0;
      for (const auto& rec : env.last_ue_rows())
        ue_sum += rec.dl_throughput_mbps;
      if (cell_sum != ue_sum || cell_sum != r.info.throughput_mbps)
        ++mismatched_ticks;
      steps.push_back(StepRecord{.step = r.info.step,
                                 .sim_time_ms = r.info.sim_time_ms,
                                 .reward = r.reward,
                                 .throughput_mbps = r.info.throughput_mbps,
                                 .power_w = r.info.power_w,
                                 .energy_j = r.info.energy_j,
                                 .n_on = r.info.n_on,
                                 .n_changed = r.info.n_changed,
                                 .action = a.to_string()});
    }
  v.require(mismatched_ticks == 0, std::to_string(mismatched_ticks) + " ticks with cell/UE throughput mismatch");

  const auto report = summarize("SEQ", 42, steps);
  const fs::path dir = scratch_dir("conservation");
  write_steps_csv(dir / "steps.csv", report.steps);
  double energy = 0.0;
  std::size_t period_mismatch = 0;
  for (const auto& s : read_steps_csv(dir / "steps.csv"))
    {
      energy += s.energy_j;
      if (s.energy_j != s.power_w * config.control_period_s())
        ++period_mismatch;
    }
  v.require(period_mismatch == 0, std::to_string(period_mismatch) + " periods with energy != P * dt");
  v.require(energy == report.energy_j, "episode energy differs from sum of period energies");
  if (v.pass)
    v.detail = "600/600 ticks exact, episode energy " + csv::format_double(report.energy_j) + " J";
  return v;
}

Verdict
datalake_key()
{
  Verdict v;
  const ScenarioConfig config = build_default_scenario(42);
  EnergySavingEnv env(config);
  env.reset(42);
  std::vector<std::vector<KpmRecord>> ticks;
  for (std::size_t k = 0; k < 600; ++k)
    {
      env.step(ActionBits::all_on(config.n_gnbs));
      ticks.push_back(env.last_ue_rows());
    }
  v.require(env.datalake().size() == 600u * 63u, "stored " + std::to_string(env.datalake().size()) + " rows");

  Datalake copy = env.datalake();
  std::size_t rejected = 0;
  for (const auto& batch : ticks)
    {
      try
        {
          copy.insert_ue_rows(batch);
        }
      catch (const DuplicateKeyError&)
        {
          ++rejected;
        }
    }
  v.require(rejected == ticks.size(), std::to_string(rejected) + "/600 re-inserted batches rejected");
  v.require(copy.size() == 600u * 63u, "store changed after rejected inserts");
  if (v.pass)
    v.detail = "37800 rows stored, 600/600 duplicate batches rejected";
  return v;
}

Verdict
protocol_equivalence()
{
  Verdict v;
  const fs::path dir = scratch_dir("protocol");
  const ScenarioConfig config = build_default_scenario(42);
  const auto actions = action_sequence(config.n_gnbs, 600, 5);

  Server server("127.0.0.1", 0);
  server.record_transcripts(dir);
  std::thread runner([&] { server.run(); });

  std::vector<std::string> wire_results;
  try
    {
      LineClient client("127.0.0.1", server.port());
      client.request(R"({"type":"HELLO","id":1,"version":"1"})");
      client.request(R"({"type":"INIT","id":2})");
      wire_results.push_back(client.request(R"({"type":"RESET","id":3,"seed":42})"));
      std::int64_t id = 4;
      for (const auto& a : actions)
        {
          nlohmann::json msg{{"type", "STEP"}, {"id", id++}, {"action", std::vector<int>(a.bits().begin(), a.bits().end())}};
          wire_results.push_back(client.request(msg.dump()));
        }
      client.request(R"({"type":"BYE","id":)" + std::to_string(id) + "}");
    }
  catch (const std::exception& e)
    {
      v.require(false, std::string("client: ") + e.what());
    }
  server.stop();
  runner.join();

  EnergySavingEnv env(config);
  std::vector<std::string> local;
  const auto obs = env.reset(42);
  local.push_back(wire::encode_step_result(3, obs, 0.0, false, env.reset_info()));
  std::int64_t id = 4;
  for (const auto& a : actions)
    local.push_back(wire::encode_step_result(id++, env.step(a)));

  std::size_t first_diff = local.size();
  for (std::size_t i = 0; i < local.size(); ++i)
    if (i >= wire_results.size() || wire_results[i] != local[i])
      {
        first_diff = i;
        break;
      }
  v.require(wire_results.size() == 601 && first_diff == local.size(),
            "wire stream diverges at result " + std::to_string(first_diff));

  const fs::path transcript_path = dir / "session-1.transcript";
  if (!fs::exists(transcript_path))
    {
      v.require(false, "no transcript recorded");
      return v;
    }
  const Transcript transcript = load_transcript(transcript_path);
  std::vector<std::string> responses;
  for (const auto& e : transcript)
    responses.push_back(e.response);
  try
    {
      v.require(replay_transcript(transcript) == transcript_digest(responses), "replay digest differs");
    }
  catch (const ReplayMismatch& e)
    {
      v.require(false, std::string("replay: ") + e.what());
    }

  Transcript edited = transcript;
  edited.at(2).request = R"({"type":"RESET","id":3,"seed":43})";
  try
    {
      replay_transcript(edited);
      v.require(false, "edited seed replayed without mismatch");
    }
  catch (const ReplayMismatch& e)
    {
      // Entry 2 is the RESET, answered by the first STEP_RESULT.
      v.require(e.line() == 6, "edited seed mismatched at line " + std::to_string(e.line()));
    }
  if (v.pass)
    v.detail = "601 STEP_RESULT lines byte-identical; replay digest " + transcript_digest(responses) +
               "; edited seed mismatches at the first STEP_RESULT";
  return v;
}

Verdict
comparison_harness()
{
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = scratch_dir("compare");
  const ScenarioConfig config = build_default_scenario(42);
  const std::vector<ControllerSpec> controllers{
      {.kind = PolicyKind::AllOn}, {.kind = PolicyKind::Random}, {.kind = PolicyKind::Threshold}};
  const std::vector<std::uint64_t> seeds{42, 43, 44, 45, 46};
  const auto reports = compare(config, controllers, seeds);
  for (const auto& r : reports)
    write_steps_csv(dir / steps_file_name(r), r.steps);
  write_summary_csv(dir / "summary.csv", reports);
  const double dt = seconds_since(t0);
  v.require(reports.size() == 15, std::to_string(reports.size()) + " reports");
  v.require(dt < 300.0, "took " + std::to_string(dt) + " s");

  std::size_t mismatches = 0;
  for (const auto& row : read_summary_csv(dir / "summary.csv"))
    {
      const auto steps = read_steps_csv(dir / steps_file_name(row));
      double energy = 0.0;
      double tput = 0.0;
      double reward = 0.0;
      std::uint64_t switches = 0;
      for (const auto& s : steps)
        {
          energy += s.energy_j;
          tput += s.throughput_mbps;
          reward += s.reward;
          switches += s.n_changed;
        }
      const double mean = steps.empty() ? 0.0 : tput / static_cast<double>(steps.size());
      if (steps.size() != config.episode_steps || energy != row.energy_j || mean != row.mean_tput_mbps ||
          reward != row.reward_sum || switches != row.switches)
        ++mismatches;
    }
  v.require(mismatches == 0, std::to_string(mismatches) + " summary rows differ from per-step recomputation");
  if (v.pass)
    v.detail = "15 episodes in " + std::to_string(dt) + " s; 15/15 summary rows match per-step CSVs";
  return v;
}

} // namespace

int
main(int argc, char** argv)
{
  const std::vector<Criterion> criteria{
      {"action-space", action_space},
      {"path-loss-oracle", path_loss},
      {"determinism", determinism},
      {"energy-monotonicity", energy_monotonicity},
      {"reward-decay", reward_decay},
      {"conservation", conservation},
      {"datalake-key", datalake_key},
      {"protocol-equivalence", protocol_equivalence},
      {"comparison-harness", comparison_harness},
  };
  const std::vector<std::string> only(argv + 1, argv + argc);

  int failed = 0;
  for (const auto& c : criteria)
    {
      if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end())
        continue;
      Verdict v;
      try
        {
          v = c.check();
        }
      catch (const std::exception& e)
        {
          v.require(false, std::string("exception: ") + e.what());
        }
      std::printf("%s %-22s %s\n", v.pass ? "PASS" : "FAIL", c.name.c_str(), v.detail.c_str());
      std::fflush(stdout);
      failed += v.pass ? 0 : 1;
    }
  return failed == 0 ? 0 : 1;
}
