/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/runner.hpp"

#include "ransim/csv.hpp"
#include "ransim/env.hpp"
#include "ransim/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <thread>

namespace ransim {

EpisodeAborted::EpisodeAborted(EpisodeReport partial)
  : std::runtime_error("episode aborted: " + partial.abort_reason),
    m_partial(std::move(partial))
{
}

EpisodeReport
summarize(std::string controller, std::uint64_t seed, std::vector<StepRecord> steps)
{
  EpisodeReport report;
  report.controller = std::move(controller);
  report.seed = seed;
  double tput = 0.0;
  for (const auto& s : steps)
    {
      report.energy_j += s.energy_j;
      tput += s.throughput_mbps;
      report.switches += s.n_changed;
      report.reward_sum += s.reward;
    }
  report.mean_tput_mbps = steps.empty() ? 0.0 : tput / static_cast<double>(steps.size());
  report.steps = std::move(steps);
  return report;
}

EpisodeReport
run_episode(const ScenarioConfig& config, const ControllerSpec& spec, std::uint64_t seed,
            const std::function<void(const EnergySavingEnv&)>& on_finish)
{
  const std::string name(to_string(spec.kind));
  std::vector<StepRecord> steps;
  steps.reserve(config.episode_steps);

  auto abort = [&](const std::string& reason) {
    EpisodeReport partial = summarize(name, seed, std::move(steps));
    partial.aborted = true;
    partial.abort_reason = reason;
    return EpisodeAborted(std::move(partial));
  };

  std::unique_ptr<Controller> controller;
  try
    {
      controller = make_controller(spec, config, seed);
    }
  catch (const IoError& e)
    {
      throw abort(e.what());
    }

  EnergySavingEnv env(config);
  Observation obs = env.reset(seed);
  std::optional<EnvStep> last;
  while (!env.terminated())
    {
      ActionBits action;
      try
        {
          action = controller->decide(obs, last);
        }
      catch (const IoError& e)
        {
          throw abort(e.what());
        }
      EnvStep result = env.step(action);
      steps.push_back(StepRecord{
          .step = result.info.step,
          .sim_time_ms = result.info.sim_time_ms,
          .reward = result.reward,
          .throughput_mbps = result.info.throughput_mbps,
          .power_w = result.info.power_w,
          .energy_j = result.info.energy_j,
          .n_on = result.info.n_on,
          .n_changed = result.info.n_changed,
          .action = action.to_string(),
      });
      obs = result.observation;
      last = std::move(result);
    }
  if (on_finish)
    on_finish(env);
  return summarize(name, seed, std::move(steps));
}

std::vector<EpisodeReport>
compare(const ScenarioConfig& config, const std::vector<ControllerSpec>& controllers,
        const std::vector<std::uint64_t>& seeds, unsigned jobs)
{
  const std::size_t total = controllers.size() * seeds.size();
  std::vector<EpisodeReport> reports(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++)
      {
        try
          {
            reports[i] = run_episode(config, controllers[i / seeds.size()], seeds[i % seeds.size()]);
          }
        catch (...)
          {
            errors[i] = std::current_exception();
          }
      }
  };

  if (jobs == 0)
    jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto& t : pool)
    t.join();

  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  return reports;
}

// ---------------------------------------------------------------- CSV

namespace {

std::ofstream
open_out(const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot write " + path.string());
  return out;
}

std::vector<std::vector<std::string>>
read_records(const std::filesystem::path& path, std::string_view header, std::size_t width)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw IoError(path.string() + ": unexpected header");
  std::vector<std::vector<std::string>> records;
  while (std::getline(in, line))
    {
      if (line.empty())
        continue;
      auto fields = csv::split(line);
      if (fields.size() != width)
        throw IoError(path.string() + ": expected " + std::to_string(width) + " fields");
      records.push_back(std::move(fields));
    }
  return records;
}

} // namespace

void
write_steps_csv(const std::filesystem::path& path, const std::vector<StepRecord>& steps)
{
  auto out = open_out(path);
  out << kStepsCsvHeader << '\n';
  for (const auto& s : steps)
    out << csv::join({std::to_string(s.step), std::to_string(s.sim_time_ms), csv::format_double(s.reward),
                      csv::format_double(s.throughput_mbps), csv::format_double(s.power_w),
                      csv::format_double(s.energy_j), std::to_string(s.n_on), std::to_string(s.n_changed),
                      s.action})
        << '\n';
}

std::vector<StepRecord>
read_steps_csv(const std::filesystem::path& path)
{
  std::vector<StepRecord> steps;
  for (const auto& f : read_records(path, kStepsCsvHeader, 9))
    steps.push_back(StepRecord{
        .step = std::stoull(f[0]),
        .sim_time_ms = std::stoll(f[1]),
        .reward = csv::parse_double(f[2]),
        .throughput_mbps = csv::parse_double(f[3]),
        .power_w = csv::parse_double(f[4]),
        .energy_j = csv::parse_double(f[5]),
        .n_on = std::stoull(f[6]),
        .n_changed = std::stoull(f[7]),
        .action = f[8],
    });
  return steps;
}

void
write_summary_csv(const std::filesystem::path& path, const std::vector<EpisodeReport>& reports)
{
  auto out = open_out(path);
  out << kSummaryCsvHeader << '\n';
  for (const auto& r : reports)
    out << csv::join({r.controller, std::to_string(r.seed), csv::format_double(r.energy_j),
                      csv::format_double(r.mean_tput_mbps), std::to_string(r.switches),
                      csv::format_double(r.reward_sum)})
        << '\n';
}

std::vector<EpisodeReport>
read_summary_csv(const std::filesystem::path& path)
{
  std::vector<EpisodeReport> reports;
  for (const auto& f : read_records(path, kSummaryCsvHeader, 6))
    {
      EpisodeReport r;
      r.controller = f[0];
      r.seed = std::stoull(f[1]);
      r.energy_j = csv::parse_double(f[2]);
      r.mean_tput_mbps = csv::parse_double(f[3]);
      r.switches = std::stoull(f[4]);
      r.reward_sum = csv::parse_double(f[5]);
      reports.push_back(std::move(r));
    }
  return reports;
}

void
write_plot_csv(const std::filesystem::path& path, const EpisodeReport& report)
{
  auto out = open_out(path);
  out << kPlotCsvHeader << '\n';
  double cumulative = 0.0;
  for (const auto& s : report.steps)
    {
      cumulative += s.energy_j;
      const auto active = std::count(s.action.begin(), s.action.end(), '1');
      out << csv::join({std::to_string(s.step), csv::format_double(static_cast<double>(s.sim_time_ms) / 1000.0),
                        csv::format_double(s.power_w), csv::format_double(s.energy_j),
                        csv::format_double(cumulative), csv::format_double(s.throughput_mbps),
                        std::to_string(active)})
          << '\n';
    }
}

std::string
steps_file_name(const EpisodeReport& report)
{
  return "steps_" + report.controller + "_" + std::to_string(report.seed) + ".csv";
}

} // namespace ransim
