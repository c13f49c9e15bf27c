/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_RUNNER_HPP
#define RANSIM_RUNNER_HPP

#include "ransim/baselines.hpp"
#include "ransim/env.hpp"
#include "ransim/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ransim {

struct StepRecord
{
  std::uint64_t step{0};
  std::int64_t sim_time_ms{0};
  double reward{0.0};
  double throughput_mbps{0.0};
  double power_w{0.0};
  double energy_j{0.0};
  std::uint64_t n_on{0};
  std::uint64_t n_changed{0};
  std::string action;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct EpisodeReport
{
  std::string controller;
  std::uint64_t seed{0};
  double energy_j{0.0};
  double mean_tput_mbps{0.0};
  std::uint64_t switches{0};
  double reward_sum{0.0};
  std::vector<StepRecord> steps;
  bool aborted{false};
  std::string abort_reason;
};

/// Raised when an episode cannot finish; carries the steps completed so far.
class EpisodeAborted : public std::runtime_error
{
public:
  explicit EpisodeAborted(EpisodeReport partial);
  const EpisodeReport& partial() const noexcept { return m_partial; }

private:
  EpisodeReport m_partial;
};

/// Totals as left-to-right sums over the steps (mean = Σ throughput / steps).
EpisodeReport summarize(std::string controller, std::uint64_t seed, std::vector<StepRecord> steps);

/**
 * Run one full episode of `config` with `seed`, querying the controller
 * every step. `on_finish` sees the environment after the last step, e.g.
 * to export its datalake.
 *
 * \throws EpisodeAborted if the controller fails mid-episode
 */
EpisodeReport run_episode(const ScenarioConfig& config, const ControllerSpec& controller, std::uint64_t seed,
                          const std::function<void(const EnergySavingEnv&)>& on_finish = {});

/// Every (controller, seed) pair, run on up to `jobs` threads. Results are
/// ordered by controller (as given), then seed.
std::vector<EpisodeReport> compare(const ScenarioConfig& config, const std::vector<ControllerSpec>& controllers,
                                   const std::vector<std::uint64_t>& seeds, unsigned jobs = 0);

inline constexpr std::string_view kStepsCsvHeader =
    "step,sim_time_ms,reward,throughput_mbps,power_w,energy_j,n_on,n_changed,action";
inline constexpr std::string_view kSummaryCsvHeader = "controller,seed,energy_j,mean_tput_mbps,switches,reward_sum";
inline constexpr std::string_view kPlotCsvHeader =
    "step,time_s,power_w,energy_j,cumulative_energy_j,throughput_mbps,active_gnbs";

void write_steps_csv(const std::filesystem::path& path, const std::vector<StepRecord>& steps);
std::vector<StepRecord> read_steps_csv(const std::filesystem::path& path);

void write_summary_csv(const std::filesystem::path& path, const std::vector<EpisodeReport>& reports);
/// Summary rows only; `steps` stays empty.
std::vector<EpisodeReport> read_summary_csv(const std::filesystem::path& path);

/// Per-step power/energy/throughput series for plotting.
void write_plot_csv(const std::filesystem::path& path, const EpisodeReport& report);

/// File name used for a report's per-step CSV inside an output directory.
std::string steps_file_name(const EpisodeReport& report);

} // namespace ransim

#endif
