#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "julienne/app_model.hpp"

namespace julienne {

struct TraceSample {
  double time_s = 0.0;
  double power_uw = 0.0;
};

/// Piecewise-constant harvested power: each sample's power holds until the
/// next timestamp. Power is zero before the first and after the last sample.
class PowerTrace {
 public:
  PowerTrace() = default;
  /// Throws std::invalid_argument for non-increasing timestamps, negative or
  /// non-finite values.
  explicit PowerTrace(std::vector<TraceSample> samples);

  /// CSV with header `time_s,power_uW`. Throws std::invalid_argument with a
  /// line number on malformed input.
  static PowerTrace parse_csv(std::string_view text);
  static PowerTrace constant(double power_uw, double duration_s);

  const std::vector<TraceSample>& samples() const { return samples_; }
  bool empty() const { return samples_.empty(); }

 private:
  std::vector<TraceSample> samples_;
};

enum class ResidualPolicy { keep, drain };

struct EmuConfig {
  Energy capacity;
  Energy initial_charge;
  double harvest_efficiency = 1.0;
  ResidualPolicy residual = ResidualPolicy::keep;
  /// Keep integrating after the last burst until the trace ends; the surplus
  /// beyond a full buffer is counted as discarded.
  bool run_to_trace_end = false;
};

/// Per-task NVM traffic of one burst: loads[k - first] / stores[k - first].
struct BurstPlan {
  Burst range;
  std::vector<std::vector<PacketId>> loads;
  std::vector<std::vector<PacketId>> stores;
};

using TransferPlan = std::vector<BurstPlan>;

/// Transfer sets of every task of every burst, as the optimizer accounts them.
TransferPlan plan_transfers(const Application& app, const Partition& partition);

struct ConsistencyViolation {
  std::size_t burst = 0;  // 0-based burst position
  TaskIndex task = 0;
  PacketId packet = 0;
  std::string message;

  friend bool operator==(const ConsistencyViolation& a, const ConsistencyViolation& b) {
    return a.burst == b.burst && a.task == b.task && a.packet == b.packet;
  }
};

/// Replays the plan against an NVM image. Within a burst a task may read only
/// packets loaded by the burst (and present in NVM at burst start) or written
/// earlier in the burst; after the burst its store sets are added to NVM.
std::optional<ConsistencyViolation> check_consistency(const Application& app, const TransferPlan& plan);
std::optional<ConsistencyViolation> check_consistency(const Application& app, const Partition& partition);

struct SimBurstRecord {
  std::size_t burst = 0;
  double trigger_time_s = 0.0;
  Energy energy;
  std::uint64_t load_bytes = 0;
  std::uint64_t store_bytes = 0;
};

struct SimReport {
  std::vector<SimBurstRecord> bursts;
  bool completed = false;
  /// Time of the last burst; set only when completed.
  std::optional<double> completion_time_s;
  double end_time_s = 0.0;
  double harvested_uj = 0.0;  // before conversion efficiency
  double consumed_uj = 0.0;
  double discarded_uj = 0.0;
  double buffer_final_uj = 0.0;
  double initial_charge_uj = 0.0;
  double harvest_efficiency = 1.0;
  std::optional<ConsistencyViolation> consistency_violation;

  bool consistent() const { return !consistency_violation.has_value(); }
  /// harvested * efficiency + initial - (consumed + final + discarded)
  double conservation_residual() const;

  /// CSV with header burst,trigger_time_s,energy_uJ,load_B,store_B.
  void write_csv(std::ostream& out) const;
};

/// Event-driven replay: the buffer integrates power * efficiency in closed form
/// per trace segment; each time it reaches capacity the next burst runs
/// instantaneously and draws its exact energy. Throws std::invalid_argument if
/// a burst exceeds the capacity or the configuration is out of range.
SimReport simulate(const Application& app, const Partition& partition, const PowerTrace& trace, const EmuConfig& emu);

}  // namespace julienne
