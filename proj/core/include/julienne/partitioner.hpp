#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "julienne/app_model.hpp"
#include "julienne/burst_cost.hpp"

namespace julienne {

struct PartitionResult {
  Partition partition;
  PartitionReport report;
};

/// No partition keeps every burst within the requested bound.
struct Infeasible {
  Energy q_max;
  /// Smallest bound for which a partition exists.
  std::optional<Energy> q_min;
  /// First task that no feasible burst starting at a reachable state can cover.
  TaskIndex blocked_task = 0;

  std::string describe() const;
};

using PartitionOutcome = std::variant<PartitionResult, Infeasible>;

inline bool is_feasible(const PartitionOutcome& o) { return std::holds_alternative<PartitionResult>(o); }

struct PartitionOptions {
  /// Attach Q_min to Infeasible results (costs one extra O(n^2) pass).
  bool q_min_on_failure = true;
};

/// Minimum total energy partition with every burst <= q_max: a shortest path
/// s_0 -> s_n over the pruned state graph, relaxed in topological order.
/// Ties prefer fewer bursts, then the earliest predecessor state.
/// Throws std::invalid_argument if q_max <= 0.
PartitionOutcome optimal_partition(const Application& app, Energy q_max, const PartitionOptions& options = {});

/// Same, over a precomputed table; only entries flagged feasible are used.
PartitionOutcome optimal_partition(const Application& app, const CostTable& table);

struct QMinResult {
  Energy q_min;
  PartitionResult witness;
};

/// Minimum over partitions of the largest burst energy (bottleneck path on the
/// complete state graph), plus the minimum-energy partition at that bound.
/// Throws std::invalid_argument for an application without tasks.
QMinResult q_min(const Application& app);

/// The bottleneck value alone.
Energy q_min_value(const Application& app);

enum class Objective { total_energy, max_burst };

struct BruteForceResult {
  Energy value;
  Partition partition;
};

constexpr TaskIndex kBruteForceMaxTasks = 22;

/// Exhaustive search over all 2^(n-1) partitions with every burst <= q_max.
/// Ties prefer fewer bursts. nullopt when nothing is feasible. Throws
/// std::invalid_argument for n_tasks > kBruteForceMaxTasks.
std::optional<BruteForceResult> brute_force(const Application& app, Energy q_max, Objective objective);

enum class RetainMode {
  /// Transfers follow the dependency-aware single-task burst cost.
  optimized,
  /// Each burst restores every packet live at its start and saves every packet
  /// live at its end (written at or before the boundary, used after it).
  live_state,
  /// Each burst restores and saves every packet of the application.
  all_packets,
};

/// One task per burst. With a retaining mode the per-burst transfers ignore
/// dependencies, and the report's per-burst energies reflect that.
PartitionResult baseline_single_task(const Application& app, RetainMode mode);

/// All tasks in one burst.
PartitionResult baseline_whole(const Application& app);

struct SweepPoint {
  Energy q_max;
  std::optional<PartitionReport> report;

  bool feasible() const { return report.has_value(); }
};

struct SweepOptions {
  unsigned jobs = 1;
};

/// One optimal_partition per bound, in input order.
std::vector<SweepPoint> sweep(const Application& app, const std::vector<Energy>& q_values,
                              const SweepOptions& options = {});

/// One line per burst: `burst <k>: tasks <i>..<j> energy_uJ=<e> load_B=<x> store_B=<y>`,
/// k counting from 1.
std::string format_partition(const PartitionReport& report);

/// Reads the burst ranges back from format_partition output. Blank lines and
/// lines starting with '#' are skipped. Throws std::invalid_argument on
/// anything else or on non-contiguous ranges.
Partition parse_partition(std::string_view text);

/// `points` log-spaced bounds from Q_min to 1.05 * E<1,n>, both endpoints included.
std::vector<Energy> auto_sweep_grid(const Application& app, std::size_t points = 64);

}  // namespace julienne
