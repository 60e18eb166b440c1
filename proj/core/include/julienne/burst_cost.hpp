#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "julienne/app_model.hpp"

namespace julienne {

/// E<i,j> and its breakdown for the burst executing tasks i..j.
struct BurstCost {
  TaskIndex first = 0;
  TaskIndex last = 0;
  Energy energy;
  Energy read_energy;
  Energy write_energy;
  Energy exec_energy;
  std::uint64_t bytes_loaded = 0;
  std::uint64_t bytes_stored = 0;
  std::uint32_t packets_loaded = 0;
  std::uint32_t packets_stored = 0;
  /// energy <= q_max of the table this entry belongs to.
  bool feasible = true;
};

/// Direct evaluation of E<i,j> = E_s + sum_k (loads_k + E_task,k + stores_k)
/// from the per-task transfer sets. Throws std::out_of_range unless
/// 1 <= i <= j <= n_tasks.
BurstCost burst_energy(const Application& app, TaskIndex i, TaskIndex j);

/// Walks all bursts <i, j>, j = i, i+1, ..., for one start index i, updating
/// the cost incrementally as j grows. Every produced cost equals
/// burst_energy(app, i, j) exactly.
class BurstRowScanner {
 public:
  BurstRowScanner(const Application& app, TaskIndex first);

  /// Lower bound E_s + sum of task energies if the burst were extended by one more task.
  Energy next_lower_bound() const;
  bool done() const { return next_ > app_->n_tasks(); }
  /// Extends the burst by one task and returns its cost.
  const BurstCost& advance();
  const BurstCost& current() const { return cost_; }

 private:
  const Application* app_;
  TaskIndex first_;
  TaskIndex next_;
  BurstCost cost_;
};

/// Burst energies reachable under a capacity bound. Row i holds entries for
/// j = i, i+1, ... while E_s + sum_{k=i..j} E_task,k <= q_max. Entries whose
/// true energy exceeds q_max are kept and flagged infeasible.
class CostTable {
 public:
  CostTable() = default;

  /// Rows are independent and are split across `jobs` worker threads; the
  /// result does not depend on the worker count.
  static CostTable build(const Application& app, Energy q_max, unsigned jobs = 1);

  Energy q_max() const { return q_max_; }
  TaskIndex n_tasks() const { return static_cast<TaskIndex>(rows_.size()); }
  /// Entries of the row starting at task i (1-based), ordered by j.
  const std::vector<BurstCost>& row(TaskIndex i) const { return rows_.at(i - 1); }
  /// nullptr when (i, j) was pruned.
  const BurstCost* find(TaskIndex i, TaskIndex j) const;
  std::size_t entry_count() const;
  std::size_t feasible_count() const;

  /// CSV with header i,j,energy_uJ,bytes_loaded,bytes_stored,feasible.
  void write_csv(std::ostream& out) const;

 private:
  Energy q_max_;
  std::vector<std::vector<BurstCost>> rows_;
};

/// Figures of merit for a partition covering the whole application.
/// Throws std::invalid_argument if the partition does not cover 1..n_tasks.
PartitionReport evaluate_partition(const Application& app, const Partition& partition);

}  // namespace julienne
