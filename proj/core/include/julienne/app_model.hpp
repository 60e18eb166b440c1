#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "julienne/energy.hpp"

namespace julienne {

using PacketId = std::uint32_t;
/// 1-based position in the task sequence. 0 is never a valid task.
using TaskIndex = std::uint32_t;

struct Packet {
  PacketId id = 0;
  std::string name;
  std::uint64_t size = 0;  // bytes
  /// Producing task, filled in by Application. 0 when no task writes the packet.
  TaskIndex writer = 0;

  friend bool operator==(const Packet&, const Packet&) = default;
};

struct Task {
  TaskIndex index = 0;
  std::string name;
  Energy energy;
  std::vector<PacketId> reads;
  std::vector<PacketId> writes;

  friend bool operator==(const Task&, const Task&) = default;
};

/// Burst start-up cost plus the linear NVM transfer model
/// E_r(p) = read_base + |p| * read_per_byte, E_w(p) likewise.
struct EnergyModel {
  Energy startup;
  Energy read_base;
  Energy read_per_byte;
  Energy write_base;
  Energy write_per_byte;

  /// Characterized FRAM on the head-counting platform: E_s = 9 uJ,
  /// read 1.3 uJ + 7.6 nJ/B, write 0.9 uJ + 6.2 nJ/B.
  static EnergyModel fram();

  friend bool operator==(const EnergyModel&, const EnergyModel&) = default;
};

Energy e_read(const EnergyModel& model, std::uint64_t size);
Energy e_write(const EnergyModel& model, std::uint64_t size);

/// A read of `packet` by some task k, paired with l_k(packet): the last task
/// before k touching the packet (0 if none).
struct ReadSlot {
  PacketId packet = 0;
  TaskIndex previous_use = 0;
};

/// A write of `packet` by `writer` whose value is still needed after the
/// writer. Listed at the packet's last use: once a burst reaches that task the
/// write no longer has to be stored.
struct WriteRelease {
  PacketId packet = 0;
  TaskIndex writer = 0;
};

/// Immutable application: ordered tasks, packet table, energy model, and the
/// lookup tables used for transfer-set queries.
///
/// Construction never rejects semantically invalid applications (duplicate
/// writers, read-before-write, ...); use validate() for that. It only throws
/// std::invalid_argument when a task references a packet id outside the table.
class Application {
 public:
  Application() = default;
  Application(EnergyModel model, std::vector<Packet> packets, std::vector<Task> tasks);

  TaskIndex n_tasks() const { return static_cast<TaskIndex>(tasks_.size()); }
  std::size_t n_packets() const { return packets_.size(); }

  const std::vector<Task>& tasks() const { return tasks_; }
  const std::vector<Packet>& packets() const { return packets_; }
  const EnergyModel& model() const { return model_; }

  /// 1-based.
  const Task& task(TaskIndex k) const { return tasks_.at(k - 1); }
  const Packet& packet(PacketId p) const { return packets_.at(p); }
  std::optional<PacketId> find_packet(std::string_view name) const;

  /// l_j(p): the highest task index strictly below j that reads or writes p.
  /// j ranges over 1..n_tasks()+1; j = n_tasks()+1 yields l_inf(p).
  /// Throws std::out_of_range for an unknown packet or j outside that range.
  std::optional<TaskIndex> last_use(PacketId p, TaskIndex j) const;
  /// l_inf(p); 0 if the packet is never touched.
  TaskIndex last_use_ever(PacketId p) const { return last_use_ever_.at(p); }

  /// Sorted, de-duplicated indices of tasks that read or write p.
  std::span<const TaskIndex> touches(PacketId p) const;

  std::span<const ReadSlot> read_slots(TaskIndex k) const;
  std::span<const PacketId> write_set(TaskIndex k) const;
  /// Writes whose packet has its last use at task k.
  std::span<const WriteRelease> released_at(TaskIndex k) const;

  Energy read_cost(PacketId p) const { return read_cost_[p]; }
  Energy write_cost(PacketId p) const { return write_cost_[p]; }

  Energy total_task_energy() const { return total_task_energy_; }
  /// Prefix sums of task energy: exec_prefix(k) = sum of E_task for tasks 1..k.
  Energy exec_prefix(TaskIndex k) const { return exec_prefix_.at(k); }

  friend bool operator==(const Application& a, const Application& b) {
    return a.model_ == b.model_ && a.packets_ == b.packets_ && a.tasks_ == b.tasks_;
  }

 private:
  EnergyModel model_;
  std::vector<Packet> packets_;
  std::vector<Task> tasks_;

  std::vector<TaskIndex> last_use_ever_;
  std::vector<std::size_t> touch_offsets_;
  std::vector<TaskIndex> touch_list_;

  std::vector<std::size_t> read_offsets_;
  std::vector<ReadSlot> read_slots_;
  std::vector<std::size_t> write_offsets_;
  std::vector<PacketId> write_list_;
  std::vector<std::size_t> release_offsets_;
  std::vector<WriteRelease> release_list_;

  std::vector<Energy> read_cost_;
  std::vector<Energy> write_cost_;
  std::vector<Energy> exec_prefix_;
  Energy total_task_energy_;
};

enum class Rule {
  index_mismatch,
  duplicate_writer,
  never_written,
  read_before_write,
  read_write_overlap,
};

std::string_view rule_name(Rule rule);

struct Diagnostic {
  Rule rule;
  TaskIndex task = 0;
  std::optional<PacketId> packet;
  std::string message;
};

/// Empty iff the application satisfies the model invariants: contiguous
/// 1-based task indices, exactly one writer per packet, every read preceded by
/// the packet's write, and no task both reading and writing a packet.
std::vector<Diagnostic> validate(const Application& app);

struct TransferSets {
  std::vector<PacketId> load;
  std::vector<PacketId> store;

  friend bool operator==(const TransferSets&, const TransferSets&) = default;
};

/// Packets task k must load from / store to NVM when executed inside burst
/// <i, j>: loads are reads of t_k untouched within [i, k); stores are writes of
/// t_k used after j. Throws std::out_of_range unless 1 <= i <= k <= j <= n.
TransferSets transfer_sets(const Application& app, TaskIndex i, TaskIndex j, TaskIndex k);

struct Burst {
  TaskIndex first = 0;
  TaskIndex last = 0;

  std::size_t length() const { return last - first + 1; }
  friend auto operator<=>(const Burst&, const Burst&) = default;
};

/// Contiguous bursts in execution order.
class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument unless the bursts are non-empty ranges that
  /// start at task 1 and follow each other without gaps.
  explicit Partition(std::vector<Burst> bursts);

  static Partition whole(TaskIndex n_tasks);
  static Partition singletons(TaskIndex n_tasks);
  /// `cut_after` lists tasks after which a burst ends (excluding n_tasks).
  static Partition from_cuts(TaskIndex n_tasks, std::span<const TaskIndex> cut_after);

  const std::vector<Burst>& bursts() const { return bursts_; }
  std::size_t size() const { return bursts_.size(); }
  bool empty() const { return bursts_.empty(); }
  /// True iff the last burst ends at n_tasks (or the partition is empty and n_tasks is 0).
  bool covers(TaskIndex n_tasks) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Burst> bursts_;
};

struct BurstReport {
  Burst range;
  Energy energy;
  std::uint64_t bytes_in = 0;
  std::uint64_t bytes_out = 0;
};

/// Figures of merit for one partition. e_total = e_startup_total + e_read_total
/// + e_write_total + e_app, and equals the sum of per-burst energies.
struct PartitionReport {
  std::size_t n_bursts = 0;
  Energy e_startup_total;
  Energy e_read_total;
  Energy e_write_total;
  Energy e_app;
  Energy e_total;
  std::uint64_t bytes_loaded = 0;
  std::uint64_t bytes_stored = 0;
  Energy q_needed;
  std::vector<BurstReport> per_burst;

  Energy overhead() const { return e_total - e_app; }
  double overhead_fraction() const;
};

}  // namespace julienne
