#include "julienne/app_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace julienne {

EnergyModel EnergyModel::fram() {
  EnergyModel m;
  m.startup = Energy::from_femtojoules(9 * Energy::kFemtoPerMicro);
  m.read_base = Energy::from_femtojoules(1'300'000'000);
  m.read_per_byte = Energy::from_femtojoules(7'600'000);
  m.write_base = Energy::from_femtojoules(900'000'000);
  m.write_per_byte = Energy::from_femtojoules(6'200'000);
  return m;
}

Energy e_read(const EnergyModel& model, std::uint64_t size) {
  return model.read_base + model.read_per_byte * static_cast<std::int64_t>(size);
}

Energy e_write(const EnergyModel& model, std::uint64_t size) {
  return model.write_base + model.write_per_byte * static_cast<std::int64_t>(size);
}

namespace {

void dedupe_in_order(std::vector<PacketId>& ids) {
  std::unordered_set<PacketId> seen;
  std::erase_if(ids, [&](PacketId p) { return !seen.insert(p).second; });
}

}  // namespace

Application::Application(EnergyModel model, std::vector<Packet> packets, std::vector<Task> tasks)
    : model_(model), packets_(std::move(packets)), tasks_(std::move(tasks)) {
  const std::size_t np = packets_.size();
  const std::size_t nt = tasks_.size();
  for (std::size_t p = 0; p < np; ++p) {
    packets_[p].id = static_cast<PacketId>(p);
    packets_[p].writer = 0;
  }
  for (auto& t : tasks_) {
    dedupe_in_order(t.reads);
    dedupe_in_order(t.writes);
    for (PacketId p : t.reads)
      if (p >= np) throw std::invalid_argument("task " + t.name + " reads unknown packet id " + std::to_string(p));
    for (PacketId p : t.writes)
      if (p >= np) throw std::invalid_argument("task " + t.name + " writes unknown packet id " + std::to_string(p));
  }

  // Touch lists (counting sort by packet, tasks visited in order so lists stay sorted).
  std::vector<std::size_t> counts(np, 0);
  for (const auto& t : tasks_) {
    for (PacketId p : t.reads) ++counts[p];
    for (PacketId p : t.writes) ++counts[p];
  }
  touch_offsets_.assign(np + 1, 0);
  for (std::size_t p = 0; p < np; ++p) touch_offsets_[p + 1] = touch_offsets_[p] + counts[p];
  touch_list_.assign(touch_offsets_[np], 0);
  std::vector<std::size_t> fill(touch_offsets_.begin(), touch_offsets_.end() - 1);
  for (std::size_t k = 0; k < nt; ++k) {
    const auto idx = static_cast<TaskIndex>(k + 1);
    auto touch = [&](PacketId p) {
      // A packet both read and written by the same task is touched once.
      if (fill[p] > touch_offsets_[p] && touch_list_[fill[p] - 1] == idx) return;
      touch_list_[fill[p]++] = idx;
    };
    for (PacketId p : tasks_[k].reads) touch(p);
    for (PacketId p : tasks_[k].writes) touch(p);
  }
  // Compact away slots left unused by the same-task de-duplication.
  {
    std::vector<std::size_t> offsets(np + 1, 0);
    std::vector<TaskIndex> list;
    list.reserve(touch_list_.size());
    for (std::size_t p = 0; p < np; ++p) {
      for (std::size_t s = touch_offsets_[p]; s < fill[p]; ++s) list.push_back(touch_list_[s]);
      offsets[p + 1] = list.size();
    }
    touch_offsets_ = std::move(offsets);
    touch_list_ = std::move(list);
  }

  last_use_ever_.assign(np, 0);
  for (std::size_t p = 0; p < np; ++p)
    if (touch_offsets_[p + 1] > touch_offsets_[p]) last_use_ever_[p] = touch_list_[touch_offsets_[p + 1] - 1];

  read_offsets_.assign(nt + 2, 0);
  write_offsets_.assign(nt + 2, 0);
  std::vector<TaskIndex> last_seen(np, 0);
  for (std::size_t k = 0; k < nt; ++k) {
    const auto idx = static_cast<TaskIndex>(k + 1);
    const Task& t = tasks_[k];
    for (PacketId p : t.reads) read_slots_.push_back({p, last_seen[p]});
    for (PacketId p : t.writes) {
      write_list_.push_back(p);
      if (packets_[p].writer == 0) packets_[p].writer = idx;
    }
    for (PacketId p : t.reads) last_seen[p] = idx;
    for (PacketId p : t.writes) last_seen[p] = idx;
    read_offsets_[idx + 1] = read_slots_.size();
    write_offsets_[idx + 1] = write_list_.size();
  }
  read_offsets_[0] = read_offsets_[1] = 0;
  write_offsets_[0] = write_offsets_[1] = 0;

  // Releases grouped by the packet's last use.
  std::vector<std::vector<WriteRelease>> releases(nt + 1);
  for (std::size_t k = 0; k < nt; ++k) {
    const auto idx = static_cast<TaskIndex>(k + 1);
    for (PacketId p : tasks_[k].writes)
      if (last_use_ever_[p] > idx) releases[last_use_ever_[p]].push_back({p, idx});
  }
  release_offsets_.assign(nt + 2, 0);
  for (std::size_t k = 1; k <= nt; ++k) {
    release_list_.insert(release_list_.end(), releases[k].begin(), releases[k].end());
    release_offsets_[k + 1] = release_list_.size();
  }

  read_cost_.resize(np);
  write_cost_.resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    read_cost_[p] = e_read(model_, packets_[p].size);
    write_cost_[p] = e_write(model_, packets_[p].size);
  }

  exec_prefix_.assign(nt + 1, Energy::zero());
  for (std::size_t k = 0; k < nt; ++k) exec_prefix_[k + 1] = exec_prefix_[k] + tasks_[k].energy;
  total_task_energy_ = exec_prefix_[nt];
}

std::optional<PacketId> Application::find_packet(std::string_view name) const {
  for (const auto& p : packets_)
    if (p.name == name) return p.id;
  return std::nullopt;
}

std::optional<TaskIndex> Application::last_use(PacketId p, TaskIndex j) const {
  if (p >= packets_.size()) throw std::out_of_range("unknown packet id " + std::to_string(p));
  if (j < 1 || j > n_tasks() + 1) throw std::out_of_range("task index " + std::to_string(j) + " out of range");
  const auto list = touches(p);
  auto it = std::lower_bound(list.begin(), list.end(), j);
  if (it == list.begin()) return std::nullopt;
  return *std::prev(it);
}

std::span<const TaskIndex> Application::touches(PacketId p) const {
  return {touch_list_.data() + touch_offsets_.at(p), touch_offsets_.at(p + 1) - touch_offsets_.at(p)};
}

std::span<const ReadSlot> Application::read_slots(TaskIndex k) const {
  return {read_slots_.data() + read_offsets_.at(k), read_offsets_.at(k + 1) - read_offsets_.at(k)};
}

std::span<const PacketId> Application::write_set(TaskIndex k) const {
  return {write_list_.data() + write_offsets_.at(k), write_offsets_.at(k + 1) - write_offsets_.at(k)};
}

std::span<const WriteRelease> Application::released_at(TaskIndex k) const {
  return {release_list_.data() + release_offsets_.at(k), release_offsets_.at(k + 1) - release_offsets_.at(k)};
}

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::index_mismatch: return "index-mismatch";
    case Rule::duplicate_writer: return "duplicate-writer";
    case Rule::never_written: return "never-written";
    case Rule::read_before_write: return "read-before-write";
    case Rule::read_write_overlap: return "read-write-overlap";
  }
  return "unknown";
}

std::vector<Diagnostic> validate(const Application& app) {
  std::vector<Diagnostic> out;
  const auto& tasks = app.tasks();
  const auto& packets = app.packets();
  std::vector<TaskIndex> writer(packets.size(), 0);

  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const Task& t = tasks[k];
    const auto idx = static_cast<TaskIndex>(k + 1);
    if (t.index != idx) {
      out.push_back({Rule::index_mismatch, idx, std::nullopt,
                     "index-mismatch: task " + t.name + " has index " + std::to_string(t.index) + ", expected " +
                         std::to_string(idx)});
    }
    for (PacketId p : t.writes) {
      if (writer[p] != 0) {
        out.push_back({Rule::duplicate_writer, idx, p,
                       "duplicate writer: packet " + packets[p].name + " written by tasks " +
                           std::to_string(writer[p]) + " and " + std::to_string(idx)});
      } else {
        writer[p] = idx;
      }
    }
  }

  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const Task& t = tasks[k];
    const auto idx = static_cast<TaskIndex>(k + 1);
    for (PacketId p : t.reads) {
      const TaskIndex w = packets[p].writer;
      if (w == 0) {
        out.push_back({Rule::never_written, idx, p,
                       "never-written: packet " + packets[p].name + " read at task " + std::to_string(idx) +
                           " has no writer"});
      } else if (w == idx) {
        out.push_back({Rule::read_write_overlap, idx, p,
                       "read-write-overlap: packet " + packets[p].name + " both read and written at task " +
                           std::to_string(idx)});
      } else if (w > idx) {
        out.push_back({Rule::read_before_write, idx, p,
                       "read-before-write: packet " + packets[p].name + " at task " + std::to_string(idx)});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) { return a.task < b.task; });
  return out;
}

TransferSets transfer_sets(const Application& app, TaskIndex i, TaskIndex j, TaskIndex k) {
  if (i < 1 || i > k || k > j || j > app.n_tasks())
    throw std::out_of_range("transfer_sets: need 1 <= i <= k <= j <= n_tasks");
  TransferSets sets;
  for (const ReadSlot& r : app.read_slots(k))
    if (r.previous_use < i) sets.load.push_back(r.packet);
  for (PacketId p : app.write_set(k))
    if (app.last_use_ever(p) > j) sets.store.push_back(p);
  return sets;
}

Partition::Partition(std::vector<Burst> bursts) : bursts_(std::move(bursts)) {
  TaskIndex expect = 1;
  for (const Burst& b : bursts_) {
    if (b.first != expect || b.last < b.first)
      throw std::invalid_argument("partition bursts must be contiguous non-empty ranges starting at task 1");
    expect = b.last + 1;
  }
}

Partition Partition::whole(TaskIndex n_tasks) {
  if (n_tasks == 0) return Partition();
  return Partition({{1, n_tasks}});
}

Partition Partition::singletons(TaskIndex n_tasks) {
  std::vector<Burst> bursts;
  bursts.reserve(n_tasks);
  for (TaskIndex k = 1; k <= n_tasks; ++k) bursts.push_back({k, k});
  return Partition(std::move(bursts));
}

Partition Partition::from_cuts(TaskIndex n_tasks, std::span<const TaskIndex> cut_after) {
  std::vector<Burst> bursts;
  TaskIndex first = 1;
  for (TaskIndex c : cut_after) {
    if (c < first || c >= n_tasks) throw std::invalid_argument("cut positions must be increasing and below n_tasks");
    bursts.push_back({first, c});
    first = c + 1;
  }
  if (n_tasks > 0) bursts.push_back({first, n_tasks});
  return Partition(std::move(bursts));
}

bool Partition::covers(TaskIndex n_tasks) const {
  if (bursts_.empty()) return n_tasks == 0;
  return bursts_.back().last == n_tasks;
}

double PartitionReport::overhead_fraction() const {
  if (e_app == Energy::zero()) return 0.0;
  return static_cast<double>(overhead().femtojoules()) / static_cast<double>(e_app.femtojoules());
}

}  // namespace julienne
