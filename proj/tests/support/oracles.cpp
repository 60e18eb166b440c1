#include "oracles.hpp"

#include <algorithm>

namespace julienne::oracle {

namespace {

bool contains(const std::vector<PacketId>& v, PacketId p) { return std::find(v.begin(), v.end(), p) != v.end(); }

TaskIndex last_use_ever(const Application& app, PacketId p) {
  return oracle::last_use(app, p, app.n_tasks() + 1).value_or(0);
}

}  // namespace

std::optional<TaskIndex> last_use(const Application& app, PacketId p, TaskIndex j) {
  for (TaskIndex k = j - 1; k >= 1; --k) {
    const Task& t = app.tasks()[k - 1];
    if (contains(t.reads, p) || contains(t.writes, p)) return k;
  }
  return std::nullopt;
}

TransferSets transfer_sets(const Application& app, TaskIndex i, TaskIndex j, TaskIndex k) {
  TransferSets s;
  const Task& t = app.tasks()[k - 1];
  for (PacketId p : t.reads) {
    const auto l = oracle::last_use(app, p, k);
    if (!l || *l < i) s.load.push_back(p);
  }
  for (PacketId p : t.writes)
    if (oracle::last_use_ever(app, p) > j) s.store.push_back(p);
  return s;
}

Energy read_energy(const EnergyModel& m, std::uint64_t size) {
  return m.read_base + m.read_per_byte * static_cast<std::int64_t>(size);
}

Energy write_energy(const EnergyModel& m, std::uint64_t size) {
  return m.write_base + m.write_per_byte * static_cast<std::int64_t>(size);
}

Energy burst_energy(const Application& app, TaskIndex i, TaskIndex j) {
  const EnergyModel& m = app.model();
  Energy e = m.startup;
  for (TaskIndex k = i; k <= j; ++k) {
    const TransferSets s = oracle::transfer_sets(app, i, j, k);
    for (PacketId p : s.load) e += read_energy(m, app.packets()[p].size);
    e += app.tasks()[k - 1].energy;
    for (PacketId p : s.store) e += write_energy(m, app.packets()[p].size);
  }
  return e;
}

Energy exec_lower_bound(const Application& app, TaskIndex i, TaskIndex j) {
  Energy e = app.model().startup;
  for (TaskIndex k = i; k <= j; ++k) e += app.tasks()[k - 1].energy;
  return e;
}

namespace {

template <typename Visit>
void for_each_partition(const Application& app, Visit visit) {
  const TaskIndex n = app.n_tasks();
  std::vector<std::vector<Energy>> cost(n + 1, std::vector<Energy>(n + 1));
  for (TaskIndex i = 1; i <= n; ++i)
    for (TaskIndex j = i; j <= n; ++j) cost[i][j] = oracle::burst_energy(app, i, j);
  const std::uint64_t masks = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    std::vector<Burst> bursts;
    Energy total = Energy::zero();
    Energy worst = Energy::zero();
    TaskIndex start = 1;
    for (TaskIndex k = 1; k <= n; ++k) {
      const bool cut = k == n || ((mask >> (k - 1)) & 1U);
      if (!cut) continue;
      bursts.push_back({start, k});
      total += cost[start][k];
      worst = std::max(worst, cost[start][k]);
      start = k + 1;
    }
    visit(Exhaustive{total, worst, bursts.size(), Partition(std::move(bursts))});
  }
}

}  // namespace

std::optional<Exhaustive> min_total(const Application& app, Energy q_max) {
  std::optional<Exhaustive> best;
  for_each_partition(app, [&](Exhaustive x) {
    if (x.max_burst > q_max) return;
    if (!best || x.total < best->total || (x.total == best->total && x.bursts < best->bursts)) best = std::move(x);
  });
  return best;
}

Exhaustive min_max_burst(const Application& app) {
  std::optional<Exhaustive> best;
  for_each_partition(app, [&](Exhaustive x) {
    if (!best || x.max_burst < best->max_burst) best = std::move(x);
  });
  return *best;
}

Energy bottleneck(const Application& app) {
  const TaskIndex n = app.n_tasks();
  std::vector<Energy> best(n + 1, Energy::max());
  best[0] = Energy::zero();
  for (TaskIndex j = 1; j <= n; ++j)
    for (TaskIndex i = 1; i <= j; ++i) best[j] = std::min(best[j], std::max(best[i - 1], oracle::burst_energy(app, i, j)));
  return best[n];
}

}  // namespace julienne::oracle
