#include "julienne/burst_cost.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace julienne {

BurstCost burst_energy(const Application& app, TaskIndex i, TaskIndex j) {
  if (i < 1 || i > j || j > app.n_tasks()) throw std::out_of_range("burst_energy: need 1 <= i <= j <= n_tasks");
  BurstCost c;
  c.first = i;
  c.last = j;
  for (TaskIndex k = i; k <= j; ++k) {
    const TransferSets sets = transfer_sets(app, i, j, k);
    for (PacketId p : sets.load) {
      c.read_energy += app.read_cost(p);
      c.bytes_loaded += app.packet(p).size;
      ++c.packets_loaded;
    }
    for (PacketId p : sets.store) {
      c.write_energy += app.write_cost(p);
      c.bytes_stored += app.packet(p).size;
      ++c.packets_stored;
    }
    c.exec_energy += app.task(k).energy;
  }
  c.energy = app.model().startup + c.read_energy + c.exec_energy + c.write_energy;
  return c;
}

BurstRowScanner::BurstRowScanner(const Application& app, TaskIndex first) : app_(&app), first_(first), next_(first) {
  if (first < 1 || first > app.n_tasks()) throw std::out_of_range("BurstRowScanner: start index out of range");
  cost_.first = first;
  cost_.last = first - 1;
  cost_.energy = app.model().startup;
}

Energy BurstRowScanner::next_lower_bound() const {
  return app_->model().startup + cost_.exec_energy + app_->task(next_).energy;
}

const BurstCost& BurstRowScanner::advance() {
  const Application& app = *app_;
  const TaskIndex j = next_++;
  cost_.last = j;
  cost_.exec_energy += app.task(j).energy;
  for (const ReadSlot& r : app.read_slots(j)) {
    if (r.previous_use < first_) {
      cost_.read_energy += app.read_cost(r.packet);
      cost_.bytes_loaded += app.packet(r.packet).size;
      ++cost_.packets_loaded;
    }
  }
  for (PacketId p : app.write_set(j)) {
    if (app.last_use_ever(p) > j) {
      cost_.write_energy += app.write_cost(p);
      cost_.bytes_stored += app.packet(p).size;
      ++cost_.packets_stored;
    }
  }
  for (const WriteRelease& rel : app.released_at(j)) {
    if (rel.writer >= first_) {
      cost_.write_energy -= app.write_cost(rel.packet);
      cost_.bytes_stored -= app.packet(rel.packet).size;
      --cost_.packets_stored;
    }
  }
  cost_.energy = app.model().startup + cost_.read_energy + cost_.exec_energy + cost_.write_energy;
  return cost_;
}

namespace {

std::vector<BurstCost> build_row(const Application& app, TaskIndex i, Energy q_max) {
  std::vector<BurstCost> row;
  BurstRowScanner scan(app, i);
  while (!scan.done() && scan.next_lower_bound() <= q_max) {
    BurstCost c = scan.advance();
    c.feasible = c.energy <= q_max;
    row.push_back(c);
  }
  return row;
}

}  // namespace

CostTable CostTable::build(const Application& app, Energy q_max, unsigned jobs) {
  CostTable table;
  table.q_max_ = q_max;
  const TaskIndex n = app.n_tasks();
  table.rows_.resize(n);
  jobs = std::max(1u, std::min<unsigned>(jobs, n == 0 ? 1 : n));
  if (jobs == 1) {
    for (TaskIndex i = 1; i <= n; ++i) table.rows_[i - 1] = build_row(app, i, q_max);
    return table;
  }
  std::vector<std::jthread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&table, &app, q_max, n, w, jobs] {
      for (TaskIndex i = w + 1; i <= n; i += jobs) table.rows_[i - 1] = build_row(app, i, q_max);
    });
  }
  return table;
}

const BurstCost* CostTable::find(TaskIndex i, TaskIndex j) const {
  if (i < 1 || i > rows_.size() || j < i) return nullptr;
  const auto& r = rows_[i - 1];
  const std::size_t offset = j - i;
  return offset < r.size() ? &r[offset] : nullptr;
}

std::size_t CostTable::entry_count() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

std::size_t CostTable::feasible_count() const {
  std::size_t total = 0;
  for (const auto& r : rows_)
    total += static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](const BurstCost& c) { return c.feasible; }));
  return total;
}

void CostTable::write_csv(std::ostream& out) const {
  out << "i,j,energy_uJ,bytes_loaded,bytes_stored,feasible\n";
  for (const auto& r : rows_) {
    for (const auto& c : r) {
      out << c.first << ',' << c.last << ',' << format_microjoules(c.energy) << ',' << c.bytes_loaded
          << ',' << c.bytes_stored << ',' << (c.feasible ? "true" : "false") << '\n';
    }
  }
}

PartitionReport evaluate_partition(const Application& app, const Partition& partition) {
  if (!partition.covers(app.n_tasks()))
    throw std::invalid_argument("partition does not cover tasks 1.." + std::to_string(app.n_tasks()));
  PartitionReport rep;
  rep.n_bursts = partition.size();
  rep.per_burst.reserve(partition.size());
  for (const Burst& b : partition.bursts()) {
    const BurstCost c = burst_energy(app, b.first, b.last);
    rep.e_startup_total += app.model().startup;
    rep.e_read_total += c.read_energy;
    rep.e_write_total += c.write_energy;
    rep.e_app += c.exec_energy;
    rep.e_total += c.energy;
    rep.bytes_loaded += c.bytes_loaded;
    rep.bytes_stored += c.bytes_stored;
    rep.q_needed = std::max(rep.q_needed, c.energy);
    rep.per_burst.push_back({b, c.energy, c.bytes_loaded, c.bytes_stored});
  }
  return rep;
}

}  // namespace julienne
