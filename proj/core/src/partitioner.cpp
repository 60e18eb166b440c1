#include "julienne/partitioner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace julienne {

std::string Infeasible::describe() const {
  std::string msg = "infeasible: no partition keeps every burst within " + format_microjoules(q_max) + " uJ";
  if (q_min) msg += "; Q_min = " + format_microjoules(*q_min) + " uJ";
  if (blocked_task != 0) msg += " (first uncoverable task: " + std::to_string(blocked_task) + ")";
  return msg;
}

namespace {

struct Label {
  Energy cost;
  std::uint32_t bursts = 0;
  TaskIndex pred = 0;
  bool reached = false;
};

/// Relaxes every edge out of state `from` in a single, increasing-i pass.
class ShortestPath {
 public:
  explicit ShortestPath(TaskIndex n) : labels_(n + 1) { labels_[0].reached = true; }

  bool reached(TaskIndex state) const { return labels_[state].reached; }

  void relax(TaskIndex from, TaskIndex to, Energy edge) {
    const Label& src = labels_[from];
    const Energy cost = src.cost + edge;
    const std::uint32_t bursts = src.bursts + 1;
    Label& dst = labels_[to];
    if (!dst.reached || cost < dst.cost || (cost == dst.cost && bursts < dst.bursts)) {
      dst = {cost, bursts, from, true};
    }
  }

  TaskIndex furthest_reached() const {
    TaskIndex r = 0;
    for (TaskIndex s = 0; s < labels_.size(); ++s)
      if (labels_[s].reached) r = s;
    return r;
  }

  Partition path() const {
    std::vector<Burst> bursts;
    auto state = static_cast<TaskIndex>(labels_.size() - 1);
    while (state != 0) {
      const TaskIndex pred = labels_[state].pred;
      bursts.push_back({pred + 1, state});
      state = pred;
    }
    std::reverse(bursts.begin(), bursts.end());
    return Partition(std::move(bursts));
  }

 private:
  std::vector<Label> labels_;
};

PartitionOutcome finish(const Application& app, const ShortestPath& sp, Energy q_max, bool want_q_min) {
  const TaskIndex n = app.n_tasks();
  if (!sp.reached(n)) {
    Infeasible inf;
    inf.q_max = q_max;
    inf.blocked_task = sp.furthest_reached() + 1;
    if (want_q_min) inf.q_min = q_min_value(app);
    return inf;
  }
  PartitionResult result;
  result.partition = sp.path();
  result.report = evaluate_partition(app, result.partition);
  return result;
}

}  // namespace

PartitionOutcome optimal_partition(const Application& app, Energy q_max, const PartitionOptions& options) {
  if (q_max <= Energy::zero()) throw std::invalid_argument("q_max must be positive");
  const TaskIndex n = app.n_tasks();
  ShortestPath sp(n);
  for (TaskIndex i = 1; i <= n; ++i) {
    if (!sp.reached(i - 1)) continue;
    BurstRowScanner scan(app, i);
    while (!scan.done() && scan.next_lower_bound() <= q_max) {
      const BurstCost& c = scan.advance();
      if (c.energy <= q_max) sp.relax(i - 1, c.last, c.energy);
    }
  }
  return finish(app, sp, q_max, options.q_min_on_failure);
}

PartitionOutcome optimal_partition(const Application& app, const CostTable& table) {
  if (table.n_tasks() != app.n_tasks()) throw std::invalid_argument("cost table does not match application");
  const TaskIndex n = app.n_tasks();
  ShortestPath sp(n);
  for (TaskIndex i = 1; i <= n; ++i) {
    if (!sp.reached(i - 1)) continue;
    for (const BurstCost& c : table.row(i))
      if (c.feasible) sp.relax(i - 1, c.last, c.energy);
  }
  return finish(app, sp, table.q_max(), true);
}

Energy q_min_value(const Application& app) {
  const TaskIndex n = app.n_tasks();
  if (n == 0) throw std::invalid_argument("q_min: application has no tasks");
  // best[s]: smallest achievable largest-burst energy over paths s_0 -> s.
  // Every edge of the complete graph is visited; rows are processed in order so
  // best[i-1] is final before row i is scanned.
  std::vector<std::optional<Energy>> best(n + 1);
  best[0] = Energy::zero();
  for (TaskIndex i = 1; i <= n; ++i) {
    const Energy prefix = *best[i - 1];
    BurstRowScanner scan(app, i);
    while (!scan.done()) {
      const BurstCost& c = scan.advance();
      const Energy candidate = std::max(prefix, c.energy);
      auto& slot = best[c.last];
      if (!slot || candidate < *slot) slot = candidate;
    }
  }
  return *best[n];
}

QMinResult q_min(const Application& app) {
  const Energy value = q_min_value(app);
  PartitionOutcome outcome = optimal_partition(app, value, {.q_min_on_failure = false});
  if (!is_feasible(outcome)) throw std::logic_error("q_min: no partition at the bottleneck bound");
  return {value, std::get<PartitionResult>(std::move(outcome))};
}

std::optional<BruteForceResult> brute_force(const Application& app, Energy q_max, Objective objective) {
  const TaskIndex n = app.n_tasks();
  if (n > kBruteForceMaxTasks)
    throw std::invalid_argument("brute_force: refusing " + std::to_string(n) + " tasks (limit " +
                                std::to_string(kBruteForceMaxTasks) + ")");
  if (n == 0) return BruteForceResult{Energy::zero(), Partition()};

  // cost[(i-1)*n + (j-1)] = E<i,j>
  std::vector<Energy> cost(static_cast<std::size_t>(n) * n);
  for (TaskIndex i = 1; i <= n; ++i)
    for (TaskIndex j = i; j <= n; ++j) cost[(i - 1) * n + (j - 1)] = burst_energy(app, i, j).energy;

  std::optional<Energy> best_value;
  std::uint32_t best_bursts = 0;
  std::uint64_t best_mask = 0;
  const std::uint64_t masks = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    Energy value;
    std::uint32_t bursts = 0;
    bool ok = true;
    TaskIndex first = 1;
    for (TaskIndex k = 1; k <= n && ok; ++k) {
      const bool cut = k == n || ((mask >> (k - 1)) & 1u);
      if (!cut) continue;
      const Energy e = cost[(first - 1) * n + (k - 1)];
      if (e > q_max) ok = false;
      value = objective == Objective::total_energy ? value + e : std::max(value, e);
      ++bursts;
      first = k + 1;
    }
    if (!ok) continue;
    if (!best_value || value < *best_value || (value == *best_value && bursts < best_bursts)) {
      best_value = value;
      best_bursts = bursts;
      best_mask = mask;
    }
  }
  if (!best_value) return std::nullopt;
  std::vector<TaskIndex> cuts;
  for (TaskIndex k = 1; k < n; ++k)
    if ((best_mask >> (k - 1)) & 1u) cuts.push_back(k);
  return BruteForceResult{*best_value, Partition::from_cuts(n, cuts)};
}

PartitionResult baseline_single_task(const Application& app, RetainMode mode) {
  const TaskIndex n = app.n_tasks();
  PartitionResult result;
  result.partition = Partition::singletons(n);
  if (mode == RetainMode::optimized) {
    result.report = evaluate_partition(app, result.partition);
    return result;
  }

  // Bytes and packet counts resident at each power-off boundary b (after task b).
  std::vector<std::int64_t> bytes(n + 2, 0);
  std::vector<std::int64_t> count(n + 2, 0);
  if (mode == RetainMode::live_state) {
    for (const Packet& p : app.packets()) {
      const TaskIndex w = p.writer;
      const TaskIndex l = app.last_use_ever(p.id);
      if (w == 0 || l <= w) continue;
      // live on boundaries w .. l-1
      bytes[w] += static_cast<std::int64_t>(p.size);
      bytes[l] -= static_cast<std::int64_t>(p.size);
      count[w] += 1;
      count[l] -= 1;
    }
    for (TaskIndex b = 1; b <= n; ++b) {
      bytes[b] += bytes[b - 1];
      count[b] += count[b - 1];
    }
  } else {
    std::int64_t total = 0;
    for (const Packet& p : app.packets()) total += static_cast<std::int64_t>(p.size);
    for (TaskIndex b = 0; b <= n; ++b) {
      bytes[b] = total;
      count[b] = static_cast<std::int64_t>(app.n_packets());
    }
  }

  const EnergyModel& m = app.model();
  PartitionReport& rep = result.report;
  rep.n_bursts = n;
  for (TaskIndex k = 1; k <= n; ++k) {
    const std::size_t in_b = mode == RetainMode::all_packets ? k : k - 1;
    const Energy load = m.read_base * count[in_b] + m.read_per_byte * bytes[in_b];
    const Energy store = m.write_base * count[k] + m.write_per_byte * bytes[k];
    const Energy exec = app.task(k).energy;
    const Energy energy = m.startup + load + exec + store;
    rep.e_startup_total += m.startup;
    rep.e_read_total += load;
    rep.e_write_total += store;
    rep.e_app += exec;
    rep.e_total += energy;
    rep.bytes_loaded += static_cast<std::uint64_t>(bytes[in_b]);
    rep.bytes_stored += static_cast<std::uint64_t>(bytes[k]);
    rep.q_needed = std::max(rep.q_needed, energy);
    rep.per_burst.push_back({{k, k}, energy, static_cast<std::uint64_t>(bytes[in_b]),
                             static_cast<std::uint64_t>(bytes[k])});
  }
  return result;
}

PartitionResult baseline_whole(const Application& app) {
  PartitionResult result;
  result.partition = Partition::whole(app.n_tasks());
  result.report = evaluate_partition(app, result.partition);
  return result;
}

std::vector<SweepPoint> sweep(const Application& app, const std::vector<Energy>& q_values,
                              const SweepOptions& options) {
  for (Energy q : q_values)
    if (q <= Energy::zero()) throw std::invalid_argument("sweep: bounds must be positive");
  std::vector<SweepPoint> points(q_values.size());
  auto evaluate = [&](std::size_t idx) {
    points[idx].q_max = q_values[idx];
    PartitionOutcome o = optimal_partition(app, q_values[idx], {.q_min_on_failure = false});
    if (auto* r = std::get_if<PartitionResult>(&o)) points[idx].report = std::move(r->report);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(q_values.size())));
  if (jobs <= 1) {
    for (std::size_t idx = 0; idx < q_values.size(); ++idx) evaluate(idx);
    return points;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t idx = next++; idx < q_values.size(); idx = next++) evaluate(idx);
      });
    }
  }
  return points;
}

std::vector<Energy> auto_sweep_grid(const Application& app, std::size_t points) {
  if (points == 0) return {};
  const Energy low = q_min_value(app);
  const Energy whole = burst_energy(app, 1, app.n_tasks()).energy;
  const Energy high = Energy::from_femtojoules(whole.femtojoules() / 100 * 105 + whole.femtojoules() % 100 * 105 / 100);
  if (points == 1) return {low};
  std::vector<Energy> grid;
  grid.reserve(points);
  const double lo = static_cast<double>(low.femtojoules());
  const double ratio = static_cast<double>(high.femtojoules()) / lo;
  for (std::size_t k = 0; k < points; ++k) {
    Energy q;
    if (k == 0) {
      q = low;
    } else if (k + 1 == points) {
      q = high;
    } else {
      const double t = static_cast<double>(k) / static_cast<double>(points - 1);
      q = Energy::from_femtojoules(std::llround(lo * std::pow(ratio, t)));
    }
    if (!grid.empty()) q = std::max(q, grid.back());
    grid.push_back(q);
  }
  return grid;
}

}  // namespace julienne

namespace julienne {

std::string format_partition(const PartitionReport& report) {
  std::string out;
  for (std::size_t k = 0; k < report.per_burst.size(); ++k) {
    const BurstReport& b = report.per_burst[k];
    out += "burst " + std::to_string(k + 1) + ": tasks " + std::to_string(b.range.first) + ".." +
           std::to_string(b.range.last) + " energy_uJ=" + format_microjoules(b.energy) +
           " load_B=" + std::to_string(b.bytes_in) + " store_B=" + std::to_string(b.bytes_out) + "\n";
  }
  return out;
}

namespace {

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  if (s.empty() || s.size() > 19) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

Partition parse_partition(std::string_view text) {
  std::vector<Burst> bursts;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string_view::npos) continue;
    line.remove_prefix(start);
    if (line.front() == '#') continue;

    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("partition line " + std::to_string(line_no) + ": " + why);
    };
    // burst <k>: tasks <i>..<j> [...]
    std::vector<std::string_view> tok;
    for (std::size_t p = 0; p < line.size();) {
      const std::size_t b = line.find_first_not_of(" \t", p);
      if (b == std::string_view::npos) break;
      const std::size_t e = line.find_first_of(" \t", b);
      tok.push_back(line.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
      p = e == std::string_view::npos ? line.size() : e;
    }
    if (tok.size() < 4 || tok[0] != "burst" || tok[2] != "tasks" || !tok[1].ends_with(':'))
      fail("expected 'burst <k>: tasks <i>..<j>'");
    const auto k = parse_uint(tok[1].substr(0, tok[1].size() - 1));
    if (!k || *k != bursts.size() + 1) fail("burst numbers must count up from 1");
    const std::size_t dots = tok[3].find("..");
    if (dots == std::string_view::npos) fail("expected task range <i>..<j>");
    const auto i = parse_uint(tok[3].substr(0, dots));
    const auto j = parse_uint(tok[3].substr(dots + 2));
    if (!i || !j || *i > 0xffffffffu || *j > 0xffffffffu) fail("bad task range");
    bursts.push_back({static_cast<TaskIndex>(*i), static_cast<TaskIndex>(*j)});
  }
  return Partition(std::move(bursts));
}

}  // namespace julienne
