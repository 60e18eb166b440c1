#include "julienne/simulator.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "julienne/burst_cost.hpp"

namespace julienne {

PowerTrace::PowerTrace(std::vector<TraceSample> samples) : samples_(std::move(samples)) {
  for (std::size_t s = 0; s < samples_.size(); ++s) {
    const auto& x = samples_[s];
    if (!std::isfinite(x.time_s) || !std::isfinite(x.power_uw))
      throw std::invalid_argument("trace sample " + std::to_string(s) + " is not finite");
    if (x.power_uw < 0) throw std::invalid_argument("trace sample " + std::to_string(s) + " has negative power");
    if (s > 0 && !(x.time_s > samples_[s - 1].time_s))
      throw std::invalid_argument("trace timestamps must be strictly increasing (sample " + std::to_string(s) + ")");
  }
}

PowerTrace PowerTrace::constant(double power_uw, double duration_s) {
  return PowerTrace({{0.0, power_uw}, {duration_s, 0.0}});
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

PowerTrace PowerTrace::parse_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<TraceSample> samples;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    const std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "time_s,power_uW")
        throw std::invalid_argument("trace line " + std::to_string(line_no) + ": expected header 'time_s,power_uW'");
      header_seen = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      throw std::invalid_argument("trace line " + std::to_string(line_no) + ": expected two columns");
    const auto t = to_double(line.substr(0, comma));
    const auto p = to_double(line.substr(comma + 1));
    if (!t || !p) throw std::invalid_argument("trace line " + std::to_string(line_no) + ": malformed number");
    if (!samples.empty() && !(*t > samples.back().time_s))
      throw std::invalid_argument("trace line " + std::to_string(line_no) + ": timestamps must increase");
    samples.push_back({*t, *p});
  }
  if (!header_seen) throw std::invalid_argument("trace: missing header 'time_s,power_uW'");
  return PowerTrace(std::move(samples));
}

TransferPlan plan_transfers(const Application& app, const Partition& partition) {
  TransferPlan plan;
  plan.reserve(partition.size());
  for (const Burst& b : partition.bursts()) {
    BurstPlan bp;
    bp.range = b;
    for (TaskIndex k = b.first; k <= b.last; ++k) {
      TransferSets sets = transfer_sets(app, b.first, b.last, k);
      bp.loads.push_back(std::move(sets.load));
      bp.stores.push_back(std::move(sets.store));
    }
    plan.push_back(std::move(bp));
  }
  return plan;
}

std::optional<ConsistencyViolation> check_consistency(const Application& app, const TransferPlan& plan) {
  const std::size_t np = app.n_packets();
  std::vector<bool> in_nvm(np, false);
  // resident[p] == burst + 1 marks p as present in volatile memory during that burst.
  std::vector<std::size_t> resident(np, 0);
  std::vector<std::size_t> loaded(np, 0);
  TaskIndex expect = 1;

  for (std::size_t b = 0; b < plan.size(); ++b) {
    const BurstPlan& bp = plan[b];
    const std::size_t stamp = b + 1;
    const std::size_t len = bp.range.last >= bp.range.first ? bp.range.last - bp.range.first + 1 : 0;
    if (bp.range.first != expect || len == 0 || bp.loads.size() != len || bp.stores.size() != len ||
        bp.range.last > app.n_tasks()) {
      return ConsistencyViolation{b, bp.range.first, 0, "burst " + std::to_string(b) + " has a malformed range"};
    }
    expect = bp.range.last + 1;

    for (const auto& loads : bp.loads)
      for (PacketId p : loads) {
        loaded[p] = stamp;
        if (in_nvm[p]) resident[p] = stamp;
      }
    for (TaskIndex k = bp.range.first; k <= bp.range.last; ++k) {
      const Task& t = app.task(k);
      for (PacketId p : t.reads) {
        if (resident[p] == stamp) continue;
        std::string why = loaded[p] == stamp ? " is loaded but was never stored to NVM"
                                             : " is neither loaded nor produced earlier in the burst";
        return ConsistencyViolation{b, k, p,
                                    "burst " + std::to_string(b) + ", task " + std::to_string(k) + " (" + t.name +
                                        "): packet " + app.packet(p).name + why};
      }
      for (PacketId p : t.writes) resident[p] = stamp;
    }
    for (std::size_t off = 0; off < len; ++off) {
      for (PacketId p : bp.stores[off]) {
        if (resident[p] != stamp) {
          const auto k = static_cast<TaskIndex>(bp.range.first + off);
          return ConsistencyViolation{b, k, p,
                                      "burst " + std::to_string(b) + ", task " + std::to_string(k) +
                                          ": stores packet " + app.packet(p).name + " that is not in memory"};
        }
        in_nvm[p] = true;
      }
    }
  }
  return std::nullopt;
}

std::optional<ConsistencyViolation> check_consistency(const Application& app, const Partition& partition) {
  return check_consistency(app, plan_transfers(app, partition));
}

double SimReport::conservation_residual() const {
  return harvested_uj * harvest_efficiency + initial_charge_uj - (consumed_uj + buffer_final_uj + discarded_uj);
}

void SimReport::write_csv(std::ostream& out) const {
  out << "burst,trigger_time_s,energy_uJ,load_B,store_B\n";
  for (const auto& r : bursts) {
    out << r.burst + 1 << ',' << shortest_decimal(r.trigger_time_s) << ',' << format_microjoules(r.energy)
        << ',' << r.load_bytes << ',' << r.store_bytes << '\n';
  }
}

SimReport simulate(const Application& app, const Partition& partition, const PowerTrace& trace, const EmuConfig& emu) {
  if (emu.capacity <= Energy::zero()) throw std::invalid_argument("simulate: capacity must be positive");
  if (emu.initial_charge < Energy::zero() || emu.initial_charge > emu.capacity)
    throw std::invalid_argument("simulate: initial charge must lie in [0, capacity]");
  if (!(emu.harvest_efficiency > 0.0 && emu.harvest_efficiency <= 1.0))
    throw std::invalid_argument("simulate: harvest efficiency must lie in (0, 1]");
  if (!partition.covers(app.n_tasks())) throw std::invalid_argument("simulate: partition does not cover the application");

  std::vector<BurstCost> costs;
  costs.reserve(partition.size());
  for (const Burst& b : partition.bursts()) {
    costs.push_back(burst_energy(app, b.first, b.last));
    if (costs.back().energy > emu.capacity) {
      throw std::invalid_argument("simulate: burst " + std::to_string(costs.size()) + " needs " +
                                  format_microjoules(costs.back().energy) + " uJ, more than the capacity " +
                                  format_microjoules(emu.capacity) + " uJ");
    }
  }

  SimReport rep;
  rep.harvest_efficiency = emu.harvest_efficiency;
  rep.initial_charge_uj = emu.initial_charge.microjoules();
  rep.consistency_violation = check_consistency(app, partition);

  const double cap = emu.capacity.microjoules();
  double level = rep.initial_charge_uj;
  std::size_t next = 0;
  const auto& samples = trace.samples();
  double t = samples.empty() ? 0.0 : samples.front().time_s;

  auto fire_ready = [&] {
    while (next < costs.size() && level >= cap) {
      const BurstCost& c = costs[next];
      const double e = c.energy.microjoules();
      rep.bursts.push_back({next, t, c.energy, c.bytes_loaded, c.bytes_stored});
      rep.consumed_uj += e;
      if (emu.residual == ResidualPolicy::keep) {
        level = cap - e;
      } else {
        rep.discarded_uj += cap - e;
        level = 0.0;
      }
      ++next;
    }
    if (next == costs.size() && !rep.completed) {
      rep.completed = true;
      rep.completion_time_s = rep.bursts.empty() ? t : rep.bursts.back().trigger_time_s;
    }
  };

  fire_ready();
  for (std::size_t s = 0; s + 1 < samples.size(); ++s) {
    if (rep.completed && !emu.run_to_trace_end) break;
    const double power = samples[s].power_uw;
    const double rate = power * emu.harvest_efficiency;
    const double seg_end = samples[s + 1].time_s;
    while (t < seg_end) {
      const double remaining = seg_end - t;
      if (!rep.completed) {
        const double need = cap - level;
        if (rate > 0.0 && need <= rate * remaining) {
          const double dt = need / rate;
          rep.harvested_uj += power * dt;
          t += dt;
          level = cap;
          fire_ready();
          if (rep.completed && !emu.run_to_trace_end) break;
          continue;
        }
        rep.harvested_uj += power * remaining;
        level += rate * remaining;
      } else {
        rep.harvested_uj += power * remaining;
        level += rate * remaining;
        if (level > cap) {
          rep.discarded_uj += level - cap;
          level = cap;
        }
      }
      t = seg_end;
    }
  }
  rep.end_time_s = t;
  rep.buffer_final_uj = level;
  return rep;
}

}  // namespace julienne
