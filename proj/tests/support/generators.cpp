#include "generators.hpp"

#include <algorithm>

#include "oracles.hpp"

namespace julienne::testgen {

namespace {

Energy nanojoules(std::uint64_t nj) {
  return Energy::from_femtojoules(static_cast<std::int64_t>(nj) * Energy::kFemtoPerNano);
}

}  // namespace

Application random_app(Gen& g, const AppShape& shape) {
  EnergyModel m = EnergyModel::fram();
  if (shape.random_model && g.coin(0.5)) {
    m.startup = nanojoules(g.range(0, 50'000));
    m.read_base = nanojoules(g.range(0, 5'000));
    m.write_base = nanojoules(g.range(0, 5'000));
    m.read_per_byte = Energy::from_femtojoules(static_cast<std::int64_t>(g.range(0, 20'000'000)));
    m.write_per_byte = Energy::from_femtojoules(static_cast<std::int64_t>(g.range(0, 20'000'000)));
  }
  const auto n = static_cast<std::uint32_t>(g.range(shape.min_tasks, shape.max_tasks));
  // Per-app flavour so the corpus covers sparse chains and dense fan-outs.
  const double read_density = g.unit();
  const std::uint32_t max_writes = static_cast<std::uint32_t>(g.range(1, shape.max_writes));

  std::vector<Packet> packets;
  std::vector<Task> tasks;
  for (std::uint32_t k = 1; k <= n; ++k) {
    Task t;
    t.index = k;
    t.name = "task" + std::to_string(k);
    t.energy = g.coin(0.05) ? Energy::zero() : nanojoules(g.range(0, shape.max_task_uj * 1000));
    if (!packets.empty()) {
      const std::uint64_t want = g.coin(read_density) ? g.range(1, shape.max_reads) : 0;
      for (std::uint64_t r = 0; r < want * 2 && t.reads.size() < want; ++r) {
        // Bias toward recent packets, with occasional long-range reads.
        const std::uint64_t np = packets.size();
        const std::uint64_t back = g.coin(0.7) ? g.range(0, std::min<std::uint64_t>(np - 1, 3)) : g.range(0, np - 1);
        const auto p = static_cast<PacketId>(np - 1 - back);
        if (std::find(t.reads.begin(), t.reads.end(), p) == t.reads.end()) t.reads.push_back(p);
      }
    }
    const std::uint64_t writes = g.range(0, max_writes);
    for (std::uint64_t w = 0; w < writes; ++w) {
      const auto id = static_cast<PacketId>(packets.size());
      const std::uint64_t size = g.coin(0.1) ? 0 : g.range(1, shape.max_packet_bytes);
      packets.push_back({id, "pk" + std::to_string(id), size, 0});
      t.writes.push_back(id);
    }
    tasks.push_back(std::move(t));
  }
  return Application(m, std::move(packets), std::move(tasks));
}

Energy random_feasible_qmax(Gen& g, const Application& app) {
  const Energy lo = oracle::bottleneck(app);
  Energy hi = oracle::burst_energy(app, 1, app.n_tasks());
  for (TaskIndex k = 1; k <= app.n_tasks(); ++k) hi = std::max(hi, oracle::burst_energy(app, k, k));
  hi = hi + Energy::from_femtojoules(hi.femtojoules() / 5);
  if (g.coin(0.15)) return lo;
  const auto span = static_cast<std::uint64_t>((hi - lo).femtojoules());
  return lo + Energy::from_femtojoules(static_cast<std::int64_t>(g.range(0, span)));
}

std::string random_adl(Gen& g, std::uint32_t max_tasks) {
  // Half the files are well formed; the rest draw names freely so that
  // collisions, undefined references and read-before-write occur.
  const bool sane = g.coin(0.5);
  std::string out;
  if (g.coin(0.8)) out += "energy startup_uJ=9\n";
  if (g.coin(0.8)) out += "nvm read base_uJ=1.3 per_byte_nJ=7.6\nnvm write base_uJ=0.9 per_byte_nJ=6.2\n";
  const std::uint64_t n_packets = g.range(0, 8);
  for (std::uint64_t p = 0; p < n_packets; ++p) {
    const std::uint64_t id = sane ? p : g.range(0, n_packets);
    out += "packet q" + std::to_string(id) + " " + std::to_string(g.range(0, 5000)) + "\n";
  }
  std::vector<std::uint64_t> written;
  std::uint64_t next_unwritten = 0;
  auto reads = [&] {
    const std::uint64_t c = g.range(0, 3);
    if (c == 0 || (sane && written.empty())) return std::string("-");
    std::string s;
    std::vector<std::uint64_t> used;
    for (std::uint64_t a = 0; a < c; ++a) {
      const std::uint64_t id = sane ? written[g.range(0, written.size() - 1)] : g.range(0, n_packets + 1);
      if (sane && std::find(used.begin(), used.end(), id) != used.end()) continue;
      used.push_back(id);
      if (!s.empty()) s += ',';
      s += "q" + std::to_string(id);
    }
    return s;
  };
  auto writes = [&] {
    if (!sane) {
      const std::uint64_t c = g.range(0, 3);
      if (c == 0) return std::string("-");
      std::string s;
      for (std::uint64_t a = 0; a < c; ++a) s += (a ? ",q" : "q") + std::to_string(g.range(0, n_packets + 1));
      return s;
    }
    if (next_unwritten >= n_packets || g.coin(0.3)) return std::string("-");
    written.push_back(next_unwritten);
    return "q" + std::to_string(next_unwritten++);
  };
  const std::uint64_t n_tasks = g.range(sane ? 1 : 0, max_tasks);
  for (std::uint64_t k = 0; k < n_tasks; ++k) {
    if (g.coin(0.1)) {
      const std::uint64_t lo = g.range(0, 2);
      out += "repeat i " + std::to_string(lo) + ".." + std::to_string(lo + g.range(0, 2)) + " {\n";
      out += "  packet r" + std::to_string(k) + "_$i 4\n";
      out += "  task u" + std::to_string(k) + "_$i energy_uJ=1 reads=" + reads() + " writes=r" + std::to_string(k) +
             "_$i\n}\n";
      continue;
    }
    const std::uint64_t name = sane ? k : g.range(0, n_tasks);
    const std::string r = reads();
    out += "task t" + std::to_string(name) + " energy_uJ=" + std::to_string(g.range(0, 1000)) + " reads=" + r +
           " writes=" + writes() + "\n";
  }
  return out;
}

}  // namespace julienne::testgen
