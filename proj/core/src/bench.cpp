#include "julienne/bench.hpp"

#include <algorithm>
#include <stdexcept>

#include "julienne/adl.hpp"

namespace julienne::bench {

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: hi < lo");
  const std::uint64_t span = hi - lo;
  if (span == ~std::uint64_t{0}) return next();
  const std::uint64_t range = span + 1;
  // Reject the top partial bucket so every value is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range + 1) % range;
  std::uint64_t x = next();
  while (x > limit) x = next();
  return lo + x % range;
}

std::int64_t Rng::uniform_signed(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform_signed: hi < lo");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + uniform(0, span));
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

std::string uj(double v) { return format_microjoules(Energy::from_microjoules(v)); }

void append_cnn_block(std::string& out, const char* kernel, std::uint32_t count, double energy_uj,
                      std::uint64_t result_bytes) {
  out += "repeat i 0.." + std::to_string(count) + " {\n";
  out += "  packet " + std::string(kernel) + "_res_$i " + std::to_string(result_bytes) + "\n";
  out += "  task " + std::string(kernel) + "_$i energy_uJ=" + uj(energy_uj) + " reads=norm writes=" + kernel +
         "_res_$i\n";
  out += "}\n";
}

}  // namespace

Generated gen_headcount(HeadcountVariant variant, const HeadcountParams& prm) {
  const EnergyModel m = EnergyModel::fram();
  const double sense = variant == HeadcountVariant::thermal ? prm.sense_thermal_uj : prm.sense_visual_uj;
  const char* label = variant == HeadcountVariant::thermal ? "thermal" : "visual";

  std::string out;
  out += "# head-counting replica (" + std::string(label) + " camera)\n";
  out += "energy startup_uJ=" + format_microjoules(m.startup) + "\n";
  out += "nvm read base_uJ=" + format_microjoules(m.read_base) + " per_byte_nJ=" +
         format_microjoules(Energy::from_femtojoules(m.read_per_byte.femtojoules() * 1000)) + "\n";
  out += "nvm write base_uJ=" + format_microjoules(m.write_base) + " per_byte_nJ=" +
         format_microjoules(Energy::from_femtojoules(m.write_per_byte.femtojoules() * 1000)) + "\n\n";

  out += "packet img " + std::to_string(prm.raw_image_bytes) + "\n";
  out += "packet norm " + std::to_string(prm.normalized_bytes) + "\n";
  out += "packet det_init " + std::to_string(prm.detector_init_bytes) + "\n";
  out += "packet ranked " + std::to_string(prm.ranked_bytes) + "\n";
  out += "packet headCount " + std::to_string(prm.headcount_bytes) + "\n\n";

  out += "task sense energy_uJ=" + uj(sense) + " reads=- writes=img\n";
  out += "task normalize energy_uJ=" + uj(prm.normalize_uj) + " reads=img writes=norm\n";
  out += "task initialize energy_uJ=" + uj(prm.initialize_uj) + " reads=- writes=det_init\n\n";
  append_cnn_block(out, "cnn1", prm.cnn1_count, prm.cnn1_uj, prm.result_bytes);
  append_cnn_block(out, "cnn2", prm.cnn2_count, prm.cnn2_uj, prm.result_bytes);
  append_cnn_block(out, "cnn3", prm.cnn3_count, prm.cnn3_uj, prm.result_bytes);
  out += "\n";

  out += "task sort energy_uJ=" + uj(prm.sort_uj) + " reads=det_init";
  auto list = [&](const char* kernel, std::uint32_t count) {
    for (std::uint32_t i = 0; i < count; ++i) out += "," + std::string(kernel) + "_res_" + std::to_string(i);
  };
  list("cnn1", prm.cnn1_count);
  list("cnn2", prm.cnn2_count);
  list("cnn3", prm.cnn3_count);
  out += " writes=ranked\n";
  out += "task nms energy_uJ=" + uj(prm.nms_uj) + " reads=ranked writes=headCount\n";
  out += "task transmit energy_uJ=" + uj(prm.transmit_uj) + " reads=headCount writes=-\n";

  adl::ParseResult parsed = adl::parse(out);
  if (!parsed.ok()) {
    std::string msg = "gen_headcount: generated ADL does not parse";
    if (!parsed.errors.empty()) msg += ": " + adl::format_error(parsed.errors.front());
    throw std::logic_error(msg);
  }
  return {std::move(out), std::move(*parsed.application)};
}

namespace {

Application make_chain(const SyntheticParams& prm) {
  std::vector<Packet> packets;
  std::vector<Task> tasks;
  for (std::uint32_t k = 1; k <= prm.n_tasks; ++k) {
    const auto out = static_cast<PacketId>(packets.size());
    packets.push_back({out, "d" + std::to_string(k), prm.packet_bytes, 0});
    Task t{k, "t" + std::to_string(k), prm.task_energy, {}, {out}};
    if (k > 1) t.reads.push_back(out - 1);
    tasks.push_back(std::move(t));
  }
  return Application(prm.model, std::move(packets), std::move(tasks));
}

Application make_fanin(const SyntheticParams& prm) {
  std::vector<Packet> packets;
  std::vector<Task> tasks;
  Task sink{prm.n_tasks + 1, "consumer", prm.task_energy, {}, {}};
  for (std::uint32_t k = 1; k <= prm.n_tasks; ++k) {
    const auto out = static_cast<PacketId>(packets.size());
    packets.push_back({out, "part" + std::to_string(k), prm.packet_bytes, 0});
    tasks.push_back({k, "producer" + std::to_string(k), prm.task_energy, {}, {out}});
    sink.reads.push_back(out);
  }
  tasks.push_back(std::move(sink));
  return Application(prm.model, std::move(packets), std::move(tasks));
}

Application make_random(const SyntheticParams& prm) {
  if (prm.max_packet_bytes < prm.min_packet_bytes || prm.max_task_energy < prm.min_task_energy ||
      prm.min_task_energy < Energy::zero())
    throw std::invalid_argument("gen_synthetic: empty packet size or energy range");
  Rng rng(prm.seed);
  std::vector<Packet> packets;
  std::vector<Task> tasks;
  for (std::uint32_t k = 1; k <= prm.n_tasks; ++k) {
    Task t;
    t.index = k;
    t.name = "t" + std::to_string(k);
    // nJ granularity keeps the ADL form short.
    const std::int64_t lo = prm.min_task_energy.femtojoules() / Energy::kFemtoPerNano;
    const std::int64_t hi = prm.max_task_energy.femtojoules() / Energy::kFemtoPerNano;
    t.energy = Energy::from_femtojoules(rng.uniform_signed(lo, hi) * Energy::kFemtoPerNano);

    const auto available = static_cast<std::uint64_t>(packets.size());
    const std::uint64_t reads = rng.uniform(0, std::min<std::uint64_t>(prm.max_reads, available));
    while (t.reads.size() < reads) {
      const auto p = static_cast<PacketId>(rng.uniform(0, available - 1));
      if (std::find(t.reads.begin(), t.reads.end(), p) == t.reads.end()) t.reads.push_back(p);
    }
    const std::uint64_t writes = rng.uniform(0, prm.max_writes);
    for (std::uint64_t w = 0; w < writes; ++w) {
      const auto id = static_cast<PacketId>(packets.size());
      packets.push_back({id, "p" + std::to_string(id), rng.uniform(prm.min_packet_bytes, prm.max_packet_bytes), 0});
      t.writes.push_back(id);
    }
    tasks.push_back(std::move(t));
  }
  return Application(prm.model, std::move(packets), std::move(tasks));
}

}  // namespace

Application gen_synthetic(const SyntheticParams& prm) {
  if (prm.n_tasks == 0) throw std::invalid_argument("gen_synthetic: n_tasks must be positive");
  if (prm.task_energy < Energy::zero()) throw std::invalid_argument("gen_synthetic: negative task energy");
  switch (prm.kind) {
    case SyntheticKind::chain: return make_chain(prm);
    case SyntheticKind::fanin: return make_fanin(prm);
    case SyntheticKind::random: return make_random(prm);
  }
  throw std::invalid_argument("gen_synthetic: unknown kind");
}

}  // namespace julienne::bench
