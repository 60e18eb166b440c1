#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "julienne/app_model.hpp"

namespace julienne::bench {

enum class HeadcountVariant { thermal, visual };

/// Replica of the head-counting application. Task energies in uJ; sizes in bytes.
struct HeadcountParams {
  std::uint64_t raw_image_bytes = 9600;    // 80x60 x 16 bit
  std::uint64_t normalized_bytes = 19200;  // 80x60 x 32-bit float
  std::uint64_t result_bytes = 8;
  std::uint64_t detector_init_bytes = 16;
  std::uint64_t ranked_bytes = 256;  // 4 B x 64 detections
  std::uint64_t headcount_bytes = 1;

  std::uint32_t cnn1_count = 4125;
  std::uint32_t cnn2_count = 936;
  std::uint32_t cnn3_count = 391;

  double sense_thermal_uj = 131900;
  double sense_visual_uj = 4400;
  double normalize_uj = 43;
  double initialize_uj = 3;
  double cnn1_uj = 396;
  double cnn2_uj = 396;
  double cnn3_uj = 403;
  // The per-kernel values are rounded to 1 uJ; the residue restores the
  // 2161.8 mJ processing total and is charged to sort.
  double sort_uj = 10 + 9;
  double nms_uj = 6;
  double transmit_uj = 86;
};

struct Generated {
  std::string adl;
  Application app;
};

/// ADL text (with repeat blocks) and the application it parses to.
Generated gen_headcount(HeadcountVariant variant, const HeadcountParams& params = {});

enum class SyntheticKind { chain, fanin, random };

struct SyntheticParams {
  SyntheticKind kind = SyntheticKind::chain;
  /// chain, random: number of tasks. fanin: number of producers (plus one consumer).
  std::uint32_t n_tasks = 8;
  EnergyModel model = EnergyModel::fram();

  // chain, fanin
  std::uint64_t packet_bytes = 100;
  Energy task_energy = Energy::from_femtojoules(500 * Energy::kFemtoPerMicro);

  // random
  std::uint64_t seed = 1;
  std::uint64_t min_packet_bytes = 1;
  std::uint64_t max_packet_bytes = 4096;
  Energy min_task_energy = Energy::from_femtojoules(1 * Energy::kFemtoPerMicro);
  Energy max_task_energy = Energy::from_femtojoules(1000 * Energy::kFemtoPerMicro);
  std::uint32_t max_reads = 4;
  std::uint32_t max_writes = 2;
};

/// Throws std::invalid_argument for unusable parameters (zero tasks, empty ranges).
/// Output always passes validate(); random output depends on the seed only.
Application gen_synthetic(const SyntheticParams& params);

/// Draws over std::mt19937_64 with fixed mappings, so sequences are identical
/// on every standard library (the std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  std::int64_t uniform_signed(std::int64_t lo, std::int64_t hi);
  /// Uniform in [0, 1).
  double unit();
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace julienne::bench
