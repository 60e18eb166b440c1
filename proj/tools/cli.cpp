#include "cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "julienne/adl.hpp"
#include "julienne/bench.hpp"
#include "julienne/burst_cost.hpp"
#include "julienne/partitioner.hpp"
#include "julienne/simulator.hpp"

namespace julienne::cli {
namespace {

using nlohmann::json;

struct Failure {
  int code;
  std::string message;
};

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

unsigned default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Failure{kInputError, "cannot open '" + path + "'"};
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Application load_app(const std::string& path, Io& io) {
  const std::string text = read_source(path, io.in);
  adl::ParseResult r = adl::parse(text);
  const std::string label = path == "-" ? "<stdin>" : path;
  for (const auto& w : r.warnings)
    io.err << label << ':' << w.position.line << ':' << w.position.column << ": warning: " << w.message << '\n';
  if (!r.ok()) {
    for (const auto& e : r.errors) io.err << label << ':' << adl::format_error(e) << '\n';
    throw Failure{kInputError, ""};
  }
  return std::move(*r.application);
}

Energy energy_flag(const std::string& text, const std::string& flag) {
  const auto e = parse_energy_with_unit(text);
  if (!e) throw Failure{kInputError, flag + ": expected an energy such as 132000, 132000uJ or 132mJ, got '" + text + "'"};
  if (*e <= Energy::zero()) throw Failure{kInputError, flag + ": must be positive"};
  return *e;
}

std::vector<Energy> energy_list(const std::string& text, const std::string& flag) {
  std::vector<Energy> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(energy_flag(item, flag));
  if (out.empty()) throw Failure{kInputError, flag + ": empty list"};
  return out;
}

std::string uj(Energy e) { return format_microjoules(e); }

std::string percent(const PartitionReport& r) { return shortest_decimal(100.0 * r.overhead_fraction()); }

json report_json(const PartitionReport& r) {
  json bursts = json::array();
  for (const auto& b : r.per_burst) {
    bursts.push_back({{"first", b.range.first},
                      {"last", b.range.last},
                      {"energy", b.energy.microjoules()},
                      {"bytes_in", b.bytes_in},
                      {"bytes_out", b.bytes_out}});
  }
  return {{"n_bursts", r.n_bursts},
          {"e_startup_total", r.e_startup_total.microjoules()},
          {"e_read_total", r.e_read_total.microjoules()},
          {"e_write_total", r.e_write_total.microjoules()},
          {"e_app", r.e_app.microjoules()},
          {"e_total", r.e_total.microjoules()},
          {"overhead", r.overhead().microjoules()},
          {"overhead_fraction", r.overhead_fraction()},
          {"bytes_loaded", r.bytes_loaded},
          {"bytes_stored", r.bytes_stored},
          {"q_needed", r.q_needed.microjoules()},
          {"per_burst", std::move(bursts)}};
}

void report_text(const PartitionReport& r, std::ostream& out) {
  out << "# n_bursts=" << r.n_bursts << '\n'
      << "# e_total_uJ=" << uj(r.e_total) << '\n'
      << "# e_app_uJ=" << uj(r.e_app) << '\n'
      << "# overhead_uJ=" << uj(r.overhead()) << '\n'
      << "# overhead_pct=" << percent(r) << '\n'
      << "# e_startup_uJ=" << uj(r.e_startup_total) << '\n'
      << "# e_read_uJ=" << uj(r.e_read_total) << '\n'
      << "# e_write_uJ=" << uj(r.e_write_total) << '\n'
      << "# bytes_loaded=" << r.bytes_loaded << '\n'
      << "# bytes_stored=" << r.bytes_stored << '\n'
      << "# q_needed_uJ=" << uj(r.q_needed) << '\n'
      << format_partition(r);
}

void report_csv(const PartitionReport& r, std::ostream& out) {
  out << "burst,i,j,energy_uJ,load_B,store_B\n";
  for (std::size_t k = 0; k < r.per_burst.size(); ++k) {
    const auto& b = r.per_burst[k];
    out << k + 1 << ',' << b.range.first << ',' << b.range.last << ',' << uj(b.energy) << ',' << b.bytes_in << ','
        << b.bytes_out << '\n';
  }
}

void emit_report(const std::string& format, const PartitionReport& r, json header, const std::string& text_header,
                 std::ostream& out) {
  if (format == "json") {
    header["schema_version"] = 1;
    header["report"] = report_json(r);
    out << header.dump(2) << '\n';
  } else if (format == "csv") {
    report_csv(r, out);
  } else {
    out << text_header;
    report_text(r, out);
  }
}

int emit_infeasible(const Infeasible& inf, const std::string& format, Io& io) {
  if (format == "json") {
    json j{{"schema_version", 1}, {"feasible", false}, {"q_max", inf.q_max.microjoules()}};
    if (inf.q_min) j["q_min"] = inf.q_min->microjoules();
    io.out << j.dump(2) << '\n';
  }
  io.err << inf.describe() << '\n';
  return kInfeasible;
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

// ---------------------------------------------------------------------------

struct ValidateCmd {
  std::string app;
  std::string format = "text";

  void setup(CLI::App* cmd) {
    cmd->add_option("app", app, "Application file (- for stdin)")->required();
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  }

  int run(Io& io) {
    const std::string text = read_source(app, io.in);
    const adl::ParseResult r = adl::parse(text);
    const std::string label = app == "-" ? "<stdin>" : app;
    if (format == "json") {
      json errors = json::array();
      for (const auto& e : r.errors) {
        errors.push_back({{"line", e.position.line},
                          {"column", e.position.column},
                          {"kind", adl::error_kind_name(e.kind)},
                          {"message", e.message}});
      }
      json warnings = json::array();
      for (const auto& w : r.warnings)
        warnings.push_back({{"line", w.position.line}, {"column", w.position.column}, {"message", w.message}});
      json j{{"schema_version", 1}, {"ok", r.ok()}, {"errors", errors}, {"warnings", warnings}};
      if (r.ok()) {
        j["n_tasks"] = r.application->n_tasks();
        j["n_packets"] = r.application->n_packets();
        j["e_app"] = r.application->total_task_energy().microjoules();
      }
      io.out << j.dump(2) << '\n';
    } else {
      for (const auto& w : r.warnings)
        io.err << label << ':' << w.position.line << ':' << w.position.column << ": warning: " << w.message << '\n';
      for (const auto& e : r.errors) io.err << label << ':' << adl::format_error(e) << '\n';
      if (r.ok()) {
        io.out << "ok: " << r.application->n_tasks() << " tasks, " << r.application->n_packets()
               << " packets, e_app_uJ=" << uj(r.application->total_task_energy()) << '\n';
      }
    }
    return r.ok() ? kOk : kInputError;
  }
};

struct PartitionCmd {
  std::string app;
  std::string qmax;
  std::string format = "text";
  std::string dump_table;
  unsigned jobs = default_jobs();

  void setup(CLI::App* cmd) {
    cmd->add_option("app", app, "Application file (- for stdin)")->required();
    cmd->add_option("--qmax", qmax, "Per-burst energy bound (uJ; mJ/J suffixes accepted)")->required();
    add_format(cmd, format);
    cmd->add_option("--dump-table", dump_table, "Write the pruned cost table as CSV");
    cmd->add_option("--jobs", jobs, "Worker threads for the cost table")->check(CLI::PositiveNumber);
  }

  int run(Io& io) {
    const Application a = load_app(app, io);
    const Energy q = energy_flag(qmax, "--qmax");
    PartitionOutcome outcome;
    if (!dump_table.empty()) {
      const CostTable table = CostTable::build(a, q, jobs);
      std::ofstream f(dump_table);
      if (!f) throw Failure{kInputError, "cannot write '" + dump_table + "'"};
      table.write_csv(f);
      outcome = optimal_partition(a, table);
      if (auto* inf = std::get_if<Infeasible>(&outcome); inf && !inf->q_min) inf->q_min = q_min_value(a);
    } else {
      outcome = optimal_partition(a, q);
    }
    if (auto* inf = std::get_if<Infeasible>(&outcome)) return emit_infeasible(*inf, format, io);
    const auto& res = std::get<PartitionResult>(outcome);
    emit_report(format, res.report, {{"feasible", true}, {"q_max", q.microjoules()}},
                "# q_max_uJ=" + uj(q) + "\n", io.out);
    return kOk;
  }
};

struct QminCmd {
  std::string app;
  std::string format = "text";

  void setup(CLI::App* cmd) {
    cmd->add_option("app", app, "Application file (- for stdin)")->required();
    add_format(cmd, format);
  }

  int run(Io& io) {
    const Application a = load_app(app, io);
    const QMinResult r = q_min(a);
    emit_report(format, r.witness.report, {{"q_min", r.q_min.microjoules()}}, "# q_min_uJ=" + uj(r.q_min) + "\n",
                io.out);
    return kOk;
  }
};

struct SweepCmd {
  std::string app;
  std::string qmax_list;
  bool automatic = false;
  std::size_t points = 64;
  std::string format = "text";
  unsigned jobs = default_jobs();

  void setup(CLI::App* cmd) {
    cmd->add_option("app", app, "Application file (- for stdin)")->required();
    auto* list = cmd->add_option("--qmax-list", qmax_list, "Comma-separated bounds");
    auto* autoflag = cmd->add_flag("--auto", automatic, "Log-spaced bounds from Q_min to 1.05 x E<1,n>");
    list->excludes(autoflag);
    cmd->add_option("--points", points, "Number of --auto bounds")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    add_format(cmd, format);
    cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  }

  int run(Io& io) {
    if (qmax_list.empty() && !automatic) throw Failure{kInputError, "sweep: give --qmax-list or --auto"};
    const Application a = load_app(app, io);
    const std::vector<Energy> qs = automatic ? auto_sweep_grid(a, points) : energy_list(qmax_list, "--qmax-list");
    const std::vector<SweepPoint> pts = sweep(a, qs, {jobs});

    if (format == "json") {
      json arr = json::array();
      for (const auto& p : pts) {
        json j{{"q_max", p.q_max.microjoules()}, {"feasible", p.feasible()}};
        if (p.report) j["report"] = report_json(*p.report);
        arr.push_back(std::move(j));
      }
      io.out << json{{"schema_version", 1}, {"points", std::move(arr)}}.dump(2) << '\n';
    } else if (format == "csv") {
      io.out << "qmax_uJ,n_bursts,e_total_uJ,overhead_uJ,overhead_pct,feasible\n";
      for (const auto& p : pts) {
        io.out << uj(p.q_max) << ',';
        if (p.report) {
          io.out << p.report->n_bursts << ',' << uj(p.report->e_total) << ',' << uj(p.report->overhead()) << ','
                 << percent(*p.report) << ",true\n";
        } else {
          io.out << ",,,,false\n";
        }
      }
    } else {
      std::vector<std::array<std::string, 6>> rows{{"qmax_uJ", "n_bursts", "e_total_uJ", "overhead_uJ", "overhead_pct", "feasible"}};
      for (const auto& p : pts) {
        if (p.report)
          rows.push_back({uj(p.q_max), std::to_string(p.report->n_bursts), uj(p.report->e_total),
                          uj(p.report->overhead()), percent(*p.report), "true"});
        else
          rows.push_back({uj(p.q_max), "-", "-", "-", "-", "false"});
      }
      std::array<std::size_t, 6> width{};
      for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
      for (const auto& r : rows) {
        for (std::size_t c = 0; c + 1 < r.size(); ++c) io.out << std::left << std::setw(static_cast<int>(width[c] + 2)) << r[c];
        io.out << r.back() << '\n';
      }
    }
    return kOk;
  }
};

struct SimulateCmd {
  std::string app;
  std::string partition;
  std::string trace;
  std::string capacity;
  std::string initial = "0";
  double efficiency = 1.0;
  std::string residual = "keep";
  bool run_to_end = false;
  std::string format = "text";

  void setup(CLI::App* cmd) {
    cmd->add_option("app", app, "Application file (- for stdin)")->required();
    cmd->add_option("--partition", partition, "Partition file, or a Q_max to partition for")->required();
    cmd->add_option("--trace", trace, "Power trace CSV (time_s,power_uW)")->required();
    cmd->add_option("--capacity", capacity, "Buffer capacity (defaults to a Q_max given as --partition)");
    cmd->add_option("--initial", initial, "Initial buffer charge");
    cmd->add_option("--efficiency", efficiency, "Harvest efficiency in (0, 1]");
    cmd->add_option("--residual", residual, "Charge left after a burst")->check(CLI::IsMember({"keep", "drain"}));
    cmd->add_flag("--run-to-end", run_to_end, "Keep integrating after completion until the trace ends");
    add_format(cmd, format);
  }

  int run(Io& io) {
    const Application a = load_app(app, io);
    Partition part;
    std::optional<Energy> planned_q;
    std::ifstream pf(partition, std::ios::binary);
    if (pf) {
      const std::string text{std::istreambuf_iterator<char>(pf), std::istreambuf_iterator<char>()};
      try {
        part = parse_partition(text);
      } catch (const std::invalid_argument& e) {
        throw Failure{kInputError, partition + ": " + e.what()};
      }
      if (!part.covers(a.n_tasks())) throw Failure{kInputError, partition + ": partition does not cover the application"};
    } else if (const auto q = parse_energy_with_unit(partition)) {
      if (*q <= Energy::zero()) throw Failure{kInputError, "--partition: bound must be positive"};
      const PartitionOutcome outcome = optimal_partition(a, *q);
      if (const auto* inf = std::get_if<Infeasible>(&outcome)) return emit_infeasible(*inf, "text", io);
      part = std::get<PartitionResult>(outcome).partition;
      planned_q = *q;
    } else {
      throw Failure{kInputError, "--partition: '" + partition + "' is neither a readable file nor an energy"};
    }

    EmuConfig emu;
    if (!capacity.empty()) {
      emu.capacity = energy_flag(capacity, "--capacity");
    } else if (planned_q) {
      emu.capacity = *planned_q;
    } else {
      throw Failure{kInputError, "--capacity is required with a partition file"};
    }
    const auto init = parse_energy_with_unit(initial);
    if (!init || *init < Energy::zero() || *init > emu.capacity)
      throw Failure{kInputError, "--initial: must be an energy in [0, capacity]"};
    emu.initial_charge = *init;
    if (!(efficiency > 0.0 && efficiency <= 1.0)) throw Failure{kInputError, "--efficiency: must lie in (0, 1]"};
    emu.harvest_efficiency = efficiency;
    emu.residual = residual == "drain" ? ResidualPolicy::drain : ResidualPolicy::keep;
    emu.run_to_trace_end = run_to_end;

    PowerTrace pt;
    try {
      pt = PowerTrace::parse_csv(read_source(trace, io.in));
    } catch (const std::invalid_argument& e) {
      throw Failure{kInputError, trace + ": " + e.what()};
    }

    const PartitionReport plan = evaluate_partition(a, part);
    if (plan.q_needed > emu.capacity) {
      io.err << "infeasible: the partition needs " << uj(plan.q_needed) << " uJ per burst, capacity is "
             << uj(emu.capacity) << " uJ\n";
      return kInfeasible;
    }
    const SimReport rep = simulate(a, part, pt, emu);

    if (format == "csv") {
      rep.write_csv(io.out);
    } else if (format == "json") {
      json bursts = json::array();
      for (const auto& b : rep.bursts) {
        bursts.push_back({{"burst", b.burst},
                          {"trigger_time_s", b.trigger_time_s},
                          {"energy", b.energy.microjoules()},
                          {"load_bytes", b.load_bytes},
                          {"store_bytes", b.store_bytes}});
      }
      json j{{"schema_version", 1},
             {"bursts", std::move(bursts)},
             {"completed", rep.completed},
             {"completion_time_s", rep.completion_time_s ? json(*rep.completion_time_s) : json(nullptr)},
             {"end_time_s", rep.end_time_s},
             {"harvested", rep.harvested_uj},
             {"consumed", rep.consumed_uj},
             {"discarded", rep.discarded_uj},
             {"buffer_final", rep.buffer_final_uj},
             {"consistent", rep.consistent()}};
      if (rep.consistency_violation) j["consistency_violation"] = rep.consistency_violation->message;
      io.out << j.dump(2) << '\n';
    } else {
      io.out << "# bursts_run=" << rep.bursts.size() << " of " << part.size() << '\n'
             << "# completed=" << (rep.completed ? "true" : "false") << '\n';
      if (rep.completion_time_s) io.out << "# completion_time_s=" << shortest_decimal(*rep.completion_time_s) << '\n';
      io.out << "# end_time_s=" << shortest_decimal(rep.end_time_s) << '\n'
             << "# harvested_uJ=" << shortest_decimal(rep.harvested_uj) << '\n'
             << "# consumed_uJ=" << shortest_decimal(rep.consumed_uj) << '\n'
             << "# discarded_uJ=" << shortest_decimal(rep.discarded_uj) << '\n'
             << "# buffer_final_uJ=" << shortest_decimal(rep.buffer_final_uj) << '\n'
             << "# consistency=" << (rep.consistent() ? "pass" : "fail: " + rep.consistency_violation->message)
             << '\n';
      rep.write_csv(io.out);
    }
    if (!rep.consistent()) {
      io.err << "inconsistent: " << rep.consistency_violation->message << '\n';
      return kInfeasible;
    }
    return kOk;
  }
};

struct BenchCmd {
  std::string variant = "thermal";
  std::string out;
  std::optional<std::uint64_t> seed;
  std::uint32_t tasks = 8;
  std::uint64_t packet_bytes = 100;
  std::string task_energy = "500";
  bench::HeadcountParams hc;

  void setup(CLI::App* cmd) {
    cmd->add_option("--variant", variant, "thermal | visual | chain | fanin | random")
        ->check(CLI::IsMember({"thermal", "visual", "chain", "fanin", "random"}));
    cmd->add_option("--out", out, "Output .adl file (stdout if omitted)");
    cmd->add_option("--seed", seed, "Seed for --variant random (default $JULIENNE_SEED, else 1)");
    cmd->add_option("--tasks", tasks, "Synthetic task count (fanin: producers)")->check(CLI::PositiveNumber);
    cmd->add_option("--packet-bytes", packet_bytes, "Synthetic chain/fanin packet size");
    cmd->add_option("--task-energy", task_energy, "Synthetic chain/fanin task energy");
    cmd->add_option("--result-bytes", hc.result_bytes, "Replica CNN result packet size");
    cmd->add_option("--normalized-bytes", hc.normalized_bytes, "Replica normalized image size");
    cmd->add_option("--ranked-bytes", hc.ranked_bytes, "Replica ranked detection list size");
  }

  std::uint64_t effective_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("JULIENNE_SEED"); env && *env) {
      std::uint64_t v = 0;
      const std::string_view s(env);
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size())
        throw Failure{kInputError, "JULIENNE_SEED: expected an unsigned integer, got '" + std::string(s) + "'"};
      return v;
    }
    return 1;
  }

  int run(Io& io) {
    std::string text;
    if (variant == "thermal" || variant == "visual") {
      text = bench::gen_headcount(variant == "thermal" ? bench::HeadcountVariant::thermal
                                                       : bench::HeadcountVariant::visual,
                                  hc)
                 .adl;
    } else {
      bench::SyntheticParams sp;
      sp.kind = variant == "chain" ? bench::SyntheticKind::chain
                : variant == "fanin" ? bench::SyntheticKind::fanin
                                     : bench::SyntheticKind::random;
      sp.n_tasks = tasks;
      sp.packet_bytes = packet_bytes;
      const auto e = parse_energy_with_unit(task_energy);
      if (!e || *e < Energy::zero()) throw Failure{kInputError, "--task-energy: expected a non-negative energy"};
      sp.task_energy = *e;
      sp.seed = effective_seed();
      text = "# synthetic " + variant + (variant == "random" ? " seed=" + std::to_string(sp.seed) : "") + "\n" +
             adl::serialize(bench::gen_synthetic(sp));
    }
    if (out.empty() || out == "-") {
      io.out << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw Failure{kInputError, "cannot write '" + out + "'"};
      f << text;
    }
    return kOk;
  }
};

struct BaselineCmd {
  std::string app;
  std::string scheme;
  bool retain_all = false;
  std::string retain_mode;
  std::string format = "text";

  void setup(CLI::App* cmd) {
    cmd->add_option("app", app, "Application file (- for stdin)")->required();
    cmd->add_option("--scheme", scheme, "single-task | whole")
        ->required()
        ->check(CLI::IsMember({"single-task", "whole"}));
    auto* all = cmd->add_flag("--retain-all", retain_all, "Single-task: save and restore all live state per burst");
    auto* mode = cmd->add_option("--retain-mode", retain_mode, "Single-task transfers: optimized | live | all")
                     ->check(CLI::IsMember({"optimized", "live", "all"}));
    all->excludes(mode);
    add_format(cmd, format);
  }

  int run(Io& io) {
    const Application a = load_app(app, io);
    PartitionResult res;
    if (scheme == "whole") {
      if (retain_all || !retain_mode.empty()) throw Failure{kInputError, "--retain-* apply to --scheme single-task"};
      res = baseline_whole(a);
    } else {
      RetainMode m = RetainMode::optimized;
      if (retain_all || retain_mode == "live") m = RetainMode::live_state;
      if (retain_mode == "all") m = RetainMode::all_packets;
      res = baseline_single_task(a, m);
    }
    const std::uint64_t volume = res.report.bytes_loaded + res.report.bytes_stored;
    emit_report(format, res.report, {{"scheme", scheme}, {"bytes_transferred", volume}},
                "# scheme=" + scheme + "\n# bytes_transferred=" + std::to_string(volume) + "\n", io.out);
    return kOk;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Io io{in, out, err};
  CLI::App app{"Energy-bounded burst partitioning for intermittent task sequences", "julienne"};
  app.require_subcommand(1);

  ValidateCmd validate;
  PartitionCmd partition;
  QminCmd qmin;
  SweepCmd sweep_cmd;
  SimulateCmd simulate_cmd;
  BenchCmd bench_cmd;
  BaselineCmd baseline;

  auto* c_validate = app.add_subcommand("validate", "Parse and check an application file");
  auto* c_partition = app.add_subcommand("partition", "Minimum-energy partition under a per-burst bound");
  auto* c_qmin = app.add_subcommand("qmin", "Smallest feasible per-burst bound and its partition");
  auto* c_sweep = app.add_subcommand("sweep", "Partition over a range of bounds");
  auto* c_simulate = app.add_subcommand("simulate", "Replay a partition against a harvested power trace");
  auto* c_bench = app.add_subcommand("bench", "Generate a benchmark application");
  auto* c_baseline = app.add_subcommand("baseline", "Single-task or whole-application partitions");
  validate.setup(c_validate);
  partition.setup(c_partition);
  qmin.setup(c_qmin);
  sweep_cmd.setup(c_sweep);
  simulate_cmd.setup(c_simulate);
  bench_cmd.setup(c_bench);
  baseline.setup(c_baseline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (c_validate->parsed()) return validate.run(io);
    if (c_partition->parsed()) return partition.run(io);
    if (c_qmin->parsed()) return qmin.run(io);
    if (c_sweep->parsed()) return sweep_cmd.run(io);
    if (c_simulate->parsed()) return simulate_cmd.run(io);
    if (c_bench->parsed()) return bench_cmd.run(io);
    if (c_baseline->parsed()) return baseline.run(io);
  } catch (const Failure& f) {
    if (!f.message.empty()) err << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace julienne::cli
