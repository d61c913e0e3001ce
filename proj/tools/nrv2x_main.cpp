// Command-line front end: run campaigns, sweep the QoS-constrained capacity,
// benchmark the matching kernels, dump dropped topologies.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nrv2x/engine.hpp"
#include "nrv2x/report.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;
  int cues = -1;
  int slots = -1;
  int runs = -1;
  long long seed = -1;
  std::string algorithm;
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "config file (flat key = value lines)");
  cmd->add_option("--set", o.overrides, "override a config key, e.g. --set p0=1e-4")
      ->type_name("KEY=VALUE");
  cmd->add_option("--cues", o.cues, "number of CUEs");
  cmd->add_option("--slots", o.slots, "BWP-1 slots per run");
  cmd->add_option("--runs", o.runs, "independent runs");
  cmd->add_option("--seed", o.seed, "base RNG seed");
  cmd->add_option("--algorithm", o.algorithm, "gsrags | hrahs | gsrahs");
  cmd->add_option("--jobs", o.jobs, "parallel runs");
}

nrv2x::ScenarioConfig make_config(const CommonOpts& o) {
  nrv2x::ScenarioConfig cfg =
      o.config_path.empty() ? nrv2x::ScenarioConfig{} : nrv2x::load_config_file(o.config_path);
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw nrv2x::ConfigError("--set expects KEY=VALUE, got: " + kv);
    nrv2x::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.cues >= 0) cfg.num_cues = o.cues;
  if (o.slots >= 0) cfg.num_slots = o.slots;
  if (o.runs >= 0) cfg.num_runs = o.runs;
  if (o.seed >= 0) cfg.base_seed = static_cast<uint64_t>(o.seed);
  if (!o.algorithm.empty()) cfg.algorithm = nrv2x::algorithm_from_string(o.algorithm);
  cfg.validate();
  return cfg;
}

std::vector<int> parse_range(const std::string& range) {
  // "start:stop:step" inclusive, or a comma-separated list
  std::vector<int> out;
  if (range.find(':') != std::string::npos) {
    int start = 0, stop = 0, step = 1;
    if (std::sscanf(range.c_str(), "%d:%d:%d", &start, &stop, &step) != 3 || step <= 0)
      throw nrv2x::ConfigError("expected start:stop:step, got: " + range);
    for (int v = start; v <= stop; v += step) out.push_back(v);
  } else {
    size_t pos = 0;
    while (pos < range.size()) {
      const auto comma = range.find(',', pos);
      out.push_back(std::stoi(range.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (out.empty()) throw nrv2x::ConfigError("empty range: " + range);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QoS-aware NR-V2X uplink resource allocation simulator"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  std::string sim_out_dir = "out";
  bool sim_dump_topology = false;
  auto* simulate = app.add_subcommand("simulate", "run a multi-run campaign and write metric files");
  add_common(simulate, sim_opts);
  simulate->add_option("--out-dir", sim_out_dir, "output directory");
  simulate->add_flag("--dump-topology", sim_dump_topology, "also write topology.csv for run 0");

  CommonOpts sweep_opts;
  std::string sweep_range = "100:200:8";
  std::string sweep_out_dir = "out";
  auto* sweep = app.add_subcommand("sweep", "sweep the CUE count and report the QoS-constrained capacity");
  add_common(sweep, sweep_opts);
  sweep->add_option("--cues-range", sweep_range, "start:stop:step or comma list")->required();
  sweep->add_option("--out-dir", sweep_out_dir, "output directory");

  std::string bench_sizes = "32,64,128,256,512";
  long long bench_seed = 7;
  auto* bench = app.add_subcommand("bench-matching", "time the matching kernels and fit growth exponents");
  bench->add_option("--sizes", bench_sizes, "instance sizes, comma list");
  bench->add_option("--seed", bench_seed, "instance RNG seed");

  CommonOpts topo_opts;
  std::string topo_out;
  int topo_run = 0;
  auto* topo = app.add_subcommand("dump-topology", "write a dropped topology as CSV");
  add_common(topo, topo_opts);
  topo->add_option("--run", topo_run, "run index of the drop");
  topo->add_option("--out", topo_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const auto cfg = make_config(sim_opts);
      const auto report = nrv2x::run_campaign(cfg, sim_opts.jobs);
      nrv2x::write_campaign_outputs(report, sim_out_dir);
      if (sim_dump_topology) {
        auto rng = nrv2x::derived_rng(cfg.base_seed, 0, "drop");
        std::ofstream out(sim_out_dir + "/topology.csv", std::ios::binary);
        out << nrv2x::topology_csv(nrv2x::drop_users(cfg, rng));
      }
      std::cout << nrv2x::render_summary_table(report);
      std::cout << "outputs written to " << sim_out_dir << "/\n";
    } else if (sweep->parsed()) {
      auto cfg = make_config(sweep_opts);
      std::vector<std::pair<int, double>> satisfaction;
      std::filesystem::create_directories(sweep_out_dir);
      std::ofstream csv(sweep_out_dir + "/sweep.csv", std::ios::binary);
      csv << "# schema_version: " << nrv2x::kCsvSchemaVersion << "\n";
      csv << "num_cues,mean_cue_plr,mean_cue_delay_ms,cue_satisfaction\n";
      for (int c : parse_range(sweep_range)) {
        cfg.num_cues = c;
        cfg.validate();
        const auto report = nrv2x::run_campaign(cfg, sweep_opts.jobs);
        satisfaction.emplace_back(c, report.cue_satisfaction);
        csv << c << "," << nrv2x::fmt6(report.mean_cue_plr) << ","
            << nrv2x::fmt6(report.mean_cue_delay_ms) << "," << nrv2x::fmt6(report.cue_satisfaction)
            << "\n";
        std::cout << "C=" << c << "  plr=" << nrv2x::fmt6(report.mean_cue_plr)
                  << "  delay_ms=" << nrv2x::fmt6(report.mean_cue_delay_ms)
                  << "  satisfaction=" << nrv2x::fmt6(report.cue_satisfaction) << "\n";
      }
      std::cout << "qos_constrained_capacity=" << nrv2x::qos_capacity(satisfaction) << "\n";
      std::cout << "sweep written to " << sweep_out_dir << "/sweep.csv\n";
    } else if (bench->parsed()) {
      const auto sizes = parse_range(bench_sizes);
      const auto res = nrv2x::bench_matching(sizes, static_cast<uint64_t>(bench_seed));
      std::cout << "n,gale_shapley_ms,hungarian_ms\n";
      for (const auto& p : res.points)
        std::cout << p.n << "," << nrv2x::fmt6(p.gale_shapley_ms) << ","
                  << nrv2x::fmt6(p.hungarian_ms) << "\n";
      std::cout << "gale_shapley_exponent=" << nrv2x::fmt6(res.gale_shapley_exponent) << "\n";
      std::cout << "hungarian_exponent=" << nrv2x::fmt6(res.hungarian_exponent) << "\n";
    } else if (topo->parsed()) {
      const auto cfg = make_config(topo_opts);
      auto rng = nrv2x::derived_rng(cfg.base_seed, static_cast<uint64_t>(topo_run), "drop");
      const std::string csv = nrv2x::topology_csv(nrv2x::drop_users(cfg, rng));
      if (topo_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(topo_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + topo_out);
        out << csv;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
