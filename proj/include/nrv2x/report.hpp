#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nrv2x/engine.hpp"
#include "nrv2x/metrics.hpp"
#include "nrv2x/topology.hpp"

namespace nrv2x {

// All floats in the emitted files use 6 significant digits. Schemas are
// versioned through the header comment; bump kCsvSchemaVersion on any
// column change.
inline constexpr int kCsvSchemaVersion = 1;

inline std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

namespace detail {
inline void open_out(std::ofstream& out, const std::string& path) {
  out.open(path, std::ios::binary);  // binary keeps golden files byte-stable across platforms
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << "# schema_version: " << kCsvSchemaVersion << "\n";
}
}  // namespace detail

inline void write_plr_csv(const CampaignReport& r, const std::string& path) {
  std::ofstream out;
  detail::open_out(out, path);
  out << "class,run,plr\n";
  for (size_t i = 0; i < r.run_cue_plr.size(); ++i)
    out << "cue," << i << "," << fmt6(r.run_cue_plr[i]) << "\n";
  for (size_t i = 0; i < r.run_vue_plr.size(); ++i)
    out << "vue," << i << "," << fmt6(r.run_vue_plr[i]) << "\n";
  out << "cue,mean," << fmt6(r.mean_cue_plr) << "\n";
  out << "vue,mean," << fmt6(r.mean_vue_plr) << "\n";
}

inline void write_delay_cdf_csv(const CampaignReport& r, const std::string& path) {
  std::ofstream out;
  detail::open_out(out, path);
  out << "class,delay_ms,cdf\n";
  for (const auto& [d, f] : r.cue_delay_cdf) out << "cue," << fmt6(d) << "," << fmt6(f) << "\n";
  for (const auto& [d, f] : r.vue_delay_cdf) out << "vue," << fmt6(d) << "," << fmt6(f) << "\n";
}

inline void write_outage_cdf_csv(const CampaignReport& r, const std::string& path) {
  std::ofstream out;
  detail::open_out(out, path);
  out << "vue,samples_outage,cdf_x,cdf\n";
  for (size_t v = 0; v < r.vue_outage.size(); ++v)
    out << v << "," << fmt6(r.vue_outage[v]) << ",,\n";
  for (const auto& [x, f] : r.vue_outage_cdf) out << ",," << fmt6(x) << "," << fmt6(f) << "\n";
}

inline void write_rb_usage_csv(const CampaignReport& r, const std::string& path) {
  std::ofstream out;
  detail::open_out(out, path);
  out << "class,mean_rbs_per_tti\n";
  out << "cue," << fmt6(r.mean_cue_rbs_per_tti) << "\n";
  out << "vue_shared," << fmt6(r.mean_vue_rbs_per_tti) << "\n";
  out << "bue," << fmt6(r.mean_bue_rbs_per_tti) << "\n";
}

inline void write_bue_rate_cdf_csv(const CampaignReport& r, const std::string& path) {
  std::ofstream out;
  detail::open_out(out, path);
  out << "sum_rate_bps,cdf\n";
  for (const auto& [x, f] : r.bue_rate_cdf) out << fmt6(x) << "," << fmt6(f) << "\n";
}

inline nlohmann::ordered_json summary_json(const CampaignReport& r) {
  nlohmann::ordered_json j;
  j["algorithm"] = to_string(r.cfg.algorithm);
  j["num_cues"] = r.cfg.num_cues;
  j["num_vue_pairs"] = r.cfg.num_vue_pairs;
  j["num_bues"] = r.cfg.num_bues;
  j["num_slots"] = r.cfg.num_slots;
  j["num_runs"] = r.num_runs;
  j["base_seed"] = r.cfg.base_seed;
  j["cue"] = {{"generated", r.cue_generated},
              {"completed", r.cue_completed},
              {"dropped", r.cue_dropped},
              {"mean_plr", r.mean_cue_plr},
              {"per_run_plr", r.run_cue_plr},
              {"mean_delay_ms", r.mean_cue_delay_ms},
              {"mean_sum_rate_bps", r.mean_cue_sum_rate_bps},
              {"mean_goodput_bps", r.mean_cue_goodput_bps},
              {"satisfaction", r.cue_satisfaction}};
  j["vue"] = {{"generated", r.vue_generated},
              {"completed", r.vue_completed},
              {"dropped", r.vue_dropped},
              {"mean_plr", r.mean_vue_plr},
              {"mean_delay_ms", r.mean_vue_delay_ms},
              {"outage", r.vue_outage},
              {"mean_delay_ms_per_vue", r.vue_mean_delay_ms}};
  j["bue"] = {{"mean_sum_rate_bps", r.mean_bue_sum_rate_bps}};
  j["rb_usage"] = {{"cue", r.mean_cue_rbs_per_tti},
                   {"vue_shared", r.mean_vue_rbs_per_tti},
                   {"bue", r.mean_bue_rbs_per_tti}};
  j["audit"] = {{"constraint_violations", r.constraint_violations},
                {"conservation_ok", r.conservation_ok},
                {"full_demand_slots", r.full_demand_slots},
                {"full_demand_all_rcs_slots", r.full_demand_all_rcs_slots}};
  return j;
}

// Writes every metric artifact into out_dir. File contents are a pure
// function of the report.
inline void write_campaign_outputs(const CampaignReport& r, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto base = std::filesystem::path(out_dir);
  write_plr_csv(r, (base / "plr.csv").string());
  write_delay_cdf_csv(r, (base / "delay_cdf.csv").string());
  write_outage_cdf_csv(r, (base / "outage_cdf.csv").string());
  write_rb_usage_csv(r, (base / "rb_usage.csv").string());
  write_bue_rate_cdf_csv(r, (base / "bue_rate_cdf.csv").string());
  std::ofstream out((base / "summary.json").string(), std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + (base / "summary.json").string());
  out << summary_json(r).dump(2) << "\n";
}

inline std::string render_summary_table(const CampaignReport& r) {
  std::ostringstream os;
  double outage_max = 0.0;
  for (double o : r.vue_outage) outage_max = std::max(outage_max, o);
  os << "campaign: " << to_string(r.cfg.algorithm) << "  C=" << r.cfg.num_cues
     << " V=" << r.cfg.num_vue_pairs << " M=" << r.cfg.num_bues << "  slots=" << r.cfg.num_slots
     << " runs=" << r.num_runs << "\n";
  os << "  metric                     value\n";
  os << "  cue_plr_mean               " << fmt6(r.mean_cue_plr) << "\n";
  os << "  cue_delay_mean_ms          " << fmt6(r.mean_cue_delay_ms) << "\n";
  os << "  cue_sum_rate_mean_bps      " << fmt6(r.mean_cue_sum_rate_bps) << "\n";
  os << "  cue_goodput_mean_bps       " << fmt6(r.mean_cue_goodput_bps) << "\n";
  os << "  cue_satisfaction           " << fmt6(r.cue_satisfaction) << "\n";
  os << "  vue_plr_mean               " << fmt6(r.mean_vue_plr) << "\n";
  os << "  vue_delay_mean_ms          " << fmt6(r.mean_vue_delay_ms) << "\n";
  os << "  vue_outage_max             " << fmt6(outage_max) << "\n";
  os << "  rb_cue_mean                " << fmt6(r.mean_cue_rbs_per_tti) << "\n";
  os << "  rb_vue_shared_mean         " << fmt6(r.mean_vue_rbs_per_tti) << "\n";
  os << "  rb_bue_mean                " << fmt6(r.mean_bue_rbs_per_tti) << "\n";
  os << "  bue_sum_rate_mean_bps      " << fmt6(r.mean_bue_sum_rate_bps) << "\n";
  os << "  constraint_violations      " << r.constraint_violations << "\n";
  return os.str();
}

// Positions as CSV for visual inspection (--dump-topology).
inline std::string topology_csv(const UserSet& u) {
  std::ostringstream os;
  os << "# schema_version: " << kCsvSchemaVersion << "\n";
  os << "kind,index,x,y,lane,direction\n";
  os << "gnb,0," << fmt6(u.gnb.x) << "," << fmt6(u.gnb.y) << ",,\n";
  for (size_t i = 0; i < u.cues.size(); ++i)
    os << "cue," << i << "," << fmt6(u.cues[i].x) << "," << fmt6(u.cues[i].y) << ",,\n";
  for (size_t i = 0; i < u.bues.size(); ++i)
    os << "bue," << i << "," << fmt6(u.bues[i].x) << "," << fmt6(u.bues[i].y) << ",,\n";
  for (size_t i = 0; i < u.vues.size(); ++i) {
    os << "vue_tx," << i << "," << fmt6(u.vues[i].tx.x) << "," << fmt6(u.vues[i].tx.y) << ","
       << u.vues[i].lane << "," << u.vues[i].direction << "\n";
    os << "vue_rx," << i << "," << fmt6(u.vues[i].rx.x) << "," << fmt6(u.vues[i].rx.y) << ","
       << u.vues[i].lane << "," << u.vues[i].direction << "\n";
  }
  return os.str();
}

}  // namespace nrv2x
