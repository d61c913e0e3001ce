#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrv2x/mathutil.hpp"

namespace nrv2x {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NumerologyParams {
  double scs_khz;
  double rb_bandwidth_khz;
  double tti_ms;
};

// 5G NR numerology table: scs = 2^mu * 15 kHz, 12 subcarriers per RB,
// TTI = 1/2^mu ms.
inline NumerologyParams numerology_params(int mu) {
  if (mu < 0 || mu > 4) throw ConfigError("numerology index out of range [0,4]: " + std::to_string(mu));
  const double scs = std::ldexp(15.0, mu);
  return {scs, 12.0 * scs, 1.0 / std::ldexp(1.0, mu)};
}

enum class Algorithm { kGsrags, kHrahs, kGsrahs };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kGsrags: return "gsrags";
    case Algorithm::kHrahs: return "hrahs";
    case Algorithm::kGsrahs: return "gsrahs";
  }
  return "?";
}

inline Algorithm algorithm_from_string(const std::string& s) {
  if (s == "gsrags" || s == "GSRAGS") return Algorithm::kGsrags;
  if (s == "hrahs" || s == "HRAHS") return Algorithm::kHrahs;
  if (s == "gsrahs" || s == "GSRAHS") return Algorithm::kGsrahs;
  throw ConfigError("unknown algorithm: " + s);
}

// Every experiment parameter. Defaults reproduce the reference scenario:
// 1 km^2 area, BWP-1 at 28 GHz / mu=3 carrying CUE+VUE traffic in eight
// 4-RB resource chunks, BWP-2 at 2 GHz / mu=0 for best-effort users.
// Immutable after load; safe to share across concurrent runs.
struct ScenarioConfig {
  double area_side_m = 1000.0;
  int lane_count = 4;
  double lane_width_m = 4.0;
  int num_cues = 172;
  int num_vue_pairs = 10;
  int num_bues = 10;
  double vehicle_speed_kmph = 50.0;
  double carrier_freq_bwp1_ghz = 28.0;
  double carrier_freq_bwp2_ghz = 2.0;
  int numerology_bwp1 = 3;
  int numerology_bwp2 = 0;
  int rbs_per_rc = 4;  // eta
  int num_rcs = 8;
  int max_sched_per_tti = 8;  // C_t
  double noise_power_dbm = -114.0;
  double p_cue_max_dbm = 23.0;
  double p_vue_max_dbm = 23.0;
  double r0_bps_hz = 0.5;
  double gamma0_db = 5.0;
  double p0 = 1e-3;
  double delta_c_ms = 50.0;
  double delta_v_ms = 10.0;
  int beta_c_bytes = 50;
  int beta_v_bytes = 10;
  int lambda_divisor = 20;  // lambda_c = num_cues / lambda_divisor, packets per slot
  double feedback_period_ms = 0.125;
  double shadow_std_v2v_db = 4.0;
  double shadow_std_v2i_db = 7.8;
  double gnb_antenna_gain_dbi = 8.0;
  double vehicle_antenna_gain_dbi = 3.0;
  double gnb_noise_figure_db = 5.0;
  double vehicle_noise_figure_db = 9.0;
  int num_slots = 5000;
  int num_runs = 10;
  Algorithm algorithm = Algorithm::kGsrags;
  uint64_t base_seed = 1;
  // Modelling knobs not fixed by the reference tables; documented defaults.
  double total_bandwidth_mhz = 50.0;
  double vue_pair_separation_m = 10.0;
  double min_link_distance_m = 1.0;
  int vue_packet_period_slots = 100;
  double bler_backoff_db = 1.0;
  // noise_power_dbm is read as the effective post-noise-figure floor (thermal
  // in one 180 kHz RB plus ~7 dB NF lands at -114 dBm). Enable this to
  // subtract the tabulated noise figures from the link budget on top of it.
  bool apply_noise_figures = false;

  double lambda_c() const { return static_cast<double>(num_cues) / lambda_divisor; }
  double noise_watts() const { return dbm_to_watts(noise_power_dbm); }
  double p_cue_max_watts() const { return dbm_to_watts(p_cue_max_dbm); }
  double p_vue_max_watts() const { return dbm_to_watts(p_vue_max_dbm); }
  double gamma0_linear() const { return db_to_linear(gamma0_db); }
  double speed_mps() const { return vehicle_speed_kmph / 3.6; }
  double tti_bwp1_ms() const { return numerology_params(numerology_bwp1).tti_ms; }
  double rb_bandwidth_bwp1_hz() const { return numerology_params(numerology_bwp1).rb_bandwidth_khz * 1e3; }
  int slots_per_bwp2_tti() const {
    return static_cast<int>(numerology_params(numerology_bwp2).tti_ms / numerology_params(numerology_bwp1).tti_ms + 0.5);
  }

  void validate() const;
};

namespace detail {

struct ConfigField {
  const char* key;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

inline std::string format_double(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for key '" + key + "': " + v);
  }
}

inline long long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for key '" + key + "': " + v);
  }
}

inline const std::vector<ConfigField>& config_fields() {
  auto dbl = [](const char* key, double ScenarioConfig::*member) {
    return ConfigField{
        key,
        [key, member](ScenarioConfig& c, const std::string& v) { c.*member = parse_double(key, v); },
        [member](const ScenarioConfig& c) { return format_double(c.*member); }};
  };
  auto integer = [](const char* key, int ScenarioConfig::*member) {
    return ConfigField{
        key,
        [key, member](ScenarioConfig& c, const std::string& v) { c.*member = static_cast<int>(parse_int(key, v)); },
        [member](const ScenarioConfig& c) { return std::to_string(c.*member); }};
  };
  static const std::vector<ConfigField> fields = {
      dbl("area_side_m", &ScenarioConfig::area_side_m),
      integer("lane_count", &ScenarioConfig::lane_count),
      dbl("lane_width_m", &ScenarioConfig::lane_width_m),
      integer("num_cues", &ScenarioConfig::num_cues),
      integer("num_vue_pairs", &ScenarioConfig::num_vue_pairs),
      integer("num_bues", &ScenarioConfig::num_bues),
      dbl("vehicle_speed_kmph", &ScenarioConfig::vehicle_speed_kmph),
      dbl("carrier_freq_bwp1_ghz", &ScenarioConfig::carrier_freq_bwp1_ghz),
      dbl("carrier_freq_bwp2_ghz", &ScenarioConfig::carrier_freq_bwp2_ghz),
      integer("numerology_bwp1", &ScenarioConfig::numerology_bwp1),
      integer("numerology_bwp2", &ScenarioConfig::numerology_bwp2),
      integer("rbs_per_rc", &ScenarioConfig::rbs_per_rc),
      integer("num_rcs", &ScenarioConfig::num_rcs),
      integer("max_sched_per_tti", &ScenarioConfig::max_sched_per_tti),
      dbl("noise_power_dbm", &ScenarioConfig::noise_power_dbm),
      dbl("p_cue_max_dbm", &ScenarioConfig::p_cue_max_dbm),
      dbl("p_vue_max_dbm", &ScenarioConfig::p_vue_max_dbm),
      dbl("r0_bps_hz", &ScenarioConfig::r0_bps_hz),
      dbl("gamma0_db", &ScenarioConfig::gamma0_db),
      dbl("p0", &ScenarioConfig::p0),
      dbl("delta_c_ms", &ScenarioConfig::delta_c_ms),
      dbl("delta_v_ms", &ScenarioConfig::delta_v_ms),
      integer("beta_c_bytes", &ScenarioConfig::beta_c_bytes),
      integer("beta_v_bytes", &ScenarioConfig::beta_v_bytes),
      integer("lambda_divisor", &ScenarioConfig::lambda_divisor),
      dbl("feedback_period_ms", &ScenarioConfig::feedback_period_ms),
      dbl("shadow_std_v2v_db", &ScenarioConfig::shadow_std_v2v_db),
      dbl("shadow_std_v2i_db", &ScenarioConfig::shadow_std_v2i_db),
      dbl("gnb_antenna_gain_dbi", &ScenarioConfig::gnb_antenna_gain_dbi),
      dbl("vehicle_antenna_gain_dbi", &ScenarioConfig::vehicle_antenna_gain_dbi),
      dbl("gnb_noise_figure_db", &ScenarioConfig::gnb_noise_figure_db),
      dbl("vehicle_noise_figure_db", &ScenarioConfig::vehicle_noise_figure_db),
      integer("num_slots", &ScenarioConfig::num_slots),
      integer("num_runs", &ScenarioConfig::num_runs),
      ConfigField{"algorithm",
                  [](ScenarioConfig& c, const std::string& v) { c.algorithm = algorithm_from_string(v); },
                  [](const ScenarioConfig& c) { return to_string(c.algorithm); }},
      ConfigField{"base_seed",
                  [](ScenarioConfig& c, const std::string& v) {
                    c.base_seed = static_cast<uint64_t>(parse_int("base_seed", v));
                  },
                  [](const ScenarioConfig& c) { return std::to_string(c.base_seed); }},
      dbl("total_bandwidth_mhz", &ScenarioConfig::total_bandwidth_mhz),
      dbl("vue_pair_separation_m", &ScenarioConfig::vue_pair_separation_m),
      dbl("min_link_distance_m", &ScenarioConfig::min_link_distance_m),
      integer("vue_packet_period_slots", &ScenarioConfig::vue_packet_period_slots),
      dbl("bler_backoff_db", &ScenarioConfig::bler_backoff_db),
      ConfigField{"apply_noise_figures",
                  [](ScenarioConfig& c, const std::string& v) {
                    if (v == "true" || v == "1")
                      c.apply_noise_figures = true;
                    else if (v == "false" || v == "0")
                      c.apply_noise_figures = false;
                    else
                      throw ConfigError("invalid boolean for key 'apply_noise_figures': " + v);
                  },
                  [](const ScenarioConfig& c) { return std::string(c.apply_noise_figures ? "true" : "false"); }},
  };
  return fields;
}

inline std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace detail

inline void ScenarioConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& what, const std::string& value) {
    throw ConfigError("config key '" + key + "' " + what + " (got " + value + ")");
  };
  if (!(p0 > 0.0 && p0 < 1.0)) fail("p0", "probability out of range (0,1)", detail::format_double(p0));
  if (rbs_per_rc < 1) fail("rbs_per_rc", "must be >= 1", std::to_string(rbs_per_rc));
  if (num_rcs < 1) fail("num_rcs", "must be >= 1", std::to_string(num_rcs));
  if (max_sched_per_tti < 1) fail("max_sched_per_tti", "must be >= 1", std::to_string(max_sched_per_tti));
  if (num_cues < 0) fail("num_cues", "must be >= 0", std::to_string(num_cues));
  if (num_vue_pairs < 0) fail("num_vue_pairs", "must be >= 0", std::to_string(num_vue_pairs));
  if (num_bues < 0) fail("num_bues", "must be >= 0", std::to_string(num_bues));
  if (num_slots < 0) fail("num_slots", "must be >= 0", std::to_string(num_slots));
  if (num_runs < 1) fail("num_runs", "must be >= 1", std::to_string(num_runs));
  if (lambda_divisor < 1) fail("lambda_divisor", "must be >= 1", std::to_string(lambda_divisor));
  if (beta_c_bytes <= 0) fail("beta_c_bytes", "must be > 0", std::to_string(beta_c_bytes));
  if (beta_v_bytes <= 0) fail("beta_v_bytes", "must be > 0", std::to_string(beta_v_bytes));
  if (delta_c_ms <= 0) fail("delta_c_ms", "must be > 0", detail::format_double(delta_c_ms));
  if (delta_v_ms <= 0) fail("delta_v_ms", "must be > 0", detail::format_double(delta_v_ms));
  if (vehicle_speed_kmph < 0) fail("vehicle_speed_kmph", "must be >= 0", detail::format_double(vehicle_speed_kmph));
  if (area_side_m <= 0) fail("area_side_m", "must be > 0", detail::format_double(area_side_m));
  if (lane_count < 1) fail("lane_count", "must be >= 1", std::to_string(lane_count));
  if (lane_width_m <= 0) fail("lane_width_m", "must be > 0", detail::format_double(lane_width_m));
  if (lane_count * lane_width_m > area_side_m / 2.0)
    fail("lane_count", "lanes do not fit south of the gNB", std::to_string(lane_count));
  if (carrier_freq_bwp1_ghz <= 0) fail("carrier_freq_bwp1_ghz", "must be > 0", detail::format_double(carrier_freq_bwp1_ghz));
  if (carrier_freq_bwp2_ghz <= 0) fail("carrier_freq_bwp2_ghz", "must be > 0", detail::format_double(carrier_freq_bwp2_ghz));
  if (vue_pair_separation_m <= 0) fail("vue_pair_separation_m", "must be > 0", detail::format_double(vue_pair_separation_m));
  if (min_link_distance_m <= 0) fail("min_link_distance_m", "must be > 0", detail::format_double(min_link_distance_m));
  if (vue_packet_period_slots < 1) fail("vue_packet_period_slots", "must be >= 1", std::to_string(vue_packet_period_slots));
  if (total_bandwidth_mhz <= 0) fail("total_bandwidth_mhz", "must be > 0", detail::format_double(total_bandwidth_mhz));
  numerology_params(numerology_bwp1);  // throws on out-of-range mu
  numerology_params(numerology_bwp2);
  // BWP-1 carries the latency-critical traffic and must run the finer TTI
  if (numerology_bwp2 > numerology_bwp1)
    fail("numerology_bwp2", "must not exceed numerology_bwp1", std::to_string(numerology_bwp2));
  const double bwp1_hz = static_cast<double>(num_rcs) * rbs_per_rc * rb_bandwidth_bwp1_hz();
  if (bwp1_hz > total_bandwidth_mhz * 1e6 + 1e-6)
    fail("num_rcs", "num_rcs * rbs_per_rc RBs exceed the total bandwidth", std::to_string(num_rcs));
}

// Parses the flat key = value document (one pair per line, '#' comments),
// applies it over the defaults, rejects unknown keys, validates invariants.
inline ScenarioConfig load_config(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    bool found = false;
    for (const auto& f : detail::config_fields()) {
      if (key == f.key) {
        f.set(cfg, value);
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError("unknown config key: " + key);
  }
  cfg.validate();
  return cfg;
}

inline ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

// Applies a single "key=value" override in place (used by --set).
inline void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& f : detail::config_fields()) {
    if (key == f.key) {
      f.set(cfg, value);
      return;
    }
  }
  throw ConfigError("unknown config key: " + key);
}

// Serializes every key in registry order; reloading the output reproduces
// the config bit-exactly (doubles use shortest round-trip formatting).
inline std::string save_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  for (const auto& f : detail::config_fields()) out << f.key << " = " << f.get(cfg) << "\n";
  return out.str();
}

}  // namespace nrv2x
