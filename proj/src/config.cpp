#include "mimocap/config.hpp"

#include "mimocap/format.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string_view>

namespace mimocap {

std::vector<PilotScheme> schemes_of(SchemeSelection s) {
  switch (s) {
    case SchemeSelection::reused: return {PilotScheme::reused_sets};
    case SchemeSelection::different: return {PilotScheme::different_sets};
    case SchemeSelection::both: break;
  }
  return {PilotScheme::reused_sets, PilotScheme::different_sets};
}

std::vector<double> QosGrid::sir_db_values() const {
  std::vector<double> out;
  if (!(sir_db_step > 0.0) || sir_db_max < sir_db_min) return out;
  const auto n = static_cast<long>(std::floor((sir_db_max - sir_db_min) / sir_db_step + 0.5));
  // Snapped to 1e-9 dB so 0.1 dB steps print as written.
  for (long i = 0; i <= n; ++i)
    out.push_back(std::round((sir_db_min + static_cast<double>(i) * sir_db_step) * 1e9) / 1e9);
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || std::isnan(v))
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  return v;
}

template <class Int>
Int parse_int(const std::string& key, const std::string& text) {
  Int v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class F>
auto wrap(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

std::string scheme_selection_name(SchemeSelection s) {
  switch (s) {
    case SchemeSelection::reused: return "reused";
    case SchemeSelection::different: return "different";
    case SchemeSelection::both: break;
  }
  return "both";
}

struct Field {
  const char* path;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

#define MIMOCAP_DOUBLE(PATH, MEMBER)                                                         \
  Field {                                                                                    \
    PATH, [](ScenarioConfig& c, const std::string& v) { c.MEMBER = parse_double(PATH, v); }, \
        [](const ScenarioConfig& c) { return format_number(c.MEMBER); }                      \
  }
#define MIMOCAP_INT(PATH, MEMBER, TYPE)                                                           \
  Field {                                                                                         \
    PATH, [](ScenarioConfig& c, const std::string& v) { c.MEMBER = parse_int<TYPE>(PATH, v); },   \
        [](const ScenarioConfig& c) { return std::to_string(c.MEMBER); }                          \
  }
#define MIMOCAP_BOOL(PATH, MEMBER)                                                         \
  Field {                                                                                  \
    PATH, [](ScenarioConfig& c, const std::string& v) { c.MEMBER = parse_bool(PATH, v); }, \
        [](const ScenarioConfig& c) { return std::string(c.MEMBER ? "true" : "false"); }   \
  }
#define MIMOCAP_ENUM(PATH, MEMBER, PARSE)                                              \
  Field {                                                                              \
    PATH,                                                                              \
        [](ScenarioConfig& c, const std::string& v) {                                  \
          c.MEMBER = wrap(PATH, [&] { return PARSE(v); });                             \
        },                                                                             \
        [](const ScenarioConfig& c) { return std::string(name(c.MEMBER)); }            \
  }

SchemeSelection parse_selection(const std::string& v) {
  if (v == "reused") return SchemeSelection::reused;
  if (v == "different") return SchemeSelection::different;
  if (v == "both") return SchemeSelection::both;
  throw std::invalid_argument("expected reused, different or both, got '" + v + "'");
}

CircleMode parse_circle_mode(const std::string& v) {
  if (v == "equal_area") return CircleMode::equal_area;
  if (v == "radius_match") return CircleMode::radius_match;
  throw std::invalid_argument("expected equal_area or radius_match, got '" + v + "'");
}

std::string circle_mode_name(CircleMode m) {
  return m == CircleMode::equal_area ? "equal_area" : "radius_match";
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      MIMOCAP_DOUBLE("geometry.cell_radius_m", geometry.cell_radius_m),
      MIMOCAP_DOUBLE("geometry.hole_radius_m", geometry.hole_radius_m),
      MIMOCAP_INT("geometry.reuse_factor", geometry.reuse_factor, int),
      MIMOCAP_INT("geometry.ring_count", geometry.ring_count, int),
      MIMOCAP_DOUBLE("geometry.path_loss_exponent", geometry.path_loss_exponent),
      MIMOCAP_BOOL("geometry.wrap_around", geometry.wrap_around),
      Field{"geometry.circle_mode",
            [](ScenarioConfig& c, const std::string& v) {
              c.circle_mode = wrap("geometry.circle_mode", [&] { return parse_circle_mode(v); });
            },
            [](const ScenarioConfig& c) { return circle_mode_name(c.circle_mode); }},
      MIMOCAP_INT("pilots.length", pilot_length, int),
      Field{"pilots.scheme",
            [](ScenarioConfig& c, const std::string& v) {
              c.schemes = wrap("pilots.scheme", [&] { return parse_selection(v); });
            },
            [](const ScenarioConfig& c) { return scheme_selection_name(c.schemes); }},
      MIMOCAP_ENUM("pilots.model", pilot_model, parse_pilot_model),
      MIMOCAP_DOUBLE("qos.sir_db_min", qos.sir_db_min),
      MIMOCAP_DOUBLE("qos.sir_db_max", qos.sir_db_max),
      MIMOCAP_DOUBLE("qos.sir_db_step", qos.sir_db_step),
      Field{"qos.alphas",
            [](ScenarioConfig& c, const std::string& v) {
              c.qos.alphas.clear();
              for (const auto& item : split_list(v)) c.qos.alphas.push_back(parse_double("qos.alphas", item));
            },
            [](const ScenarioConfig& c) {
              std::string s;
              for (const double a : c.qos.alphas) s += (s.empty() ? "" : ",") + format_number(a);
              return s;
            }},
      MIMOCAP_INT("capacity.tiers", tiers, int),
      MIMOCAP_ENUM("capacity.variance_model", variance_model, parse_variance_model),
      MIMOCAP_INT("montecarlo.trials", trials, std::size_t),
      MIMOCAP_INT("montecarlo.seed", seed, std::uint64_t),
      MIMOCAP_INT("montecarlo.workers", workers, unsigned),
      MIMOCAP_ENUM("montecarlo.placement", placement, parse_placement),
      MIMOCAP_BOOL("montecarlo.power_control", power_control),
      MIMOCAP_INT("montecarlo.max_tier", max_tier, int),
      MIMOCAP_DOUBLE("montecarlo.shadow_sigma_db", shadow_sigma_db),
      MIMOCAP_INT("sir_cdf.reuse_factor", cdf_reuse, int),
      MIMOCAP_INT("sir_cdf.users_per_cell", cdf_users, int),
      MIMOCAP_DOUBLE("sir_cdf.db_min", cdf_db_min),
      MIMOCAP_DOUBLE("sir_cdf.db_max", cdf_db_max),
      MIMOCAP_DOUBLE("sir_cdf.db_step", cdf_db_step),
      MIMOCAP_INT("finite_m.antennas", finite_m.antennas, long),
      MIMOCAP_DOUBLE("finite_m.ul_snr_db", finite_m.ul_snr_db),
      MIMOCAP_DOUBLE("finite_m.pilot_snr_db", finite_m.pilot_snr_db),
      MIMOCAP_INT("finite_m.max_tier", finite_m.max_tier, int),
      MIMOCAP_ENUM("finite_m.engine", finite_m.engine, parse_channel_engine),
      MIMOCAP_INT("finite_m.trials", finite_m_trials, std::size_t),
      Field{"finite_m.presets",
            [](ScenarioConfig& c, const std::string& v) {
              c.finite_m_presets.clear();
              for (const auto& item : split_list(v)) {
                const auto colon = item.find(':');
                if (colon == std::string::npos)
                  throw ConfigError("finite_m.presets: expected sir_db:alpha, got '" + item + "'");
                const double s = parse_double("finite_m.presets", trim(item.substr(0, colon)));
                const double a = parse_double("finite_m.presets", trim(item.substr(colon + 1)));
                c.finite_m_presets.push_back(
                    wrap("finite_m.presets", [&] { return QosTarget::from_db(s, a); }));
              }
            },
            [](const ScenarioConfig& c) {
              std::string s;
              for (const auto& q : c.finite_m_presets)
                s += (s.empty() ? "" : ",") + format_number(q.min_sir_db()) + ":" + format_number(q.outage);
              return s;
            }},
      MIMOCAP_INT("validate.trials", validate_trials, std::size_t),
      MIMOCAP_DOUBLE("validate.sigma", validate_sigma),
      MIMOCAP_DOUBLE("validate.rel_tol", validate_rel_tol),
  };
  return f;
}

#undef MIMOCAP_DOUBLE
#undef MIMOCAP_INT
#undef MIMOCAP_BOOL
#undef MIMOCAP_ENUM

const Field& find_field(const std::string& path) {
  for (const auto& f : fields())
    if (path == f.path) return f;
  throw ConfigError("unknown configuration key '" + path + "'");
}

// Drops a trailing " ; comment" or " # comment" from an INI value.
std::string strip_inline_comment(const std::string& value) {
  for (std::size_t i = 0; i < value.size(); ++i) {
    if ((value[i] == ';' || value[i] == '#') && (i == 0 || value[i - 1] == ' ' || value[i - 1] == '\t'))
      return trim(value.substr(0, i));
  }
  return trim(value);
}

}  // namespace

void ScenarioConfig::validate() const {
  try {
    geometry.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("geometry: ") + e.what());
  }
  if (pilot_length < 1) throw ConfigError("pilots.length must be >= 1");
  if (pilot_length < 7) throw ConfigError("pilots.length must be >= 7 so every reuse factor has a pilot");
  if (qos.alphas.empty()) throw ConfigError("qos.alphas: empty QoS grid");
  if (!(qos.sir_db_step > 0.0)) throw ConfigError("qos.sir_db_step must be positive");
  if (qos.sir_db_max < qos.sir_db_min) throw ConfigError("qos: empty SIR range (max < min)");
  if (!std::isfinite(qos.sir_db_min) || !std::isfinite(qos.sir_db_max))
    throw ConfigError("qos: SIR range must be finite");
  for (const double a : qos.alphas)
    if (!(a > 0.0 && a < 0.5)) throw ConfigError("qos.alphas: each alpha must lie in (0, 0.5)");
  if (tiers < 1) throw ConfigError("capacity.tiers must be >= 1");
  if (trials < 1) throw ConfigError("montecarlo.trials must be >= 1");
  if (workers < 1) throw ConfigError("montecarlo.workers must be >= 1");
  if (max_tier < 0) throw ConfigError("montecarlo.max_tier must be >= 0");
  if (!(shadow_sigma_db >= 0.0) || !std::isfinite(shadow_sigma_db))
    throw ConfigError("montecarlo.shadow_sigma_db must be finite and >= 0");
  if (!supported_reuse(cdf_reuse)) throw ConfigError("sir_cdf.reuse_factor must be 1, 3 or 7");
  if (cdf_users < 1 || cdf_users > pilot_length / cdf_reuse)
    throw ConfigError("sir_cdf.users_per_cell outside the pilot budget floor(K / w)");
  if (!(cdf_db_step > 0.0) || cdf_db_max < cdf_db_min)
    throw ConfigError("sir_cdf: empty dB grid");
  try {
    finite_m.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("finite_m: ") + e.what());
  }
  if (finite_m.pilot_length != pilot_length)
    throw ConfigError("finite_m pilot length must equal pilots.length");
  if (finite_m_trials < 1) throw ConfigError("finite_m.trials must be >= 1");
  if (finite_m_presets.empty()) throw ConfigError("finite_m.presets: empty QoS list");
  if (validate_trials < 2) throw ConfigError("validate.trials must be >= 2");
  if (!(validate_sigma >= 0.0)) throw ConfigError("validate.sigma must be >= 0");
  if (!(validate_rel_tol >= 0.0)) throw ConfigError("validate.rel_tol must be >= 0");
}

std::vector<std::string> ScenarioConfig::canonical_lines() const {
  std::vector<std::string> out;
  for (const auto& f : fields()) {
    // Results do not depend on the worker count, so neither does the hash.
    if (std::string_view(f.path) == "montecarlo.workers") continue;
    out.push_back(std::string(f.path) + "=" + f.get(*this));
  }
  return out;
}

std::string ScenarioConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& line : canonical_lines()) {
    for (const char ch : line) {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001b3ull;
    }
    h ^= '\n';
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void set_value(ScenarioConfig& config, const std::string& path, const std::string& raw) {
  const Field& f = find_field(path);
  const std::string value = trim(raw);
  if (value.empty()) throw ConfigError(path + ": empty value");
  f.set(config, value);
  config.finite_m.pilot_length = config.pilot_length;
}

}  // namespace

void apply_override(ScenarioConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
  const std::string path = trim(assignment.substr(0, eq));
  if (path.find('.') == std::string::npos)
    throw ConfigError("override key '" + path + "' must be section.key");
  set_value(config, path, assignment.substr(eq + 1));
  config.validate();
}

ScenarioConfig load_config(const std::optional<std::string>& path,
                           const std::vector<std::string>& overrides) {
  ScenarioConfig config;
  if (path) {
    boost::property_tree::ptree tree;
    try {
      boost::property_tree::read_ini(*path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
      if (!body.data().empty() && body.empty())
        throw ConfigError("config: key '" + section + "' outside any [section]");
      const std::string prefix = section + ".";
      const bool known = std::any_of(fields().begin(), fields().end(), [&](const Field& f) {
        return std::string_view(f.path).starts_with(prefix);
      });
      if (!known) throw ConfigError("config: unknown section [" + section + "]");
      for (const auto& [key, value] : body)
        set_value(config, section + "." + key, strip_inline_comment(value.data()));
    }
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override '" + o + "' is not of the form section.key=value");
    set_value(config, trim(o.substr(0, eq)), o.substr(eq + 1));
  }
  config.validate();
  return config;
}

}  // namespace mimocap
