#include "qif/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "qif/errors.hpp"

namespace qif::cli {
namespace {

struct Entry {
  std::string value;
  int line;
};

const std::set<std::string, std::less<>> kAngleKeys{"phi", "alpha", "phi_min", "phi_max"};

const std::set<std::string, std::less<>> kKnownKeys{
    "mode",           "delta_over_w",     "phi",
    "alpha",          "r",                "branch",
    "p_min_over_w",   "p_max_over_w",     "grid_points",
    "delta_over_w_min", "delta_over_w_max", "delta_over_w_steps",
    "phi_min",        "phi_max",          "phi_steps",
    "d_m",            "length_m",         "speed_m_per_s",
    "dx0_transverse_m", "dx0_longitudinal_m", "tune",
    "seed",           "oracle_draws",     "algebra_draws",
    "out",            "format"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> required_keys(Mode mode) {
  switch (mode) {
    case Mode::distributions:
    case Mode::decompose:
    case Mode::ports:
      return {"delta_over_w", "phi", "alpha"};
    case Mode::design:
      return {"d_m", "length_m", "speed_m_per_s", "dx0_transverse_m", "dx0_longitudinal_m"};
    case Mode::sweep:
    case Mode::verify:
      return {};
  }
  return {};
}

Mode parse_mode(const Entry& e) {
  static const std::map<std::string, Mode, std::less<>> kModes{
      {"distributions", Mode::distributions}, {"decompose", Mode::decompose},
      {"sweep", Mode::sweep},                 {"ports", Mode::ports},
      {"design", Mode::design},               {"verify", Mode::verify}};
  const auto it = kModes.find(e.value);
  if (it == kModes.end()) {
    throw ConfigError("unknown mode '" + e.value +
                          "' (expected distributions|decompose|sweep|ports|design|verify)",
                      e.line);
  }
  return it->second;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry, std::less<>> entries) : entries_(std::move(entries)) {}

  bool has(std::string_view key) const { return entries_.contains(key); }
  const Entry& entry(std::string_view key) const { return entries_.find(key)->second; }
  int line(std::string_view key) const { return has(key) ? entry(key).line : 0; }

  void real(std::string_view key, double& target) const {
    if (!has(key)) return;
    const Entry& e = entry(key);
    try {
      target = parse_real(e.value, kAngleKeys.contains(key));
    } catch (const ConfigError& err) {
      throw ConfigError(std::string(key) + ": " + err.what(), e.line);
    }
  }

  template <class Int>
  void integer(std::string_view key, Int& target) const {
    if (!has(key)) return;
    const Entry& e = entry(key);
    Int value{};
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
      throw ConfigError(std::string(key) + ": malformed integer '" + e.value + "'", e.line);
    }
    target = value;
  }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

void require(bool ok, const std::string& message, int line) {
  if (!ok) throw ConfigError(message, line);
}

}  // namespace

double SweepRange::at(int i) const {
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

InterferometerParams RunConfig::model_params() const {
  return InterferometerParams(r, phi, alpha, delta_over_w, 1.0);
}

double parse_real(std::string_view token, bool allow_pi_suffix) {
  std::string_view body = trim(token);
  double scale = 1.0;
  if (body.size() >= 2 && body.substr(body.size() - 2) == "pi") {
    if (!allow_pi_suffix) throw ConfigError("'pi' suffix is only accepted for angles", 0);
    body = body.substr(0, body.size() - 2);
    scale = std::numbers::pi;
    if (body.empty() || body == "+") return scale;
    if (body == "-") return -scale;
  }
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const char* begin = body.data();
  const char* end = begin + body.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (body.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ConfigError("malformed number '" + std::string(token) + "'", 0);
  }
  return value * scale;
}

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::distributions: return "distributions";
    case Mode::decompose: return "decompose";
    case Mode::sweep: return "sweep";
    case Mode::ports: return "ports";
    case Mode::design: return "design";
    case Mode::verify: return "verify";
  }
  return "?";
}

std::string_view to_string(Format format) noexcept {
  return format == Format::csv ? "csv" : "json";
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
  std::map<std::string, Entry, std::less<>> entries;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find('\n', pos);
    std::string_view line = text.substr(pos, next == std::string_view::npos ? text.size() - pos : next - pos);
    pos = next == std::string_view::npos ? text.size() + 1 : next + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    require(eq != std::string_view::npos, "expected 'key = value', got '" + std::string(line) + "'",
            line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    require(!key.empty(), "empty key", line_no);
    require(kKnownKeys.contains(key), "unknown key '" + key + "'", line_no);
    require(!value.empty(), "empty value for '" + key + "'", line_no);
    require(!entries.contains(key), "duplicate key '" + key + "'", line_no);
    entries.emplace(key, Entry{value, line_no});
  }

  for (const auto& [raw_key, value] : overrides) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '-', '_');
    require(kKnownKeys.contains(key), "unknown option '--" + raw_key + "'", 0);
    entries.insert_or_assign(key, Entry{value, 0});
  }

  if (!entries.contains("mode")) {
    throw ConfigError(
        "missing required keys: mode (one of distributions|decompose|sweep|ports|design|verify)",
        0);
  }

  const Reader in(std::move(entries));
  RunConfig cfg;
  cfg.mode = parse_mode(in.entry("mode"));

  std::vector<std::string> missing;
  for (const auto& key : required_keys(cfg.mode)) {
    if (!in.has(key)) missing.push_back(key);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& key : missing) list += (list.empty() ? "" : ", ") + key;
    throw ConfigError("missing required keys for mode " + std::string(to_string(cfg.mode)) + ": " + list,
                      0);
  }

  in.real("delta_over_w", cfg.delta_over_w);
  in.real("phi", cfg.phi);
  in.real("alpha", cfg.alpha);
  in.real("r", cfg.r);
  in.real("p_min_over_w", cfg.p_min_over_w);
  in.real("p_max_over_w", cfg.p_max_over_w);
  in.integer("grid_points", cfg.grid_points);
  in.real("delta_over_w_min", cfg.delta_sweep.min);
  in.real("delta_over_w_max", cfg.delta_sweep.max);
  in.integer("delta_over_w_steps", cfg.delta_sweep.steps);
  in.real("phi_min", cfg.phi_sweep.min);
  in.real("phi_max", cfg.phi_sweep.max);
  in.integer("phi_steps", cfg.phi_sweep.steps);
  in.real("d_m", cfg.inputs.d);
  in.real("length_m", cfg.inputs.length);
  in.real("speed_m_per_s", cfg.inputs.speed);
  in.real("dx0_transverse_m", cfg.inputs.dx0_transverse);
  in.real("dx0_longitudinal_m", cfg.inputs.dx0_longitudinal);
  in.integer("seed", cfg.seed);
  in.integer("oracle_draws", cfg.oracle_draws);
  in.integer("algebra_draws", cfg.algebra_draws);

  if (in.has("branch")) {
    const Entry& e = in.entry("branch");
    if (e.value == "postselected") {
      cfg.branch = Branch::postselected;
    } else if (e.value == "free") {
      cfg.branch = Branch::free;
    } else if (e.value == "interacting") {
      cfg.branch = Branch::interacting;
    } else {
      throw ConfigError("branch must be postselected|free|interacting, got '" + e.value + "'", e.line);
    }
  }
  if (in.has("tune")) {
    const Entry& e = in.entry("tune");
    if (e.value != "nearest") {
      int multiple = 0;
      in.integer("tune", multiple);
      require(multiple > 0, "tune must be 'nearest' or a positive multiple of 2 pi", e.line);
      cfg.tune.multiple = multiple;
    }
  }
  if (in.has("format")) {
    const Entry& e = in.entry("format");
    require(e.value == "csv" || e.value == "json", "format must be csv or json", e.line);
    cfg.format = e.value == "csv" ? Format::csv : Format::json;
  }
  if (in.has("out")) cfg.out = in.entry("out").value;

  require(cfg.r >= 0.0 && cfg.r <= 1.0, "r must lie in [0, 1]", in.line("r"));
  require(cfg.delta_over_w >= 0.0, "delta_over_w must be >= 0", in.line("delta_over_w"));
  require(cfg.p_min_over_w < cfg.p_max_over_w, "p_min_over_w must be < p_max_over_w",
          in.line("p_max_over_w"));
  require(cfg.grid_points >= 3 && cfg.grid_points % 2 == 1, "grid_points must be odd and >= 3",
          in.line("grid_points"));
  require(cfg.delta_sweep.steps >= 2, "delta_over_w_steps must be >= 2",
          in.line("delta_over_w_steps"));
  require(cfg.phi_sweep.steps >= 2, "phi_steps must be >= 2", in.line("phi_steps"));
  require(cfg.delta_sweep.min < cfg.delta_sweep.max, "delta_over_w_min must be < delta_over_w_max",
          in.line("delta_over_w_max"));
  require(cfg.delta_sweep.min >= 0.0, "delta_over_w_min must be >= 0", in.line("delta_over_w_min"));
  require(cfg.phi_sweep.min < cfg.phi_sweep.max, "phi_min must be < phi_max", in.line("phi_max"));
  require(cfg.oracle_draws >= 1 && cfg.algebra_draws >= 1, "draw counts must be >= 1",
          std::max(in.line("oracle_draws"), in.line("algebra_draws")));
  if (cfg.mode == Mode::design) {
    for (const char* key :
         {"d_m", "length_m", "speed_m_per_s", "dx0_transverse_m", "dx0_longitudinal_m"}) {
      double v = 0.0;
      in.real(key, v);
      require(v > 0.0, std::string(key) + " must be > 0", in.line(key));
    }
  }
  return cfg;
}

}  // namespace qif::cli
