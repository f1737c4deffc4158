#include "threshwet/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace threshwet {

namespace {

constexpr double pi = std::numbers::pi;

enum : unsigned {
  TC = 1u << 0,
  SC = 1u << 1,
  DS = 1u << 2,
  HP = 1u << 3,
  HS = 1u << 4,
  ANY = TC | SC | DS | HP | HS,
  HYS = HP | HS,
  EQ = DS | HYS,
};

struct KeyInfo {
  const char* name;
  unsigned scenarios;
};

// Also the order of the echoed entries.
constexpr KeyInfo kKeys[] = {
    {"scenario", ANY},     {"nx", ANY},           {"ny", HYS},           {"dt", ANY},
    {"t_end", TC | SC},    {"mirror_check", SC},  {"theta_y", DS | HS},  {"theta_a", HP},
    {"theta_b", HP},       {"alpha", HS},         {"k", HYS},            {"periods", HYS},
    {"depth", HYS},        {"r0", HYS},           {"eps", EQ},           {"eps1", EQ},
    {"dt_min", EQ},        {"max_iters", EQ},     {"refine", EQ},        {"direction", HYS},
    {"delta_v", HYS},      {"n_outer", HYS},      {"standoff", HYS},     {"output_dir", ANY},
    {"snapshot_every", ANY},
};

unsigned scenario_bit(const std::string& s) {
  if (s == "two_circles") return TC;
  if (s == "two_semicircles") return SC;
  if (s == "drop_spreading") return DS;
  if (s == "hysteresis_patterned") return HP;
  if (s == "hysteresis_sawtooth") return HS;
  return 0;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Entry {
  std::string value;
  int line = 0;
};

class Reader {
 public:
  Reader(std::map<std::string, Entry> raw, int last_line) : raw_(std::move(raw)), last_line_(last_line) {}

  bool has(const std::string& key) const { return raw_.count(key) != 0; }
  int line(const std::string& key) const {
    auto it = raw_.find(key);
    return it == raw_.end() ? last_line_ : it->second.line;
  }

  double number(const std::string& key, double fallback) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    const std::string& v = it->second.value;
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
      throw ConfigError(it->second.line, key + ": expected a number, got '" + v + "'");
    }
    return out;
  }

  int integer(const std::string& key, int fallback) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    const std::string& v = it->second.value;
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      throw ConfigError(it->second.line, key + ": expected an integer, got '" + v + "'");
    }
    return out;
  }

  bool boolean(const std::string& key, bool fallback) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    const std::string& v = it->second.value;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(it->second.line, key + ": expected true or false, got '" + v + "'");
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = raw_.find(key);
    return it == raw_.end() ? fallback : it->second.value;
  }

  void require(bool ok, const std::string& key, const std::string& what) const {
    if (!ok) throw ConfigError(line(key), key + " " + what);
  }

 private:
  std::map<std::string, Entry> raw_;
  int last_line_;
};

std::string flag(bool b) { return b ? "true" : "false"; }

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"two_circles", "two_semicircles", "drop_spreading",
                                                 "hysteresis_patterned", "hysteresis_sawtooth"};
  return names;
}

bool RunConfig::is_hysteresis() const {
  return scenario == "hysteresis_patterned" || scenario == "hysteresis_sawtooth";
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> raw;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value', got '" + body + "'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key before '='");
    const bool known = std::any_of(std::begin(kKeys), std::end(kKeys), [&](const KeyInfo& k) { return key == k.name; });
    if (!known) throw ConfigError(line_no, "unknown key '" + key + "'");
    if (raw.count(key)) {
      throw ConfigError(line_no, "duplicate key '" + key + "' (first on line " + std::to_string(raw[key].line) + ")");
    }
    raw[key] = Entry{value, line_no};
  }
  const int last_line = std::max(1, line_no - (text.empty() || text.back() == '\n' ? 1 : 0));

  {
    const Reader pre(raw, last_line);
    for (const char* key : {"theta_y", "theta_a", "theta_b"}) {
      const double v = pre.number(key, pi / 2);
      pre.require(v > 0.0 && v < pi, key, "must lie in (0, pi)");
    }
  }

  auto it = raw.find("scenario");
  if (it == raw.end() || it->second.value.empty()) {
    throw ConfigError(it == raw.end() ? last_line : it->second.line, "missing required key 'scenario'");
  }
  RunConfig c;
  c.scenario = it->second.value;
  const unsigned bit = scenario_bit(c.scenario);
  if (bit == 0) throw ConfigError(it->second.line, "unknown scenario '" + c.scenario + "'");
  for (const auto& [key, e] : raw) {
    for (const KeyInfo& k : kKeys) {
      if (key == k.name && !(k.scenarios & bit)) {
        throw ConfigError(e.line, "key '" + key + "' does not apply to scenario " + c.scenario);
      }
    }
    if (e.value.empty()) throw ConfigError(e.line, "empty value for '" + key + "'");
  }

  const Reader r(std::move(raw), last_line);
  const bool hys = (bit & HYS) != 0;

  c.nx = r.integer("nx", hys ? 684 : 256);
  r.require(c.nx >= 8, "nx", "must be >= 8");
  if (bit == SC) r.require(c.nx % 4 == 0, "nx", "must be a multiple of 4");
  c.ny = hys ? r.integer("ny", 480) : c.nx;
  r.require(c.ny >= 8, "ny", "must be >= 8");

  c.k = r.integer("k", 4);
  r.require(c.k >= 1, "k", "must be >= 1");
  c.periods = r.integer("periods", 19);
  r.require(c.periods >= 1 && c.periods % 2 == 1, "periods", "must be a positive odd integer");
  const double lx = bit & HYS ? c.periods * pi / (2 * c.k + 1) : (bit == DS ? pi : 1.0);
  const double dx = lx / c.nx;

  double dt_default = 0.001;
  if (bit == DS) dt_default = 2.0 * dx;
  if (hys) dt_default = 0.004;
  c.dt = r.number("dt", dt_default);
  r.require(c.dt > 0.0, "dt", "must be > 0");

  c.t_end = r.number("t_end", 0.02);
  if (bit & (TC | SC)) {
    r.require(c.t_end > 0.0, "t_end", "must be > 0");
    r.require(std::lround(c.t_end / c.dt) >= 1, "t_end", "must cover at least one step of dt");
  }
  c.mirror_check = r.boolean("mirror_check", false);

  c.theta_y = r.number("theta_y", bit == HS ? pi / 2 : pi / 3);
  r.require(c.theta_y > 0.0 && c.theta_y < pi, "theta_y", "must lie in (0, pi)");
  c.theta_a = r.number("theta_a", pi / 5);
  r.require(c.theta_a > 0.0 && c.theta_a < pi, "theta_a", "must lie in (0, pi)");
  c.theta_b = r.number("theta_b", 7 * pi / 10);
  r.require(c.theta_b > 0.0 && c.theta_b < pi, "theta_b", "must lie in (0, pi)");
  c.alpha = r.number("alpha", pi / 6);
  r.require(c.alpha > 0.0 && c.alpha < pi / 2, "alpha", "must lie in (0, pi/2)");

  const double cell = dx * dx;
  c.eps = r.number("eps", cell);
  r.require(c.eps > 0.0, "eps", "must be > 0");
  c.eps1 = r.number("eps1", cell);
  r.require(c.eps1 > 0.0, "eps1", "must be > 0");
  c.dt_min = r.number("dt_min", dx * dx);
  r.require(c.dt_min > 0.0, "dt_min", "must be > 0");
  if (bit & EQ) r.require(c.dt_min <= c.dt, "dt_min", "must not exceed dt (" + format_number(c.dt) + ")");
  c.max_iters = r.integer("max_iters", 10000);
  r.require(c.max_iters >= 1, "max_iters", "must be >= 1");
  c.refine = r.boolean("refine", bit == DS);

  c.depth = r.number("depth", 0.75);
  if (hys) r.require(c.depth > 0.0 && c.depth < c.ny * dx, "depth", "must lie in (0, ny * dx)");
  c.r0 = r.number("r0", pi / 5);
  if (hys) r.require(c.r0 > 0.0 && c.r0 < 0.5 * lx && c.r0 < c.ny * dx - c.depth, "r0", "must fit inside the domain");
  c.direction = r.text("direction", "both");
  r.require(c.direction == "advancing" || c.direction == "receding" || c.direction == "both", "direction",
            "must be advancing, receding or both");
  c.delta_v = r.number("delta_v", 0.0);
  r.require(c.delta_v >= 0.0, "delta_v", "must be >= 0");
  c.n_outer = r.integer("n_outer", 20);
  r.require(c.n_outer >= 1, "n_outer", "must be >= 1");
  c.standoff = r.number("standoff", 10.0);
  r.require(c.standoff >= 0.0, "standoff", "must be >= 0");

  c.output_dir = r.text("output_dir", "out");
  c.snapshot_every = r.integer("snapshot_every", 0);
  r.require(c.snapshot_every >= 0, "snapshot_every", "must be >= 0");

  const std::map<std::string, std::string> values = {
      {"scenario", c.scenario},
      {"nx", std::to_string(c.nx)},
      {"ny", std::to_string(c.ny)},
      {"dt", format_number(c.dt)},
      {"t_end", format_number(c.t_end)},
      {"mirror_check", flag(c.mirror_check)},
      {"theta_y", format_number(c.theta_y)},
      {"theta_a", format_number(c.theta_a)},
      {"theta_b", format_number(c.theta_b)},
      {"alpha", format_number(c.alpha)},
      {"k", std::to_string(c.k)},
      {"periods", std::to_string(c.periods)},
      {"depth", format_number(c.depth)},
      {"r0", format_number(c.r0)},
      {"eps", format_number(c.eps)},
      {"eps1", format_number(c.eps1)},
      {"dt_min", format_number(c.dt_min)},
      {"max_iters", std::to_string(c.max_iters)},
      {"refine", flag(c.refine)},
      {"direction", c.direction},
      {"delta_v", c.delta_v > 0.0 ? format_number(c.delta_v) : "auto"},
      {"n_outer", std::to_string(c.n_outer)},
      {"standoff", format_number(c.standoff)},
      {"output_dir", c.output_dir},
      {"snapshot_every", std::to_string(c.snapshot_every)},
  };
  for (const KeyInfo& k : kKeys) {
    if (k.scenarios & bit) c.entries.emplace_back(k.name, values.at(k.name));
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace threshwet
