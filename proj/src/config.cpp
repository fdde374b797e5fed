#include "homricci/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "homricci/error.hpp"

namespace homricci {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string where(const std::string& section, const std::string& key) {
  return section.empty() ? key : "[" + section + "] " + key;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

KeyValueDoc KeyValueDoc::parse(std::string_view text) {
  KeyValueDoc doc;
  std::string section;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos
                                          ? std::string_view::npos
                                          : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;

    std::string_view line = raw;
    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) {
      line = line.substr(0, c);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      }
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": empty section name");
      }
      doc.data_[section];
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + std::string(line) +
                        "'");
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    }
    auto& sec = doc.data_[section];
    if (sec.count(key) != 0) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " +
                        where(section, key) + " (first on line " +
                        std::to_string(doc.lines_[section][key]) + ")");
    }
    sec[key] = value;
    doc.lines_[section][key] = lineno;
  }
  return doc;
}

bool KeyValueDoc::has(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  return s != data_.end() && s->second.count(key) != 0;
}

std::optional<std::string> KeyValueDoc::get(const std::string& section,
                                            const std::string& key) const {
  const auto s = data_.find(section);
  if (s == data_.end()) return std::nullopt;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

double KeyValueDoc::get_double(const std::string& section,
                               const std::string& key,
                               std::optional<double> fallback) const {
  const auto v = get(section, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError("missing required key " + where(section, key));
  }
  const auto d = parse_double(*v);
  if (!d || !std::isfinite(*d)) {
    throw ConfigError(where(section, key) + ": '" + *v +
                      "' is not a finite number");
  }
  return *d;
}

std::uint64_t KeyValueDoc::get_uint(const std::string& section,
                                    const std::string& key,
                                    std::optional<std::uint64_t> fallback) const {
  const auto v = get(section, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError("missing required key " + where(section, key));
  }
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (v->empty() || ec != std::errc() || ptr != v->data() + v->size()) {
    throw ConfigError(where(section, key) + ": '" + *v +
                      "' is not a non-negative integer");
  }
  return out;
}

bool KeyValueDoc::get_bool(const std::string& section, const std::string& key,
                           std::optional<bool> fallback) const {
  const auto v = get(section, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError("missing required key " + where(section, key));
  }
  const std::string s = lower(*v);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw ConfigError(where(section, key) + ": '" + *v + "' is not a boolean");
}

std::string KeyValueDoc::get_string(const std::string& section,
                                    const std::string& key,
                                    std::optional<std::string> fallback) const {
  const auto v = get(section, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError("missing required key " + where(section, key));
  }
  return *v;
}

void KeyValueDoc::require_only(
    const std::map<std::string, std::vector<std::string>>& allowed) const {
  for (const auto& [section, keys] : data_) {
    const auto a = allowed.find(section);
    if (a == allowed.end()) {
      throw ConfigError(section.empty() ? "keys outside any section"
                                        : "unknown section [" + section + "]");
    }
    for (const auto& [key, value] : keys) {
      if (std::find(a->second.begin(), a->second.end(), key) == a->second.end()) {
        throw ConfigError("unknown key " + where(section, key));
      }
    }
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

namespace {

const std::vector<std::string> kFlowKeys = {
    "horizon", "rtol", "atol", "extinction_tol", "sample_stride", "rhs"};
const std::vector<std::string> kMonitorKeys = {"scal_threshold"};

ModelCase read_case(const KeyValueDoc& doc, const std::string& section) {
  const std::string s = doc.get_string(section, "case");
  try {
    return parse_model_case(s);
  } catch (const InvalidParams& e) {
    throw ConfigError(where(section, "case") + ": " + e.what());
  }
}

FlowOptions read_flow(const KeyValueDoc& doc) {
  FlowOptions o;
  o.horizon = doc.get_double("flow", "horizon", o.horizon);
  o.rtol = doc.get_double("flow", "rtol", o.rtol);
  o.atol = doc.get_double("flow", "atol", o.atol);
  o.extinction_tol = doc.get_double("flow", "extinction_tol", o.extinction_tol);
  o.sample_stride = doc.get_double("flow", "sample_stride", o.sample_stride);
  if (const auto r = doc.get("flow", "rhs")) {
    try {
      o.rhs = parse_rhs_model(*r);
    } catch (const InvalidParams& e) {
      throw ConfigError(std::string("[flow] rhs: ") + e.what());
    }
  }
  if (const auto v = doc.get("monitor", "scal_threshold")) {
    const auto d = parse_double(*v);
    if (!d || std::isnan(*d)) {
      throw ConfigError("[monitor] scal_threshold: '" + *v +
                        "' is not a number");
    }
    o.scal_threshold = *d;
  }
  try {
    o.validate();
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string("[flow] ") + e.what());
  }
  if (o.horizon / o.sample_stride > 1e8) {
    throw ConfigError("[flow] horizon / sample_stride exceeds 1e8 samples");
  }
  return o;
}

Axis read_axis(const KeyValueDoc& doc, const std::string& key) {
  const auto v = doc.get("grid", key);
  if (!v) throw ConfigError("missing required key " + where("grid", key));
  const auto tok = split_ws(*v);
  const std::string name = where("grid", key);
  auto num = [&](const std::string& s) {
    const auto d = parse_double(s);
    if (!d || !std::isfinite(*d)) {
      throw ConfigError(name + ": '" + s + "' is not a finite number");
    }
    return *d;
  };
  Axis a;
  if (tok.size() == 1) {
    a.lo = a.hi = num(tok[0]);
    a.count = 1;
    return a;
  }
  if (tok.size() != 4) {
    throw ConfigError(name + ": expected 'value' or 'min max count linear|log'");
  }
  a.lo = num(tok[0]);
  a.hi = num(tok[1]);
  std::uint64_t count = 0;
  const auto [ptr, ec] =
      std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), count);
  if (ec != std::errc() || ptr != tok[2].data() + tok[2].size()) {
    throw ConfigError(name + ": count '" + tok[2] +
                      "' is not a non-negative integer");
  }
  a.count = count;
  const std::string spacing = lower(tok[3]);
  if (spacing == "log") {
    a.log = true;
  } else if (spacing != "linear") {
    throw ConfigError(name + ": spacing must be 'linear' or 'log'");
  }
  if (a.hi < a.lo) throw ConfigError(name + ": max is below min");
  if (a.log && !(a.lo > 0.0)) {
    throw ConfigError(name + ": log spacing needs a positive range");
  }
  return a;
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<double> Axis::grid() const {
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(i + 1 == count ? hi : at_fraction(u));
  }
  return out;
}

double Axis::at_fraction(double u) const {
  if (lo == hi) return lo;
  if (log) return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
  return lo + u * (hi - lo);
}

std::vector<MetricParams> SweepConfig::points() const {
  std::vector<MetricParams> out;
  auto check = [&](const MetricParams& m, std::size_t index) {
    if (!m.is_valid()) {
      std::ostringstream os;
      os.precision(17);
      os << "sweep point " << index << " (alpha=" << m.alpha
         << ", beta=" << m.beta << ", gamma=" << m.gamma << ", mu=" << m.mu
         << ", nu=" << m.nu << ") is not a valid metric";
      throw ConfigError(os.str());
    }
  };

  if (mode == SweepMode::Random) {
    std::mt19937_64 rng(seed);
    out.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      MetricParams m;
      m.model_case = model_case;
      m.alpha = alpha.at_fraction(unit_draw(rng));
      m.beta = beta.at_fraction(unit_draw(rng));
      const double g = gamma.at_fraction(unit_draw(rng));
      m.gamma = tie_gamma_to_beta ? m.beta : g;
      m.mu = mu.at_fraction(unit_draw(rng));
      m.nu = nu.at_fraction(unit_draw(rng));
      check(m, i);
      out.push_back(m);
    }
    return out;
  }

  const auto as = alpha.grid(), bs = beta.grid(), ms = mu.grid(),
             ns = nu.grid();
  const auto gs = tie_gamma_to_beta ? std::vector<double>{0.0} : gamma.grid();
  for (double a : as) {
    for (double b : bs) {
      for (double g : gs) {
        for (double mu_v : ms) {
          for (double nu_v : ns) {
            const MetricParams m{model_case, a, b,
                                 tie_gamma_to_beta ? b : g, mu_v, nu_v};
            check(m, out.size());
            out.push_back(m);
          }
        }
      }
    }
  }
  return out;
}

RunConfig parse_run_config(std::string_view text) {
  const KeyValueDoc doc = KeyValueDoc::parse(text);
  doc.require_only({{"model", {"case", "alpha", "beta", "gamma", "mu", "nu"}},
                    {"flow", kFlowKeys},
                    {"monitor", kMonitorKeys},
                    {"output", {"csv", "json"}}});
  RunConfig cfg;
  cfg.initial.model_case = read_case(doc, "model");
  cfg.initial.alpha = doc.get_double("model", "alpha");
  cfg.initial.beta = doc.get_double("model", "beta");
  cfg.initial.gamma = doc.get_double("model", "gamma");
  cfg.initial.mu = doc.get_double("model", "mu", 0.0);
  cfg.initial.nu = doc.get_double("model", "nu", 0.0);
  try {
    cfg.initial.validate();
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string("[model] ") + e.what());
  }
  cfg.flow = read_flow(doc);
  cfg.out_csv = doc.get_string("output", "csv", "");
  cfg.out_json = doc.get_string("output", "json", "");
  return cfg;
}

SweepConfig parse_sweep_config(std::string_view text) {
  const KeyValueDoc doc = KeyValueDoc::parse(text);
  doc.require_only(
      {{"sweep", {"case", "mode", "samples", "seed", "tie_gamma_to_beta"}},
       {"grid", {"alpha", "beta", "gamma", "mu", "nu"}},
       {"flow", kFlowKeys},
       {"monitor", kMonitorKeys}});
  SweepConfig cfg;
  cfg.model_case = read_case(doc, "sweep");
  const std::string mode = lower(doc.get_string("sweep", "mode", "grid"));
  if (mode == "grid") {
    cfg.mode = SweepMode::Grid;
  } else if (mode == "random") {
    cfg.mode = SweepMode::Random;
  } else {
    throw ConfigError("[sweep] mode must be 'grid' or 'random'");
  }
  cfg.samples = doc.get_uint("sweep", "samples", 0);
  cfg.seed = doc.get_uint("sweep", "seed", 0);
  cfg.tie_gamma_to_beta = doc.get_bool("sweep", "tie_gamma_to_beta", false);
  if (cfg.mode == SweepMode::Random && !doc.has("sweep", "samples")) {
    throw ConfigError("[sweep] random mode needs 'samples'");
  }

  cfg.alpha = read_axis(doc, "alpha");
  cfg.beta = read_axis(doc, "beta");
  if (cfg.tie_gamma_to_beta) {
    if (doc.has("grid", "gamma")) {
      throw ConfigError("[grid] gamma must be omitted when tie_gamma_to_beta is set");
    }
    cfg.gamma = cfg.beta;
  } else {
    cfg.gamma = read_axis(doc, "gamma");
  }
  cfg.mu = doc.has("grid", "mu") ? read_axis(doc, "mu") : Axis{};
  cfg.nu = doc.has("grid", "nu") ? read_axis(doc, "nu") : Axis{};

  for (const auto* ax : {&cfg.alpha, &cfg.beta, &cfg.gamma}) {
    if (ax->count > 0 && !(ax->lo > 0.0)) {
      throw ConfigError("[grid] alpha, beta and gamma ranges must be positive");
    }
  }
  cfg.flow = read_flow(doc);
  // Surfaces invalid points at parse time rather than mid-sweep.
  (void)cfg.points();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_text_file(path));
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  return parse_sweep_config(read_text_file(path));
}

}  // namespace homricci
