#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homricci/flow.hpp"
#include "homricci/metric.hpp"

namespace homricci {

/// Flat sectioned key-value text:
///
///   # comment
///   [section]
///   key = value
///
/// Keys before the first section header belong to section "".
class KeyValueDoc {
 public:
  static KeyValueDoc parse(std::string_view text);

  bool has(const std::string& section, const std::string& key) const;
  std::optional<std::string> get(const std::string& section,
                                 const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    std::optional<double> fallback = std::nullopt) const;
  std::uint64_t get_uint(const std::string& section, const std::string& key,
                         std::optional<std::uint64_t> fallback = std::nullopt) const;
  bool get_bool(const std::string& section, const std::string& key,
                std::optional<bool> fallback = std::nullopt) const;
  std::string get_string(const std::string& section, const std::string& key,
                         std::optional<std::string> fallback = std::nullopt) const;

  /// Throws ConfigError naming the first section or key not listed.
  void require_only(
      const std::map<std::string, std::vector<std::string>>& allowed) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections()
      const {
    return data_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> data_;
  std::map<std::string, std::map<std::string, int>> lines_;
};

/// Reads a whole file; IoError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

struct RunConfig {
  MetricParams initial;
  FlowOptions flow;
  std::string out_csv;  // optional [output] csv
  std::string out_json;  // optional [output] json
};

/// One swept parameter: a single value, or `count` points on [lo, hi].
struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 1;
  bool log = false;

  std::vector<double> grid() const;
  /// u in [0, 1) mapped onto [lo, hi] (log-uniformly when log is set).
  double at_fraction(double u) const;
};

enum class SweepMode { Grid, Random };

struct SweepConfig {
  ModelCase model_case = ModelCase::So3R3;
  SweepMode mode = SweepMode::Grid;
  Axis alpha, beta, gamma, mu, nu;
  /// gamma follows beta at every point; the gamma axis is ignored.
  bool tie_gamma_to_beta = false;
  std::size_t samples = 0;  // random mode
  std::uint64_t seed = 0;
  FlowOptions flow;

  /// Initial conditions in sweep order. Grid order is the Cartesian product
  /// with nu varying fastest. Throws ConfigError on any invalid point.
  std::vector<MetricParams> points() const;
};

RunConfig parse_run_config(std::string_view text);
SweepConfig parse_sweep_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);
SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Parses a whole-string double; std::nullopt on trailing junk or overflow.
std::optional<double> parse_double(std::string_view s);

}  // namespace homricci
