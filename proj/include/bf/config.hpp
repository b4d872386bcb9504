#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bf/error.hpp"
#include "bf/format.hpp"

namespace bf {

struct ConfigKey {
  const char* name;
  const char* help;
};

// Every key accepted in a config file; the CLI exposes each as --name.
inline const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"seed", "master seed (BF_SEED overrides the file; --seed overrides both)"},
      {"trials", "trials per grid point"},
      {"threads", "worker threads, 0 = all cores (does not affect output)"},
      {"lambda", "TNS steepness lambda"},
      {"rho", "weight of the random direction"},
      {"tau", "weight of the target direction"},
      {"mu", "weight of the memory direction"},
      {"step", "TNS step length (exp-transposition: in units of 1/lambda)"},
      {"spacing", "spacing of births and deaths in generated barcodes"},
      {"lambdas", "comma-separated lambda grid"},
      {"gaps", "comma-separated death gaps, in units of 1/lambda"},
      {"epsilons", "comma-separated epsilon grid, in units of 1/lambda"},
      {"bars", "number of bars (including the longest) in the fixed barcode"},
      {"sweep_lambdas", "lambdas for the bottleneck gap sweep"},
      {"sweep_gaps", "death decrements for the bottleneck gap sweep"},
      {"n_max", "largest n for the trn histogram"},
      {"trees", "synthesized trees per class or input"},
      {"permutation", "death-order sequence of the input barcode"},
      {"ranks", "the two consecutive death ranks to switch"},
      {"barcode", "input barcode file (overrides permutation)"},
      {"tree", "input SWC file"},
      {"swc_dir", "directory of SWC files"},
      {"manifest", "optional 'file label' manifest for swc_dir"},
      {"random_per_tree", "random barcodes drawn per input tree"},
      {"out", "output file, '-' for stdout"},
  };
  return keys;
}

inline bool is_config_key(std::string_view k) {
  for (const auto& key : config_keys())
    if (k == key.name) return true;
  return false;
}

// Flat key = value configuration.
class Config {
 public:
  Config() = default;
  explicit Config(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  void set(const std::string& key, std::string value) {
    if (!is_config_key(key)) throw InvalidArgument("unknown config key '" + key + "'");
    values_[key] = std::move(value);
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw InvalidArgument("missing config key '" + key + "'");
    return it->second;
  }

  double get_double(const std::string& key) const {
    double v;
    const std::string s = get_string(key);
    if (!parse_double(s, v)) throw InvalidArgument("config key '" + key + "': not a number: '" + s + "'");
    return v;
  }

  std::uint64_t get_u64(const std::string& key) const {
    std::uint64_t v;
    const std::string s = get_string(key);
    if (!parse_int(s, v)) throw InvalidArgument("config key '" + key + "': not a non-negative integer: '" + s + "'");
    return v;
  }

  std::vector<double> get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (const auto& part : split_list(get_string(key))) {
      double v;
      if (!parse_double(part, v)) throw InvalidArgument("config key '" + key + "': bad list element '" + part + "'");
      out.push_back(v);
    }
    if (out.empty()) throw InvalidArgument("config key '" + key + "': empty list");
    return out;
  }

  std::vector<int> get_ints(const std::string& key) const {
    std::vector<int> out;
    for (const auto& part : split_list(get_string(key))) {
      int v;
      if (!parse_int(part, v)) throw InvalidArgument("config key '" + key + "': bad list element '" + part + "'");
      out.push_back(v);
    }
    if (out.empty()) throw InvalidArgument("config key '" + key + "': empty list");
    return out;
  }

  // FNV-1a over the sorted key=value lines, skipping keys that cannot change
  // the result.
  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& [k, v] : values_) {
      if (k == "threads" || k == "out") continue;
      for (char c : k + "=" + v + "\n") {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
      }
    }
    return h;
  }

  static std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + ",") {
      if (c == ',') {
        const auto f = split_ws(cur);
        if (f.size() == 1) out.emplace_back(f[0]);
        else if (f.size() > 1) throw InvalidArgument("bad list element '" + cur + "'");
        cur.clear();
      } else {
        cur += c;
      }
    }
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
};

inline void merge_config_text(Config& cfg, std::istream& in) {
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = strip_comment(raw);
    if (split_ws(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", lineno);
    const auto key = split_ws(line.substr(0, eq));
    const auto val = line.substr(eq + 1);
    if (key.size() != 1) throw ParseError("bad key", lineno);
    const auto vf = split_ws(val);
    std::string value;
    for (std::size_t i = 0; i < vf.size(); ++i) value += (i ? " " : "") + std::string(vf[i]);
    if (!is_config_key(key[0])) throw ParseError("unknown config key '" + std::string(key[0]) + "'", lineno);
    cfg.set(std::string(key[0]), value);
  }
}

inline void merge_config_file(Config& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  merge_config_text(cfg, in);
}

// defaults < file < BF_SEED < flags.
inline Config resolve_config(const Config& defaults, const std::string& file, const std::map<std::string, std::string>& flags) {
  Config cfg = defaults;
  if (!file.empty()) merge_config_file(cfg, file);
  if (const char* env = std::getenv("BF_SEED"); env && *env) {
    std::uint64_t s;
    if (!parse_int(std::string_view(env), s)) throw InvalidArgument("BF_SEED is not a non-negative integer");
    cfg.set("seed", env);
  }
  for (const auto& [k, v] : flags) cfg.set(k, v);
  return cfg;
}

}  // namespace bf
