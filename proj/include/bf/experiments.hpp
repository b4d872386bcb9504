#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bf/barcode.hpp"
#include "bf/bottleneck.hpp"
#include "bf/canonical.hpp"
#include "bf/config.hpp"
#include "bf/parallel.hpp"
#include "bf/random.hpp"
#include "bf/realization.hpp"
#include "bf/result_table.hpp"
#include "bf/stats.hpp"
#include "bf/swc.hpp"
#include "bf/tmd.hpp"
#include "bf/tns.hpp"

namespace bf {

namespace exp_id {
inline constexpr std::uint64_t transposition = 1, bottleneck = 2, trn_histogram = 3, type_distribution = 4,
                               death_switch = 5, diversity = 6, bio = 7;
}

// Defaults for one experiment; a config file and flags are layered on top.
inline Config experiment_defaults(std::string_view name) {
  std::map<std::string, std::string> v = {
      {"seed", "1"}, {"threads", "0"}, {"out", "-"},  {"trials", "100"}, {"lambda", "1"},
      {"rho", "0.2"}, {"tau", "0.3"},  {"mu", "0.5"}, {"step", "0.1"},
  };
  if (name == "exp-transposition") {
    v["lambdas"] = "0.05,0.1,0.5,1,5,10";
    v["gaps"] = "0,0.1,0.25,0.5,0.75,1,1.5,2,3,4";
  } else if (name == "exp-bottleneck") {
    v["lambdas"] = "0.01,0.02,0.05,0.1,0.2,0.5,1,1.5,2";
    v["epsilons"] = "0.5,1,1.5,2,2.5,3,3.5,4,4.5,5,5.5,6,6.5,7,7.5,8,8.5,9,9.5,10";
    v["bars"] = "10";
    v["spacing"] = "10";
    v["sweep_lambdas"] = "0.5,1,2";
    v["sweep_gaps"] = "0,10,20,40,80";
  } else if (name == "exp-trn-hist") {
    v = {{"seed", "1"}, {"threads", "0"}, {"out", "-"}, {"n_max", "8"}};
  } else if (name == "exp-type-dist") {
    v["trees"] = "1000";
    v["spacing"] = "20";
  } else if (name == "exp-death-switch") {
    v["permutation"] = "2,6,8,1,5,7,4,3";
    v["ranks"] = "4,5";
    v["spacing"] = "10";
  } else if (name == "exp-diversity") {
    v["trees"] = "100";
  } else if (name == "exp-bio") {
    v["random_per_tree"] = "10";
  }
  return Config(std::move(v));
}

inline TnsParams tns_params(const Config& cfg) {
  TnsParams p;
  p.lambda = cfg.get_double("lambda");
  p.rho = cfg.get_double("rho");
  p.tau = cfg.get_double("tau");
  p.mu = cfg.get_double("mu");
  p.step = cfg.get_double("step");
  p.validate();
  return p;
}

inline std::size_t config_threads(const Config& cfg) { return cfg.has("threads") ? cfg.get_u64("threads") : 0; }

inline std::size_t config_trials(const Config& cfg) {
  const auto t = cfg.get_u64("trials");
  if (t < 1) throw InvalidArgument("trials must be at least 1");
  return t;
}

// Barcode of a freshly synthesized tree.
inline Barcode synthesized_barcode(std::span<const Bar> bars, const TnsParams& p) {
  return tmd(synthesize(bars, p).tree, DistanceMode::path).barcode;
}

// b_0 = 0, d_0 = 1, births uniform in (0, 0.5), deaths uniform in (0.5, 1),
// resampled on ties.
inline StrictBarcode random_strict_barcode(Rng& rng, std::size_t bars) {
  if (bars < 1) throw InvalidArgument("a barcode needs at least one bar");
  for (;;) {
    std::vector<Bar> b{{0.0, 1.0}};
    for (std::size_t i = 1; i < bars; ++i) b.push_back({rng.uniform(0.0, 0.5), rng.uniform(0.5, 1.0)});
    bool ok = true;
    for (std::size_t i = 1; i < bars && ok; ++i)
      if (b[i].birth <= 0.0 || b[i].death <= 0.5) ok = false;
    if (!ok) continue;
    try {
      return make_strict(Barcode(std::move(b)));
    } catch (const NotStrict&) {
    }
  }
}

inline std::string sequence_text(const std::vector<int>& seq) { return to_string(BarcodeClass::from_sequence(seq)); }

// ---------------------------------------------------------------------------

// Switch frequency of two bars with death gap Delta. The barcode, in units of
// s = 1/lambda, is (0, 60s), (5s, 40s), (10s, 40s + Delta): the later-born bar
// dies later, and a switch means its synthesized death comes first.
inline ResultTable exp_transposition(const Config& cfg) {
  const auto lambdas = cfg.get_doubles("lambdas");
  const auto gaps = cfg.get_doubles("gaps");
  const std::size_t trials = config_trials(cfg);
  const std::uint64_t seed = cfg.get_u64("seed");
  const TnsParams base = tns_params(cfg);

  const std::size_t points = lambdas.size() * gaps.size();
  const auto switched = parallel_map(points * trials, config_threads(cfg), [&](std::size_t job) -> int {
    const std::size_t point = job / trials, trial = job % trials;
    const double lambda = lambdas[point / gaps.size()];
    const double s = 1.0 / lambda;
    const double delta = gaps[point % gaps.size()] * s;
    const std::vector<Bar> bars{{0.0, 60 * s}, {5 * s, 40 * s}, {10 * s, 40 * s + delta}};
    TnsParams p = base;
    p.lambda = lambda;
    p.step = base.step * s;
    p.seed = derive_seed({seed, exp_id::transposition, point, trial});
    const Barcode out = synthesized_barcode(bars, p);
    return out[2].death < out[1].death ? 1 : 0;
  });

  ResultTable t("exp_transposition",
                {"kind", "lambda", "gap", "trials", "switches", "empirical_pct", "theory_pct", "abs_dev_pct"});
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    double dev_sum = 0.0;
    for (std::size_t gi = 0; gi < gaps.size(); ++gi) {
      const std::size_t point = li * gaps.size() + gi;
      std::int64_t count = 0;
      for (std::size_t k = 0; k < trials; ++k) count += switched[point * trials + k];
      const double emp = 100.0 * static_cast<double>(count) / static_cast<double>(trials);
      const double theory = 50.0 * std::exp(-gaps[gi]);  // lambda * Delta = gap in units of 1/lambda
      dev_sum += std::abs(emp - theory);
      t.add_row({std::string("point"), lambdas[li], gaps[gi], static_cast<std::int64_t>(trials), count, emp, theory,
                 std::abs(emp - theory)});
    }
    t.add_row({std::string("mean"), lambdas[li], std::string(""), static_cast<std::int64_t>(trials), std::string(""),
               std::string(""), std::string(""), dev_sum / static_cast<double>(gaps.size())});
  }
  t.set_provenance(cfg);
  return t;
}

// The fixed input of exp_bottleneck: class (2 3 ... n 1), so bar 1 is born
// early and dies first and can be shortened for the gap sweep.
inline StrictBarcode bottleneck_input(std::size_t bars, double spacing, double shorten = 0.0) {
  if (bars < 2) throw InvalidArgument("bottleneck experiment needs at least 2 bars");
  const std::size_t n = bars - 1;
  std::vector<int> seq;
  for (std::size_t i = 2; i <= n; ++i) seq.push_back(static_cast<int>(i));
  seq.push_back(1);
  const StrictBarcode rep = class_representative(seq, spacing);
  if (shorten == 0.0) return rep;
  std::vector<Bar> b(rep.bars().begin(), rep.bars().end());
  b[1].death -= shorten;
  if (!(b[1].death > b[1].birth)) throw InvalidArgument("sweep gap leaves bar 1 with no length");
  return make_strict(Barcode(std::move(b)));
}

inline ResultTable exp_bottleneck(const Config& cfg) {
  const auto lambdas = cfg.get_doubles("lambdas");
  const auto eps = cfg.get_doubles("epsilons");
  const auto sweep_lambdas = cfg.get_doubles("sweep_lambdas");
  const auto sweep_gaps = cfg.get_doubles("sweep_gaps");
  const std::size_t bars = cfg.get_u64("bars");
  const double spacing = cfg.get_double("spacing");
  const std::size_t trials = config_trials(cfg);
  const std::uint64_t seed = cfg.get_u64("seed");
  const TnsParams base = tns_params(cfg);

  // Points: the lambda grid, then the (sweep lambda x gap) grid.
  struct Point {
    double lambda;
    double gap;
  };
  std::vector<Point> points;
  for (double l : lambdas) points.push_back({l, 0.0});
  for (double l : sweep_lambdas)
    for (double g : sweep_gaps) points.push_back({l, g});
  std::vector<StrictBarcode> inputs;
  for (const auto& pt : points) inputs.push_back(bottleneck_input(bars, spacing, pt.gap));

  const auto dist = parallel_map(points.size() * trials, config_threads(cfg), [&](std::size_t job) -> double {
    const std::size_t point = job / trials, trial = job % trials;
    const StrictBarcode& in = inputs[point];
    TnsParams p = base;
    p.lambda = points[point].lambda;
    p.seed = derive_seed({seed, exp_id::bottleneck, point, trial});
    const Barcode out = synthesized_barcode(in.bars(), p);
    try {
      return bottleneck_distance(in, make_strict(out));
    } catch (const NotStrict&) {
      return std::numeric_limits<double>::infinity();
    }
  });

  ResultTable t("exp_bottleneck", {"kind", "lambda", "x", "trials", "exceed", "empirical", "bound", "margin", "ok",
                                   "mean_distance", "theory_mean"});
  const std::string na;
  const auto ntrials = static_cast<std::int64_t>(trials);
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    const double lambda = lambdas[li];
    const double* d = &dist[li * trials];
    for (double e : eps) {
      const double eps_abs = e / lambda;
      std::int64_t exceed = 0;
      for (std::size_t k = 0; k < trials; ++k) exceed += d[k] > eps_abs;
      const double emp = static_cast<double>(exceed) / static_cast<double>(trials);
      const double bound = bottleneck_exceedance_bound(eps_abs, lambda, bars);
      const double margin = 1.96 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(trials));
      t.add_row({std::string("eps"), lambda, e, ntrials, exceed, emp, bound, margin,
                 static_cast<std::int64_t>(emp <= bound + margin), na, na});
    }
    double mean = 0.0;
    for (std::size_t k = 0; k < trials; ++k) mean += d[k];
    mean /= static_cast<double>(trials);
    const double theory = expected_max_erlang2(lambda, bars);
    // ok = 0 flags an empirical mean above the closed-form expectation.
    t.add_row({std::string("mean"), lambda, na, ntrials, na, na, na, na, static_cast<std::int64_t>(mean <= theory), mean,
               theory});
  }
  const StrictBarcode ref = bottleneck_input(bars, spacing);
  t.add_row({std::string("control"), na, na, std::int64_t{1}, na, na, na, na,
             static_cast<std::int64_t>(bottleneck_distance(ref, ref) == 0.0), bottleneck_distance(ref, ref), 0.0});
  for (std::size_t pi = lambdas.size(); pi < points.size(); ++pi) {
    double mean = 0.0;
    for (std::size_t k = 0; k < trials; ++k) mean += dist[pi * trials + k];
    mean /= static_cast<double>(trials);
    const double theory = expected_max_erlang2(points[pi].lambda, bars);
    t.add_row({std::string("gap"), points[pi].lambda, points[pi].gap, ntrials, na, na, na, na,
               static_cast<std::int64_t>(mean <= theory), mean, theory});
  }
  t.set_provenance(cfg);
  return t;
}

inline ResultTable exp_trn_histogram(std::size_t n_max, const Config& cfg) {
  if (n_max < 1 || n_max > 12) throw InvalidArgument("n_max must be in 1..12");
  ResultTable t("exp_trn_histogram", {"n", "trn", "count"});
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::map<std::uint64_t, std::int64_t> hist;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    do ++hist[trn_u64(p)];
    while (std::next_permutation(p.begin(), p.end()));
    for (const auto& [value, count] : hist)
      t.add_row({static_cast<std::int64_t>(n), static_cast<std::int64_t>(value), count});
  }
  t.set_provenance(cfg);
  return t;
}

inline ResultTable exp_trn_histogram(const Config& cfg) { return exp_trn_histogram(cfg.get_u64("n_max"), cfg); }

// Catalog of the six combinatorial types of trees with four bars: the codes of
// all realizations of the strictly ordered class, named A-F in enumeration order.
inline std::vector<CanonicalCode> four_bar_catalog() {
  const StrictBarcode rep = class_representative({1, 2, 3});
  std::vector<CanonicalCode> out;
  for (const auto& f : enumerate_attachments(rep, 6)) out.push_back(canonical_code_from_attachments(f));
  return out;
}

inline ResultTable exp_type_distribution(const Config& cfg) {
  const std::size_t trees = cfg.get_u64("trees");
  const double spacing = cfg.get_double("spacing");
  const std::uint64_t seed = cfg.get_u64("seed");
  const TnsParams base = tns_params(cfg);
  const auto catalog = four_bar_catalog();
  const auto classes = permutations(3);

  const auto type_of = parallel_map(classes.size() * trees, config_threads(cfg), [&](std::size_t job) -> int {
    const std::size_t c = job / trees, k = job % trees;
    const StrictBarcode rep = class_representative(classes[c], spacing);
    TnsParams p = base;
    p.seed = derive_seed({seed, exp_id::type_distribution, c, k});
    const CanonicalCode code = combinatorial_class(synthesize(rep, p).tree);
    const auto it = std::find(catalog.begin(), catalog.end(), code);
    return it == catalog.end() ? -1 : static_cast<int>(it - catalog.begin());
  });

  ResultTable t("exp_type_distribution", {"class", "type", "code", "allowed", "count", "percent", "uniform_percent"});
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const StrictBarcode rep = class_representative(classes[c], spacing);
    std::vector<bool> allowed(catalog.size(), false);
    std::size_t n_allowed = 0;
    for (const auto& f : enumerate_attachments(rep, 6)) {
      const auto it = std::find(catalog.begin(), catalog.end(), canonical_code_from_attachments(f));
      allowed[static_cast<std::size_t>(it - catalog.begin())] = true;
      ++n_allowed;
    }
    std::vector<std::int64_t> count(catalog.size(), 0);
    std::int64_t unknown = 0;
    for (std::size_t k = 0; k < trees; ++k) {
      const int ty = type_of[c * trees + k];
      if (ty < 0) ++unknown;
      else ++count[static_cast<std::size_t>(ty)];
    }
    for (std::size_t ty = 0; ty < catalog.size(); ++ty) {
      t.add_row({sequence_text(classes[c]), std::string(1, static_cast<char>('A' + ty)), catalog[ty].text,
                 static_cast<std::int64_t>(allowed[ty]), count[ty],
                 100.0 * static_cast<double>(count[ty]) / static_cast<double>(trees),
                 allowed[ty] ? 100.0 / static_cast<double>(n_allowed) : 0.0});
    }
    if (unknown > 0) {
      t.add_row({sequence_text(classes[c]), std::string("?"), std::string(""), std::int64_t{0}, unknown,
                 100.0 * static_cast<double>(unknown) / static_cast<double>(trees), 0.0});
    }
  }
  t.set_provenance(cfg);
  return t;
}

inline std::int64_t trn_or_minus_one(const Barcode& b) {
  try {
    const StrictBarcode s = make_strict(b);
    const BigInt v = trn(s);
    if (v > std::numeric_limits<std::int64_t>::max()) throw CapExceeded("trn does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
  } catch (const NotStrict&) {
    return -1;
  }
}

// B_k for k = 0..50 moves the deaths of bars i and j toward each other and
// past: d_i + k (d_j - d_i) / 50 and d_j - k (d_j - d_i) / 50.
inline std::vector<Barcode> death_switch_family(const StrictBarcode& b, std::size_t i, std::size_t j) {
  if (i == 0 || j == 0 || i > b.n() || j > b.n() || i == j) throw InvalidArgument("death switch needs two distinct bars in 1..n");
  const double lo = std::min(b[i].death, b[j].death), hi = std::max(b[i].death, b[j].death);
  for (std::size_t m = 1; m <= b.n(); ++m) {
    if (m != i && m != j && b[m].death > lo && b[m].death < hi) {
      throw InvalidArgument("bars " + std::to_string(i) + " and " + std::to_string(j) + " are not consecutive in death order");
    }
  }
  std::vector<Barcode> out;
  const double diff = b[j].death - b[i].death;
  for (int k = 0; k <= 50; ++k) {
    std::vector<Bar> bars(b.bars().begin(), b.bars().end());
    bars[i].death = b[i].death + k * diff / 50.0;
    bars[j].death = b[j].death - k * diff / 50.0;
    out.emplace_back(std::move(bars));
  }
  return out;
}

inline ResultTable exp_death_switch(const StrictBarcode& b, std::size_t i, std::size_t j, const Config& cfg) {
  const auto family = death_switch_family(b, i, j);
  const std::size_t trials = config_trials(cfg);
  const std::uint64_t seed = cfg.get_u64("seed");
  const TnsParams base = tns_params(cfg);

  const auto out_trn = parallel_map(family.size() * trials, config_threads(cfg), [&](std::size_t job) -> std::int64_t {
    const std::size_t k = job / trials, trial = job % trials;
    TnsParams p = base;
    p.seed = derive_seed({seed, exp_id::death_switch, k, trial});
    return trn_or_minus_one(tmd(synthesize(family[k], p).tree).barcode);
  });

  ResultTable t("exp_death_switch", {"k", "trial", "input_trn", "output_trn"});
  for (std::size_t k = 0; k < family.size(); ++k) {
    const std::int64_t in = trn_or_minus_one(family[k]);
    for (std::size_t trial = 0; trial < trials; ++trial)
      t.add_row({static_cast<std::int64_t>(k), static_cast<std::int64_t>(trial), in, out_trn[k * trials + trial]});
  }
  t.set_provenance(cfg);
  return t;
}

inline StrictBarcode load_barcode_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open barcode file '" + path + "'");
  return make_strict(parse_barcode(in));
}

// Input from `barcode` (a file) or else `permutation` with `spacing`; the two
// switched bars are those at death ranks `ranks`.
inline ResultTable exp_death_switch(const Config& cfg) {
  const StrictBarcode b = cfg.has("barcode") && !cfg.get_string("barcode").empty()
                              ? load_barcode_file(cfg.get_string("barcode"))
                              : class_representative(cfg.get_ints("permutation"), cfg.get_double("spacing"));
  const auto ranks = cfg.get_ints("ranks");
  if (ranks.size() != 2) throw InvalidArgument("ranks needs two values");
  const BarcodeClass cls = barcode_class(b);
  for (int r : ranks)
    if (r < 1 || static_cast<std::size_t>(r) > b.n()) throw InvalidArgument("rank " + std::to_string(r) + " out of range");
  if (std::abs(ranks[0] - ranks[1]) != 1) throw InvalidArgument("ranks must be consecutive");
  return exp_death_switch(b, static_cast<std::size_t>(cls.sequence[ranks[0] - 1]),
                          static_cast<std::size_t>(cls.sequence[ranks[1] - 1]), cfg);
}

inline ResultTable exp_diversity(const GeometricTree& tree, const Config& cfg) {
  const StrictBarcode orig = make_strict(tmd(tree).barcode);
  const std::size_t trees = cfg.get_u64("trees");
  const std::uint64_t seed = cfg.get_u64("seed");
  const TnsParams base = tns_params(cfg);
  const double limit = 10.0 / base.lambda;

  const auto synth = parallel_map(trees, config_threads(cfg), [&](std::size_t k) -> Barcode {
    TnsParams p = base;
    p.seed = derive_seed({seed, exp_id::diversity, 0, k});
    return synthesized_barcode(orig.bars(), p);
  });

  ResultTable t("exp_diversity", {"kind", "tree", "k", "sigma", "death", "birth", "distance", "within_bound"});
  const std::string na;
  auto emit = [&](std::int64_t id, const Barcode& b) {
    std::optional<StrictBarcode> s;
    try {
      s = make_strict(b);
    } catch (const NotStrict& e) {
      t.add_row({std::string("skipped"), id, na, na, na, na, na, std::string(e.what())});
      return;
    }
    const BarcodeClass cls = barcode_class(*s);
    for (std::size_t k = 1; k <= cls.n(); ++k)
      t.add_row({std::string("class"), id, static_cast<std::int64_t>(k), static_cast<std::int64_t>(cls.sigma[k - 1]), na, na, na, na});
    for (const auto& pt : persistence_diagram(b)) t.add_row({std::string("pd"), id, na, na, pt.x, pt.y, na, na});
    if (id > 0) {
      const double d = bottleneck_distance(orig, *s);
      t.add_row({std::string("dist"), id, na, na, na, na, d, static_cast<std::int64_t>(d <= limit)});
    }
  };
  emit(0, orig.barcode());
  for (std::size_t k = 0; k < trees; ++k) emit(static_cast<std::int64_t>(k + 1), synth[k]);
  t.set_provenance(cfg);
  return t;
}

// log of n!, summed the same way as log_trn so the strictly ordered class
// meets it exactly.
inline double log_factorial(std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 1; i <= n; ++i) s += std::log(static_cast<double>(i));
  return s;
}

inline std::map<std::string, std::string> read_manifest(const std::string& path) {
  std::map<std::string, std::string> labels;
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest '" + path + "'");
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto f = split_ws(strip_comment(raw));
    if (f.empty()) continue;
    if (f.size() != 2) throw ParseError("expected 'file label'", lineno);
    labels[std::string(f[0])] = std::string(f[1]);
  }
  return labels;
}

inline ResultTable exp_bio(const std::string& dir, const Config& cfg) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("not a directory: '" + dir + "'");
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".swc") files.push_back(e.path().filename().string());
  std::sort(files.begin(), files.end());
  std::map<std::string, std::string> labels;
  if (cfg.has("manifest") && !cfg.get_string("manifest").empty()) labels = read_manifest(cfg.get_string("manifest"));

  const std::size_t per_tree = cfg.get_u64("random_per_tree");
  const std::uint64_t seed = cfg.get_u64("seed");

  struct Entry {
    std::string error;
    std::optional<StrictBarcode> barcode;
    std::vector<double> random_log_trn;
  };
  const auto entries = parallel_map(files.size(), config_threads(cfg), [&](std::size_t i) -> Entry {
    Entry e;
    try {
      std::ifstream in(fs::path(dir) / files[i]);
      if (!in) throw Error("cannot open file");
      e.barcode = make_strict(tmd(parse_swc(in, SwcOptions{true})).barcode);
    } catch (const std::exception& ex) {
      e.error = ex.what();
      return e;
    }
    Rng rng(derive_seed({seed, exp_id::bio, i, 0}));
    for (std::size_t r = 0; r < per_tree; ++r) e.random_log_trn.push_back(log_trn(random_strict_barcode(rng, e.barcode->size())));
    return e;
  });

  ResultTable t("exp_bio", {"kind", "file", "label", "bars", "k", "sigma", "log_trn", "log_ceiling", "q1", "median", "q3",
                            "iqr_bio", "iqr_random", "note"});
  const std::string na;
  std::map<std::size_t, std::vector<double>> random_by_size, bio_by_size;
  std::map<std::string, std::vector<double>> bio_by_label, random_by_label;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& e = entries[i];
    const std::string label = labels.count(files[i]) ? labels.at(files[i]) : "";
    if (!e.barcode) {
      t.add_row({std::string("skipped"), files[i], label, na, na, na, na, na, na, na, na, na, na, e.error});
      continue;
    }
    const StrictBarcode& b = *e.barcode;
    const double lt = log_trn(b);
    const auto size = static_cast<std::int64_t>(b.size());
    t.add_row({std::string("tree"), files[i], label, size, na, na, lt, log_factorial(b.n()), na, na, na, na, na, na});
    const BarcodeClass cls = barcode_class(b);
    for (std::size_t k = 1; k <= cls.n(); ++k) {
      t.add_row({std::string("class"), files[i], label, size, static_cast<std::int64_t>(k),
                 static_cast<std::int64_t>(cls.sigma[k - 1]), na, na, na, na, na, na, na, na});
    }
    for (double r : e.random_log_trn) {
      random_by_size[b.size()].push_back(r);
      random_by_label[label].push_back(r);
      random_by_label["*"].push_back(r);
    }
    bio_by_size[b.size()].push_back(lt);
    bio_by_label[label].push_back(lt);
    bio_by_label["*"].push_back(lt);
  }
  for (const auto& [size, r] : random_by_size) {
    t.add_row({std::string("size"), na, na, static_cast<std::int64_t>(size), na, na, na, log_factorial(size - 1),
               quantile(r, 0.25), quantile(r, 0.5), quantile(r, 0.75), quantile(bio_by_size[size], 0.75) - quantile(bio_by_size[size], 0.25),
               quantile(r, 0.75) - quantile(r, 0.25), na});
  }
  for (const auto& [label, bio] : bio_by_label) {
    const auto& r = random_by_label[label];
    const double iqr_b = quantile(bio, 0.75) - quantile(bio, 0.25);
    const double iqr_r = quantile(r, 0.75) - quantile(r, 0.25);
    t.add_row({std::string("summary"), na, label, static_cast<std::int64_t>(bio.size()), na, na, na, na, na, na, na, iqr_b,
               iqr_r, std::string(iqr_b < iqr_r ? "narrower" : "not narrower")});
  }
  t.set_provenance(cfg);
  return t;
}

}  // namespace bf
