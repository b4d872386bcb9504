#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bf/experiments.hpp"

namespace {

namespace fs = std::filesystem;

// Scratch directory removed at scope exit.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("bf_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    const auto p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

// Unsets BF_SEED for the duration of a test.
struct NoSeedEnv {
  NoSeedEnv() { ::unsetenv("BF_SEED"); }
  ~NoSeedEnv() { ::unsetenv("BF_SEED"); }
};

std::vector<std::size_t> rows_of(const bf::ResultTable& t, const std::string& kind) {
  std::vector<std::size_t> out;
  const std::size_t c = t.column("kind");
  for (std::size_t r = 0; r < t.rows().size(); ++r)
    if (bf::as_string(t.rows()[r][c]) == kind) out.push_back(r);
  return out;
}

bf::Config small(const std::string& name, std::map<std::string, std::string> overrides) {
  bf::Config cfg = bf::experiment_defaults(name);
  for (auto& [k, v] : overrides) cfg.set(k, v);
  return cfg;
}

TEST(Config, ParsesKeyValueText) {
  bf::Config cfg;
  std::istringstream in("# comment\nseed = 7\n\nlambdas = 0.5, 1 ,2  # trailing\ntrials=3\n");
  bf::merge_config_text(cfg, in);
  EXPECT_EQ(cfg.get_u64("seed"), 7u);
  EXPECT_EQ(cfg.get_doubles("lambdas"), (std::vector<double>{0.5, 1, 2}));
  EXPECT_EQ(cfg.get_u64("trials"), 3u);
}

TEST(Config, Errors) {
  bf::Config cfg;
  std::istringstream bad_key("sed = 7\n");
  EXPECT_THROW(bf::merge_config_text(cfg, bad_key), bf::ParseError);
  std::istringstream no_eq("seed 7\n");
  EXPECT_THROW(bf::merge_config_text(cfg, no_eq), bf::ParseError);
  EXPECT_THROW(cfg.set("nope", "1"), bf::InvalidArgument);
  cfg.set("lambda", "fast");
  EXPECT_THROW(cfg.get_double("lambda"), bf::InvalidArgument);
  EXPECT_THROW(cfg.get_string("trials"), bf::InvalidArgument);
  cfg.set("gaps", "1,,2");
  EXPECT_EQ(cfg.get_doubles("gaps"), (std::vector<double>{1, 2}));
  cfg.set("gaps", "1 2");
  EXPECT_THROW(cfg.get_doubles("gaps"), bf::InvalidArgument);
  cfg.set("seed", "-3");
  EXPECT_THROW(cfg.get_u64("seed"), bf::InvalidArgument);
}

TEST(Config, Precedence) {
  NoSeedEnv guard;
  TempDir dir("config");
  const std::string file = dir.file("a.conf", "seed = 5\ntrials = 4\nlambda = 2\n");
  bf::Config d = bf::experiment_defaults("exp-transposition");

  auto cfg = bf::resolve_config(d, file, {});
  EXPECT_EQ(cfg.get_u64("seed"), 5u);
  EXPECT_EQ(cfg.get_u64("trials"), 4u);
  EXPECT_EQ(cfg.get_string("rho"), "0.2");  // default survives

  ::setenv("BF_SEED", "11", 1);
  cfg = bf::resolve_config(d, file, {});
  EXPECT_EQ(cfg.get_u64("seed"), 11u);
  cfg = bf::resolve_config(d, file, {{"seed", "13"}, {"lambda", "3"}});
  EXPECT_EQ(cfg.get_u64("seed"), 13u);
  EXPECT_EQ(cfg.get_double("lambda"), 3.0);

  ::setenv("BF_SEED", "x", 1);
  EXPECT_THROW(bf::resolve_config(d, file, {}), bf::InvalidArgument);
  EXPECT_THROW(bf::resolve_config(d, (dir.path / "missing.conf").string(), {}), bf::Error);
}

TEST(Config, HashIgnoresThreadsAndOutput) {
  bf::Config a = bf::experiment_defaults("exp-bottleneck");
  bf::Config b = a;
  b.set("threads", "16");
  b.set("out", "x.csv");
  EXPECT_EQ(a.hash(), b.hash());
  b.set("seed", "2");
  EXPECT_NE(a.hash(), b.hash());
}

TEST(ResultTable, CsvLayout) {
  bf::Config cfg;
  cfg.set("seed", "9");
  bf::ResultTable t("demo", {"a", "b", "c"});
  t.add_row({std::int64_t{1}, 0.1, std::string("x")});
  t.add_row({std::int64_t{-2}, 1.0 / 3.0, std::string("p,q \"r\"")});
  t.set_provenance(cfg);
  const std::string csv = t.to_csv();
  std::istringstream in(csv);
  std::string l1, l2, l3, l4;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  std::getline(in, l4);
  EXPECT_EQ(l1.rfind("# experiment=demo version=0.1.0 seed=9 config=", 0), 0u);
  EXPECT_EQ(l1.size(), std::string("# experiment=demo version=0.1.0 seed=9 config=").size() + 16);
  EXPECT_EQ(l2, "a,b,c");
  EXPECT_EQ(l3, "1,0.1,x");
  EXPECT_EQ(l4, "-2,0.333333333333,\"p,q \"\"r\"\"\"");
  EXPECT_THROW(t.add_row({std::int64_t{1}}), bf::InvalidArgument);
  EXPECT_THROW(t.column("zzz"), bf::InvalidArgument);
}

TEST(Parallel, ResultsAreInIndexOrder) {
  for (std::size_t threads : {1u, 2u, 7u, 0u}) {
    const auto v = bf::parallel_map(1000, threads, [](std::size_t i) { return static_cast<int>(i * i % 97); });
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i % 97));
  }
  EXPECT_TRUE(bf::parallel_map(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST(Parallel, ExceptionsPropagate) {
  auto fn = [](std::size_t i) -> int {
    if (i == 37) throw std::runtime_error("boom");
    return 0;
  };
  EXPECT_THROW(bf::parallel_map(100, 4, fn), std::runtime_error);
  EXPECT_THROW(bf::parallel_map(100, 1, fn), std::runtime_error);
}

TEST(Seeds, DeriveSeedSeparatesParts) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 5; ++a)
    for (std::uint64_t b = 0; b < 5; ++b)
      for (std::uint64_t c = 0; c < 5; ++c) seen.insert(bf::derive_seed({1, a, b, c}));
  EXPECT_EQ(seen.size(), 125u);
  EXPECT_EQ(bf::derive_seed({1, 2, 3}), bf::derive_seed({1, 2, 3}));
}

TEST(Experiments, TransposionTableShape) {
  const auto cfg = small("exp-transposition", {{"lambdas", "1,5"}, {"gaps", "0,2"}, {"trials", "40"}});
  const auto t = bf::exp_transposition(cfg);
  EXPECT_EQ(t.rows().size(), 6u);  // 2 x (2 points + mean)
  const auto points = rows_of(t, "point");
  ASSERT_EQ(points.size(), 4u);
  EXPECT_EQ(bf::as_double(t.rows()[points[0]][t.column("theory_pct")]), 50.0);
  EXPECT_NEAR(bf::as_double(t.rows()[points[1]][t.column("theory_pct")]), 50.0 * std::exp(-2.0), 1e-12);
  for (auto r : points) {
    const double e = bf::as_double(t.rows()[r][t.column("empirical_pct")]);
    EXPECT_GE(e, 0.0);
    EXPECT_LE(e, 100.0);
  }
}

TEST(Experiments, ThreadCountDoesNotChangeOutput) {
  auto cfg = small("exp-transposition", {{"lambdas", "1"}, {"gaps", "0,1"}, {"trials", "30"}, {"threads", "1"}});
  const std::string one = bf::exp_transposition(cfg).to_csv();
  cfg.set("threads", "8");
  EXPECT_EQ(bf::exp_transposition(cfg).to_csv(), one);
  cfg.set("seed", "2");
  EXPECT_NE(bf::exp_transposition(cfg).to_csv(), one);
}

TEST(Experiments, BottleneckControlAndRows) {
  const auto cfg = small("exp-bottleneck", {{"lambdas", "1"}, {"epsilons", "1,5"}, {"bars", "4"}, {"trials", "20"},
                                            {"sweep_lambdas", "1"}, {"sweep_gaps", "0,10"}});
  const auto t = bf::exp_bottleneck(cfg);
  EXPECT_EQ(rows_of(t, "eps").size(), 2u);
  EXPECT_EQ(rows_of(t, "mean").size(), 1u);
  EXPECT_EQ(rows_of(t, "gap").size(), 2u);
  const auto control = rows_of(t, "control");
  ASSERT_EQ(control.size(), 1u);
  EXPECT_EQ(bf::as_int(t.rows()[control[0]][t.column("ok")]), 1);
  EXPECT_EQ(bf::as_double(t.rows()[control[0]][t.column("mean_distance")]), 0.0);
}

TEST(Experiments, BottleneckInput) {
  const auto b = bf::bottleneck_input(10, 10.0);
  EXPECT_EQ(b.size(), 10u);
  EXPECT_EQ(bf::barcode_class(b).sequence, (std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9, 1}));
  const auto s = bf::bottleneck_input(10, 10.0, 40.0);
  EXPECT_EQ(s[1].death, b[1].death - 40.0);
  EXPECT_THROW(bf::bottleneck_input(1, 10.0), bf::InvalidArgument);
}

TEST(Experiments, TrnHistogramSmallN) {
  const auto t = bf::exp_trn_histogram(3, bf::experiment_defaults("exp-trn-hist"));
  std::map<std::int64_t, std::int64_t> n3;
  for (const auto& row : t.rows())
    if (bf::as_int(row[0]) == 3) n3[bf::as_int(row[1])] = bf::as_int(row[2]);
  EXPECT_EQ(n3, (std::map<std::int64_t, std::int64_t>{{1, 1}, {2, 2}, {3, 1}, {4, 1}, {6, 1}}));
  EXPECT_THROW(bf::exp_trn_histogram(13, bf::experiment_defaults("exp-trn-hist")), bf::InvalidArgument);
}

TEST(Experiments, FourBarCatalog) {
  const auto cat = bf::four_bar_catalog();
  ASSERT_EQ(cat.size(), 6u);
  EXPECT_EQ(std::set<bf::CanonicalCode>(cat.begin(), cat.end()).size(), 6u);
  EXPECT_EQ(cat[0].text, "[0[1][2][3]]");
}

TEST(Experiments, TypeDistributionForcedAndForbiddenCells) {
  const auto t = bf::exp_type_distribution(small("exp-type-dist", {{"trees", "40"}}));
  const std::size_t cls = t.column("class"), allowed = t.column("allowed"), count = t.column("count");
  std::map<std::string, std::int64_t> allowed_per_class;
  for (const auto& row : t.rows()) {
    ASSERT_NE(bf::as_string(row[t.column("type")]), "?");
    if (bf::as_int(row[allowed]) == 0) {
      EXPECT_EQ(bf::as_int(row[count]), 0);
    }
    allowed_per_class[bf::as_string(row[cls])] += bf::as_int(row[allowed]);
    if (bf::as_string(row[cls]) == "(3 2 1)" && bf::as_int(row[allowed]) == 1) {
      EXPECT_EQ(bf::as_double(row[t.column("percent")]), 100.0);
    }
  }
  EXPECT_EQ(allowed_per_class["(1 2 3)"], 6);
  EXPECT_EQ(allowed_per_class["(3 2 1)"], 1);
  EXPECT_EQ(allowed_per_class["(2 1 3)"], 3);
}

TEST(Experiments, DeathSwitchFamily) {
  const auto b = bf::class_representative({2, 6, 8, 1, 5, 7, 4, 3}, 10.0);
  // death ranks 4 and 5 are bars 1 and 5
  const auto fam = bf::death_switch_family(b, 1, 5);
  ASSERT_EQ(fam.size(), 51u);
  EXPECT_EQ(bf::trn_or_minus_one(fam[0]), 810);
  EXPECT_EQ(bf::trn_or_minus_one(fam[25]), -1);  // tied deaths
  EXPECT_EQ(bf::trn_or_minus_one(fam[50]), 540);
  EXPECT_EQ(fam[50][1].death, b[5].death);
  EXPECT_THROW(bf::death_switch_family(b, 1, 7), bf::InvalidArgument);  // bar 7 dies between others
  EXPECT_THROW(bf::death_switch_family(b, 0, 1), bf::InvalidArgument);
}

TEST(Experiments, DeathSwitchEndpointsAtLargeLambda) {
  auto cfg = small("exp-death-switch", {{"trials", "100"}, {"lambda", "10"}});
  const auto t = bf::exp_death_switch(cfg);
  int same = 0, total = 0;
  for (const auto& row : t.rows()) {
    if (bf::as_int(row[0]) != 0) continue;
    EXPECT_EQ(bf::as_int(row[2]), 810);
    same += bf::as_int(row[3]) == 810;
    ++total;
  }
  EXPECT_EQ(total, 100);
  EXPECT_GE(same, 99);
}

TEST(Experiments, DeathSwitchTogglesAtUnitLambda) {
  auto cfg = small("exp-death-switch", {{"trials", "40"}});
  const auto t = bf::exp_death_switch(cfg);
  std::map<std::int64_t, std::map<std::int64_t, int>> by_k;
  for (const auto& row : t.rows()) ++by_k[bf::as_int(row[0])][bf::as_int(row[3])];
  EXPECT_GE(by_k[0][810], 36);
  EXPECT_GE(by_k[50][540], 36);
  EXPECT_GT(by_k[25][810], 0);
  EXPECT_GT(by_k[25][540], 0);
}

TEST(Experiments, DeathSwitchInterferenceFromCloseDeaths) {
  // Third-largest death one unit away from where the largest death lands.
  auto cfg = small("exp-death-switch", {{"trials", "40"}, {"permutation", "8,6,7,4,3,1,2,5"}, {"ranks", "1,2"},
                                        {"spacing", "1"}});
  const auto t = bf::exp_death_switch(cfg);
  std::set<std::int64_t> late;
  for (const auto& row : t.rows())
    if (bf::as_int(row[0]) >= 45 && bf::as_int(row[3]) > 0) late.insert(bf::as_int(row[3]));
  EXPECT_GE(late.size(), 3u);
  EXPECT_EQ(bf::as_int(t.rows().front()[2]), 20);
  EXPECT_EQ(bf::as_int(t.rows().back()[2]), 40);
}

TEST(Experiments, DeathSwitchRejectsBadRanks) {
  EXPECT_THROW(bf::exp_death_switch(small("exp-death-switch", {{"ranks", "4,6"}})), bf::InvalidArgument);
  EXPECT_THROW(bf::exp_death_switch(small("exp-death-switch", {{"ranks", "0,1"}})), bf::InvalidArgument);
}

TEST(Experiments, DiversityDriftsButStaysInBound) {
  const auto b = bf::class_representative({2, 1, 4, 3, 5}, 1.0);
  const auto tree = bf::realize_tree(b, bf::enumerate_attachments(b, 100).back());
  const auto t = bf::exp_diversity(tree, bf::experiment_defaults("exp-diversity"));
  const std::size_t id = t.column("tree"), sigma = t.column("sigma");
  std::map<std::int64_t, std::vector<std::int64_t>> classes;
  for (auto r : rows_of(t, "class")) classes[bf::as_int(t.rows()[r][id])].push_back(bf::as_int(t.rows()[r][sigma]));
  ASSERT_TRUE(classes.count(0));
  EXPECT_EQ(classes[0].size(), 5u);
  std::set<std::vector<std::int64_t>> distinct;
  for (const auto& [tree_id, s] : classes) distinct.insert(s);
  EXPECT_GE(distinct.size(), 2u);
  const auto dist = rows_of(t, "dist");
  EXPECT_EQ(dist.size() + rows_of(t, "skipped").size(), 100u);
  for (auto r : dist) EXPECT_EQ(bf::as_int(t.rows()[r][t.column("within_bound")]), 1);
}

TEST(Experiments, RandomStrictBarcodes) {
  bf::Rng rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    const auto b = bf::random_strict_barcode(rng, 1 + rep % 9);
    EXPECT_EQ(b.size(), 1u + rep % 9);
    EXPECT_EQ(b[0], (bf::Bar{0.0, 1.0}));
    for (std::size_t i = 1; i <= b.n(); ++i) {
      EXPECT_LT(b[i].birth, 0.5);
      EXPECT_GT(b[i].death, 0.5);
    }
  }
}

TEST(Experiments, BioDirectory) {
  TempDir dir("bio");
  const auto ordered = bf::class_representative({1, 2, 3, 4}, 1.0);
  const auto mixed = bf::class_representative({3, 1, 4, 2}, 1.0);
  dir.file("a.swc", bf::to_swc(bf::realize_tree(ordered, bf::enumerate_attachments(ordered, 100)[5])));
  dir.file("b.swc", bf::to_swc(bf::realize_tree(mixed, bf::enumerate_attachments(mixed, 100)[0])));
  dir.file("c.swc", "1 1 0 0 0 1 -1\n2 3 0 0 1 1 9\n");
  dir.file("notes.txt", "ignored");
  const std::string manifest = dir.file("labels.txt", "a.swc apical\nb.swc basal\n");
  auto cfg = bf::experiment_defaults("exp-bio");
  cfg.set("manifest", manifest);
  const auto t = bf::exp_bio(dir.path.string(), cfg);

  const auto skipped = rows_of(t, "skipped");
  ASSERT_EQ(skipped.size(), 1u);
  EXPECT_EQ(bf::as_string(t.rows()[skipped[0]][t.column("file")]), "c.swc");
  const auto trees = rows_of(t, "tree");
  ASSERT_EQ(trees.size(), 2u);
  const auto& a = t.rows()[trees[0]];
  EXPECT_EQ(bf::as_string(a[t.column("label")]), "apical");
  EXPECT_EQ(bf::as_double(a[t.column("log_trn")]), bf::as_double(a[t.column("log_ceiling")]));
  EXPECT_EQ(bf::as_double(a[t.column("log_ceiling")]), bf::log_factorial(4));
  const auto& b = t.rows()[trees[1]];
  EXPECT_LT(bf::as_double(b[t.column("log_trn")]), bf::as_double(b[t.column("log_ceiling")]));
  for (auto r : rows_of(t, "size")) {
    EXPECT_LT(bf::as_double(t.rows()[r][t.column("median")]), bf::as_double(t.rows()[r][t.column("log_ceiling")]));
  }
  std::set<std::string> labels;
  for (auto r : rows_of(t, "summary")) labels.insert(bf::as_string(t.rows()[r][t.column("label")]));
  EXPECT_EQ(labels, (std::set<std::string>{"*", "apical", "basal"}));
  EXPECT_THROW(bf::exp_bio((dir.path / "nope").string(), cfg), bf::Error);
}

TEST(Experiments, LogFactorial) {
  EXPECT_EQ(bf::log_factorial(0), 0.0);
  EXPECT_NEAR(bf::log_factorial(10), std::log(3628800.0), 1e-12);
}

TEST(Samples, DeathSwitchBarcodeFile) {
  const auto b = bf::load_barcode_file(std::string(BF_SAMPLES_DIR) + "/death_switch_b1.txt");
  EXPECT_EQ(bf::barcode_class(b).sequence, (std::vector<int>{2, 6, 8, 1, 5, 7, 4, 3}));
  EXPECT_EQ(bf::trn(b), 810);
  EXPECT_THROW(bf::load_barcode_file(std::string(BF_SAMPLES_DIR) + "/missing.txt"), bf::Error);
}

}  // namespace
