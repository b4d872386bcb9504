// bf: command-line front end for barcodes, tree synthesis and the experiments.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bf/bf.hpp"
#include "bf/experiments.hpp"

namespace {

// Writes to `path`, or stdout for "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bf::Error("cannot write '" + path + "'");
  out << text;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bf::Error("cannot open '" + path + "'");
  return in;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("BF_SEED");
  if (!env || !*env) return fallback;
  std::uint64_t s;
  if (!bf::parse_int(std::string_view(env), s)) throw bf::InvalidArgument("BF_SEED is not a non-negative integer");
  return s;
}

// An experiment subcommand: --config FILE plus one flag per config key.
struct ExperimentCommand {
  explicit ExperimentCommand(std::string n) : name(std::move(n)) {}

  std::string name;
  std::string config_file;
  std::map<std::string, std::string> flags;
  std::map<std::string, std::string> raw;
  CLI::App* app = nullptr;

  void attach(CLI::App& parent, const std::string& description) {
    app = parent.add_subcommand(name, description);
    app->add_option("--config", config_file, "key = value config file")->check(CLI::ExistingFile);
    for (const auto& key : bf::config_keys()) {
      app->add_option(std::string("--") + key.name, raw[key.name], key.help);
    }
  }

  bf::Config resolve() {
    // Only flags actually given on the command line override the file.
    for (const auto& key : bf::config_keys()) {
      if (app->count(std::string("--") + key.name) > 0) flags[key.name] = raw[key.name];
    }
    return bf::resolve_config(bf::experiment_defaults(name), config_file, flags);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bf: persistence barcodes of geometric trees, tree synthesis and tree-realization combinatorics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bf::version));

  // tmd
  std::string tmd_in, tmd_out = "-", tmd_diagram, tmd_mode = "path";
  bool tmd_binarize = false;
  auto* tmd_cmd = app.add_subcommand("tmd", "barcode of an SWC tree");
  tmd_cmd->add_option("tree", tmd_in, "SWC file")->required()->check(CLI::ExistingFile);
  tmd_cmd->add_option("--mode", tmd_mode, "root distance: path or radial")->check(CLI::IsMember({"path", "radial"}));
  tmd_cmd->add_flag("--binarize", tmd_binarize, "split multifurcations with zero-length edges");
  tmd_cmd->add_option("--diagram", tmd_diagram, "also write the persistence diagram as CSV");
  tmd_cmd->add_option("-o,--out", tmd_out, "output barcode file");

  // tns
  std::string tns_in, tns_out = "-";
  bf::TnsParams tns_p;
  auto* tns_cmd = app.add_subcommand("tns", "synthesize a tree from a barcode");
  tns_cmd->add_option("barcode", tns_in, "barcode file")->required()->check(CLI::ExistingFile);
  tns_cmd->add_option("--lambda", tns_p.lambda, "steepness of the event profiles");
  tns_cmd->add_option("--rho", tns_p.rho, "weight of the random direction");
  tns_cmd->add_option("--tau", tns_p.tau, "weight of the target direction");
  tns_cmd->add_option("--mu", tns_p.mu, "weight of the memory direction");
  tns_cmd->add_option("--step", tns_p.step, "step length");
  auto* tns_seed = tns_cmd->add_option("--seed", tns_p.seed, "random seed (default: BF_SEED, else 1)");
  tns_cmd->add_option("-o,--out", tns_out, "output SWC file");

  // trn
  std::string trn_in;
  auto* trn_cmd = app.add_subcommand("trn", "class, bar indices and tree-realization number of a strict barcode");
  trn_cmd->add_option("barcode", trn_in, "barcode file")->required()->check(CLI::ExistingFile);

  // enumerate
  std::string enum_in, enum_dir, enum_out = "-";
  std::uint64_t enum_cap = 100000;
  auto* enum_cmd = app.add_subcommand("enumerate", "list every attachment map of a strict barcode");
  enum_cmd->add_option("barcode", enum_in, "barcode file")->required()->check(CLI::ExistingFile);
  enum_cmd->add_option("--cap", enum_cap, "refuse to enumerate more than this many maps");
  enum_cmd->add_option("--emit-trees", enum_dir, "write one realizing SWC tree per map into this directory");
  enum_cmd->add_option("-o,--out", enum_out, "output file");

  // cayley
  std::size_t cay_n = 3, cay_cap = 7;
  std::string cay_dot;
  auto* cay_cmd = app.add_subcommand("cayley", "trn-annotated Cayley graph of S_n");
  cay_cmd->add_option("n", cay_n, "n >= 2")->required();
  cay_cmd->add_option("--dot", cay_dot, "DOT output file ('-' for stdout)");
  cay_cmd->add_option("--cap", cay_cap, "largest n allowed");

  ExperimentCommand exps[] = {ExperimentCommand("exp-transposition"), ExperimentCommand("exp-bottleneck"),
                              ExperimentCommand("exp-trn-hist"),      ExperimentCommand("exp-type-dist"),
                              ExperimentCommand("exp-death-switch"),  ExperimentCommand("exp-diversity"),
                              ExperimentCommand("exp-bio")};
  exps[0].attach(app, "death-switch frequency against 1/2 exp(-lambda gap)");
  exps[1].attach(app, "bottleneck distance of synthesized barcodes against the Erlang bound");
  exps[2].attach(app, "histogram of tree-realization numbers over S_n");
  exps[3].attach(app, "combinatorial types of synthesized 4-bar trees");
  exps[4].attach(app, "trn while two consecutive deaths move past each other");
  exps[5].attach(app, "classes and diagrams of trees synthesized from one SWC tree");
  exps[6].attach(app, "log trn of a directory of SWC trees against random barcodes");
  std::string div_tree, bio_dir;
  exps[5].app->add_option("input", div_tree, "SWC file (or --tree)");
  exps[6].app->add_option("input", bio_dir, "directory of SWC files (or --swc_dir)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*tmd_cmd) {
      auto in = open_input(tmd_in);
      const auto tree = bf::parse_swc(in, bf::SwcOptions{tmd_binarize});
      const auto r = bf::tmd(tree, bf::parse_distance_mode(tmd_mode));
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
      emit(tmd_out, bf::to_text(r.barcode));
      if (!tmd_diagram.empty()) {
        std::ostringstream pd;
        bf::write_diagram_csv(pd, bf::persistence_diagram(r.barcode));
        emit(tmd_diagram, pd.str());
      }
    } else if (*tns_cmd) {
      if (tns_seed->count() == 0) tns_p.seed = seed_from_env(1);
      auto in = open_input(tns_in);
      const auto synth = bf::synthesize(bf::parse_barcode(in), tns_p);
      emit(tns_out, bf::to_swc(synth.tree));
    } else if (*trn_cmd) {
      auto in = open_input(trn_in);
      const auto b = bf::make_strict(bf::parse_barcode(in));
      std::ostringstream out;
      out << "class " << bf::to_string(bf::barcode_class(b)) << '\n';
      out << "indices";
      for (auto idx : bf::bar_indices(b)) out << ' ' << idx;
      out << "\ntrn " << bf::trn(b) << '\n';
      emit("-", out.str());
    } else if (*enum_cmd) {
      auto in = open_input(enum_in);
      const auto b = bf::make_strict(bf::parse_barcode(in));
      const auto maps = bf::enumerate_attachments(b, enum_cap);
      if (!enum_dir.empty()) std::filesystem::create_directories(enum_dir);
      std::ostringstream out;
      out << "# f(1) .. f(n), then the combinatorial code\n";
      for (std::size_t m = 0; m < maps.size(); ++m) {
        for (std::size_t i = 1; i < maps[m].size(); ++i) out << (i > 1 ? " " : "") << maps[m][i];
        out << (maps[m].size() > 1 ? " " : "") << bf::canonical_code_from_attachments(maps[m]).text << '\n';
        if (!enum_dir.empty()) {
          char name[32];
          std::snprintf(name, sizeof name, "tree_%05zu.swc", m + 1);
          emit((std::filesystem::path(enum_dir) / name).string(), bf::to_swc(bf::realize_tree(b, maps[m])));
        }
      }
      emit(enum_out, out.str());
    } else if (*cay_cmd) {
      const auto g = bf::cayley_graph(cay_n, cay_cap);
      std::ostringstream dot;
      bf::write_dot(dot, g);
      if (!cay_dot.empty()) {
        emit(cay_dot, dot.str());
      } else {
        std::ostringstream out;
        out << "nodes " << g.nodes.size() << "\nedges " << g.edges.size() << '\n';
        for (std::size_t u = 0; u < g.nodes.size(); ++u) out << '(' << bf::sequence_label(g.nodes[u]) << ") " << g.trn[u] << '\n';
        emit("-", out.str());
      }
    } else {
      for (auto& e : exps) {
        if (!*e.app) continue;
        if (e.name == "exp-diversity" && !div_tree.empty()) e.flags["tree"] = div_tree;
        if (e.name == "exp-bio" && !bio_dir.empty()) e.flags["swc_dir"] = bio_dir;
        const bf::Config cfg = e.resolve();
        bf::ResultTable table = [&] {
          if (e.name == "exp-transposition") return bf::exp_transposition(cfg);
          if (e.name == "exp-bottleneck") return bf::exp_bottleneck(cfg);
          if (e.name == "exp-trn-hist") return bf::exp_trn_histogram(cfg);
          if (e.name == "exp-type-dist") return bf::exp_type_distribution(cfg);
          if (e.name == "exp-death-switch") return bf::exp_death_switch(cfg);
          if (e.name == "exp-diversity") {
            if (!cfg.has("tree")) throw bf::InvalidArgument("exp-diversity needs an SWC file");
            auto in = open_input(cfg.get_string("tree"));
            return bf::exp_diversity(bf::parse_swc(in), cfg);
          }
          if (!cfg.has("swc_dir")) throw bf::InvalidArgument("exp-bio needs a directory");
          return bf::exp_bio(cfg.get_string("swc_dir"), cfg);
        }();
        emit(cfg.get_string("out"), table.to_csv());
      }
    }
  } catch (const bf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
