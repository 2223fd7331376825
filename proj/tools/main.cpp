// tbgp — trust-weighted route cost and vote simulation CLI.
//
// Exit codes: 0 success, 1 usage or configuration problem (bad flags, bad
// config file, invalid topology content), 2 runtime failure (unreadable or
// unwritable files, simulation errors).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tbgp/config.hpp"
#include "tbgp/csv.hpp"
#include "tbgp/graph.hpp"
#include "tbgp/random.hpp"
#include "tbgp/simulation.hpp"
#include "tbgp/topology_io.hpp"

namespace {

struct Options {
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string config_path;
  int workers = 1;
  std::string model = "both";
  tbgp::GridConfig grid_flags;  // topology generate overrides
  std::string validate_path;
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
      path_ = path;
    }
  }

  std::ostream& stream() { return path_.empty() ? std::cout : file_; }

  void finish() {
    stream().flush();
    if (!stream()) throw std::runtime_error("failed writing output");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

int run_validate(const Options& opt) {
  std::ifstream f(opt.validate_path);
  if (!f) {
    std::cerr << "error: cannot open '" << opt.validate_path << "'\n";
    return 2;
  }
  const std::vector<tbgp::Diagnostic> diags = tbgp::validate_topology(f);
  if (diags.empty()) {
    std::cout << "ok\n";
    return 0;
  }
  for (const tbgp::Diagnostic& d : diags)
    std::cout << "line " << d.line << ": " << d.message << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"trust-weighted route cost and vote simulation"};
  app.require_subcommand(1);
  app.fallthrough();  // let --seed/--out/--config follow the subcommand name
  app.add_option("--seed", opt.seed, "master seed; overrides the config file");
  app.add_option("--out", opt.out_path, "write output to this file instead of stdout");
  app.add_option("--config", opt.config_path, "scenario config file");
  app.add_option("--workers", opt.workers, "parallel workers for sweeps")
      ->check(CLI::PositiveNumber);

  CLI::App* example_paths =
      app.add_subcommand("example-paths", "path costs on the built-in example topology");
  example_paths->add_option("--model", opt.model, "cost model(s) to print")
      ->check(CLI::IsMember({"both", "direct", "recommended"}));

  CLI::App* trust_variation = app.add_subcommand(
      "trust-variation", "two-link chain costs as first-hop trust degrades");

  CLI::App* alpha_sweep = app.add_subcommand(
      "alpha-sweep", "Monte Carlo sweep of detection failure over the vote mixing weight");

  CLI::App* topology = app.add_subcommand("topology", "topology file tools");
  topology->require_subcommand(1);
  CLI::App* generate = topology->add_subcommand("generate", "write a random grid topology");
  CLI::Option* o_rows = generate->add_option("--rows", opt.grid_flags.rows, "grid rows");
  CLI::Option* o_cols = generate->add_option("--cols", opt.grid_flags.cols, "grid columns");
  CLI::Option* o_degree = generate->add_option("--degree", opt.grid_flags.target_avg_degree,
                                               "average degree to thin down to");
  CLI::Option* o_fraction = generate->add_option(
      "--fraction", opt.grid_flags.distrusted_fraction, "fraction of distrusted nodes");
  CLI::Option* o_mu_t =
      generate->add_option("--mu-trusted", opt.grid_flags.mu_trusted, "trusted-subject mean");
  CLI::Option* o_mu_d = generate->add_option("--mu-distrusted", opt.grid_flags.mu_distrusted,
                                             "distrusted-subject mean");
  CLI::Option* o_sigma =
      generate->add_option("--sigma", opt.grid_flags.sigma, "trust sample std deviation");
  CLI::App* validate = topology->add_subcommand("validate", "check a topology file");
  validate->add_option("file", opt.validate_path, "topology file to check")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  // configuration stage: defaults, then config file, then explicit flags
  tbgp::ScenarioConfig cfg;
  try {
    std::vector<std::string> warnings;
    if (!opt.config_path.empty()) cfg = tbgp::load_scenario_file(opt.config_path, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    if (opt.seed) {
      cfg.master_seed = *opt.seed;
      cfg.grid.seed = *opt.seed;
    }
    if (generate->parsed()) {
      if (o_rows->count()) cfg.grid.rows = opt.grid_flags.rows;
      if (o_cols->count()) cfg.grid.cols = opt.grid_flags.cols;
      if (o_degree->count()) cfg.grid.target_avg_degree = opt.grid_flags.target_avg_degree;
      if (o_fraction->count())
        cfg.grid.distrusted_fraction = opt.grid_flags.distrusted_fraction;
      if (o_mu_t->count()) cfg.grid.mu_trusted = opt.grid_flags.mu_trusted;
      if (o_mu_d->count()) cfg.grid.mu_distrusted = opt.grid_flags.mu_distrusted;
      if (o_sigma->count()) cfg.grid.sigma = opt.grid_flags.sigma;
      cfg.grid.validate();
    }
    if (alpha_sweep->parsed()) cfg.sweep_config().validate();
    if (trust_variation->parsed()) cfg.variation.validate();
  } catch (const tbgp::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  if (validate->parsed()) return run_validate(opt);

  try {
    Output out(opt.out_path);
    if (example_paths->parsed()) {
      tbgp::write_example_paths_csv(out.stream(), opt.model != "recommended",
                                    opt.model != "direct");
    } else if (trust_variation->parsed()) {
      tbgp::write_variation_csv(out.stream(), tbgp::run_trust_variation(cfg.variation));
    } else if (alpha_sweep->parsed()) {
      tbgp::write_sweep_csv(out.stream(),
                            tbgp::run_alpha_sweep(cfg.sweep_config(), opt.workers));
    } else if (generate->parsed()) {
      const tbgp::RandomStream world(cfg.grid.seed);
      const tbgp::AsGraph g =
          tbgp::build_sweep_world(cfg.grid, cfg.grid.target_avg_degree, world);
      tbgp::save_topology(g, out.stream());
    }
    out.finish();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
