#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tbgp/simulation.hpp"
#include "tbgp/text.hpp"
#include "tbgp/topology_io.hpp"
#include "tbgp/trust.hpp"

namespace tbgp {

// Scenario file: INI-style sections with '#' comments. Unknown sections or
// keys are errors (misspelled settings must not silently revert to defaults).
//
//   [grid]       rows, cols, distrusted_fraction, target_avg_degree,
//                mu_trusted, mu_distrusted, sigma, seed
//   [vote]       alpha, remote_weight, rounds
//   [sweep]      alphas (comma list), degree_targets (comma list),
//                replicates, master_seed
//   [variation]  steps, t1_start, t1_end, tau_start, tau_end
//   [weights]    inherent, observed[, voted] — component weights, sum 1
//   [tree.inherent] / [tree.observed]
//                <name> = <weight> <value> per component leaf
//
// Weight vectors whose sum misses 1 by at most 1e-3 are normalized with a
// warning; larger misses are errors.
struct ScenarioConfig {
  GridConfig grid;
  VoteParams vote;
  VariationConfig variation;
  std::vector<double> alphas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> degree_targets = {6.5, 2.2};
  int replicates = 200;
  std::uint64_t master_seed = 1;
  std::optional<TrustWeights2> weights2;
  std::optional<TrustWeights3> weights3;
  std::optional<TrustTree> tree;

  SweepConfig sweep_config() const {
    SweepConfig s;
    s.grid = grid;
    s.vote = vote;
    s.alphas = alphas;
    s.degree_targets = degree_targets;
    s.replicates = replicates;
    s.master_seed = master_seed;
    return s;
  }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

namespace detail {

inline double want_double(int line, std::string_view key, std::string_view val) {
  double v;
  if (!parse_double(val, v))
    throw ParseError(line, std::string(key) + " wants a number, got '" + std::string(val) + "'");
  return v;
}

inline int want_int(int line, std::string_view key, std::string_view val) {
  int v;
  if (!parse_int(val, v))
    throw ParseError(line, std::string(key) + " wants an integer, got '" + std::string(val) + "'");
  return v;
}

inline std::uint64_t want_uint64(int line, std::string_view key, std::string_view val) {
  std::uint64_t v;
  if (!parse_uint64(val, v))
    throw ParseError(line,
                     std::string(key) + " wants an unsigned integer, got '" + std::string(val) + "'");
  return v;
}

inline std::vector<double> want_list(int line, std::string_view key, std::string_view val) {
  std::vector<double> out;
  for (std::string_view item : split(val, ',')) {
    item = trim(item);
    if (item.empty()) throw ParseError(line, std::string(key) + " has an empty list item");
    out.push_back(want_double(line, key, item));
  }
  return out;
}

// Normalizes a near-miss weight vector in place; returns a warning line when
// it had to, throws when the miss is beyond repair.
inline std::optional<std::string> settle_weights(int line, const std::string& what,
                                                 std::vector<double*> ws) {
  double sum = 0.0;
  for (const double* w : ws) sum += *w;
  if (std::abs(sum - 1.0) <= 1e-9) return std::nullopt;
  if (std::abs(sum - 1.0) <= 1e-3) {
    for (double* w : ws) *w /= sum;
    return what + " weights sum to " + format_double(sum) + "; normalized to 1";
  }
  throw ParseError(line, what + " weights sum to " + format_double(sum) + ", expected 1");
}

}  // namespace detail

inline ScenarioConfig parse_scenario(std::istream& in,
                                     std::vector<std::string>* warnings = nullptr) {
  ScenarioConfig cfg;
  std::optional<double> w_inherent, w_observed, w_voted;
  int weights_line = 0;
  std::vector<TrustLeaf> tree_inherent, tree_observed;
  bool tree_seen = false;
  int tree_line = 0;
  const auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line{raw};
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "grid" && section != "vote" && section != "sweep" &&
          section != "variation" && section != "weights" && section != "tree.inherent" &&
          section != "tree.observed")
        throw ParseError(lineno, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "expected key = value");
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view val = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(lineno, "empty key");
    if (section.empty()) throw ParseError(lineno, "key '" + key + "' outside any section");
    if (section == "grid") {
      if (key == "rows") cfg.grid.rows = detail::want_int(lineno, key, val);
      else if (key == "cols") cfg.grid.cols = detail::want_int(lineno, key, val);
      else if (key == "distrusted_fraction")
        cfg.grid.distrusted_fraction = detail::want_double(lineno, key, val);
      else if (key == "target_avg_degree")
        cfg.grid.target_avg_degree = detail::want_double(lineno, key, val);
      else if (key == "mu_trusted") cfg.grid.mu_trusted = detail::want_double(lineno, key, val);
      else if (key == "mu_distrusted")
        cfg.grid.mu_distrusted = detail::want_double(lineno, key, val);
      else if (key == "sigma") cfg.grid.sigma = detail::want_double(lineno, key, val);
      else if (key == "seed") cfg.grid.seed = detail::want_uint64(lineno, key, val);
      else throw ParseError(lineno, "unknown key '" + key + "' in [grid]");
    } else if (section == "vote") {
      if (key == "alpha") cfg.vote.alpha = detail::want_double(lineno, key, val);
      else if (key == "remote_weight")
        cfg.vote.remote_weight = detail::want_double(lineno, key, val);
      else if (key == "rounds") cfg.vote.rounds = detail::want_int(lineno, key, val);
      else throw ParseError(lineno, "unknown key '" + key + "' in [vote]");
    } else if (section == "sweep") {
      if (key == "alphas") cfg.alphas = detail::want_list(lineno, key, val);
      else if (key == "degree_targets") cfg.degree_targets = detail::want_list(lineno, key, val);
      else if (key == "replicates") cfg.replicates = detail::want_int(lineno, key, val);
      else if (key == "master_seed") cfg.master_seed = detail::want_uint64(lineno, key, val);
      else throw ParseError(lineno, "unknown key '" + key + "' in [sweep]");
    } else if (section == "variation") {
      if (key == "steps") cfg.variation.steps = detail::want_int(lineno, key, val);
      else if (key == "t1_start") cfg.variation.t1_start = detail::want_double(lineno, key, val);
      else if (key == "t1_end") cfg.variation.t1_end = detail::want_double(lineno, key, val);
      else if (key == "tau_start")
        cfg.variation.tau_start = detail::want_double(lineno, key, val);
      else if (key == "tau_end") cfg.variation.tau_end = detail::want_double(lineno, key, val);
      else throw ParseError(lineno, "unknown key '" + key + "' in [variation]");
    } else if (section == "weights") {
      weights_line = lineno;
      const double v = detail::want_double(lineno, key, val);
      if (!(v >= 0.0)) throw ParseError(lineno, key + " must be nonnegative");
      if (key == "inherent") w_inherent = v;
      else if (key == "observed") w_observed = v;
      else if (key == "voted") w_voted = v;
      else throw ParseError(lineno, "unknown key '" + key + "' in [weights]");
    } else {  // tree.inherent / tree.observed
      tree_seen = true;
      tree_line = lineno;
      auto& branch = section == "tree.inherent" ? tree_inherent : tree_observed;
      for (const TrustLeaf& l : branch)
        if (l.name == key) throw ParseError(lineno, "duplicate component '" + key + "'");
      const auto parts = tokenize(val);
      if (parts.size() != 2)
        throw ParseError(lineno, "component '" + key + "' wants <weight> <value>");
      TrustLeaf leaf;
      leaf.name = key;
      leaf.weight = detail::want_double(lineno, key, parts[0]);
      if (!(leaf.weight >= 0.0)) throw ParseError(lineno, "component weight must be nonnegative");
      const double v = detail::want_double(lineno, key, parts[1]);
      if (!(v >= 0.0 && v <= 1.0))
        throw ParseError(lineno, "component value " + std::string(parts[1]) + " outside [0, 1]");
      leaf.value = TrustRate::strict(v);
      branch.push_back(std::move(leaf));
    }
  }
  if (w_inherent || w_observed || w_voted) {
    if (!w_inherent || !w_observed)
      throw ParseError(weights_line, "[weights] needs both inherent and observed");
    if (w_voted) {
      if (const auto msg =
              detail::settle_weights(weights_line, "[weights]", {&*w_inherent, &*w_observed, &*w_voted}))
        warn(*msg);
      cfg.weights3 = TrustWeights3{*w_inherent, *w_observed, *w_voted};
    } else {
      if (const auto msg =
              detail::settle_weights(weights_line, "[weights]", {&*w_inherent, &*w_observed}))
        warn(*msg);
      cfg.weights2 = TrustWeights2{*w_inherent, *w_observed};
    }
  }
  if (tree_seen) {
    if (tree_inherent.empty() || tree_observed.empty())
      throw ParseError(tree_line, "trust tree needs both [tree.inherent] and [tree.observed]");
    for (auto* branch : {&tree_inherent, &tree_observed}) {
      std::vector<double*> ws;
      ws.reserve(branch->size());
      for (TrustLeaf& l : *branch) ws.push_back(&l.weight);
      const char* what = branch == &tree_inherent ? "[tree.inherent]" : "[tree.observed]";
      if (const auto msg = detail::settle_weights(tree_line, what, ws)) warn(*msg);
    }
    TrustTree t;
    t.inherent = std::move(tree_inherent);
    t.observed = std::move(tree_observed);
    try {
      t.validate();
    } catch (const std::domain_error& e) {
      throw ParseError(tree_line, e.what());
    }
    cfg.tree = std::move(t);
  }
  try {
    cfg.variation.validate();
    cfg.sweep_config().validate();  // covers grid and vote too
  } catch (const std::domain_error& e) {
    throw ParseError(e.what());
  }
  return cfg;
}

inline ScenarioConfig load_scenario_file(const std::string& path,
                                         std::vector<std::string>* warnings = nullptr) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return parse_scenario(f, warnings);
}

// Serializes every setting (defaults included), so a written scenario pins
// the full configuration. parse_scenario(scenario_to_text(c)) == c.
inline std::string scenario_to_text(const ScenarioConfig& cfg) {
  std::ostringstream os;
  const auto list = [](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ',';
      s += format_double(xs[i]);
    }
    return s;
  };
  os << "[grid]\n"
     << "rows = " << cfg.grid.rows << '\n'
     << "cols = " << cfg.grid.cols << '\n'
     << "distrusted_fraction = " << format_double(cfg.grid.distrusted_fraction) << '\n'
     << "target_avg_degree = " << format_double(cfg.grid.target_avg_degree) << '\n'
     << "mu_trusted = " << format_double(cfg.grid.mu_trusted) << '\n'
     << "mu_distrusted = " << format_double(cfg.grid.mu_distrusted) << '\n'
     << "sigma = " << format_double(cfg.grid.sigma) << '\n'
     << "seed = " << cfg.grid.seed << '\n'
     << '\n'
     << "[vote]\n"
     << "alpha = " << format_double(cfg.vote.alpha) << '\n'
     << "remote_weight = " << format_double(cfg.vote.remote_weight) << '\n'
     << "rounds = " << cfg.vote.rounds << '\n'
     << '\n'
     << "[sweep]\n"
     << "alphas = " << list(cfg.alphas) << '\n'
     << "degree_targets = " << list(cfg.degree_targets) << '\n'
     << "replicates = " << cfg.replicates << '\n'
     << "master_seed = " << cfg.master_seed << '\n'
     << '\n'
     << "[variation]\n"
     << "steps = " << cfg.variation.steps << '\n'
     << "t1_start = " << format_double(cfg.variation.t1_start) << '\n'
     << "t1_end = " << format_double(cfg.variation.t1_end) << '\n'
     << "tau_start = " << format_double(cfg.variation.tau_start) << '\n'
     << "tau_end = " << format_double(cfg.variation.tau_end) << '\n';
  if (cfg.weights2 || cfg.weights3) {
    os << "\n[weights]\n";
    if (cfg.weights3) {
      os << "inherent = " << format_double(cfg.weights3->w1) << '\n'
         << "observed = " << format_double(cfg.weights3->w2) << '\n'
         << "voted = " << format_double(cfg.weights3->w3) << '\n';
    } else {
      os << "inherent = " << format_double(cfg.weights2->w1) << '\n'
         << "observed = " << format_double(cfg.weights2->w2) << '\n';
    }
  }
  if (cfg.tree) {
    const auto dump = [&](const char* name, const std::vector<TrustLeaf>& leaves) {
      os << "\n[" << name << "]\n";
      for (const TrustLeaf& l : leaves)
        os << l.name << " = " << format_double(l.weight) << ' ' << format_double(l.value.value())
           << '\n';
    };
    dump("tree.inherent", cfg.tree->inherent);
    dump("tree.observed", cfg.tree->observed);
  }
  return os.str();
}

}  // namespace tbgp
