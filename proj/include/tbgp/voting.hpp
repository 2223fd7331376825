#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "tbgp/graph.hpp"
#include "tbgp/random.hpp"

namespace tbgp {

struct VoteParams {
  // Weight of the evaluator's own direct rate when mixed with the vote
  // aggregate; 1 - alpha goes to the votes.
  double alpha = 0.5;
  // Weight given to a voter the evaluator has no direct edge to.
  double remote_weight = 0.3;
  int rounds = 1;

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha outside [0, 1]");
    if (!(remote_weight >= 0.0 && remote_weight <= 1.0))
      throw std::domain_error("remote_weight outside [0, 1]");
    if (rounds < 1) throw std::domain_error("rounds must be positive");
  }

  friend bool operator==(const VoteParams&, const VoteParams&) = default;
};

// Pairwise trust state: one slot per directed edge, aligned with the graph's
// out-adjacency ordinals. `direct` mirrors the edge's sampled trust;
// `derived` is the evaluator's post-vote assessment, unset until a round runs.
class TrustState {
 public:
  struct Slot {
    TrustRate direct;
    std::optional<TrustRate> derived;
  };

  TrustState() = default;

  explicit TrustState(const AsGraph& g) {
    slots_.resize(g.size());
    for (int u = 0; u < g.size(); ++u) {
      slots_[u].reserve(g.out_edges(u).size());
      for (const OutEdge& e : g.out_edges(u)) slots_[u].push_back(Slot{e.trust, std::nullopt});
    }
  }

  Slot& at(int evaluator, int ordinal) { return slots_[evaluator][ordinal]; }
  const Slot& at(int evaluator, int ordinal) const { return slots_[evaluator][ordinal]; }

  const Slot& at(const AsGraph& g, const AsId& evaluator, const AsId& subject) const {
    return slots_[g.require(evaluator)][require_ordinal(g, evaluator, subject)];
  }

  void set_derived(const AsGraph& g, const AsId& evaluator, const AsId& subject, TrustRate v) {
    slots_[g.require(evaluator)][require_ordinal(g, evaluator, subject)].derived = v;
  }

  std::size_t entry_count() const {
    std::size_t n = 0;
    for (const auto& row : slots_) n += row.size();
    return n;
  }

 private:
  static int require_ordinal(const AsGraph& g, const AsId& evaluator, const AsId& subject) {
    const int k = g.out_ordinal(g.require(evaluator), g.require(subject));
    if (k < 0) throw std::domain_error("no edge " + evaluator + " -> " + subject);
    return k;
  }

  std::vector<std::vector<Slot>> slots_;
};

inline TrustState init_state(const AsGraph& g) { return TrustState(g); }

// Gathers the votes `evaluator` hears about `subject`. Voters are the
// subject's other neighbors (nodes with an edge into the subject, excluding
// the evaluator and the subject). An honest voter reports its own current
// assessment of the subject — derived when a round has produced one, direct
// otherwise; a distrusted voter reports uniform noise. The evaluator weights
// a voter it knows first-hand by its direct trust in that voter, any other
// voter by params.remote_weight.
inline std::vector<WeightedVote> collect_votes(const AsGraph& g, int evaluator, int subject,
                                               const TrustState& state, const VoteParams& params,
                                               RandomStream& rng) {
  std::vector<WeightedVote> votes;
  for (const InRef& in : g.in_edges(subject)) {
    const int voter = in.from;
    if (voter == evaluator || voter == subject) continue;
    double value;
    if (g.node(voter).role == Role::Distrusted) {
      value = rng.uniform01();
    } else {
      const TrustState::Slot& s = state.at(voter, in.ordinal);
      value = s.derived ? s.derived->value() : s.direct.value();
    }
    const int k = g.out_ordinal(evaluator, voter);
    const double w = k >= 0 ? state.at(evaluator, k).direct.value() : params.remote_weight;
    votes.push_back(WeightedVote{TrustRate(value), w});
  }
  return votes;
}

// One synchronous voting round: every trusted evaluator re-derives its rate
// for each out-neighbor from the input state; updates land in the returned
// copy only, so ordering within the round cannot leak. Distrusted evaluators
// never update. A pair nobody can vote on falls back to the direct rate.
// Noise draws come from round_rng.fork("pair", evaluator, subject), making
// them independent of iteration order.
inline TrustState run_vote_round(const AsGraph& g, const VoteParams& params,
                                 const TrustState& state, const RandomStream& round_rng) {
  params.validate();
  TrustState next = state;
  for (int e = 0; e < g.size(); ++e) {
    if (g.node(e).role != Role::Trusted) continue;
    const auto& edges = g.out_edges(e);
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
      RandomStream pair_rng = round_rng.fork("pair", e, edges[k].to);
      const std::vector<WeightedVote> votes =
          collect_votes(g, e, edges[k].to, state, params, pair_rng);
      const TrustRate direct = state.at(e, k).direct;
      TrustRate derived = direct;
      try {
        derived = combine_alpha(direct, aggregate_votes(votes), params.alpha);
      } catch (const NoVotersError&) {
      }
      next.at(e, k).derived = derived;
    }
  }
  return next;
}

}  // namespace tbgp
