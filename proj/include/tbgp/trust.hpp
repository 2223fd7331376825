#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbgp {

// Bounded trust domain: 0 is complete distrust, 1 complete trust, and 0.5 the
// uncertainty default used when nothing is known yet. The regular constructor
// clamps out-of-range finite values (arithmetic on rates may drift past the
// ends); strict() rejects them and is used when validating external input.
class TrustRate {
 public:
  TrustRate() = default;

  explicit TrustRate(double v) : value_(clamped(v)) {}

  static TrustRate strict(double v) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::domain_error("trust rate " + std::to_string(v) + " outside [0, 1]");
    return TrustRate(v);
  }

  double value() const { return value_; }

  friend auto operator<=>(const TrustRate&, const TrustRate&) = default;

 private:
  static double clamped(double v) {
    if (!std::isfinite(v)) throw std::domain_error("trust rate must be finite");
    return std::clamp(v, 0.0, 1.0);
  }

  double value_ = 0.5;
};

inline TrustRate make_rate(double x) { return TrustRate(x); }

enum class TrustBand {
  StrongDistrust,
  WeakDistrust,
  Neutral,
  WeakTrust,
  StrongTrust,
};

inline const char* to_string(TrustBand b) {
  switch (b) {
    case TrustBand::StrongDistrust: return "strong-distrust";
    case TrustBand::WeakDistrust: return "weak-distrust";
    case TrustBand::Neutral: return "neutral";
    case TrustBand::WeakTrust: return "weak-trust";
    case TrustBand::StrongTrust: return "strong-trust";
  }
  return "?";
}

// Half-open bands over [0, 1); each boundary belongs to the band above it.
inline TrustBand classify(TrustRate r) {
  const double v = r.value();
  if (v < 0.2) return TrustBand::StrongDistrust;
  if (v < 0.4) return TrustBand::WeakDistrust;
  if (v < 0.6) return TrustBand::Neutral;
  if (v < 0.8) return TrustBand::WeakTrust;
  return TrustBand::StrongTrust;
}

namespace detail {

inline void check_weights(std::initializer_list<double> ws) {
  double sum = 0.0;
  for (double w : ws) {
    if (!std::isfinite(w) || w < 0.0)
      throw std::domain_error("trust weights must be finite and nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::domain_error("trust weights must sum to 1 (got " + std::to_string(sum) + ")");
}

}  // namespace detail

// Two-component weighting: inherent vs observed trust.
struct TrustWeights2 {
  double w1 = 0.5;
  double w2 = 0.5;

  TrustWeights2() = default;
  TrustWeights2(double a, double b) : w1(a), w2(b) { detail::check_weights({a, b}); }

  friend bool operator==(const TrustWeights2&, const TrustWeights2&) = default;
};

// Three-component weighting: inherent, observed, voted.
struct TrustWeights3 {
  double w1 = 1.0 / 3;
  double w2 = 1.0 / 3;
  double w3 = 1.0 / 3;

  TrustWeights3() = default;
  TrustWeights3(double a, double b, double c) : w1(a), w2(b), w3(c) {
    detail::check_weights({a, b, c});
  }

  friend bool operator==(const TrustWeights3&, const TrustWeights3&) = default;
};

inline TrustRate universal_trust(TrustRate inherent, TrustRate observed,
                                 const TrustWeights2& w = {}) {
  return TrustRate(w.w1 * inherent.value() + w.w2 * observed.value());
}

inline TrustRate hybrid_trust(TrustRate inherent, TrustRate observed, TrustRate voted,
                              const TrustWeights3& w = {}) {
  return TrustRate(w.w1 * inherent.value() + w.w2 * observed.value() + w.w3 * voted.value());
}

// Simplified two-source mix: alpha on the direct component, the rest on the
// voted one. alpha = 1 reproduces the direct rate exactly.
inline TrustRate combine_alpha(TrustRate direct, TrustRate voted, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha outside [0, 1]");
  return TrustRate(alpha * direct.value() + (1.0 - alpha) * voted.value());
}

struct WeightedVote {
  TrustRate vote;
  double weight = 0.0;
};

struct NoVotersError : std::domain_error {
  NoVotersError() : std::domain_error("no votes carry positive weight") {}
};

// Weighted mean of votes; weights are the aggregator's trust in each voter.
// A single positively-weighted vote passes through exactly.
inline TrustRate aggregate_votes(const std::vector<WeightedVote>& votes) {
  double num = 0.0;
  double den = 0.0;
  const WeightedVote* only = nullptr;
  int positive = 0;
  for (const WeightedVote& v : votes) {
    if (!std::isfinite(v.weight) || v.weight < 0.0)
      throw std::domain_error("vote weight must be finite and nonnegative");
    if (v.weight > 0.0) {
      ++positive;
      only = &v;
    }
    num += v.vote.value() * v.weight;
    den += v.weight;
  }
  if (positive == 0) throw NoVotersError();
  if (positive == 1) return only->vote;
  return TrustRate(num / den);
}

struct TrustLeaf {
  std::string name;
  double weight = 0.0;
  TrustRate value;

  friend bool operator==(const TrustLeaf&, const TrustLeaf&) = default;
};

// Two-branch weighted component tree behind a direct trust rate: static
// attributes on the inherent branch, measured behaviour on the observed one.
// Each branch's weights must sum to 1.
struct TrustTree {
  std::vector<TrustLeaf> inherent;
  std::vector<TrustLeaf> observed;

  void validate() const {
    check_branch(inherent, "inherent");
    check_branch(observed, "observed");
  }

  friend bool operator==(const TrustTree&, const TrustTree&) = default;

 private:
  static void check_branch(const std::vector<TrustLeaf>& leaves, const char* branch) {
    if (leaves.empty())
      throw std::domain_error(std::string(branch) + " branch has no components");
    double sum = 0.0;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (!std::isfinite(leaves[i].weight) || leaves[i].weight < 0.0)
        throw std::domain_error(std::string(branch) + " component '" + leaves[i].name +
                                "' has a negative weight");
      for (std::size_t j = 0; j < i; ++j)
        if (leaves[j].name == leaves[i].name)
          throw std::domain_error(std::string(branch) + " component '" + leaves[i].name +
                                  "' appears twice");
      sum += leaves[i].weight;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::domain_error(std::string(branch) + " component weights must sum to 1");
  }
};

inline TrustRate evaluate_trust_tree(const TrustTree& tree, const TrustWeights2& w = {}) {
  tree.validate();
  const auto branch_value = [](const std::vector<TrustLeaf>& leaves) {
    double s = 0.0;
    for (const TrustLeaf& l : leaves) s += l.weight * l.value.value();
    return TrustRate(s);
  };
  return universal_trust(branch_value(tree.inherent), branch_value(tree.observed), w);
}

}  // namespace tbgp
