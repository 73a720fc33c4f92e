#pragma once

// Distributions, samplers and exact truth oracles for the experiments.

#include <cstddef>
#include <span>
#include <vector>

#include "funcest/graphical.hpp"
#include "funcest/histogram.hpp"
#include "funcest/rng.hpp"

namespace funcest {

/// Probability vector over symbols 0..S-1; entries >= 0 summing to 1
/// within 1e-12.
class DiscreteDistribution {
 public:
  /// Validates; throws DomainError on negative entries or bad normalization.
  explicit DiscreteDistribution(std::vector<double> probs);
  /// Normalizes non-negative weights with a positive sum.
  static DiscreteDistribution from_weights(std::vector<double> weights);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

 private:
  std::vector<double> probs_;
};

DiscreteDistribution uniform_dist(std::size_t s);
/// p_i proportional to i^-alpha, i = 1..S.
DiscreteDistribution zipf_dist(std::size_t s, double alpha);
/// S independent Beta(a, b) draws, normalized.
DiscreteDistribution beta_random_dist(std::size_t s, double a, double b, SeededRng& rng);

/// Categorical draws by inverse CDF over the cumulative table.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(const DiscreteDistribution& p);
  Symbol operator()(SeededRng& rng) const;

 private:
  std::vector<double> cdf_;
};

std::vector<Symbol> sample_categorical(const DiscreteDistribution& p, std::size_t n, SeededRng& rng);

/// n i.i.d. draws aggregated, via sequential conditional binomials.
Histogram sample_multinomial(const DiscreteDistribution& p, Count n, SeededRng& rng);

/// Independent Poisson(n p_i) counts; total is random.
Histogram sample_poissonized(const DiscreteDistribution& p, double n, SeededRng& rng);

struct StarTreeData {
  DatasetMatrix data;
  /// Star centered at variable 0.
  TreeModel truth;
  DiscreteDistribution root;
  /// transitions[k-1][x] = P(X_k | X_0 = x) for k = 1..d-1.
  std::vector<std::vector<DiscreteDistribution>> transitions;
};

/// Marginal and transition rows filled with Beta(a, b) entries and
/// normalized; X_0 drawn from the marginal, each X_k from its row given X_0.
StarTreeData star_tree_dataset(int d, std::size_t s, std::size_t n, SeededRng& rng,
                               double beta_a = 0.5, double beta_b = 0.5);

/// Exact joint P(X_0 = x, X_k = y) = root[x] transition[x][y].
std::vector<std::vector<double>> star_edge_joint(const DiscreteDistribution& root,
                                                 const std::vector<DiscreteDistribution>& transition);

/// Exact joint of two leaves X_j, X_k of the star.
std::vector<std::vector<double>> star_leaf_joint(const DiscreteDistribution& root,
                                                 const std::vector<DiscreteDistribution>& tj,
                                                 const std::vector<DiscreteDistribution>& tk);

struct MarkovSequence {
  std::vector<Symbol> sequence;
  DiscreteDistribution noise;
  /// H(P_Z); each step is a bijective shift of Z given the past.
  double true_rate;
};

/// X_k = Z_k for k <= D, then X_k = (Z_k + sum_{j=k-D}^{k-1} X_j) mod S.
MarkovSequence additive_markov_sequence(const DiscreteDistribution& noise, std::size_t depth,
                                        std::size_t n, SeededRng& rng);
/// Draws P_Z from normalized Beta(0.6, 0.5) entries first.
MarkovSequence additive_markov_sequence(std::size_t s, std::size_t depth, std::size_t n,
                                        SeededRng& rng);

/// Joint of (X, (X + Z) mod S).
std::vector<std::vector<double>> modular_channel_joint(const DiscreteDistribution& px,
                                                       const DiscreteDistribution& pz);

double true_entropy(const DiscreteDistribution& p);
double true_falpha(const DiscreteDistribution& p, double alpha);
/// ln F_alpha / (1 - alpha), alpha != 1.
double true_renyi(const DiscreteDistribution& p, double alpha);
/// sum p(x,y) ln(p(x,y) / (p(x) p(y))) over a rectangular joint table.
double true_mi(const std::vector<std::vector<double>>& joint);

}  // namespace funcest
