#include "funcest/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "funcest/error.hpp"

namespace funcest {

namespace {

// Neumaier-compensated sum; plain summation drifts past 1e-12 for S ~ 1e5.
double compensated_sum(std::span<const double> xs) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("distribution: empty probability vector");
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("distribution: negative or non-finite entry");
  }
  if (std::abs(compensated_sum(probs_) - 1.0) > 1e-12) throw DomainError("distribution: entries do not sum to 1");
}

DiscreteDistribution DiscreteDistribution::from_weights(std::vector<double> weights) {
  // Second pass absorbs the rounding left by the first.
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("distribution: negative or non-finite weight");
  }
  const double total = compensated_sum(weights);
  if (!(total > 0.0)) throw DomainError("distribution: weights sum to zero");
  for (double& w : weights) w /= total;
  const double again = compensated_sum(weights);
  if (std::abs(again - 1.0) > 1e-14) {
    for (double& w : weights) w /= again;
  }
  return DiscreteDistribution(std::move(weights));
}

DiscreteDistribution uniform_dist(std::size_t s) {
  if (s == 0) throw DomainError("uniform_dist: S must be >= 1");
  return DiscreteDistribution::from_weights(std::vector<double>(s, 1.0));
}

DiscreteDistribution zipf_dist(std::size_t s, double alpha) {
  if (s == 0) throw DomainError("zipf_dist: S must be >= 1");
  std::vector<double> w(s);
  for (std::size_t i = 0; i < s; ++i) w[i] = std::pow(static_cast<double>(i + 1), -alpha);
  return DiscreteDistribution::from_weights(std::move(w));
}

namespace {

double beta_draw(double a, double b, SeededRng& rng) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  for (;;) {
    const double x = ga(rng);
    const double y = gb(rng);
    if (x + y > 0.0) return x / (x + y);
  }
}

}  // namespace

DiscreteDistribution beta_random_dist(std::size_t s, double a, double b, SeededRng& rng) {
  if (s == 0) throw DomainError("beta_random_dist: S must be >= 1");
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_random_dist: shape parameters must be positive");
  std::vector<double> w(s);
  for (auto& v : w) v = beta_draw(a, b, rng);
  return DiscreteDistribution::from_weights(std::move(w));
}

CategoricalSampler::CategoricalSampler(const DiscreteDistribution& p) : cdf_(p.size()) {
  std::partial_sum(p.probs().begin(), p.probs().end(), cdf_.begin());
}

Symbol CategoricalSampler::operator()(SeededRng& rng) const {
  const double u = rng.uniform() * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<Symbol>(it - cdf_.begin());
}

std::vector<Symbol> sample_categorical(const DiscreteDistribution& p, std::size_t n, SeededRng& rng) {
  const CategoricalSampler draw(p);
  std::vector<Symbol> out(n);
  for (auto& s : out) s = draw(rng);
  return out;
}

Histogram sample_multinomial(const DiscreteDistribution& p, Count n, SeededRng& rng) {
  if (n == 0) throw DomainError("sample_multinomial: n must be >= 1");
  std::vector<Count> counts(p.size(), 0);
  Count remaining = n;
  double mass = 1.0;
  for (std::size_t i = 0; i < p.size() && remaining > 0; ++i) {
    if (i + 1 == p.size() || mass <= 0.0) {
      counts[i] = remaining;
      remaining = 0;
      break;
    }
    const double q = std::clamp(p[i] / mass, 0.0, 1.0);
    std::binomial_distribution<Count> draw(remaining, q);
    const Count k = draw(rng);
    counts[i] = k;
    remaining -= k;
    mass -= p[i];
  }
  return Histogram::from_count_vector(counts);
}

Histogram sample_poissonized(const DiscreteDistribution& p, double n, SeededRng& rng) {
  if (!(n >= 1.0)) throw DomainError("sample_poissonized: n must be >= 1");
  std::vector<Count> counts(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    std::poisson_distribution<Count> draw(n * p[i]);
    counts[i] = draw(rng);
  }
  return Histogram::from_count_vector(counts);
}

StarTreeData star_tree_dataset(int d, std::size_t s, std::size_t n, SeededRng& rng, double beta_a,
                               double beta_b) {
  if (d < 3) throw DomainError("star_tree_dataset: need d >= 3");
  if (s < 2) throw DomainError("star_tree_dataset: need S >= 2");
  if (n == 0) throw DomainError("star_tree_dataset: need n >= 1");

  DiscreteDistribution root = beta_random_dist(s, beta_a, beta_b, rng);
  std::vector<std::vector<DiscreteDistribution>> transitions;
  transitions.reserve(static_cast<std::size_t>(d - 1));
  for (int k = 1; k < d; ++k) {
    std::vector<DiscreteDistribution> rows;
    rows.reserve(s);
    for (std::size_t x = 0; x < s; ++x) rows.push_back(beta_random_dist(s, beta_a, beta_b, rng));
    transitions.push_back(std::move(rows));
  }

  std::vector<std::vector<Symbol>> cols(static_cast<std::size_t>(d), std::vector<Symbol>(n));
  const CategoricalSampler root_draw(root);
  std::vector<std::vector<CategoricalSampler>> row_draw;
  for (const auto& rows : transitions) {
    std::vector<CategoricalSampler> samplers;
    for (const auto& r : rows) samplers.emplace_back(r);
    row_draw.push_back(std::move(samplers));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Symbol x0 = root_draw(rng);
    cols[0][i] = x0;
    for (int k = 1; k < d; ++k) cols[static_cast<std::size_t>(k)][i] = row_draw[k - 1][x0](rng);
  }

  return StarTreeData{DatasetMatrix::from_columns(std::move(cols)), TreeModel::star(d, 0),
                      std::move(root), std::move(transitions)};
}

std::vector<std::vector<double>> star_edge_joint(const DiscreteDistribution& root,
                                                 const std::vector<DiscreteDistribution>& transition) {
  std::vector<std::vector<double>> joint(root.size());
  for (std::size_t x = 0; x < root.size(); ++x) {
    joint[x].resize(transition[x].size());
    for (std::size_t y = 0; y < transition[x].size(); ++y) joint[x][y] = root[x] * transition[x][y];
  }
  return joint;
}

std::vector<std::vector<double>> star_leaf_joint(const DiscreteDistribution& root,
                                                 const std::vector<DiscreteDistribution>& tj,
                                                 const std::vector<DiscreteDistribution>& tk) {
  const std::size_t sj = tj.front().size();
  const std::size_t sk = tk.front().size();
  std::vector<std::vector<double>> joint(sj, std::vector<double>(sk, 0.0));
  for (std::size_t x = 0; x < root.size(); ++x) {
    for (std::size_t a = 0; a < sj; ++a) {
      for (std::size_t b = 0; b < sk; ++b) joint[a][b] += root[x] * tj[x][a] * tk[x][b];
    }
  }
  return joint;
}

MarkovSequence additive_markov_sequence(const DiscreteDistribution& noise, std::size_t depth,
                                        std::size_t n, SeededRng& rng) {
  const std::size_t s = noise.size();
  if (s < 2) throw DomainError("additive_markov_sequence: need S >= 2");
  if (depth < 1) throw DomainError("additive_markov_sequence: need D >= 1");
  if (n <= depth) throw DomainError("additive_markov_sequence: need n > D");
  std::vector<Symbol> z = sample_categorical(noise, n, rng);
  std::vector<Symbol> x(n);
  Symbol window = 0;  // sum of the previous D symbols, mod S
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = k < depth ? z[k] : (z[k] + window) % s;
    window = (window + x[k]) % s;
    if (k >= depth) window = (window + s - x[k - depth]) % s;
  }
  const double rate = true_entropy(noise);
  return MarkovSequence{std::move(x), noise, rate};
}

MarkovSequence additive_markov_sequence(std::size_t s, std::size_t depth, std::size_t n, SeededRng& rng) {
  DiscreteDistribution noise = beta_random_dist(s, 0.6, 0.5, rng);
  return additive_markov_sequence(noise, depth, n, rng);
}

std::vector<std::vector<double>> modular_channel_joint(const DiscreteDistribution& px,
                                                       const DiscreteDistribution& pz) {
  const std::size_t s = px.size();
  if (pz.size() != s) throw DomainError("modular_channel_joint: alphabet sizes differ");
  std::vector<std::vector<double>> joint(s, std::vector<double>(s, 0.0));
  for (std::size_t x = 0; x < s; ++x) {
    for (std::size_t z = 0; z < s; ++z) joint[x][(x + z) % s] += px[x] * pz[z];
  }
  return joint;
}

double true_entropy(const DiscreteDistribution& p) {
  double h = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double true_falpha(const DiscreteDistribution& p, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("true_falpha: alpha must be positive");
  double f = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) f += std::pow(v, alpha);
  }
  return f;
}

double true_renyi(const DiscreteDistribution& p, double alpha) {
  if (alpha == 1.0) throw DomainError("true_renyi: alpha = 1 is the Shannon entropy");
  return std::log(true_falpha(p, alpha)) / (1.0 - alpha);
}

double true_mi(const std::vector<std::vector<double>>& joint) {
  if (joint.empty()) throw DomainError("true_mi: empty joint table");
  const std::size_t cols = joint.front().size();
  std::vector<double> px(joint.size(), 0.0);
  std::vector<double> py(cols, 0.0);
  for (std::size_t x = 0; x < joint.size(); ++x) {
    if (joint[x].size() != cols) throw DomainError("true_mi: ragged joint table");
    for (std::size_t y = 0; y < cols; ++y) {
      px[x] += joint[x][y];
      py[y] += joint[x][y];
    }
  }
  double mi = 0.0;
  for (std::size_t x = 0; x < joint.size(); ++x) {
    for (std::size_t y = 0; y < cols; ++y) {
      const double p = joint[x][y];
      if (p > 0.0) mi += p * std::log(p / (px[x] * py[y]));
    }
  }
  return mi;
}

}  // namespace funcest
