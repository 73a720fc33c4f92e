#include <gtest/gtest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "funcest/baselines.hpp"
#include "funcest/error.hpp"
#include "funcest/methods.hpp"
#include "funcest/rng.hpp"
#include "funcest/synth.hpp"

using namespace funcest;

namespace {

Histogram counts(std::vector<Count> c) { return Histogram::from_count_vector(c); }

// Plug-in entropy straight from the definition, as an oracle.
double plugin(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double naive_jackknife(const std::vector<Count>& c) {
  std::vector<Symbol> samples;
  for (std::size_t s = 0; s < c.size(); ++s) samples.insert(samples.end(), c[s], s);
  const double n = static_cast<double>(samples.size());
  double loo = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    std::vector<Symbol> rest = samples;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    loo += mle_entropy(Histogram::from_samples(rest));
  }
  return n * mle_entropy(Histogram::from_samples(samples)) - (n - 1.0) / n * loo;
}

}  // namespace

TEST(Mle, Examples) {
  EXPECT_NEAR(mle_entropy(counts({2, 2})), std::numbers::ln2, 1e-15);
  EXPECT_EQ(mle_entropy(counts({4})), 0.0);
  EXPECT_NEAR(mle_entropy(counts({3, 1})), -0.75 * std::log(0.75) - 0.25 * std::log(0.25), 1e-15);
  EXPECT_NEAR(mle_entropy(counts({3, 1})), 0.5623, 1e-4);
}

TEST(MillerMadow, Examples) {
  EXPECT_NEAR(miller_madow(counts({2, 2}), SupportHint::known(2)), std::numbers::ln2 + 1.0 / 8, 1e-15);
  EXPECT_EQ(miller_madow(counts({4})), 0.0);
  EXPECT_NEAR(miller_madow(counts({2, 2}), SupportHint::known(4)), std::numbers::ln2 + 3.0 / 8, 1e-15);
  EXPECT_THROW(miller_madow(counts({1, 1, 1}), SupportHint::known(2)), DomainError);
}

TEST(Jackknife, Examples) {
  for (Count n : {2u, 5u, 40u}) EXPECT_NEAR(jackknife_entropy(counts({n})), 0.0, 1e-12);
  EXPECT_NEAR(jackknife_entropy(counts({1, 1})), 2 * std::numbers::ln2, 1e-15);
  EXPECT_THROW(jackknife_entropy(counts({1})), DomainError);
}

TEST(Jackknife, GroupedEqualsNaiveLoop) {
  EXPECT_NEAR(jackknife_entropy(counts({3, 2, 1})), naive_jackknife({3, 2, 1}), 1e-12);
  SeededRng rng(2);
  for (int rep = 0; rep < 5; ++rep) {
    const auto h = sample_multinomial(zipf_dist(12, 1.0), 60, rng);
    std::vector<Count> c(12, 0);
    for (const Bin& b : h.bins()) c[b.symbol] = b.count;
    EXPECT_NEAR(jackknife_entropy(h), naive_jackknife(c), 1e-11);
  }
}

TEST(Cae, Examples) {
  EXPECT_NEAR(cae_entropy(counts({2, 2})), 2 * (-0.5 * std::log(0.5)) / (1 - std::pow(0.5, 4)), 1e-14);
  EXPECT_NEAR(cae_entropy(counts({2, 2})), 0.73935, 1e-5);
  EXPECT_EQ(cae_entropy(counts({4})), 0.0);
  EXPECT_THROW(cae_entropy(counts({1, 1})), CoverageError);
}

TEST(GrassbergerEntropy, Examples) {
  constexpr double gamma = 0.57721566490153286061;
  EXPECT_NEAR(grassberger_entropy(counts({1})), gamma + std::numbers::ln2, 1e-12);
  const double g2 = (1 - gamma) + (1 - std::numbers::ln2);
  EXPECT_NEAR(grassberger_entropy(counts({2, 2})), std::log(4.0) - g2, 1e-12);
  EXPECT_EQ(grassberger_entropy(Histogram::from_counts({{0, 3}, {1, 1}})),
            grassberger_entropy(Histogram::from_counts({{0, 1}, {1, 3}})));
}

TEST(Dirichlet, PluginExamples) {
  EXPECT_NEAR(dirichlet_plugin_entropy(counts({2, 2}), 2, 1.0), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(dirichlet_plugin_entropy(counts({4}), 2, 1.0), plugin({5.0 / 6, 1.0 / 6}), 1e-15);
  SeededRng rng(3);
  const auto h = sample_multinomial(uniform_dist(30), 50, rng);
  EXPECT_NEAR(dirichlet_plugin_entropy(h, 40, 1e-12), mle_entropy(h), 1e-8);
  EXPECT_THROW(dirichlet_plugin_entropy(counts({1, 1, 1}), 2, 1.0), DomainError);
  EXPECT_THROW(dirichlet_plugin_entropy(counts({1, 1}), 2, 0.0), DomainError);
}

TEST(Dirichlet, BayesExamples) {
  EXPECT_NEAR(dirichlet_bayes_entropy(counts({7}), 1, 0.3), 0.0, 1e-14);
  const double want = 2 * (3.0 / 6) * (boost::math::digamma(7.0) - boost::math::digamma(4.0));
  EXPECT_NEAR(dirichlet_bayes_entropy(counts({2, 2}), 2, 1.0), want, 1e-13);
  EXPECT_EQ(dirichlet_bayes_entropy(Histogram::from_counts({{0, 3}, {1, 1}}), 3, 0.5),
            dirichlet_bayes_entropy(Histogram::from_counts({{0, 1}, {1, 3}}), 3, 0.5));
  EXPECT_THROW(dirichlet_bayes_entropy(counts({1, 1, 1}), 2, 1.0), DomainError);
}

TEST(Dirichlet, DefaultConcentration) {
  EXPECT_DOUBLE_EQ(default_dirichlet_a(100, 20), 0.5);
  EXPECT_THROW(default_dirichlet_a(100, 0), DomainError);
}

TEST(Shrinkage, Examples) {
  EXPECT_EQ(shrinkage_lambda(counts({2, 2}), 2), 1.0);
  EXPECT_NEAR(shrinkage_entropy(counts({2, 2}), 2), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(shrinkage_lambda(counts({3, 1}), 2), 1.0, 1e-15);
  EXPECT_NEAR(shrinkage_entropy(counts({3, 1}), 2), std::numbers::ln2, 1e-15);
  EXPECT_THROW(shrinkage_entropy(counts({1}), 1), DomainError);
}

TEST(Shrinkage, ZeroLambdaReducesToPlugin) {
  // A deterministic empirical distribution over S = 2 gives lambda = 0.
  const auto h = counts({50});
  EXPECT_EQ(shrinkage_lambda(h, 2), 0.0);
  EXPECT_NEAR(shrinkage_entropy(h, 2), mle_entropy(h), 1e-15);
}

TEST(Shrinkage, LambdaMatchesFormulaInsideRange) {
  const auto h = counts({10, 5, 3, 2});
  const double n = 20.0;
  double sq = 0.0;
  for (double c : {10.0, 5.0, 3.0, 2.0}) sq += (c / n) * (c / n);
  const double want = (1 - sq) / ((n - 1) * (sq - 1.0 / 6));
  ASSERT_GT(want, 0.0);
  ASSERT_LT(want, 1.0);
  EXPECT_NEAR(shrinkage_lambda(h, 6), want, 1e-15);
}

TEST(ExactBias, MultinomialEnumerationThreeSymbolsTenSamples) {
  // Exact expectations over every outcome of Multinomial(10; 1/3, 1/3, 1/3).
  constexpr int n = 10;
  const double truth = std::log(3.0);
  double e_mle = 0.0;
  double e_mm = 0.0;
  double total_prob = 0.0;
  std::vector<double> fact(n + 1, 1.0);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; a + b <= n; ++b) {
      const int c = n - a - b;
      const double prob = fact[n] / (fact[a] * fact[b] * fact[c]) * std::pow(1.0 / 3, n);
      const auto h = counts({static_cast<Count>(a), static_cast<Count>(b), static_cast<Count>(c)});
      e_mle += prob * mle_entropy(h);
      e_mm += prob * miller_madow(h, SupportHint::known(3));
      total_prob += prob;
    }
  }
  ASSERT_NEAR(total_prob, 1.0, 1e-12);
  const double bias_mle = e_mle - truth;
  const double bias_mm = e_mm - truth;
  EXPECT_LT(std::abs(bias_mm), std::abs(bias_mle));
  const double first_order = -(3.0 - 1.0) / (2.0 * n);
  EXPECT_NEAR(bias_mle, first_order, 0.25 * std::abs(first_order));
}

TEST(Baselines, LabelInvariant) {
  SeededRng rng(9);
  const auto h = sample_multinomial(zipf_dist(200, 1.1), 300, rng);
  std::vector<Bin> moved(h.bins().begin(), h.bins().end());
  for (auto& b : moved) b.symbol = 1'000'003 - b.symbol * 17;
  const auto g = Histogram::from_counts(moved);
  MethodOptions opts;
  opts.support = 250;
  for (const auto& name : method_names()) {
    const auto f = make_entropy_fn(parse_method(name), opts);
    EXPECT_EQ(f(h), f(g)) << name;
  }
}

TEST(Methods, ParseAndName) {
  for (const auto& name : method_names()) EXPECT_EQ(method_name(parse_method(name)), name);
  EXPECT_EQ(method_names().size(), 9u);
  EXPECT_THROW(parse_method("bub"), DomainError);
}

TEST(Methods, SupportFallsBackToObserved) {
  const auto h = counts({3, 1, 2});
  EXPECT_EQ(make_entropy_fn(EntropyMethod::MillerMadow)(h), miller_madow(h));
  MethodOptions known;
  known.support = 10;
  EXPECT_EQ(make_entropy_fn(EntropyMethod::MillerMadow, known)(h), miller_madow(h, SupportHint::known(10)));
  EXPECT_EQ(make_entropy_fn(EntropyMethod::Dirichlet, known)(h),
            dirichlet_plugin_entropy(h, 10, default_dirichlet_a(6, 10)));
  known.dirichlet_a = 0.25;
  EXPECT_EQ(make_entropy_fn(EntropyMethod::Bayes, known)(h), dirichlet_bayes_entropy(h, 10, 0.25));
}
