#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "funcest/baselines.hpp"
#include "funcest/composite.hpp"
#include "funcest/error.hpp"
#include "funcest/methods.hpp"
#include "funcest/rng.hpp"
#include "funcest/synth.hpp"

using namespace funcest;

namespace {

std::vector<EntropyFn> all_fns() {
  std::vector<EntropyFn> fns;
  for (const auto& name : method_names()) fns.push_back(make_entropy_fn(parse_method(name)));
  return fns;
}

PairHistogram random_pairs(std::size_t n, std::size_t sx, std::size_t sy, std::uint64_t seed) {
  SeededRng rng(seed);
  const auto x = sample_categorical(zipf_dist(sx, 0.8), n, rng);
  const auto y = sample_categorical(uniform_dist(sy), n, rng);
  return PairHistogram::from_samples(x, y);
}

}  // namespace

TEST(PairHistogram, MarginalizeExamples) {
  const auto ph = PairHistogram::from_counts({{0, 10, 1}, {0, 11, 2}});
  EXPECT_EQ(ph.marginalize(PairHistogram::Axis::First), Histogram::from_counts({{0, 3}}));
  const auto q = PairHistogram::from_counts({{0, 10, 1}, {1, 10, 1}});
  EXPECT_EQ(q.marginalize(PairHistogram::Axis::Second), Histogram::from_counts({{10, 2}}));
}

TEST(PairHistogram, CountConservation) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ph = random_pairs(500, 30, 7, seed);
    EXPECT_EQ(ph.n(), 500u);
    EXPECT_EQ(ph.marginalize(PairHistogram::Axis::First).n(), ph.n());
    EXPECT_EQ(ph.marginalize(PairHistogram::Axis::Second).n(), ph.n());
    EXPECT_EQ(ph.joint().n(), ph.n());
  }
}

TEST(PairHistogram, InputValidation) {
  const std::vector<Symbol> a{1, 2, 3};
  const std::vector<Symbol> b{1, 2};
  EXPECT_THROW(PairHistogram::from_samples(a, b), DomainError);
  EXPECT_THROW(PairHistogram::from_samples({}, {}), DomainError);
}

TEST(Mi, SymmetricUnderTranspose) {
  const auto ph = random_pairs(300, 40, 12, 3);
  for (const auto& f : all_fns()) EXPECT_EQ(estimate_mi(ph, f), estimate_mi(ph.transpose(), f));
}

TEST(Mi, SelfInformationEqualsEntropy) {
  SeededRng rng(4);
  const auto x = sample_categorical(zipf_dist(60, 1.0), 400, rng);
  const auto ph = PairHistogram::from_samples(x, x);
  const auto hx = Histogram::from_samples(x);
  for (const auto& f : all_fns()) EXPECT_EQ(estimate_mi(ph, f), f(hx));
}

TEST(Mi, IndependentUniformNearZero) {
  const auto f = make_entropy_fn(EntropyMethod::Mle);
  double sum = 0.0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    SeededRng rng(11, t);
    const auto x = sample_categorical(uniform_dist(2), 1'000'000, rng);
    const auto y = sample_categorical(uniform_dist(2), 1'000'000, rng);
    sum += estimate_mi(PairHistogram::from_samples(x, y), f);
  }
  EXPECT_LT(std::abs(sum / 20), 0.01);
}

TEST(Mi, TruthOracleSmallTable) {
  const std::vector<std::vector<double>> joint{{0.4, 0.1}, {0.1, 0.4}};
  double direct = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) direct += joint[i][j] * std::log(joint[i][j] / 0.25);
  }
  EXPECT_NEAR(direct, 0.192745, 1e-6);
  EXPECT_NEAR(true_mi(joint), direct, 1e-15);

  // Counts proportional to the table: plug-in recovers the truth exactly.
  const auto ph = PairHistogram::from_counts({{0, 0, 400000}, {0, 1, 100000}, {1, 0, 100000}, {1, 1, 400000}});
  EXPECT_NEAR(estimate_mi(ph, make_entropy_fn(EntropyMethod::Mle)), direct, 1e-12);
}

TEST(Mi, ClampOption) {
  const auto ph = PairHistogram::from_counts({{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});
  const auto mm = make_entropy_fn(EntropyMethod::MillerMadow);
  const double raw = estimate_mi(ph, mm);
  ASSERT_LT(raw, 0.0);
  EXPECT_EQ(estimate_mi(ph, mm, MiOptions{.clamp_at_zero = true}), 0.0);
}

TEST(Mi, RequiresTwoSamples) {
  const auto ph = PairHistogram::from_counts({{0, 0, 1}});
  EXPECT_THROW(estimate_mi(ph, make_entropy_fn(EntropyMethod::Mle)), DomainError);
}

TEST(TupleHistogram, WindowCounts) {
  SeededRng rng(5);
  const auto seq = sample_categorical(uniform_dist(4), 100, rng);
  for (std::size_t d = 0; d <= 4; ++d) {
    EXPECT_EQ(tuple_histogram(seq, d + 1).n(), 100 - d);
    if (d > 0) EXPECT_EQ(tuple_histogram(seq, d).n(), 100 - d + 1);
  }
}

TEST(TupleHistogram, DistinctTuplesDistinctSymbols) {
  const std::vector<Symbol> seq{0, 1, 0, 1, 1, 0};
  // Windows: 01 10 01 11 10.
  const auto h = tuple_histogram(seq, 2);
  EXPECT_EQ(h.support(), 3u);
  EXPECT_EQ(h.n(), 5u);
}

TEST(Rate, ConstantSequenceIsZero) {
  const std::vector<Symbol> seq(50, 7);
  for (std::size_t d = 0; d < 4; ++d) {
    EXPECT_EQ(estimate_entropy_rate(seq, d, make_entropy_fn(EntropyMethod::Mle)), 0.0);
  }
}

TEST(Rate, DepthZeroIsPlainEntropy) {
  SeededRng rng(6);
  const auto seq = sample_categorical(zipf_dist(20, 1.0), 300, rng);
  const auto f = make_entropy_fn(EntropyMethod::Jvhw);
  EXPECT_EQ(estimate_entropy_rate(seq, 0, f), f(Histogram::from_samples(seq)));
}

TEST(Rate, TooShortThrows) {
  const std::vector<Symbol> seq{1, 2, 3};
  EXPECT_THROW(estimate_entropy_rate(seq, 2, make_entropy_fn(EntropyMethod::Mle)), DomainError);
  EXPECT_NO_THROW(estimate_entropy_rate(seq, 1, make_entropy_fn(EntropyMethod::Mle)));
}

TEST(Rate, AdditiveProcessRecoversNoiseEntropy) {
  SeededRng rng(7);
  const auto m = additive_markov_sequence(5, 2, 100'000, rng);
  EXPECT_DOUBLE_EQ(m.true_rate, true_entropy(m.noise));
  const double est = estimate_entropy_rate(m.sequence, 2, make_entropy_fn(EntropyMethod::Mle));
  EXPECT_NEAR(est, m.true_rate, 0.05);
}
