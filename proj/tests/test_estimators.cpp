#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "funcest/approx.hpp"
#include "funcest/error.hpp"
#include "funcest/estimators.hpp"
#include "funcest/histogram.hpp"
#include "funcest/rng.hpp"
#include "funcest/synth.hpp"

using namespace funcest;

namespace {

EstimatorConfig reference_config() {
  EstimatorConfig cfg;
  cfg.c1 = 0.1;
  cfg.c2 = 0.7;
  return cfg;
}

Histogram relabel(const Histogram& h, std::uint64_t seed) {
  std::vector<Bin> bins(h.bins().begin(), h.bins().end());
  std::vector<Symbol> ids(bins.size());
  std::iota(ids.begin(), ids.end(), Symbol{1000});
  std::mt19937_64 gen(seed);
  std::shuffle(ids.begin(), ids.end(), gen);
  for (std::size_t i = 0; i < bins.size(); ++i) bins[i].symbol = ids[i] * 7919;
  return Histogram::from_counts(std::move(bins));
}

}  // namespace

// Histogram

TEST(Histogram, FromSamples) {
  const std::vector<Symbol> s{10, 20, 10};
  const auto h = Histogram::from_samples(s);
  EXPECT_EQ(h.n(), 3u);
  EXPECT_EQ(h.support(), 2u);
  EXPECT_EQ(h.count_of(10), 2u);
  EXPECT_EQ(h.count_of(20), 1u);
  EXPECT_EQ(h.count_of(30), 0u);

  const std::vector<Symbol> one{5};
  const auto h1 = Histogram::from_samples(one);
  EXPECT_EQ(h1.n(), 1u);
  EXPECT_EQ(h1.count_of(5), 1u);

  const std::vector<Symbol> many(1000, 3);
  const auto hm = Histogram::from_samples(many);
  EXPECT_EQ(hm.n(), 1000u);
  EXPECT_EQ(hm.support(), 1u);
}

TEST(Histogram, EmptySampleThrows) {
  const std::vector<Symbol> none;
  EXPECT_THROW(Histogram::from_samples(none), DomainError);
}

TEST(Histogram, FromCountsMergesAndDropsZeros) {
  const auto h = Histogram::from_counts({{4, 2}, {1, 0}, {4, 3}, {2, 1}});
  EXPECT_EQ(h.n(), 6u);
  EXPECT_EQ(h.support(), 2u);
  EXPECT_EQ(h.count_of(4), 5u);
  EXPECT_EQ(h.count_of(1), 0u);
}

TEST(Histogram, ProfileAndCanonical) {
  const std::vector<Count> c{3, 0, 1, 3, 2};
  const auto h = Histogram::from_count_vector(c);
  const auto prof = h.profile();
  EXPECT_EQ(prof.at(3), 2u);
  EXPECT_EQ(prof.at(1), 1u);
  EXPECT_EQ(prof.at(2), 1u);
  EXPECT_EQ(h.canonical(), relabel(h, 3).canonical());
}

// Thresholds and building blocks

TEST(Thresholds, ReferenceConstantsAtTenThousand) {
  const auto th = thresholds(10000, reference_config());
  EXPECT_NEAR(th.delta, 9.2103e-5, 1e-8);
  EXPECT_EQ(th.degree, 7);
  EXPECT_NEAR(th.t, 2.3026e-5, 1e-8);
}

TEST(Thresholds, UnitC1) {
  EstimatorConfig cfg;
  cfg.c1 = 1.0;
  EXPECT_NEAR(thresholds(8, cfg).delta, std::log(8.0) / 8.0, 1e-15);
  EXPECT_NEAR(thresholds(8, cfg).delta, 0.2599, 1e-4);
}

TEST(Thresholds, DegreeFloor) {
  EXPECT_EQ(thresholds(2, reference_config()).degree, 1);
  EstimatorConfig cfg;
  cfg.k_min = 5;
  EXPECT_EQ(thresholds(2, cfg).degree, 5);
}

TEST(Thresholds, Errors) {
  EXPECT_THROW(thresholds(1, {}), DomainError);
  EXPECT_THROW(thresholds(0, {}), DomainError);
  EstimatorConfig bad;
  bad.c1 = 0.0;
  EXPECT_THROW(validate(bad), DomainError);
  bad.c1 = 11.0;
  EXPECT_THROW(validate(bad), DomainError);
  bad = {};
  bad.c2 = -1.0;
  EXPECT_THROW(validate(bad), DomainError);
  bad = {};
  bad.k_min = 0;
  EXPECT_THROW(validate(bad), DomainError);
}

TEST(Thresholds, WarnsWhenDegreeConstantLarge) {
  EstimatorConfig cfg;
  cfg.c1 = 0.1;
  cfg.c2 = 0.7;
  EXPECT_FALSE(config_warnings(cfg).empty());
  cfg.c1 = 0.2;
  cfg.c2 = 0.5;
  EXPECT_TRUE(config_warnings(cfg).empty());
}

TEST(InterpWindow, KnotsAndMidpoint) {
  const double t = 0.003;
  EXPECT_EQ(interp_window(0.0, t), 0.0);
  EXPECT_EQ(interp_window(t, t), 0.0);
  EXPECT_NEAR(interp_window(2 * t, t), 1.0, 1e-15);
  EXPECT_EQ(interp_window(5 * t, t), 1.0);
  EXPECT_NEAR(interp_window(1.5 * t, t), 0.5, 1e-15);
}

TEST(InterpWindow, MonotoneAndSmoothAtKnots) {
  const double t = 1.0;
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double v = interp_window(1.0 + i / 1000.0, t);
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
  // Four vanishing derivatives: growth like u^5 next to the lower knot.
  const double h = 1e-3;
  EXPECT_NEAR(interp_window(t + h, t) / std::pow(h, 5), 126.0, 0.5);
  // The upper knot mirrors the lower one.
  for (double v : {0.01, 0.1, 0.3}) EXPECT_NEAR(1.0 - interp_window(2 * t - v, t), interp_window(t + v, t), 1e-12);
}

TEST(SPolyEval, Examples) {
  WindowedCoeffs w;
  w.constant = 0.7;
  w.coeffs = {0.0, 1.0, 0.5, 0.25};
  EXPECT_EQ(s_poly_eval(0, 10, w, false), 0.0);
  EXPECT_EQ(s_poly_eval(0, 10, w, true), 0.7);

  WindowedCoeffs lin;
  lin.coeffs = {0.0, 1.0};
  EXPECT_DOUBLE_EQ(s_poly_eval(3, 10, lin, false), 0.3);

  WindowedCoeffs sq;
  sq.coeffs = {0.0, 0.0, 1.0};
  EXPECT_DOUBLE_EQ(s_poly_eval(2, 4, sq, false), 0.125);
}

TEST(SPolyEval, PoissonUnbiasedFallingFactorial) {
  // Sum of the Poisson(np) pmf times prod_{r<k}(x/n - r/n) equals p^k.
  const Count n = 1000;
  for (double p : {0.01, 0.1}) {
    const double lambda = static_cast<double>(n) * p;
    for (int k = 1; k <= 5; ++k) {
      WindowedCoeffs mono;
      mono.coeffs.assign(static_cast<std::size_t>(k) + 1, 0.0);
      mono.coeffs[k] = 1.0;
      double mean = 0.0;
      double log_pmf = -lambda;
      double tail = 1.0;
      for (Count x = 0; x < 100000; ++x) {
        if (x > 0) log_pmf += std::log(lambda) - std::log(static_cast<double>(x));
        const double pmf = std::exp(log_pmf);
        mean += pmf * s_poly_eval(x, n, mono, false);
        tail -= pmf;
        if (static_cast<double>(x) > lambda && tail < 1e-13) break;
      }
      EXPECT_NEAR(mean / std::pow(p, k), 1.0, 1e-9) << "p=" << p << " k=" << k;
    }
  }
}

// Entropy

TEST(EstimateEntropy, SingleSymbolGivesBiasTerm) {
  for (Count n : {100u, 10000u, 1000000u}) {
    const std::vector<Count> c{n};
    EXPECT_NEAR(estimate_entropy(Histogram::from_count_vector(c)), 1.0 / (2.0 * static_cast<double>(n)), 1e-15);
  }
}

TEST(EstimateEntropy, SmoothRegimeClosedForm) {
  const std::vector<Count> c{500, 300, 150, 50};
  const auto h = Histogram::from_count_vector(c);
  const auto rep = estimate_entropy_report(h);
  ASSERT_EQ(rep.nonsmooth_symbols, 0u);
  const double n = 1000.0;
  double want = 0.0;
  for (Count x : c) {
    const double p = static_cast<double>(x) / n;
    want += -p * std::log(p);
  }
  want += 4.0 / (2.0 * n);
  EXPECT_NEAR(rep.value, want, 1e-14);
}

TEST(EstimateEntropy, ConsistentOnTwoSymbols) {
  const auto p = uniform_dist(2);
  double mean = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    SeededRng rng(11, trial);
    mean += estimate_entropy(sample_multinomial(p, 1000000, rng)) / 20.0;
  }
  EXPECT_NEAR(mean, std::log(2.0), 0.01);
}

TEST(EstimateEntropy, RmseDecreasesWithSampleSize) {
  SeededRng draw(5);
  const auto p = beta_random_dist(100, 0.6, 0.5, draw);
  const double truth = true_entropy(p);
  auto rmse = [&](Count n) {
    double sq = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      SeededRng rng(17, static_cast<std::uint64_t>(n) * 100 + trial);
      const double e = estimate_entropy(sample_multinomial(p, n, rng)) - truth;
      sq += e * e;
    }
    return std::sqrt(sq / 20.0);
  };
  EXPECT_GT(rmse(1000), rmse(1000000));
}

TEST(EstimateEntropy, NeedsTwoSamples) {
  const std::vector<Count> c{1};
  EXPECT_THROW(estimate_entropy(Histogram::from_count_vector(c)), DomainError);
}

TEST(EstimateEntropy, LabelInvariantAndDeterministic) {
  SeededRng rng(3);
  const auto p = zipf_dist(500, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    const auto h = sample_multinomial(p, 800, rng);
    const auto g = relabel(h, rep);
    EXPECT_EQ(estimate_entropy(h), estimate_entropy(g));
    EXPECT_EQ(estimate_entropy(h), estimate_entropy(h));
    EXPECT_EQ(estimate_falpha(h, 0.7), estimate_falpha(g, 0.7));
    EXPECT_EQ(estimate_renyi(h, 2.0), estimate_renyi(g, 2.0));
  }
}

TEST(EstimateEntropy, NonsmoothContributionsMatchCappedPolynomial) {
  // Reassemble the estimate from its parts for a sparse histogram.
  SeededRng rng(8);
  const auto h = sample_multinomial(uniform_dist(3000), 1500, rng);
  const EstimatorConfig cfg;
  const auto th = thresholds(h.n(), cfg);
  const auto f = TargetFunction::neg_x_log_x();
  const auto w = window_coeffs(cached_approx(f, th.degree), f, th.delta);
  const double n = static_cast<double>(h.n());
  double want = 0.0;
  for (const Bin& b : h.bins()) {
    const double x = static_cast<double>(b.count) / n;
    if (x <= 2 * th.delta) {
      want += std::min(s_poly_eval(b.count, h.n(), w, true), 1.0);
    } else {
      want += interp_window(x, th.t) * (-x * std::log(x) + 1.0 / (2.0 * n));
    }
  }
  EXPECT_NEAR(estimate_entropy(h, cfg), want, 1e-12);
}

TEST(EstimateEntropy, BoundaryCountGoesNonsmooth) {
  // Smallest c1 whose 2 delta reaches p = 4/1000; one ulp lower must flip the regime.
  const Count n = 1000;
  const std::vector<Count> c{4, 996};
  const auto h = Histogram::from_count_vector(c);
  const double p = 4.0 / 1000.0;
  EstimatorConfig cfg;
  cfg.c1 = 2.0 / std::log(1000.0);
  while (p > 2 * thresholds(n, cfg).delta) cfg.c1 = std::nextafter(cfg.c1, 1.0);
  while (true) {
    EstimatorConfig lower = cfg;
    lower.c1 = std::nextafter(cfg.c1, 0.0);
    if (p > 2 * thresholds(n, lower).delta) break;
    cfg = lower;
  }
  EXPECT_EQ(estimate_entropy_report(h, cfg).nonsmooth_symbols, 1u);
  EstimatorConfig below = cfg;
  below.c1 = std::nextafter(cfg.c1, 0.0);
  EXPECT_EQ(estimate_entropy_report(h, below).nonsmooth_symbols, 0u);
}

TEST(EstimateEntropy, ConstantTermSwitch) {
  SeededRng rng(4);
  const auto h = sample_multinomial(uniform_dist(2000), 1000, rng);
  EstimatorConfig with;
  EstimatorConfig without;
  without.keep_constant_term = false;
  const auto rw = estimate_entropy_report(h, with);
  const auto ro = estimate_entropy_report(h, without);
  const auto f = TargetFunction::neg_x_log_x();
  const auto w = window_coeffs(cached_approx(f, rw.thresholds.degree), f, rw.thresholds.delta);
  ASSERT_EQ(rw.capped_symbols, 0u);
  ASSERT_EQ(ro.capped_symbols, 0u);
  EXPECT_NEAR(rw.value - ro.value, static_cast<double>(rw.nonsmooth_symbols) * w.constant, 1e-12);
}

TEST(EstimateEntropy, SplitModeIsSeededAndReasonable) {
  SeededRng rng(12);
  const auto p = uniform_dist(50);
  const auto h = sample_multinomial(p, 20000, rng);
  EstimatorConfig cfg;
  cfg.split = true;
  cfg.split_seed = 99;
  const double a = estimate_entropy(h, cfg);
  EXPECT_EQ(a, estimate_entropy(h, cfg));
  EXPECT_NEAR(a, std::log(50.0), 0.05);
  const std::vector<Count> tiny{2, 1};
  EXPECT_THROW(estimate_entropy(Histogram::from_count_vector(tiny), cfg), DomainError);
}

// Power sums and Renyi

TEST(EstimateFalpha, SingleSymbol) {
  const Count n = 100000;
  const std::vector<Count> c{n};
  EXPECT_NEAR(estimate_falpha(Histogram::from_count_vector(c), 2.0), 1.0 - 1.0 / static_cast<double>(n), 1e-15);
}

TEST(EstimateFalpha, ConsistentOnTwoSymbols) {
  double mean = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    SeededRng rng(21, trial);
    mean += estimate_falpha(sample_multinomial(uniform_dist(2), 1000000, rng), 2.0) / 20.0;
  }
  EXPECT_NEAR(mean, 0.5, 0.01);
}

TEST(EstimateFalpha, AlphaDomain) {
  const std::vector<Count> c{3, 4};
  const auto h = Histogram::from_count_vector(c);
  EXPECT_THROW(estimate_falpha(h, 0.0), DomainError);
  EXPECT_THROW(estimate_falpha(h, -0.5), DomainError);
  EXPECT_THROW(estimate_falpha(h, 1.0), DomainError);
  EXPECT_THROW(estimate_renyi(h, 1.0), DomainError);
}

TEST(EstimateFalpha, NonsmoothContributionsNeverExceedOne) {
  // A wide window (c1 = 10) puts every symbol in the polynomial regime.
  EstimatorConfig cfg;
  cfg.c1 = 10.0;
  std::size_t capped = 0;
  for (double alpha : {0.25, 0.5, 0.75, 1.5}) {
    for (Count m = 2; m <= 60; ++m) {
      const std::vector<Count> c{m};
      const auto h = Histogram::from_count_vector(c);
      const auto rep = estimate_falpha_report(h, alpha, cfg);
      ASSERT_EQ(rep.nonsmooth_symbols, 1u);
      EXPECT_LE(rep.value, 1.0);
      const auto th = thresholds(m, cfg);
      const auto f = TargetFunction::power(alpha);
      const double s = s_poly_eval(m, m, window_coeffs(cached_approx(f, th.degree), f, th.delta), true);
      if (s > 1.0) {
        ++capped;
        EXPECT_EQ(rep.value, 1.0);
        EXPECT_EQ(rep.capped_symbols, 1u);
      } else {
        EXPECT_EQ(rep.value, s);
      }
    }
  }
  EXPECT_GT(capped, 0u) << "no configuration exercised the cap";
}

TEST(EstimateRenyi, SingleSymbol) {
  const Count n = 100000;
  const std::vector<Count> c{n};
  const double nd = static_cast<double>(n);
  EXPECT_NEAR(estimate_renyi(Histogram::from_count_vector(c), 2.0), -std::log(1.0 - 1.0 / nd), 1e-15);
  EXPECT_NEAR(estimate_renyi(Histogram::from_count_vector(c), 2.0), 1.0 / nd, 1e-9);
}

TEST(EstimateRenyi, FloorClampIsReported) {
  const std::vector<Count> c{30, 20, 10};
  const auto h = Histogram::from_count_vector(c);
  EstimatorConfig cfg;
  cfg.renyi_floor = 50.0;
  const auto rep = estimate_renyi_report(h, 0.5, cfg);
  EXPECT_TRUE(rep.clamped);
  EXPECT_DOUBLE_EQ(rep.value, std::log(50.0) / 0.5);
  EXPECT_FALSE(estimate_renyi_report(h, 0.5).clamped);
}

TEST(EstimateRenyi, MatchesLogOfPowerSum) {
  SeededRng rng(31);
  const auto h = sample_multinomial(zipf_dist(300, 1.2), 2000, rng);
  for (double alpha : {0.5, 2.0, 3.0}) {
    EXPECT_NEAR(estimate_renyi(h, alpha), std::log(estimate_falpha(h, alpha)) / (1.0 - alpha), 1e-14);
  }
}
