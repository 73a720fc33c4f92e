#pragma once

// Two-regime minimax estimators of entropy H(P), power sums F_alpha(P) and
// Renyi entropy H_alpha(P) with unknown support size.
//
// Symbols whose empirical frequency is at most 2*delta are treated with an
// unbiased estimate of the best degree-K polynomial approximation of the
// target on [0, 4*delta]; the rest use a bias-corrected plug-in blended in
// by a C^4 window. Unseen symbols contribute nothing.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "funcest/approx.hpp"
#include "funcest/histogram.hpp"

namespace funcest {

struct EstimatorConfig {
  /// delta = c1 ln n / n.
  double c1 = 0.2;
  /// K = ceil(c2 ln n), floored at k_min.
  double c2 = 0.7;
  /// Binomial-thin the sample into independent halves: one half picks the
  /// regime, the other is plugged in.
  bool split = false;
  /// Keep g_0 (rescaled) in the polynomial part.
  bool keep_constant_term = true;
  int k_min = 1;
  /// Lower clamp on F_alpha before the logarithm in estimate_renyi.
  double renyi_floor = 1e-12;
  /// Seed for the thinning RNG when split = true.
  std::uint64_t split_seed = 0;
};

/// Throws DomainError unless c1 in (0, 10], c2 > 0, k_min >= 1, renyi_floor > 0.
void validate(const EstimatorConfig& cfg);

/// Non-fatal remarks, e.g. c2 > 4 c1 (outside the regime covered by the
/// analysis bounds).
std::vector<std::string> config_warnings(const EstimatorConfig& cfg);

struct Thresholds {
  double delta = 0.0;
  int degree = 0;
  double t = 0.0;
};

/// delta = c1 ln n / n, K = max(ceil(c2 ln n), k_min), t = delta / 4.
/// Throws DomainError for n < 2.
Thresholds thresholds(Count n, const EstimatorConfig& cfg);

/// I_n(x): 0 for x <= t, 1 for x >= 2t, and the degree-9 smoothstep
/// 126u^5 - 420u^6 + 540u^7 - 315u^8 + 70u^9, u = (x - t)/t, in between.
double interp_window(double x, double t);

/// g_0 [if kept] + sum_{k>=1} w.coeffs[k] prod_{r<k} (count - r)/n.
///
/// Each falling-factorial product is an unbiased estimate of p^k when
/// count ~ Poisson(n p).
double s_poly_eval(Count count, Count n, const WindowedCoeffs& w, bool keep_constant_term = true);

struct EstimateReport {
  double value = 0.0;
  Thresholds thresholds;
  std::size_t nonsmooth_symbols = 0;
  std::size_t smooth_symbols = 0;
  /// Nonsmooth contributions cut at 1.
  std::size_t capped_symbols = 0;
  /// estimate_renyi only: F_alpha fell below the floor.
  bool clamped = false;
};

EstimateReport estimate_entropy_report(const Histogram& h, const EstimatorConfig& cfg = {});
double estimate_entropy(const Histogram& h, const EstimatorConfig& cfg = {});

/// alpha > 0, alpha != 1.
EstimateReport estimate_falpha_report(const Histogram& h, double alpha,
                                      const EstimatorConfig& cfg = {});
double estimate_falpha(const Histogram& h, double alpha, const EstimatorConfig& cfg = {});

/// ln(max(F_alpha, floor)) / (1 - alpha).
EstimateReport estimate_renyi_report(const Histogram& h, double alpha,
                                     const EstimatorConfig& cfg = {});
double estimate_renyi(const Histogram& h, double alpha, const EstimatorConfig& cfg = {});

}  // namespace funcest
