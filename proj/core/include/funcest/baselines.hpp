#pragma once

// Classical entropy estimators used as comparison points. All return nats
// and depend only on the multiset of counts.

#include <cstddef>

#include "funcest/histogram.hpp"

namespace funcest {

/// Where an estimator that wants the alphabet size S gets it from.
class SupportHint {
 public:
  enum class Mode { Observed, Known };

  static SupportHint observed() { return SupportHint(Mode::Observed, 0); }
  static SupportHint known(std::size_t s) { return SupportHint(Mode::Known, s); }

  Mode mode() const noexcept { return mode_; }

  /// S for this histogram; throws DomainError if a known S is smaller than
  /// the observed support.
  std::size_t resolve(const Histogram& h) const;

 private:
  SupportHint(Mode mode, std::size_t s) : mode_(mode), s_(s) {}

  Mode mode_;
  std::size_t s_;
};

/// Plug-in entropy of the empirical distribution.
double mle_entropy(const Histogram& h);

/// MLE + (S - 1)/(2n).
double miller_madow(const Histogram& h, SupportHint s = SupportHint::observed());

/// n H(Z) - (n-1)/n sum_j H(Z^{-j}), with the n leave-one-out terms grouped
/// by the count that gets decremented. Needs n >= 2.
double jackknife_entropy(const Histogram& h);

/// Coverage-adjusted estimator with C = 1 - f1/n. Throws CoverageError
/// when every observed symbol is a singleton.
double cae_entropy(const Histogram& h);

/// ln n - sum_i p_i G_{n p_i}.
double grassberger_entropy(const Histogram& h);

/// sqrt(n)/S, the default Dirichlet concentration.
double default_dirichlet_a(std::size_t n, std::size_t s);

/// Plug-in entropy of the Dir(a) posterior mean over all S symbols.
double dirichlet_plugin_entropy(const Histogram& h, std::size_t s, double a);

/// Posterior mean of H under a Dir(a) prior.
double dirichlet_bayes_entropy(const Histogram& h, std::size_t s, double a);

/// Shrinkage intensity towards uniform(S), clamped to [0, 1]; 1 when the
/// denominator is not positive. Needs n >= 2.
double shrinkage_lambda(const Histogram& h, std::size_t s);

/// Plug-in entropy of lambda/S + (1 - lambda) p_i over all S symbols.
double shrinkage_entropy(const Histogram& h, std::size_t s);

}  // namespace funcest
