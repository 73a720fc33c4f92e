#include "funcest/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "funcest/error.hpp"
#include "funcest/special.hpp"

namespace funcest {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_nonempty(const Histogram& h, const char* who) {
  if (h.n() == 0) throw DomainError(std::string(who) + ": empty histogram");
}

std::size_t checked_support(const Histogram& h, std::size_t s, const char* who) {
  if (s < h.support() || s == 0) {
    throw DomainError(std::string(who) + ": S is smaller than the observed support");
  }
  return s;
}

}  // namespace

std::size_t SupportHint::resolve(const Histogram& h) const {
  if (mode_ == Mode::Observed) return h.support();
  return checked_support(h, s_, "support hint");
}

double mle_entropy(const Histogram& h) {
  require_nonempty(h, "mle_entropy");
  const double n = static_cast<double>(h.n());
  double sum = 0.0;
  for (const auto& [count, m] : h.profile()) {
    const double p = static_cast<double>(count) / n;
    sum -= static_cast<double>(m) * p * std::log(p);
  }
  return sum;
}

double miller_madow(const Histogram& h, SupportHint s) {
  const std::size_t support = s.resolve(h);
  return mle_entropy(h) + (static_cast<double>(support) - 1.0) / (2.0 * static_cast<double>(h.n()));
}

double jackknife_entropy(const Histogram& h) {
  if (h.n() < 2) throw DomainError("jackknife_entropy: need n >= 2");
  const double n = static_cast<double>(h.n());
  const auto profile = h.profile();
  double a = 0.0;  // sum c ln c
  for (const auto& [count, m] : profile) a += static_cast<double>(m) * xlogx(static_cast<double>(count));

  // Dropping one observation of a symbol with count c leaves entropy
  // ln(n-1) - (A - c ln c + (c-1) ln(c-1)) / (n-1); c such observations.
  double loo_sum = 0.0;
  for (const auto& [count, symbols] : profile) {
    const double c = static_cast<double>(count);
    const double loo = std::log(n - 1.0) - (a - xlogx(c) + xlogx(c - 1.0)) / (n - 1.0);
    loo_sum += static_cast<double>(symbols) * c * loo;
  }
  return n * mle_entropy(h) - (n - 1.0) / n * loo_sum;
}

double cae_entropy(const Histogram& h) {
  require_nonempty(h, "cae_entropy");
  const double n = static_cast<double>(h.n());
  const auto profile = h.profile();
  const auto ones = profile.find(1);
  const std::size_t singletons = ones == profile.end() ? 0 : ones->second;
  const double coverage = 1.0 - static_cast<double>(singletons) / n;
  if (coverage <= 0.0) throw CoverageError("cae_entropy: zero sample coverage (all singletons)");
  double sum = 0.0;
  for (const auto& [count, m] : profile) {
    const double q = coverage * static_cast<double>(count) / n;
    const double inclusion = 1.0 - std::exp(n * std::log1p(-q));
    sum += static_cast<double>(m) * -xlogx(q) / inclusion;
  }
  return sum;
}

double grassberger_entropy(const Histogram& h) {
  require_nonempty(h, "grassberger_entropy");
  const auto profile = h.profile();
  const Count max_count = profile.rbegin()->first;
  const std::vector<double> g = grassberger_table(static_cast<std::int64_t>(max_count));
  const double n = static_cast<double>(h.n());
  double sum = 0.0;
  for (const auto& [count, m] : profile) sum += static_cast<double>(m) * static_cast<double>(count) / n * g[count];
  return std::log(n) - sum;
}

double default_dirichlet_a(std::size_t n, std::size_t s) {
  if (s == 0) throw DomainError("default_dirichlet_a: S must be positive");
  return std::sqrt(static_cast<double>(n)) / static_cast<double>(s);
}

double dirichlet_plugin_entropy(const Histogram& h, std::size_t s, double a) {
  require_nonempty(h, "dirichlet_plugin_entropy");
  checked_support(h, s, "dirichlet_plugin_entropy");
  if (!(a > 0.0)) throw DomainError("dirichlet_plugin_entropy: a must be positive");
  const double denom = static_cast<double>(h.n()) + static_cast<double>(s) * a;
  double sum = 0.0;
  for (const auto& [count, m] : h.profile()) {
    sum -= static_cast<double>(m) * xlogx((static_cast<double>(count) + a) / denom);
  }
  const double unseen = static_cast<double>(s - h.support());
  sum -= unseen * xlogx(a / denom);
  return sum;
}

double dirichlet_bayes_entropy(const Histogram& h, std::size_t s, double a) {
  require_nonempty(h, "dirichlet_bayes_entropy");
  checked_support(h, s, "dirichlet_bayes_entropy");
  if (!(a > 0.0)) throw DomainError("dirichlet_bayes_entropy: a must be positive");
  const double denom = static_cast<double>(h.n()) + static_cast<double>(s) * a;
  const double psi_total = digamma(denom + 1.0);
  double sum = 0.0;
  for (const auto& [count, m] : h.profile()) {
    const double c = static_cast<double>(count) + a;
    sum += static_cast<double>(m) * c / denom * (psi_total - digamma(c + 1.0));
  }
  const double unseen = static_cast<double>(s - h.support());
  sum += unseen * a / denom * (psi_total - digamma(a + 1.0));
  return sum;
}

double shrinkage_lambda(const Histogram& h, std::size_t s) {
  if (h.n() < 2) throw DomainError("shrinkage: need n >= 2");
  checked_support(h, s, "shrinkage");
  const double n = static_cast<double>(h.n());
  double sum_sq = 0.0;
  for (const auto& [count, m] : h.profile()) {
    const double p = static_cast<double>(count) / n;
    sum_sq += static_cast<double>(m) * p * p;
  }
  const double denom = (n - 1.0) * (sum_sq - 1.0 / static_cast<double>(s));
  if (denom <= 0.0) return 1.0;
  return std::clamp((1.0 - sum_sq) / denom, 0.0, 1.0);
}

double shrinkage_entropy(const Histogram& h, std::size_t s) {
  const double lambda = shrinkage_lambda(h, s);
  const double n = static_cast<double>(h.n());
  const double target = lambda / static_cast<double>(s);
  double sum = 0.0;
  for (const auto& [count, m] : h.profile()) {
    sum -= static_cast<double>(m) * xlogx(target + (1.0 - lambda) * static_cast<double>(count) / n);
  }
  sum -= static_cast<double>(s - h.support()) * xlogx(target);
  return sum;
}

}  // namespace funcest
