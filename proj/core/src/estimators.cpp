#include "funcest/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "funcest/error.hpp"
#include "funcest/rng.hpp"

namespace funcest {

void validate(const EstimatorConfig& cfg) {
  if (!(cfg.c1 > 0.0 && cfg.c1 <= 10.0)) throw DomainError("estimator config: c1 must lie in (0, 10]");
  if (!(cfg.c2 > 0.0) || !std::isfinite(cfg.c2)) throw DomainError("estimator config: c2 must be positive");
  if (cfg.k_min < 1) throw DomainError("estimator config: k_min must be >= 1");
  if (!(cfg.renyi_floor > 0.0)) throw DomainError("estimator config: renyi_floor must be positive");
}

std::vector<std::string> config_warnings(const EstimatorConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.c2 > 4.0 * cfg.c1) {
    std::ostringstream os;
    os << "c2 = " << cfg.c2 << " exceeds 4*c1 = " << 4.0 * cfg.c1
       << "; the variance bounds of the analysis assume c2 <= 4*c1";
    out.push_back(os.str());
  }
  if (cfg.c1 < 0.05 || cfg.c1 > 0.2) {
    out.push_back("c1 outside the empirically effective range [0.05, 0.2]");
  }
  return out;
}

Thresholds thresholds(Count n, const EstimatorConfig& cfg) {
  if (n < 2) throw DomainError("thresholds: need n >= 2");
  const double dn = static_cast<double>(n);
  const double log_n = std::log(dn);
  Thresholds th;
  th.delta = cfg.c1 * log_n / dn;
  th.degree = std::max(static_cast<int>(std::ceil(cfg.c2 * log_n)), cfg.k_min);
  th.t = th.delta / 4.0;
  return th;
}

double interp_window(double x, double t) {
  if (x <= t) return 0.0;
  if (x >= 2.0 * t) return 1.0;
  const double u = (x - t) / t;
  // 126u^5 - 420u^6 + 540u^7 - 315u^8 + 70u^9 in Horner form.
  const double inner = 126.0 + u * (-420.0 + u * (540.0 + u * (-315.0 + u * 70.0)));
  const double u2 = u * u;
  return u2 * u2 * u * inner;
}

double s_poly_eval(Count count, Count n, const WindowedCoeffs& w, bool keep_constant_term) {
  const double dn = static_cast<double>(n);
  double sum = keep_constant_term ? w.constant : 0.0;
  double prod = 1.0;
  for (std::size_t k = 1; k < w.coeffs.size(); ++k) {
    const Count r = k - 1;
    if (r >= count) break;  // the factor (count - r)/n vanishes
    prod *= static_cast<double>(count - r) / dn;
    sum += w.coeffs[k] * prod;
  }
  return sum;
}

namespace {

// Per-symbol frequencies used for the regime test and the plug-in value.
struct Observation {
  Count plug;
  Count select;
  std::size_t symbols;  // how many symbols share this observation
};

struct Prepared {
  Count n;  // effective sample size (halved when splitting)
  std::vector<Observation> obs;
};

Prepared prepare(const Histogram& h, const EstimatorConfig& cfg) {
  Prepared p;
  if (!cfg.split) {
    p.n = h.n();
    const auto profile = h.profile();
    p.obs.reserve(profile.size());
    for (const auto& [count, m] : profile) p.obs.push_back({count, count, m});
    return p;
  }
  p.n = h.n() / 2;
  if (p.n < 2) throw DomainError("split estimator: need n >= 4");
  SeededRng rng(cfg.split_seed);
  p.obs.reserve(h.support());
  for (const Bin& b : h.bins()) {
    std::binomial_distribution<Count> half(b.count, 0.5);
    const Count x = half(rng);
    p.obs.push_back({x, b.count - x, 1});
  }
  return p;
}

template <typename Smooth>
EstimateReport two_regime_sum(const Prepared& prep, const TargetFunction& f,
                              const EstimatorConfig& cfg, Smooth&& smooth) {
  EstimateReport rep;
  rep.thresholds = thresholds(prep.n, cfg);
  const auto approx = default_approx_cache().get(f, rep.thresholds.degree);
  const WindowedCoeffs w = window_coeffs(*approx, f, rep.thresholds.delta);

  const double dn = static_cast<double>(prep.n);
  const double boundary = 2.0 * rep.thresholds.delta;
  double total = 0.0;
  for (const Observation& o : prep.obs) {
    const double p_select = static_cast<double>(o.select) / dn;
    if (p_select <= boundary) {
      const double s = s_poly_eval(o.plug, prep.n, w, cfg.keep_constant_term);
      if (s > 1.0) rep.capped_symbols += o.symbols;
      total += static_cast<double>(o.symbols) * std::min(s, 1.0);
      rep.nonsmooth_symbols += o.symbols;
    } else {
      const double x = static_cast<double>(o.plug) / dn;
      const double weight = interp_window(x, rep.thresholds.t);
      if (weight > 0.0) total += static_cast<double>(o.symbols) * weight * smooth(x, dn);
      rep.smooth_symbols += o.symbols;
    }
  }
  rep.value = total;
  return rep;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  if (alpha == 1.0) throw DomainError("alpha = 1: F_1 is identically 1; use the entropy estimator");
}

}  // namespace

EstimateReport estimate_entropy_report(const Histogram& h, const EstimatorConfig& cfg) {
  validate(cfg);
  if (h.n() < 2) throw DomainError("estimate_entropy: need n >= 2");
  const Prepared prep = prepare(h, cfg);
  return two_regime_sum(prep, TargetFunction::neg_x_log_x(), cfg, [](double x, double n) {
    return -x * std::log(x) + 1.0 / (2.0 * n);
  });
}

double estimate_entropy(const Histogram& h, const EstimatorConfig& cfg) {
  return estimate_entropy_report(h, cfg).value;
}

EstimateReport estimate_falpha_report(const Histogram& h, double alpha, const EstimatorConfig& cfg) {
  validate(cfg);
  check_alpha(alpha);
  if (h.n() < 2) throw DomainError("estimate_falpha: need n >= 2");
  const Prepared prep = prepare(h, cfg);
  return two_regime_sum(prep, TargetFunction::power(alpha), cfg, [alpha](double x, double n) {
    return (1.0 + alpha * (1.0 - alpha) / (2.0 * n * x)) * std::pow(x, alpha);
  });
}

double estimate_falpha(const Histogram& h, double alpha, const EstimatorConfig& cfg) {
  return estimate_falpha_report(h, alpha, cfg).value;
}

EstimateReport estimate_renyi_report(const Histogram& h, double alpha, const EstimatorConfig& cfg) {
  EstimateReport rep = estimate_falpha_report(h, alpha, cfg);
  double f = rep.value;
  if (!(f >= cfg.renyi_floor)) {
    f = cfg.renyi_floor;
    rep.clamped = true;
  }
  rep.value = std::log(f) / (1.0 - alpha);
  return rep;
}

double estimate_renyi(const Histogram& h, double alpha, const EstimatorConfig& cfg) {
  return estimate_renyi_report(h, alpha, cfg).value;
}

}  // namespace funcest
