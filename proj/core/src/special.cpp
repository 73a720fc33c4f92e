#include "funcest/special.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

#include "funcest/error.hpp"

namespace funcest {

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("digamma: argument must be positive");
  double acc = 0.0;
  while (x < 8.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // ln x - 1/(2x) - sum_k B_2k / (2k x^2k)
  const double inv2 = 1.0 / (x * x);
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0 - inv2 * (1.0 / 12.0)))))));
  return acc + std::log(x) - 0.5 / x - series;
}

namespace {

double moment_integral(std::int64_t k) {
  using boost::math::quadrature::gauss_kronrod;
  const double p = static_cast<double>(k - 1);
  auto integrand = [p](double x) { return std::pow(x, p) / (1.0 + x); };
  return gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, 12, 1e-13);
}

}  // namespace

std::vector<double> grassberger_table(std::int64_t kmax) {
  if (kmax < 1) throw DomainError("grassberger_table: kmax must be >= 1");
  const std::int64_t anchor = kmax + 40;
  double integral = moment_integral(anchor);
  for (std::int64_t k = anchor - 1; k >= kmax; --k) integral = 1.0 / static_cast<double>(k) - integral;

  std::vector<double> g(static_cast<std::size_t>(kmax) + 1, 0.0);
  for (std::int64_t k = kmax; k >= 1; --k) {
    if (k < kmax) integral = 1.0 / static_cast<double>(k) - integral;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    g[static_cast<std::size_t>(k)] = digamma(static_cast<double>(k)) + sign * integral;
  }
  return g;
}

double grassberger_g(std::int64_t k) {
  if (k < 1) throw DomainError("grassberger_g: k must be >= 1");
  return grassberger_table(k)[static_cast<std::size_t>(k)];
}

}  // namespace funcest
