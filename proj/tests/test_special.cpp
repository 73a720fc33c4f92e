#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <numbers>

#include "funcest/error.hpp"
#include "funcest/special.hpp"

using namespace funcest;

namespace {

constexpr double kGamma = 0.57721566490153286061;

// Independent oracle: tanh-sinh quadrature of x^(k-1)/(1+x) on [0,1].
double integral_oracle(int k) {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate([k](double x) { return std::pow(x, k - 1) / (1.0 + x); }, 0.0, 1.0);
}

}  // namespace

TEST(Digamma, KnownValues) {
  EXPECT_NEAR(digamma(1.0), -kGamma, 1e-14);
  EXPECT_NEAR(digamma(2.0) - digamma(1.0), 1.0, 1e-15);
  EXPECT_NEAR(digamma(10.0), 2.2517525890667211, 1e-13);
  EXPECT_NEAR(digamma(0.5), -kGamma - 2 * std::numbers::ln2, 1e-14);
}

TEST(Digamma, MatchesBoostAcrossRange) {
  for (double x = 1e-3; x < 1e6; x *= 1.37) {
    const double want = boost::math::digamma(x);
    EXPECT_NEAR(digamma(x), want, 1e-12 * std::max(1.0, std::abs(want))) << x;
  }
}

TEST(Digamma, RejectsNonPositive) {
  EXPECT_THROW(digamma(0.0), DomainError);
  EXPECT_THROW(digamma(-2.5), DomainError);
}

TEST(Grassberger, FirstTermsClosedForm) {
  EXPECT_NEAR(grassberger_g(1), -kGamma - std::numbers::ln2, 1e-12);
  EXPECT_NEAR(grassberger_g(2), (1 - kGamma) + (1 - std::numbers::ln2), 1e-12);
}

TEST(Grassberger, AgreesWithQuadratureOracle) {
  const auto table = grassberger_table(200);
  ASSERT_EQ(table.size(), 201u);
  for (int k = 1; k <= 200; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double want = boost::math::digamma(static_cast<double>(k)) + sign * integral_oracle(k);
    EXPECT_NEAR(table[k], want, 1e-10) << k;
    EXPECT_NEAR(grassberger_g(k), want, 1e-10) << k;
  }
}

TEST(Grassberger, RejectsNonPositiveIndex) {
  EXPECT_THROW(grassberger_g(0), DomainError);
  EXPECT_THROW(grassberger_g(-3), DomainError);
}
