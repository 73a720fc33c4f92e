#pragma once

#include <cstdint>
#include <vector>

namespace funcest {

/// psi_0(x) = d/dx ln Gamma(x) for x > 0; throws DomainError otherwise.
double digamma(double x);

/// Grassberger's G_k = psi_0(k) + (-1)^k int_0^1 x^(k-1)/(1+x) dx, k >= 1.
double grassberger_g(std::int64_t k);

/// G_1..G_kmax (index 0 unused) from one backward sweep of
/// I_k = 1/k - I_{k+1}, anchored by quadrature at kmax + 40.
std::vector<double> grassberger_table(std::int64_t kmax);

}  // namespace funcest
