#pragma once

// Best uniform (minimax) polynomial approximation on [0, 1] of the two
// targets the estimators need: x^alpha and -x ln x.
//
// The exchange iteration works with Chebyshev coefficients on the affinely
// mapped variable z = 2x - 1. Monomial coefficients are produced only at the
// end; they grow roughly like 5.8^K, so for K beyond ~20 use
// ApproxResult::evaluate rather than eval_poly on `coeffs`.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace funcest {

class TargetFunction {
 public:
  enum class Kind { PowerAlpha, NegXLogX };

  /// x^alpha, alpha > 0.
  static TargetFunction power(double alpha);
  /// -x ln x with 0 ln 0 = 0.
  static TargetFunction neg_x_log_x();

  Kind kind() const noexcept { return kind_; }
  /// Only meaningful for PowerAlpha.
  double alpha() const noexcept { return alpha_; }

  /// Evaluates the target on [0, 1]; both kinds are exactly 0 at x = 0.
  double operator()(double x) const;

  std::string name() const;

 private:
  TargetFunction(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}

  Kind kind_;
  double alpha_;
};

struct ApproxResult {
  int degree = 0;
  /// g_0..g_K in the monomial basis on [0, 1].
  std::vector<double> coeffs;
  /// c_0..c_K such that P(x) = sum c_j T_j(2x - 1).
  std::vector<double> chebyshev;
  /// E_K[f], the certified sup-norm error.
  double sup_error = 0.0;
  /// K + 2 points in [0, 1] where the residual alternates in sign.
  std::vector<double> alternation_points;
  int iterations = 0;

  /// Numerically stable evaluation through the Chebyshev representation.
  double evaluate(double x) const;
};

struct RemezOptions {
  /// Stop when (max residual - leveled error) / leveled error < tol.
  double tol = 1e-10;
  int max_iterations = 100;
};

/// Minimax approximation of `f` on [0, 1] with degree <= `degree`.
///
/// Throws DomainError for degree < 0 or tol <= 0, ConvergenceError when the
/// iteration budget is exhausted, and OverflowError when the monomial
/// coefficients are not representable.
ApproxResult remez(const TargetFunction& f, int degree, const RemezOptions& options = {});

/// Horner evaluation of sum_k coeffs[k] x^k.
double eval_poly(std::span<const double> coeffs, double x);

/// Monomial coefficients of sum_j cheb[j] T_j(2x - 1).
std::vector<double> chebyshev_to_monomial(std::span<const double> cheb);

/// Coefficients transplanted from [0, 1] to the estimator window [0, 4 delta].
///
/// `coeffs[k]` for k >= 1 multiplies x^k (coeffs[0] is always zero); the
/// rescaled constant term is held in `constant`.
struct WindowedCoeffs {
  double constant = 0.0;
  std::vector<double> coeffs;
  double window = 0.0;
  /// True when coeffs[1] carries the -ln(window) entropy adjustment.
  bool entropy_shift = false;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

/// Rescales `raw` (computed for `f` on [0, 1]) onto [0, 4 delta].
///
///   x^alpha : coeffs[k] = g_k (4 delta)^(alpha - k), constant = g_0 (4 delta)^alpha
///   -x ln x : coeffs[k] = r_k (4 delta)^(1 - k) for k >= 2,
///             coeffs[1] = r_1 - ln(4 delta), constant = r_0 (4 delta)
WindowedCoeffs window_coeffs(const ApproxResult& raw, const TargetFunction& f, double delta);

/// Memoized remez results keyed by (kind, alpha rounded to 1e-9, degree).
///
/// Concurrent lookups share a reader lock; a miss computes outside the lock
/// and inserts only if the key is still absent, so racing callers observe
/// the same stored value.
class ApproxCache {
 public:
  static constexpr int kDefaultMaxDegree = 200;

  explicit ApproxCache(int max_degree = kDefaultMaxDegree, RemezOptions options = {});

  /// Throws DegreeLimitError when degree > max_degree().
  std::shared_ptr<const ApproxResult> get(const TargetFunction& f, int degree);

  int max_degree() const noexcept { return max_degree_; }
  std::size_t size() const;

 private:
  using Key = std::tuple<int, std::int64_t, int>;

  int max_degree_;
  RemezOptions options_;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const ApproxResult>> entries_;
};

/// Process-wide cache used by the estimators.
ApproxCache& default_approx_cache();

/// Shorthand for default_approx_cache().get(f, degree), returned by value.
ApproxResult cached_approx(const TargetFunction& f, int degree);

}  // namespace funcest
