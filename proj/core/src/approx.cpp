#include "funcest/approx.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include "funcest/error.hpp"

namespace funcest {

TargetFunction TargetFunction::power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("x^alpha target requires alpha > 0");
  }
  return TargetFunction(Kind::PowerAlpha, alpha);
}

TargetFunction TargetFunction::neg_x_log_x() { return TargetFunction(Kind::NegXLogX, 1.0); }

double TargetFunction::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  if (kind_ == Kind::NegXLogX) return -x * std::log(x);
  return std::pow(x, alpha_);
}

std::string TargetFunction::name() const {
  if (kind_ == Kind::NegXLogX) return "xlogx";
  std::ostringstream os;
  os << "x^" << alpha_;
  return os.str();
}

namespace {

// Clenshaw recurrence for sum c_j T_j(2x - 1).
double chebyshev_eval(std::span<const double> c, double x) {
  if (c.empty()) return 0.0;
  const double z = 2.0 * x - 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    const double b0 = 2.0 * z * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return c[0] + z * b1 - b2;
}

struct Extremum {
  double x;
  double residual;
};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Solves sum_j c_j T_j(z_i) + (-1)^i E = f(x_i) on the reference set.
// Returns c_0..c_K followed by E.
Eigen::VectorXd solve_reference(const TargetFunction& f, std::span<const double> ref, int degree) {
  const int m = degree + 2;
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const double z = 2.0 * ref[i] - 1.0;
    double t_prev = 1.0;
    double t_cur = z;
    a(i, 0) = 1.0;
    if (degree >= 1) a(i, 1) = z;
    for (int j = 2; j <= degree; ++j) {
      const double t_next = 2.0 * z * t_cur - t_prev;
      a(i, j) = t_next;
      t_prev = t_cur;
      t_cur = t_next;
    }
    a(i, m - 1) = (i % 2 == 0) ? 1.0 : -1.0;
    rhs(i) = f(ref[i]);
  }
  return a.partialPivLu().solve(rhs);
}

// Maximizes g on [lo, hi] by golden-section search.
template <typename G>
std::pair<double, double> golden_max(G&& g, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < 200; ++it) {
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * scale) break;
    if (gc > gd) {
      hi = d;
      d = c;
      gd = gc;
      c = hi - inv_phi * (hi - lo);
      gc = g(c);
    } else {
      lo = c;
      c = d;
      gc = gd;
      d = lo + inv_phi * (hi - lo);
      gd = g(d);
    }
  }
  return gc > gd ? std::pair{c, gc} : std::pair{d, gd};
}

// One local extremum of the residual per maximal sign-consistent run of a
// Chebyshev-spaced scan grid, refined by golden-section search.
std::vector<Extremum> locate_extrema(const TargetFunction& f, std::span<const double> cheb,
                                     int degree, std::span<const double> ref) {
  const int grid_n = 16 * (degree + 2);
  std::vector<double> xs;
  xs.reserve(grid_n + ref.size());
  for (int j = 0; j < grid_n; ++j) {
    xs.push_back(0.5 * (1.0 - std::cos(std::numbers::pi * j / (grid_n - 1))));
  }
  xs.insert(xs.end(), ref.begin(), ref.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto residual = [&](double x) { return f(x) - chebyshev_eval(cheb, x); };
  std::vector<double> rs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) rs[i] = residual(xs[i]);

  std::vector<Extremum> out;
  std::size_t i = 0;
  while (i < xs.size()) {
    const int s = sign_of(rs[i]);
    if (s == 0) {
      ++i;
      continue;
    }
    std::size_t best = i;
    std::size_t j = i;
    while (j < xs.size() && sign_of(rs[j]) != -s) {
      if (s * rs[j] > s * rs[best]) best = j;
      ++j;
    }
    const double lo = xs[best > 0 ? best - 1 : best];
    const double hi = xs[best + 1 < xs.size() ? best + 1 : best];
    Extremum e{xs[best], rs[best]};
    if (hi > lo) {
      auto [x_star, g_star] = golden_max([&](double x) { return s * residual(x); }, lo, hi);
      if (g_star > s * e.residual) e = {x_star, s * g_star};
    }
    out.push_back(e);
    i = j;
  }
  return out;
}

// Trims an alternating extremum list down to `keep` points, preserving
// alternation and never discarding the largest one.
void select_alternating(std::vector<Extremum>& ext, std::size_t keep) {
  auto mag = [&](std::size_t k) { return std::abs(ext[k].residual); };
  while (ext.size() > keep) {
    const std::size_t last = ext.size() - 1;
    std::size_t m = 0;
    for (std::size_t k = 1; k < ext.size(); ++k) {
      if (mag(k) < mag(m)) m = k;
    }
    if (m == 0 || m == last) {
      ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(m));
    } else if (ext.size() - keep >= 2) {
      const std::size_t nb = mag(m - 1) < mag(m + 1) ? m - 1 : m + 1;
      const std::size_t first = std::min(m, nb);
      ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(first),
                ext.begin() + static_cast<std::ptrdiff_t>(first) + 2);
    } else {
      ext.erase(mag(0) < mag(last) ? ext.begin() : ext.begin() + static_cast<std::ptrdiff_t>(last));
    }
  }
}

std::string describe(const TargetFunction& f, int degree) {
  std::ostringstream os;
  os << "remez(" << f.name() << ", K=" << degree << ")";
  return os.str();
}

}  // namespace

double ApproxResult::evaluate(double x) const { return chebyshev_eval(chebyshev, x); }

double eval_poly(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> chebyshev_to_monomial(std::span<const double> cheb) {
  const std::size_t n = cheb.size();
  std::vector<double> mono(n, 0.0);
  if (n == 0) return mono;
  // T*_j(x) = T_j(2x - 1) as monomial vectors; T*_{j+1} = (4x - 2) T*_j - T*_{j-1}.
  std::vector<double> t_prev(n, 0.0);
  std::vector<double> t_cur(n, 0.0);
  t_prev[0] = 1.0;
  mono[0] = cheb[0];
  if (n == 1) return mono;
  t_cur[0] = -1.0;
  t_cur[1] = 2.0;
  mono[0] += cheb[1] * t_cur[0];
  mono[1] += cheb[1] * t_cur[1];
  std::vector<double> t_next(n, 0.0);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    for (std::size_t k = 0; k <= j + 1; ++k) {
      const double shifted = k > 0 ? 4.0 * t_cur[k - 1] : 0.0;
      t_next[k] = shifted - 2.0 * t_cur[k] - t_prev[k];
    }
    for (std::size_t k = 0; k <= j + 1; ++k) mono[k] += cheb[j + 1] * t_next[k];
    std::swap(t_prev, t_cur);
    std::swap(t_cur, t_next);
  }
  return mono;
}

ApproxResult remez(const TargetFunction& f, int degree, const RemezOptions& options) {
  if (degree < 0) throw DomainError("remez: degree must be non-negative");
  if (!(options.tol > 0.0)) throw DomainError("remez: tol must be positive");

  const int m = degree + 2;
  // Extrema of T_{K+1}, mapped to [0, 1].
  std::vector<double> ref(m);
  for (int i = 0; i < m; ++i) {
    ref[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * i / (m - 1)));
  }

  // Residuals below this are treated as an exact fit (f is itself a polynomial).
  constexpr double kExactFloor = 1e-14;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const Eigen::VectorXd sol = solve_reference(f, ref, degree);
    std::vector<double> cheb(sol.data(), sol.data() + degree + 1);
    const double leveled = std::abs(sol(m - 1));
    if (!std::all_of(cheb.begin(), cheb.end(), [](double v) { return std::isfinite(v); })) {
      throw ConvergenceError(describe(f, degree) + ": singular reference system", ref);
    }

    std::vector<Extremum> ext = locate_extrema(f, cheb, degree, ref);
    if (ext.size() < static_cast<std::size_t>(m)) {
      double max_abs = 0.0;
      for (const auto& e : ext) max_abs = std::max(max_abs, std::abs(e.residual));
      if (max_abs > kExactFloor) {
        throw ConvergenceError(describe(f, degree) + ": residual lost alternation", ref);
      }
    }
    select_alternating(ext, static_cast<std::size_t>(m));

    double max_res = 0.0;
    for (const auto& e : ext) max_res = std::max(max_res, std::abs(e.residual));

    const bool exact = max_res <= kExactFloor;
    const bool leveled_ok = leveled > 0.0 && (max_res - leveled) / leveled < options.tol;
    if (exact || leveled_ok) {
      ApproxResult out;
      out.degree = degree;
      out.chebyshev = std::move(cheb);
      out.coeffs = chebyshev_to_monomial(out.chebyshev);
      for (double g : out.coeffs) {
        if (!std::isfinite(g)) {
          throw OverflowError(describe(f, degree) + ": monomial coefficients overflow");
        }
      }
      out.sup_error = max_res;
      if (exact) {
        out.alternation_points = ref;
      } else {
        out.alternation_points.reserve(ext.size());
        for (const auto& e : ext) out.alternation_points.push_back(e.x);
      }
      out.iterations = iter;
      return out;
    }

    for (int i = 0; i < m; ++i) ref[i] = ext[i].x;
  }
  throw ConvergenceError(describe(f, degree) + ": no convergence within iteration budget", ref);
}

WindowedCoeffs window_coeffs(const ApproxResult& raw, const TargetFunction& f, double delta) {
  if (!(delta > 0.0)) throw DomainError("window_coeffs: delta must be positive");
  const double window = 4.0 * delta;
  WindowedCoeffs w;
  w.window = window;
  w.coeffs.assign(raw.coeffs.size(), 0.0);
  if (raw.coeffs.empty()) return w;

  const double order = f.kind() == TargetFunction::Kind::NegXLogX ? 1.0 : f.alpha();
  w.constant = raw.coeffs[0] * std::pow(window, order);
  for (std::size_t k = 1; k < raw.coeffs.size(); ++k) {
    w.coeffs[k] = raw.coeffs[k] * std::pow(window, order - static_cast<double>(k));
  }
  if (f.kind() == TargetFunction::Kind::NegXLogX && raw.coeffs.size() > 1) {
    w.coeffs[1] = raw.coeffs[1] - std::log(window);
    w.entropy_shift = true;
  }
  return w;
}

ApproxCache::ApproxCache(int max_degree, RemezOptions options)
    : max_degree_(max_degree), options_(options) {}

std::shared_ptr<const ApproxResult> ApproxCache::get(const TargetFunction& f, int degree) {
  if (degree > max_degree_) {
    std::ostringstream os;
    os << "approximation degree " << degree << " exceeds cache limit " << max_degree_;
    throw DegreeLimitError(os.str());
  }
  const std::int64_t alpha_key =
      f.kind() == TargetFunction::Kind::PowerAlpha ? std::llround(f.alpha() * 1e9) : 0;
  const Key key{static_cast<int>(f.kind()), alpha_key, degree};
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto fresh = std::make_shared<const ApproxResult>(remez(f, degree, options_));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(key, std::move(fresh));
  return it->second;
}

std::size_t ApproxCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

ApproxCache& default_approx_cache() {
  static ApproxCache cache;
  return cache;
}

ApproxResult cached_approx(const TargetFunction& f, int degree) {
  return *default_approx_cache().get(f, degree);
}

}  // namespace funcest
