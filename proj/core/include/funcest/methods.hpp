#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "funcest/estimators.hpp"
#include "funcest/histogram.hpp"

namespace funcest {

/// Histogram -> entropy estimate (nats). The strategy injected into the
/// composite measures and Chow-Liu.
using EntropyFn = std::function<double(const Histogram&)>;

enum class EntropyMethod {
  Mle,
  MillerMadow,
  Jackknife,
  Cae,
  Grassberger,
  Dirichlet,
  Bayes,
  Shrinkage,
  Jvhw,
};

/// "mle", "mm", "jk", "cae", "grassberger", "dirichlet", "bayes",
/// "shrinkage", "jvhw". Throws DomainError on anything else.
EntropyMethod parse_method(std::string_view name);
std::string method_name(EntropyMethod m);
std::vector<std::string> method_names();

struct MethodOptions {
  /// Alphabet size for mm/dirichlet/bayes/shrinkage. When absent those
  /// estimators use the observed support of each histogram they see.
  std::optional<std::size_t> support;
  /// Dirichlet concentration; defaults to sqrt(n)/S per histogram.
  std::optional<double> dirichlet_a;
  EstimatorConfig jvhw;
};

EntropyFn make_entropy_fn(EntropyMethod method, const MethodOptions& options = {});

}  // namespace funcest
