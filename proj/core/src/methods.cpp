#include "funcest/methods.hpp"

#include <array>
#include <utility>

#include "funcest/baselines.hpp"
#include "funcest/error.hpp"

namespace funcest {

namespace {

constexpr std::array<std::pair<std::string_view, EntropyMethod>, 9> kMethods{{
    {"mle", EntropyMethod::Mle},
    {"mm", EntropyMethod::MillerMadow},
    {"jk", EntropyMethod::Jackknife},
    {"cae", EntropyMethod::Cae},
    {"grassberger", EntropyMethod::Grassberger},
    {"dirichlet", EntropyMethod::Dirichlet},
    {"bayes", EntropyMethod::Bayes},
    {"shrinkage", EntropyMethod::Shrinkage},
    {"jvhw", EntropyMethod::Jvhw},
}};

}  // namespace

EntropyMethod parse_method(std::string_view name) {
  for (const auto& [key, m] : kMethods) {
    if (key == name) return m;
  }
  throw DomainError("unknown entropy method '" + std::string(name) + "'");
}

std::string method_name(EntropyMethod m) {
  for (const auto& [key, value] : kMethods) {
    if (value == m) return std::string(key);
  }
  return "?";
}

std::vector<std::string> method_names() {
  std::vector<std::string> out;
  for (const auto& [key, m] : kMethods) out.emplace_back(key);
  return out;
}

EntropyFn make_entropy_fn(EntropyMethod method, const MethodOptions& options) {
  const auto support_of = [s = options.support](const Histogram& h) {
    return s ? *s : h.support();
  };
  const auto a_of = [a = options.dirichlet_a](const Histogram& h, std::size_t s) {
    return a ? *a : default_dirichlet_a(h.n(), s);
  };

  switch (method) {
    case EntropyMethod::Mle:
      return [](const Histogram& h) { return mle_entropy(h); };
    case EntropyMethod::MillerMadow:
      return [support_of](const Histogram& h) {
        return miller_madow(h, SupportHint::known(support_of(h)));
      };
    case EntropyMethod::Jackknife:
      return [](const Histogram& h) { return jackknife_entropy(h); };
    case EntropyMethod::Cae:
      return [](const Histogram& h) { return cae_entropy(h); };
    case EntropyMethod::Grassberger:
      return [](const Histogram& h) { return grassberger_entropy(h); };
    case EntropyMethod::Dirichlet:
      return [support_of, a_of](const Histogram& h) {
        const std::size_t s = support_of(h);
        return dirichlet_plugin_entropy(h, s, a_of(h, s));
      };
    case EntropyMethod::Bayes:
      return [support_of, a_of](const Histogram& h) {
        const std::size_t s = support_of(h);
        return dirichlet_bayes_entropy(h, s, a_of(h, s));
      };
    case EntropyMethod::Shrinkage:
      return [support_of](const Histogram& h) { return shrinkage_entropy(h, support_of(h)); };
    case EntropyMethod::Jvhw:
      return [cfg = options.jvhw](const Histogram& h) { return estimate_entropy(h, cfg); };
  }
  throw DomainError("unhandled entropy method");
}

}  // namespace funcest
