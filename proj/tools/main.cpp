// funcest: command-line front end to the estimator library.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "funcest/approx.hpp"
#include "funcest/bench.hpp"
#include "funcest/composite.hpp"
#include "funcest/error.hpp"
#include "funcest/estimators.hpp"
#include "funcest/graphical.hpp"
#include "funcest/io.hpp"
#include "funcest/methods.hpp"
#include "funcest/synth.hpp"

namespace fs = std::filesystem;
using namespace funcest;

namespace {

void print_value(double v) { std::printf("%.17g\n", v); }

struct InputOptions {
  std::string input;
  bool histogram = false;
};

Histogram load_histogram(const InputOptions& in) {
  SymbolTable table;
  auto file = open_input(in.input);
  if (in.histogram) return read_histogram_csv(file, table);
  const auto tokens = read_tokens(file, table);
  return Histogram::from_samples(tokens);
}

struct EstimatorFlags {
  double c1 = EstimatorConfig{}.c1;
  double c2 = EstimatorConfig{}.c2;
  std::string method = "jvhw";
  std::optional<std::size_t> support;
  std::optional<double> a;

  void attach(CLI::App* app, bool with_method) {
    app->add_option("--c1", c1, "Threshold constant: delta = c1 ln n / n")->check(CLI::PositiveNumber);
    app->add_option("--c2", c2, "Degree constant: K = ceil(c2 ln n)")->check(CLI::PositiveNumber);
    if (!with_method) return;
    app->add_option("--method", method, "mle|mm|jk|cae|grassberger|dirichlet|bayes|shrinkage|jvhw")
        ->capture_default_str();
    app->add_option("--support", support, "Alphabet size for mm/dirichlet/bayes/shrinkage");
    app->add_option("--a", a, "Dirichlet concentration");
  }

  EstimatorConfig config() const {
    EstimatorConfig cfg;
    cfg.c1 = c1;
    cfg.c2 = c2;
    validate(cfg);
    return cfg;
  }

  EntropyFn entropy_fn() const {
    MethodOptions opts;
    opts.support = support;
    opts.dirichlet_a = a;
    opts.jvhw = config();
    return make_entropy_fn(parse_method(method), opts);
  }
};

void print_diagnostics(const EstimateReport& r, const EstimatorConfig& cfg) {
  for (const auto& w : config_warnings(cfg)) std::cerr << "warning: " << w << '\n';
  std::printf("regime,symbols\n");
  std::printf("nonsmooth,%zu\n", r.nonsmooth_symbols);
  std::printf("smooth,%zu\n", r.smooth_symbols);
  std::printf("capped,%zu\n", r.capped_symbols);
  std::printf("# delta=%.17g degree=%d\n", r.thresholds.delta, r.thresholds.degree);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy and power-sum estimation on large alphabets"};
  app.require_subcommand(1);

  // approx
  auto* approx = app.add_subcommand("approx", "Best uniform polynomial approximation on [0,1]");
  std::string func;
  double approx_alpha = 0.5;
  int degree = 0;
  std::string csv_path;
  approx->add_option("--func", func, "xalpha or xlogx")->required()->check(CLI::IsMember({"xalpha", "xlogx"}));
  approx->add_option("--alpha", approx_alpha, "Exponent for xalpha")->capture_default_str();
  approx->add_option("--degree", degree, "Polynomial degree K")->required()->check(CLI::NonNegativeNumber);
  approx->add_option("--csv", csv_path, "Write to this file instead of standard output");

  // entropy / falpha / renyi
  InputOptions est_in;
  EstimatorFlags est_flags;
  double order = 0.5;
  bool diagnostics = false;
  auto add_estimate = [&](const char* name, const char* help, bool with_alpha, bool with_method) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", est_in.input, "Symbol tokens, or symbol,count CSV with --histogram")->required();
    sub->add_flag("--histogram", est_in.histogram, "Input is a symbol,count CSV");
    if (with_alpha) sub->add_option("--alpha", order, "Order alpha > 0, alpha != 1")->capture_default_str();
    est_flags.attach(sub, with_method);
    sub->add_flag("--diagnostics", diagnostics, "Print per-regime symbol counts");
    return sub;
  };
  auto* entropy = add_estimate("entropy", "Shannon entropy in nats", false, true);
  auto* falpha = add_estimate("falpha", "Power sum F_alpha = sum p^alpha", true, false);
  auto* renyi = add_estimate("renyi", "Renyi entropy of order alpha", true, false);

  // mi
  auto* mi = app.add_subcommand("mi", "Mutual information from x,y samples");
  std::string mi_input;
  EstimatorFlags mi_flags;
  mi->add_option("--input", mi_input, "CSV of x,y rows")->required();
  mi_flags.attach(mi, true);

  // rate
  auto* rate = app.add_subcommand("rate", "Entropy rate of a Markov sequence of given depth");
  std::string rate_input;
  std::size_t depth = 1;
  EstimatorFlags rate_flags;
  rate->add_option("--input", rate_input, "Symbol tokens in sequence order")->required();
  rate->add_option("--depth", depth, "Memory length D")->required();
  rate_flags.attach(rate, true);

  // chowliu
  auto* cl = app.add_subcommand("chowliu", "Chow-Liu tree from a d-column CSV");
  std::string cl_input;
  std::string cl_truth;
  bool cl_header = false;
  unsigned cl_threads = 0;
  EstimatorFlags cl_flags;
  cl->add_option("--input", cl_input, "CSV with one column per variable")->required();
  cl->add_option("--estimator", cl_flags.method, "Entropy estimator behind the MI weights (mle or jvhw)")
      ->capture_default_str();
  cl->add_option("--truth", cl_truth, "Star-shaped true edge list; prints the wrong-edges-ratio");
  cl->add_flag("--header", cl_header, "Skip the first line of the input");
  cl->add_option("--threads", cl_threads, "Worker threads, 0 = all cores");
  cl_flags.attach(cl, false);

  // synth
  auto* synth = app.add_subcommand("synth", "Sample a histogram from a synthetic distribution");
  std::string dist;
  std::size_t size = 0;
  double zipf_alpha = 1.0;
  Count n = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  synth->add_option("--dist", dist, "uniform, zipf or beta")->required()->check(
      CLI::IsMember({"uniform", "zipf", "beta"}));
  synth->add_option("--size", size, "Alphabet size S")->required()->check(CLI::PositiveNumber);
  synth->add_option("--alpha", zipf_alpha, "Zipf exponent")->capture_default_str();
  synth->add_option("--n", n, "Sample size")->required()->check(CLI::PositiveNumber);
  synth->add_option("--seed", seed, "RNG seed")->required();
  synth->add_option("--out", out_path, "Histogram CSV output path")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Run a Monte-Carlo experiment from a key=value config");
  std::string config_path;
  std::string out_dir = ".";
  bool plot = false;
  bench->add_option("--config", config_path, "Experiment config file")->required();
  bench->add_option("--out", out_dir, "Output directory")->capture_default_str();
  bench->add_flag("--plot", plot, "Also write an SVG chart");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*approx) {
      const auto f = func == "xlogx" ? TargetFunction::neg_x_log_x() : TargetFunction::power(approx_alpha);
      const auto r = remez(f, degree);
      auto emit = [&](std::FILE* out) {
        std::fprintf(out, "k,coeff\n");
        for (std::size_t k = 0; k < r.coeffs.size(); ++k) std::fprintf(out, "%zu,%.17g\n", k, r.coeffs[k]);
        std::fprintf(out, "# sup_error=%.17g\n", r.sup_error);
      };
      if (csv_path.empty()) {
        emit(stdout);
      } else {
        std::FILE* out = std::fopen(csv_path.c_str(), "w");
        if (!out) throw IoError("cannot open '" + csv_path + "' for writing");
        emit(out);
        if (std::fclose(out) != 0) throw IoError("write to '" + csv_path + "' failed");
      }
      return 0;
    }

    if (*entropy) {
      const Histogram h = load_histogram(est_in);
      if (est_flags.method == "jvhw") {
        const auto cfg = est_flags.config();
        const auto r = estimate_entropy_report(h, cfg);
        print_value(r.value);
        if (diagnostics) print_diagnostics(r, cfg);
      } else {
        print_value(est_flags.entropy_fn()(h));
      }
      return 0;
    }

    if (*falpha || *renyi) {
      const Histogram h = load_histogram(est_in);
      const auto cfg = est_flags.config();
      const auto r = *falpha ? estimate_falpha_report(h, order, cfg) : estimate_renyi_report(h, order, cfg);
      print_value(r.value);
      if (diagnostics) print_diagnostics(r, cfg);
      return 0;
    }

    if (*mi) {
      auto file = open_input(mi_input);
      print_value(estimate_mi(read_pair_csv(file), mi_flags.entropy_fn()));
      return 0;
    }

    if (*rate) {
      auto file = open_input(rate_input);
      SymbolTable table;
      const auto seq = read_tokens(file, table);
      print_value(estimate_entropy_rate(seq, depth, rate_flags.entropy_fn()));
      return 0;
    }

    if (*cl) {
      if (cl_flags.method != "mle" && cl_flags.method != "jvhw") {
        throw DomainError("--estimator must be mle or jvhw");
      }
      auto file = open_input(cl_input);
      const DatasetMatrix data = read_dataset_csv(file, cl_header);
      const TreeModel tree = chow_liu(data, cl_flags.entropy_fn(), cl_threads);
      write_edges(tree, std::cout);
      if (!cl_truth.empty()) {
        auto tf = open_input(cl_truth);
        const TreeModel truth = read_edges(tf, tree.d);
        std::printf("# wrong_edges_ratio=%.17g\n", wrong_edges_ratio(tree, truth));
      }
      return 0;
    }

    if (*synth) {
      SeededRng rng(seed);
      const DiscreteDistribution p = dist == "uniform" ? uniform_dist(size)
                                     : dist == "zipf"  ? zipf_dist(size, zipf_alpha)
                                                       : beta_random_dist(size, 0.6, 0.5, rng);
      const Histogram h = sample_multinomial(p, n, rng);
      auto out = open_output(out_path);
      write_histogram_csv(h, out);
      out.flush();
      if (!out) throw IoError("write to '" + out_path + "' failed");
      return 0;
    }

    if (*bench) {
      const ExperimentSpec spec = load_config(config_path);
      const auto rows = run(spec);
      fs::create_directories(out_dir);
      const fs::path csv = fs::path(out_dir) / (spec.id + ".csv");
      emit_csv(rows, csv);
      std::cout << csv.string() << '\n';
      if (plot) {
        const fs::path svg = fs::path(out_dir) / (spec.id + ".svg");
        emit_plot(rows, svg);
        std::cout << svg.string() << '\n';
      }
      if (any_failures(rows)) {
        for (const auto& r : rows) {
          if (r.failures > 0) {
            std::cerr << "failures: S=" << r.s << " n=" << r.n << " estimator=" << r.estimator << " count="
                      << r.failures << '\n';
          }
        }
        return 2;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "funcest: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
