#pragma once

// Monte-Carlo sweeps over synthetic distributions, with CSV and SVG output.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "funcest/estimators.hpp"

namespace funcest {

enum class ExperimentKind { EntropySweep, FalphaSweep, MiSweep, RateSweep, ChowLiuSweep };

/// "entropy", "falpha", "mi", "rate", "chowliu".
ExperimentKind parse_experiment_kind(std::string_view name);
std::string experiment_kind_name(ExperimentKind kind);

/// Sample size as a function of the alphabet size S.
///   sparse:C  ceil(C S / ln S)
///   linear:C  ceil(C S)
///   fixed:N   N
///   rate:C    ceil(C S^(D+1) / ln S^(D+1)), D the process depth
struct SampleRule {
  enum class Kind { Sparse, Linear, Fixed, Rate };
  Kind kind = Kind::Sparse;
  double value = 5.0;

  static SampleRule parse(std::string_view text);
  std::size_t resolve(std::size_t s, std::size_t depth = 0) const;
  std::string str() const;
};

struct ExperimentSpec {
  std::string id = "experiment";
  ExperimentKind kind = ExperimentKind::EntropySweep;
  /// uniform | zipf | beta. Ignored by mi and rate, which always draw
  /// Beta(0.6, 0.5) marginals, and by chowliu, which uses beta_a/beta_b.
  std::string dist = "uniform";
  /// Zipf exponent.
  double alpha = 1.0;
  /// Order of the power sum in falpha sweeps.
  double order = 0.5;
  std::vector<std::size_t> s_grid;
  SampleRule n_rule;
  /// When non-empty, every S is paired with each of these n instead of
  /// n_rule.
  std::vector<std::size_t> n_grid;
  std::size_t depth = 2;
  int d = 5;
  double beta_a = 0.5;
  double beta_b = 0.5;
  /// Entropy method names; falpha sweeps accept only mle and jvhw.
  std::vector<std::string> estimators{"mle", "jvhw"};
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  EstimatorConfig jvhw;
  /// Record wall time per estimator; off makes runtime_s zero and the CSV
  /// byte-reproducible.
  bool timing = true;
  /// Worker threads; 0 = hardware concurrency.
  unsigned threads = 0;
};

/// Throws DomainError when trials = 0, the grid is empty or an estimator
/// name is unknown for the experiment kind.
void validate(const ExperimentSpec& spec);

struct ResultRow {
  std::string experiment;
  std::size_t s = 0;
  std::size_t n = 0;
  std::string estimator;
  /// Successful trials.
  std::size_t trials = 0;
  double rmse = 0.0;
  double bias = 0.0;
  double variance = 0.0;
  /// Mean wall time per successful trial.
  double runtime_s = 0.0;
  /// Trials whose estimator threw; not written to CSV.
  std::size_t failures = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// Runs every (grid point, trial) on a worker pool. Each trial draws its data
/// from its own RNG stream and every estimator sees that same data. Rows come
/// out in grid order, then estimator order. For chowliu the per-trial error
/// is the wrong-edges-ratio, so the truth is 0.
std::vector<ResultRow> run(const ExperimentSpec& spec);

/// True when any row has failures.
bool any_failures(const std::vector<ResultRow>& rows);

inline constexpr std::string_view kCsvHeader =
    "experiment,S,n,estimator,trials,rmse,bias,variance,runtime_s";

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out);
/// Throws IoError when the file cannot be written.
void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
/// Inverse of emit_csv; failures are read back as 0.
std::vector<ResultRow> parse_csv(std::istream& in);

/// RMSE line chart, one series per (experiment, estimator). The x axis is
/// ln S when S varies across rows and ln n otherwise.
void emit_plot(const std::vector<ResultRow>& rows, std::ostream& out);
void emit_plot(const std::vector<ResultRow>& rows, const std::filesystem::path& path);

/// Flat key=value text; '#' starts a comment, blank lines are skipped.
/// Keys: experiment, id, dist, alpha, order, S_grid, n_rule, n_grid, depth,
/// d, beta_a, beta_b, estimators, trials, seed, c1, c2, timing, threads.
/// Lists are comma-separated. Unknown keys throw DomainError.
ExperimentSpec parse_config(std::istream& in);
ExperimentSpec load_config(const std::filesystem::path& path);

}  // namespace funcest
