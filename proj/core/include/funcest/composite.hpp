#pragma once

// Mutual information and entropy rate assembled from any entropy estimator.

#include <span>
#include <utility>
#include <vector>

#include "funcest/histogram.hpp"
#include "funcest/methods.hpp"

namespace funcest {

struct PairBin {
  Symbol first;
  Symbol second;
  Count count;

  friend bool operator==(const PairBin&, const PairBin&) = default;
};

/// Joint (x, y) counts, sorted lexicographically; zero counts are absent.
class PairHistogram {
 public:
  enum class Axis { First, Second };

  /// Throws DomainError on empty or length-mismatched input.
  static PairHistogram from_samples(std::span<const Symbol> xs, std::span<const Symbol> ys);
  static PairHistogram from_counts(std::vector<PairBin> bins);

  Count n() const noexcept { return n_; }
  std::span<const PairBin> bins() const noexcept { return bins_; }

  /// Sums out the other coordinate; the kept symbol ids are preserved.
  Histogram marginalize(Axis keep) const;

  /// The joint table as a flat histogram, one symbol per occupied cell.
  Histogram joint() const;

  PairHistogram transpose() const;

 private:
  std::vector<PairBin> bins_;
  Count n_ = 0;
};

struct MiOptions {
  /// Report max(I, 0) instead of the raw difference.
  bool clamp_at_zero = false;
};

/// f(X) + f(Y) - f(X, Y). Needs n >= 2.
double estimate_mi(const PairHistogram& ph, const EntropyFn& f, const MiOptions& options = {});

/// Histogram of overlapping length-`width` windows of `seq`, each distinct
/// tuple mapped to its own symbol. Yields length - width + 1 samples.
Histogram tuple_histogram(std::span<const Symbol> seq, std::size_t width);

/// f(H(X_1^{D+1})) - f(H(X_1^D)) over overlapping windows; D = 0 returns
/// f of the plain histogram. Needs length >= D + 2.
double estimate_entropy_rate(std::span<const Symbol> seq, std::size_t depth, const EntropyFn& f);

}  // namespace funcest
