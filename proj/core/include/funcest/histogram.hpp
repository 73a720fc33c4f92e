#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace funcest {

using Symbol = std::uint64_t;
using Count = std::uint64_t;

struct Bin {
  Symbol symbol;
  Count count;

  friend bool operator==(const Bin&, const Bin&) = default;
};

/// Symbol -> count table of an observed sample; the sufficient statistic for
/// every estimator in the library.
///
/// Bins are kept sorted by symbol; unseen symbols are absent (every stored
/// count is >= 1) and n() is the sum of all counts.
class Histogram {
 public:
  Histogram() = default;

  /// Throws DomainError on an empty sample.
  static Histogram from_samples(std::span<const Symbol> samples);

  /// Merges duplicate symbols and drops zero counts.
  static Histogram from_counts(std::vector<Bin> bins);

  /// Bins with symbols 0..counts.size()-1; zero entries are skipped.
  static Histogram from_count_vector(std::span<const Count> counts);

  Count n() const noexcept { return n_; }
  /// Number of distinct observed symbols.
  std::size_t support() const noexcept { return bins_.size(); }
  bool empty() const noexcept { return bins_.empty(); }

  std::span<const Bin> bins() const noexcept { return bins_; }
  Count count_of(Symbol s) const;

  /// Same count multiset with symbols renamed 0..m-1 in ascending count
  /// order. Two histograms with equal count multisets map to the same value.
  Histogram canonical() const;

  /// count -> number of symbols observed exactly that many times.
  std::map<Count, std::size_t> profile() const;

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  std::vector<Bin> bins_;
  Count n_ = 0;
};

}  // namespace funcest
