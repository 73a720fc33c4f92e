#include "funcest/composite.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "funcest/error.hpp"

namespace funcest {

PairHistogram PairHistogram::from_samples(std::span<const Symbol> xs, std::span<const Symbol> ys) {
  if (xs.size() != ys.size()) throw DomainError("pair histogram: column lengths differ");
  if (xs.empty()) throw DomainError("pair histogram: empty sample");
  std::map<std::pair<Symbol, Symbol>, Count> tally;
  for (std::size_t i = 0; i < xs.size(); ++i) ++tally[{xs[i], ys[i]}];
  PairHistogram ph;
  ph.bins_.reserve(tally.size());
  for (const auto& [key, c] : tally) ph.bins_.push_back({key.first, key.second, c});
  ph.n_ = xs.size();
  return ph;
}

PairHistogram PairHistogram::from_counts(std::vector<PairBin> bins) {
  std::sort(bins.begin(), bins.end(), [](const PairBin& a, const PairBin& b) {
    return std::tie(a.first, a.second) < std::tie(b.first, b.second);
  });
  PairHistogram ph;
  for (const PairBin& b : bins) {
    if (b.count == 0) continue;
    if (!ph.bins_.empty() && ph.bins_.back().first == b.first && ph.bins_.back().second == b.second) {
      ph.bins_.back().count += b.count;
    } else {
      ph.bins_.push_back(b);
    }
    ph.n_ += b.count;
  }
  return ph;
}

Histogram PairHistogram::marginalize(Axis keep) const {
  std::vector<Bin> bins;
  bins.reserve(bins_.size());
  for (const PairBin& b : bins_) bins.push_back({keep == Axis::First ? b.first : b.second, b.count});
  return Histogram::from_counts(std::move(bins));
}

Histogram PairHistogram::joint() const {
  std::vector<Bin> bins;
  bins.reserve(bins_.size());
  for (std::size_t i = 0; i < bins_.size(); ++i) bins.push_back({static_cast<Symbol>(i), bins_[i].count});
  return Histogram::from_counts(std::move(bins));
}

PairHistogram PairHistogram::transpose() const {
  std::vector<PairBin> bins;
  bins.reserve(bins_.size());
  for (const PairBin& b : bins_) bins.push_back({b.second, b.first, b.count});
  return from_counts(std::move(bins));
}

double estimate_mi(const PairHistogram& ph, const EntropyFn& f, const MiOptions& options) {
  if (ph.n() < 2) throw DomainError("estimate_mi: need n >= 2");
  // Canonical labels make each term a function of the count multiset
  // alone, so transposition and duplicated variables give exact identities.
  const double hx = f(ph.marginalize(PairHistogram::Axis::First).canonical());
  const double hy = f(ph.marginalize(PairHistogram::Axis::Second).canonical());
  const double hxy = f(ph.joint().canonical());
  const double mi = (std::min(hx, hy) + std::max(hx, hy)) - hxy;
  return options.clamp_at_zero ? std::max(mi, 0.0) : mi;
}

Histogram tuple_histogram(std::span<const Symbol> seq, std::size_t width) {
  if (width == 0 || seq.size() < width) throw DomainError("tuple_histogram: sequence shorter than window");
  std::map<std::vector<Symbol>, Symbol> ids;
  std::vector<Symbol> samples;
  samples.reserve(seq.size() - width + 1);
  std::vector<Symbol> key(width);
  for (std::size_t i = 0; i + width <= seq.size(); ++i) {
    std::copy_n(seq.begin() + static_cast<std::ptrdiff_t>(i), width, key.begin());
    auto [it, inserted] = ids.try_emplace(key, static_cast<Symbol>(ids.size()));
    samples.push_back(it->second);
  }
  return Histogram::from_samples(samples);
}

double estimate_entropy_rate(std::span<const Symbol> seq, std::size_t depth, const EntropyFn& f) {
  if (seq.size() < depth + 2) throw DomainError("estimate_entropy_rate: sequence too short for depth");
  if (depth == 0) return f(Histogram::from_samples(seq));
  return f(tuple_histogram(seq, depth + 1)) - f(tuple_histogram(seq, depth));
}

}  // namespace funcest
