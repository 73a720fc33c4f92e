#include "funcest/histogram.hpp"

#include <algorithm>
#include <unordered_map>

#include "funcest/error.hpp"

namespace funcest {

Histogram Histogram::from_samples(std::span<const Symbol> samples) {
  if (samples.empty()) throw DomainError("histogram: empty sample");
  std::unordered_map<Symbol, Count> tally;
  for (Symbol s : samples) ++tally[s];
  std::vector<Bin> bins;
  bins.reserve(tally.size());
  for (const auto& [s, c] : tally) bins.push_back({s, c});
  return from_counts(std::move(bins));
}

Histogram Histogram::from_counts(std::vector<Bin> bins) {
  std::sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) { return a.symbol < b.symbol; });
  Histogram h;
  h.bins_.reserve(bins.size());
  for (const Bin& b : bins) {
    if (b.count == 0) continue;
    if (!h.bins_.empty() && h.bins_.back().symbol == b.symbol) {
      h.bins_.back().count += b.count;
    } else {
      h.bins_.push_back(b);
    }
    h.n_ += b.count;
  }
  return h;
}

Histogram Histogram::from_count_vector(std::span<const Count> counts) {
  Histogram h;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    h.bins_.push_back({static_cast<Symbol>(i), counts[i]});
    h.n_ += counts[i];
  }
  return h;
}

Count Histogram::count_of(Symbol s) const {
  auto it = std::lower_bound(bins_.begin(), bins_.end(), s,
                             [](const Bin& b, Symbol v) { return b.symbol < v; });
  return (it != bins_.end() && it->symbol == s) ? it->count : 0;
}

Histogram Histogram::canonical() const {
  std::vector<Count> counts;
  counts.reserve(bins_.size());
  for (const Bin& b : bins_) counts.push_back(b.count);
  std::sort(counts.begin(), counts.end());
  return from_count_vector(counts);
}

std::map<Count, std::size_t> Histogram::profile() const {
  std::map<Count, std::size_t> out;
  for (const Bin& b : bins_) ++out[b.count];
  return out;
}

}  // namespace funcest
