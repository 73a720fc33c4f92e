#include "funcest/graphical.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iterator>
#include <mutex>
#include <numeric>
#include <thread>

#include "funcest/composite.hpp"
#include "funcest/error.hpp"

namespace funcest {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

}  // namespace

DatasetMatrix DatasetMatrix::from_rows(const std::vector<std::vector<Symbol>>& rows) {
  if (rows.empty()) throw DomainError("dataset: no rows");
  const std::size_t d = rows.front().size();
  std::vector<std::vector<Symbol>> cols(d);
  for (auto& c : cols) c.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != d) throw DomainError("dataset: ragged rows");
    for (std::size_t j = 0; j < d; ++j) cols[j].push_back(row[j]);
  }
  return from_columns(std::move(cols));
}

DatasetMatrix DatasetMatrix::from_columns(std::vector<std::vector<Symbol>> columns) {
  if (columns.size() < 2) throw DomainError("dataset: need at least two variables");
  const std::size_t n = columns.front().size();
  if (n == 0) throw DomainError("dataset: no rows");
  for (const auto& c : columns) {
    if (c.size() != n) throw DomainError("dataset: columns differ in length");
  }
  DatasetMatrix m;
  m.columns_ = std::move(columns);
  return m;
}

TreeModel TreeModel::from_edges(int d, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  return TreeModel{d, std::move(edges)};
}

TreeModel TreeModel::star(int d, int center) {
  std::vector<Edge> edges;
  for (int k = 0; k < d; ++k) {
    if (k != center) edges.emplace_back(center, k);
  }
  return from_edges(d, std::move(edges));
}

bool TreeModel::is_spanning_tree() const {
  if (d < 1 || edges.size() != static_cast<std::size_t>(d - 1)) return false;
  DisjointSets sets(static_cast<std::size_t>(d));
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= d || b >= d || a == b) return false;
    if (!sets.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b))) return false;
  }
  return true;  // d - 1 edges without a cycle connect all d nodes
}

int TreeModel::star_center() const {
  if (d < 3 || !is_spanning_tree()) return -1;
  std::vector<int> degree(static_cast<std::size_t>(d), 0);
  for (const auto& [a, b] : edges) {
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
  }
  for (int v = 0; v < d; ++v) {
    if (degree[static_cast<std::size_t>(v)] == d - 1) return v;
  }
  return -1;
}

WeightMatrix pairwise_mi_matrix(const DatasetMatrix& data, const EntropyFn& f, unsigned threads) {
  if (data.rows() < 2) throw DomainError("pairwise_mi_matrix: need n >= 2");
  const std::size_t d = data.cols();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  }

  WeightMatrix w(d);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < pairs.size(); k = next++) {
      try {
        const auto [i, j] = pairs[k];
        const auto ph = PairHistogram::from_samples(data.column(i), data.column(j));
        w.set(i, j, estimate_mi(ph, f));  // distinct cells per pair
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned n_threads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, pairs.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return w;
}

TreeModel mwst(const WeightMatrix& weights) {
  const std::size_t d = weights.size();
  if (d < 2) throw DomainError("mwst: need at least two variables");
  struct Candidate {
    double w;
    int i;
    int j;
  };
  std::vector<Candidate> cand;
  cand.reserve(d * (d - 1) / 2);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (!std::isfinite(weights(i, j))) throw DomainError("mwst: non-finite weight");
      cand.push_back({weights(i, j), static_cast<int>(i), static_cast<int>(j)});
    }
  }
  std::stable_sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    if (a.w != b.w) return a.w > b.w;
    return std::pair{a.i, a.j} < std::pair{b.i, b.j};
  });

  DisjointSets sets(d);
  std::vector<Edge> edges;
  for (const Candidate& c : cand) {
    if (sets.unite(static_cast<std::size_t>(c.i), static_cast<std::size_t>(c.j))) {
      edges.emplace_back(c.i, c.j);
      if (edges.size() + 1 == d) break;
    }
  }
  return TreeModel::from_edges(static_cast<int>(d), std::move(edges));
}

TreeModel chow_liu(const DatasetMatrix& data, const EntropyFn& f, unsigned threads) {
  return mwst(pairwise_mi_matrix(data, f, threads));
}

double wrong_edges_ratio(const TreeModel& est, const TreeModel& truth) {
  if (est.d != truth.d) throw DomainError("wrong_edges_ratio: variable counts differ");
  if (truth.d < 3) throw DomainError("wrong_edges_ratio: need d >= 3");
  if (truth.star_center() < 0) throw DomainError("wrong_edges_ratio: truth must be a star");
  std::size_t wrong = 0;
  for (const Edge& e : est.edges) {
    if (!std::binary_search(truth.edges.begin(), truth.edges.end(), e)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(truth.d - 2);
}

double symmetric_difference_ratio(const TreeModel& est, const TreeModel& truth) {
  if (est.d != truth.d) throw DomainError("symmetric_difference_ratio: variable counts differ");
  if (truth.d < 2) throw DomainError("symmetric_difference_ratio: need d >= 2");
  std::vector<Edge> diff;
  std::set_symmetric_difference(est.edges.begin(), est.edges.end(), truth.edges.begin(),
                                truth.edges.end(), std::back_inserter(diff));
  return static_cast<double>(diff.size()) / (2.0 * static_cast<double>(truth.d - 1));
}

}  // namespace funcest
