#pragma once

// Chow-Liu tree learning with a pluggable mutual-information estimate.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "funcest/histogram.hpp"
#include "funcest/methods.hpp"

namespace funcest {

/// n records of d symbols, stored column-major.
class DatasetMatrix {
 public:
  DatasetMatrix() = default;

  /// Throws DomainError on ragged rows, d < 2 or no rows.
  static DatasetMatrix from_rows(const std::vector<std::vector<Symbol>>& rows);
  /// Throws DomainError on unequal column lengths, d < 2 or empty columns.
  static DatasetMatrix from_columns(std::vector<std::vector<Symbol>> columns);

  std::size_t rows() const noexcept { return columns_.empty() ? 0 : columns_.front().size(); }
  std::size_t cols() const noexcept { return columns_.size(); }
  std::span<const Symbol> column(std::size_t j) const { return columns_.at(j); }

 private:
  std::vector<std::vector<Symbol>> columns_;
};

using Edge = std::pair<int, int>;

/// Undirected edge set on d variables; edges are stored with first < second
/// and sorted.
struct TreeModel {
  int d = 0;
  std::vector<Edge> edges;

  /// Normalizes orientation and order.
  static TreeModel from_edges(int d, std::vector<Edge> edges);
  /// Star with every variable attached to `center`.
  static TreeModel star(int d, int center = 0);

  /// d - 1 edges, in range, connected and acyclic.
  bool is_spanning_tree() const;
  /// Center index if this is a star (d >= 3), else -1.
  int star_center() const;

  friend bool operator==(const TreeModel&, const TreeModel&) = default;
};

/// Dense symmetric d x d matrix with a zero diagonal.
class WeightMatrix {
 public:
  explicit WeightMatrix(std::size_t d = 0) : d_(d), data_(d * d, 0.0) {}

  std::size_t size() const noexcept { return d_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * d_ + j]; }
  /// Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double w) {
    data_[i * d_ + j] = w;
    data_[j * d_ + i] = w;
  }

 private:
  std::size_t d_;
  std::vector<double> data_;
};

/// Entry (i, j) = estimated I(X_i; X_j), each pair computed once, pairs spread
/// over `threads` workers (0 = hardware concurrency).
WeightMatrix pairwise_mi_matrix(const DatasetMatrix& data, const EntropyFn& f, unsigned threads = 0);

/// Maximum-weight spanning tree: Kruskal on weights sorted descending, ties
/// broken by lexicographic (i, j). Throws DomainError for d < 2 or
/// non-finite weights.
TreeModel mwst(const WeightMatrix& weights);

TreeModel chow_liu(const DatasetMatrix& data, const EntropyFn& f, unsigned threads = 0);

/// |est \ truth| / (d - 2) for a star-shaped truth. Throws DomainError when
/// d < 3, the sizes differ, or truth is not a star.
double wrong_edges_ratio(const TreeModel& est, const TreeModel& truth);

/// |est symmetric-difference truth| / (2 (d - 1)); defined for any trees.
double symmetric_difference_ratio(const TreeModel& est, const TreeModel& truth);

}  // namespace funcest
