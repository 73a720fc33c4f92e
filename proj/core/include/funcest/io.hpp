#pragma once

// Text formats used by the CLI. Lines starting with '#' are comments in all
// of them, and an optional header line is skipped when present.

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "funcest/composite.hpp"
#include "funcest/graphical.hpp"
#include "funcest/histogram.hpp"

namespace funcest {

/// Interns string tokens as dense symbol ids in first-seen order.
class SymbolTable {
 public:
  Symbol intern(std::string_view token);
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(s); }

 private:
  std::unordered_map<std::string, Symbol> ids_;
  std::vector<std::string> names_;
};

/// Whitespace/newline separated tokens.
std::vector<Symbol> read_tokens(std::istream& in, SymbolTable& table);

/// `symbol,count` lines; header `symbol,count` optional. Throws DomainError
/// on malformed lines or when nothing is read.
Histogram read_histogram_csv(std::istream& in, SymbolTable& table);

/// `x,y` lines, one sample per line; header `x,y` optional.
PairHistogram read_pair_csv(std::istream& in);

/// Rows of d comma-separated tokens; each column has its own symbol space.
/// has_header drops the first non-comment line.
DatasetMatrix read_dataset_csv(std::istream& in, bool has_header = false);

/// `i,j` lines with 0-based variable indices. d = 0 infers d from the
/// largest index.
TreeModel read_edges(std::istream& in, int d = 0);

/// `symbol,count` with a header line, symbols printed as ids.
void write_histogram_csv(const Histogram& h, std::ostream& out);
/// Same, with symbols printed through `table`.
void write_histogram_csv(const Histogram& h, const SymbolTable& table, std::ostream& out);
/// `i,j` per line, no header.
void write_edges(const TreeModel& tree, std::ostream& out);

/// Opens for reading; throws IoError on failure.
std::ifstream open_input(const std::filesystem::path& path);
/// Opens for writing; throws IoError on failure.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace funcest
