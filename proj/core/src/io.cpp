#include "funcest/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "funcest/error.hpp"

namespace funcest {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool skip_line(std::string_view t) { return t.empty() || t.front() == '#'; }

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

std::uint64_t parse_uint(std::string_view s, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw DomainError(where(line_no) + "expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Symbol SymbolTable::intern(std::string_view token) {
  auto [it, inserted] = ids_.try_emplace(std::string(token), static_cast<Symbol>(names_.size()));
  if (inserted) names_.emplace_back(token);
  return it->second;
}

std::vector<Symbol> read_tokens(std::istream& in, SymbolTable& table) {
  std::vector<Symbol> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (skip_line(t)) continue;
    std::istringstream words{std::string(t)};
    std::string w;
    while (words >> w) out.push_back(table.intern(w));
  }
  return out;
}

Histogram read_histogram_csv(std::istream& in, SymbolTable& table) {
  std::vector<Bin> bins;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (skip_line(t)) continue;
    const auto f = fields(t);
    if (first && f.size() == 2 && f[0] == "symbol" && f[1] == "count") {
      first = false;
      continue;
    }
    first = false;
    if (f.size() != 2 || f[0].empty()) throw DomainError(where(line_no) + "expected symbol,count");
    bins.push_back({table.intern(f[0]), parse_uint(f[1], line_no)});
  }
  Histogram h = Histogram::from_counts(std::move(bins));
  if (h.empty()) throw DomainError("histogram input has no positive counts");
  return h;
}

PairHistogram read_pair_csv(std::istream& in) {
  SymbolTable tx;
  SymbolTable ty;
  std::vector<Symbol> xs;
  std::vector<Symbol> ys;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (skip_line(t)) continue;
    const auto f = fields(t);
    if (first && f.size() == 2 && f[0] == "x" && f[1] == "y") {
      first = false;
      continue;
    }
    first = false;
    if (f.size() != 2 || f[0].empty() || f[1].empty()) throw DomainError(where(line_no) + "expected x,y");
    xs.push_back(tx.intern(f[0]));
    ys.push_back(ty.intern(f[1]));
  }
  return PairHistogram::from_samples(xs, ys);
}

DatasetMatrix read_dataset_csv(std::istream& in, bool has_header) {
  std::vector<SymbolTable> tables;
  std::vector<std::vector<Symbol>> cols;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (skip_line(t)) continue;
    const auto f = fields(t);
    if (header_pending) {
      header_pending = false;
      continue;
    }
    if (cols.empty()) {
      tables.resize(f.size());
      cols.resize(f.size());
    }
    if (f.size() != cols.size()) {
      throw DomainError(where(line_no) + "expected " + std::to_string(cols.size()) + " fields");
    }
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (f[j].empty()) throw DomainError(where(line_no) + "empty field");
      cols[j].push_back(tables[j].intern(f[j]));
    }
  }
  return DatasetMatrix::from_columns(std::move(cols));
}

TreeModel read_edges(std::istream& in, int d) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  int max_index = -1;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (skip_line(t)) continue;
    const auto f = fields(t);
    if (first && f.size() == 2 && f[0] == "i" && f[1] == "j") {
      first = false;
      continue;
    }
    first = false;
    if (f.size() != 2) throw DomainError(where(line_no) + "expected i,j");
    const auto a = parse_uint(f[0], line_no);
    const auto b = parse_uint(f[1], line_no);
    if (a > 1'000'000 || b > 1'000'000) throw DomainError(where(line_no) + "variable index out of range");
    edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    max_index = std::max({max_index, static_cast<int>(a), static_cast<int>(b)});
  }
  if (d == 0) d = max_index + 1;
  if (max_index >= d) throw DomainError("edge index exceeds the number of variables");
  return TreeModel::from_edges(d, std::move(edges));
}

void write_histogram_csv(const Histogram& h, std::ostream& out) {
  out << "symbol,count\n";
  for (const Bin& b : h.bins()) out << b.symbol << ',' << b.count << '\n';
}

void write_histogram_csv(const Histogram& h, const SymbolTable& table, std::ostream& out) {
  out << "symbol,count\n";
  for (const Bin& b : h.bins()) out << table.name(b.symbol) << ',' << b.count << '\n';
}

void write_edges(const TreeModel& tree, std::ostream& out) {
  for (const auto& [a, b] : tree.edges) out << a << ',' << b << '\n';
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace funcest
