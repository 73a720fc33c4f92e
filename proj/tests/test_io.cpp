#include <gtest/gtest.h>

#include <sstream>

#include "funcest/error.hpp"
#include "funcest/io.hpp"

using namespace funcest;

TEST(SymbolTable, InternsInFirstSeenOrder) {
  SymbolTable t;
  EXPECT_EQ(t.intern("b"), 0u);
  EXPECT_EQ(t.intern("a"), 1u);
  EXPECT_EQ(t.intern("b"), 0u);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.name(1), "a");
}

TEST(Tokens, WhitespaceAndComments) {
  std::istringstream in("# header comment\nx y  x\n\tz\nx\n");
  SymbolTable t;
  const auto seq = read_tokens(in, t);
  EXPECT_EQ(seq, (std::vector<Symbol>{0, 1, 0, 2, 0}));
}

TEST(HistogramCsv, ReadWithAndWithoutHeader) {
  std::istringstream with("symbol,count\ncat,3\ndog,1\ncat,2\n");
  SymbolTable t;
  const auto h = read_histogram_csv(with, t);
  EXPECT_EQ(h.n(), 6u);
  EXPECT_EQ(h.count_of(0), 5u);

  std::istringstream bare("a,2\n# skip\nb,2\n");
  SymbolTable u;
  EXPECT_EQ(read_histogram_csv(bare, u), Histogram::from_count_vector(std::vector<Count>{2, 2}));
}

TEST(HistogramCsv, Errors) {
  SymbolTable t;
  std::istringstream empty("symbol,count\n");
  EXPECT_THROW(read_histogram_csv(empty, t), DomainError);
  std::istringstream bad("a,x\n");
  EXPECT_THROW(read_histogram_csv(bad, t), DomainError);
  std::istringstream missing("a\n");
  EXPECT_THROW(read_histogram_csv(missing, t), DomainError);
}

TEST(HistogramCsv, WriteReadRoundTrip) {
  const auto h = Histogram::from_counts({{3, 4}, {9, 1}, {12, 7}});
  std::ostringstream out;
  write_histogram_csv(h, out);
  EXPECT_EQ(out.str(), "symbol,count\n3,4\n9,1\n12,7\n");
  std::istringstream in(out.str());
  SymbolTable t;
  const auto back = read_histogram_csv(in, t);
  EXPECT_EQ(back.n(), h.n());
  EXPECT_EQ(back.profile(), h.profile());
}

TEST(HistogramCsv, WriteWithNames) {
  SymbolTable t;
  t.intern("red");
  t.intern("blue");
  std::ostringstream out;
  write_histogram_csv(Histogram::from_counts({{0, 2}, {1, 5}}), t, out);
  EXPECT_EQ(out.str(), "symbol,count\nred,2\nblue,5\n");
}

TEST(PairCsv, ReadsColumnsIndependently) {
  std::istringstream in("x,y\na,a\na,b\nb,a\n");
  const auto ph = read_pair_csv(in);
  EXPECT_EQ(ph.n(), 3u);
  EXPECT_EQ(ph.bins().size(), 3u);
  EXPECT_EQ(ph.marginalize(PairHistogram::Axis::First).count_of(0), 2u);
  EXPECT_EQ(ph.marginalize(PairHistogram::Axis::Second).count_of(0), 2u);
  std::istringstream bad("a,b,c\n");
  EXPECT_THROW(read_pair_csv(bad), DomainError);
}

TEST(DatasetCsv, HeaderAndRaggedRows) {
  std::istringstream in("v0,v1,v2\n1,x,p\n2,x,q\n1,y,p\n");
  const auto m = read_dataset_csv(in, true);
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m.column(1)[2], 1u);
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(read_dataset_csv(ragged), DomainError);
}

TEST(Edges, ReadWriteRoundTrip) {
  const auto t = TreeModel::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
  std::ostringstream out;
  write_edges(t, out);
  EXPECT_EQ(out.str(), "0,1\n1,2\n1,3\n");
  std::istringstream in("i,j\n" + out.str());
  EXPECT_EQ(read_edges(in), t);
  std::istringstream explicit_d(out.str());
  EXPECT_EQ(read_edges(explicit_d, 6).d, 6);
}

TEST(Files, OpenErrors) {
  EXPECT_THROW(open_input("/nonexistent-dir/in.txt"), IoError);
  EXPECT_THROW(open_output("/nonexistent-dir/out.txt"), IoError);
}
