#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "poset_codes/construct.hpp"
#include "poset_codes/io.hpp"

using namespace poset_codes;
namespace fs = std::filesystem;

namespace {

Poset poset_from(const std::string& text) {
  std::istringstream in(text);
  return read_poset(in);
}

LinearCode code_from(const std::string& text, const fs::path& base = {}) {
  std::istringstream in(text);
  return read_code(in, base);
}

// Line number of the ParseError thrown by f, or -1.
template <class F>
int error_line(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("poset_codes_io_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path_ / name) << text; }

 private:
  fs::path path_;
};

}  // namespace

TEST(PosetFile, ReadsRelationsAndComments) {
  auto p = poset_from("# bowtie\nn=5\n1 < 3\n2<3   # two below\n\n3 < 4\n3 < 5\n");
  EXPECT_EQ(p.size(), 5);
  EXPECT_TRUE(p.leq(1, 4));
  EXPECT_TRUE(p.leq(2, 5));
  EXPECT_FALSE(p.leq(1, 2));
  EXPECT_FALSE(p.leq(4, 5));
}

TEST(PosetFile, RoundTripsRandomPosets) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 9;
    auto rel = oracle::random_relations(n, 0.3, rng);
    auto p = Poset::from_cover_relations(n, rel);
    std::ostringstream out;
    write_poset(out, p);
    auto back = poset_from(out.str());
    EXPECT_EQ(back, p);
    auto want = oracle::Order::from(n, rel);
    EXPECT_EQ(oracle::Order::of(back).le, want.le);
  }
}

TEST(PosetFile, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line([] { poset_from(""); }), 1);
  EXPECT_EQ(error_line([] { poset_from("# c\nm=3\n"); }), 2);
  EXPECT_EQ(error_line([] { poset_from("n=3\n1 < 2\n2 - 3\n"); }), 3);
  EXPECT_EQ(error_line([] { poset_from("n=3\n1 < 4\n"); }), 2);
  EXPECT_EQ(error_line([] { poset_from("n=3\n1 < x\n"); }), 2);
  EXPECT_EQ(error_line([] { poset_from("n=3\n1 < 2\n2 < 3\n\n3 < 1\n"); }), 5);
  EXPECT_EQ(error_line([] { poset_from("n=0\n"); }), 1);
  try {
    poset_from("n=2\n1 < 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line 2: ", 0), 0u);
  }
}

TEST(CodeFile, ReadsEveryPosetKind) {
  auto h = code_from("q=2\nposet=hamming n=4\nG=\n1100\n0011\n");
  EXPECT_EQ(h.poset(), Poset::antichain(4));
  EXPECT_EQ(h.k(), 2);
  auto o = code_from("q=2\nposet=ordered n=2 r=2\nG=\n1010 0101\n");
  EXPECT_EQ(o.poset(), chain_product_poset(2, 2));
  EXPECT_EQ(o.generator().at(1, 3), 1u);
  TempDir dir;
  dir.write("p.poset", "n=3\n1 < 2\n");
  auto f = code_from("q=3\nposet=file:p.poset\nG=\n120\n", dir.path());
  EXPECT_TRUE(f.poset().leq(1, 2));
  EXPECT_FALSE(f.poset().leq(1, 3));
  EXPECT_EQ(f.generator().at(0, 1), 2u);
}

TEST(CodeFile, RelativePosetPathResolvesAgainstCodeFile) {
  TempDir dir;
  fs::create_directories(dir.path() / "sub");
  dir.write("sub/c.code", "q=2\nposet=file:../p.poset\nG=\n101\n");
  dir.write("p.poset", "n=3\n1 < 3\n");
  auto c = read_code_file(dir.path() / "sub" / "c.code");
  EXPECT_TRUE(c.poset().leq(1, 3));
}

TEST(CodeFile, CommaRowsForLargeFields) {
  auto c = code_from("q=11\nposet=hamming n=3\nG=\n1,10,0\n0,1,7\n");
  EXPECT_EQ(c.generator().at(0, 1), 10u);
  EXPECT_EQ(c.generator().at(1, 2), 7u);
  std::ostringstream out;
  write_code(out, c);
  EXPECT_EQ(out.str(), "q=11\nposet=hamming n=3\nG=\n1,10,0\n0,1,7\n");
}

TEST(CodeFile, RoundTripsConstructions) {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    for (int r = 2; r <= 4; ++r) {
      auto c = build({.family = Family::n2, .q = q, .r = r, .k1 = 1, .k2 = r - 1, .seed = 2});
      std::ostringstream out;
      write_code(out, c);
      auto back = code_from(out.str());
      EXPECT_EQ(back.generator(), c.generator());
      EXPECT_EQ(back.poset(), c.poset());
    }
  }
  auto n1 = construct_n1(2, 3, 1, {0, 1});
  std::ostringstream out;
  write_code(out, n1);
  EXPECT_EQ(out.str(), "q=2\nposet=ordered n=1 r=3\nG=\n010\n");
}

TEST(CodeFile, GeneralPosetNeedsReference) {
  auto p = Poset::from_cover_relations(3, std::vector<std::pair<int, int>>{{1, 2}});
  LinearCode c(Matrix(PrimeField(2), {{1, 1, 0}}, 3), p);
  std::ostringstream out;
  EXPECT_THROW(write_code(out, c), UsageError);
  write_code(out, c, "p.poset");
  EXPECT_NE(out.str().find("poset=file:p.poset\n"), std::string::npos);
}

TEST(CodeFile, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line([] { code_from("q=2\n"); }), 1);
  EXPECT_EQ(error_line([] { code_from("q=4\nposet=hamming n=2\nG=\n11\n"); }), 1);
  EXPECT_EQ(error_line([] { code_from("q=2\n# x\nposet=cube n=2\nG=\n11\n"); }), 3);
  EXPECT_EQ(error_line([] { code_from("q=2\nposet=ordered n=2\nG=\n11\n"); }), 2);
  EXPECT_EQ(error_line([] { code_from("q=2\nposet=hamming n=2\nH=\n11\n"); }), 3);
  EXPECT_EQ(error_line([] { code_from("q=2\nposet=hamming n=3\nG=\n110\n11\n"); }), 5);
  EXPECT_EQ(error_line([] { code_from("q=2\nposet=hamming n=2\nG=\n12\n"); }), 4);
  EXPECT_EQ(error_line([] { code_from("q=2\nposet=hamming n=2\nG=\n1a\n"); }), 4);
  EXPECT_EQ(error_line([] { code_from("q=2\nposet=hamming n=2\nG=\n11\n11\n"); }), 5);
  EXPECT_EQ(error_line([] { code_from("q=2\nposet=file:/nonexistent/p.poset\nG=\n11\n"); }), 2);
}

TEST(CodeFile, MissingFileIsUsageErrorAndPathPrefixesParseErrors) {
  EXPECT_THROW(read_code_file("/nonexistent/c.code"), UsageError);
  TempDir dir;
  dir.write("bad.code", "q=2\nposet=hamming n=2\nG=\n19\n");
  try {
    read_code_file(dir.path() / "bad.code");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    const std::string what = e.what();
    EXPECT_EQ(what.rfind("line 4: ", 0), 0u);
    EXPECT_NE(what.find("bad.code: "), std::string::npos);
    EXPECT_EQ(what.find("line 4: line"), std::string::npos);
  }
}

TEST(Points, CoordinatesAreExactThenRounded) {
  EXPECT_EQ(format_coordinate(0, 4), "0/4=0.000000000000");
  EXPECT_EQ(format_coordinate(3, 4), "3/4=0.750000000000");
  EXPECT_EQ(format_coordinate(1, 3), "1/3=0.333333333333");
  EXPECT_EQ(format_coordinate(2, 3), "2/3=0.666666666667");
  EXPECT_EQ(format_coordinate(1, 243), "1/243=0.004115226337");
}

TEST(Points, CsvOfWorkedExample) {
  LinearCode c(Matrix(PrimeField(2), {{1, 0, 1, 0}, {0, 1, 0, 1}}, 4), chain_product_poset(2, 2));
  std::ostringstream out;
  write_points_csv(out, code_to_points(c));
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "x1,x2");
  std::set<std::string> rows;
  for (std::string line; std::getline(in, line);) rows.insert(line);
  EXPECT_EQ(rows, (std::set<std::string>{"0/4=0.000000000000,0/4=0.000000000000", "1/4=0.250000000000,1/4=0.250000000000",
                                         "2/4=0.500000000000,2/4=0.500000000000", "3/4=0.750000000000,3/4=0.750000000000"}));
}
