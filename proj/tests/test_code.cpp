#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "poset_codes/code.hpp"
#include "poset_codes/ordered.hpp"

using namespace poset_codes;
using W = std::vector<PrimeField::Elem>;

namespace {

LinearCode make(std::uint32_t q, std::vector<std::vector<std::int64_t>> rows, Poset p) {
  const auto n = static_cast<std::size_t>(p.size());
  return LinearCode(Matrix(PrimeField(q), rows, n), std::move(p));
}

LinearCode self_dual_hamming() { return make(2, {{1, 1, 0, 0}, {0, 0, 1, 1}}, Poset::antichain(4)); }
LinearCode ordered_422() { return make(2, {{1, 0, 1, 0}, {0, 1, 0, 1}}, chain_product_poset(2, 2)); }

const std::vector<oracle::CorpusEntry>& corpus() {
  static const auto c = oracle::random_corpus(7, {2, 3}, 6, 2024);
  return c;
}

// Strength by counting patterns on brute-force ideals of `order`.
int oa_strength_oracle(const Matrix& rows, const oracle::Order& order) {
  const auto q = rows.field().q();
  const auto words = oracle::codewords(rows);
  int strength = 0;
  for (int t = 1; t <= std::min<int>(static_cast<int>(rows.rows()), order.n); ++t) {
    bool ok = true;
    for (Mask ideal : order.ideals_of_size(t)) {
      std::map<std::vector<std::uint32_t>, std::size_t> counts;
      for (const auto& w : words) {
        std::vector<std::uint32_t> key;
        for (int i = 0; i < order.n; ++i) {
          if ((ideal >> i) & 1u) key.push_back(w[i]);
        }
        ++counts[key];
      }
      ok = ok && counts.size() == oracle::ipow(q, t);
      for (const auto& [key, c] : counts) ok = ok && c == words.size() / oracle::ipow(q, t);
    }
    if (!ok) break;
    strength = t;
  }
  return strength;
}

}  // namespace

TEST(PosetWeight, Examples) {
  EXPECT_EQ(poset_weight(W{1, 0, 2, 0}, Poset::antichain(4)), 2);
  EXPECT_EQ(poset_weight(W{1, 1, 0}, Poset::chain(3)), 2);
  EXPECT_EQ(poset_weight(W{0, 1, 1, 0}, chain_product_poset(2, 2)), 3);
  EXPECT_THROW(poset_weight(W{1, 0}, Poset::chain(3)), UsageError);
}

TEST(PosetWeight, AntichainIsHammingWeight) {
  auto p = Poset::antichain(12);
  for (std::uint32_t x = 0; x < (1u << 12); x += 7) {
    W v(12);
    for (int i = 0; i < 12; ++i) v[i] = (x >> i) & 1u;
    EXPECT_EQ(poset_weight(v, p), std::popcount(x));
  }
}

TEST(PosetWeight, DistanceIsAMetric) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const std::uint32_t q = trial % 2 ? 3 : 2;
    PrimeField f(q);
    auto p = Poset::from_cover_relations(n, oracle::random_relations(n, 0.3, rng));
    auto rnd = [&] {
      W v(n);
      for (auto& e : v) e = static_cast<std::uint32_t>(rng() % q);
      return v;
    };
    auto x = rnd(), y = rnd(), z = rnd();
    const int dxy = poset_distance(x, y, f, p);
    EXPECT_GE(dxy, 0);
    EXPECT_EQ(poset_distance(x, x, f, p), 0);
    EXPECT_EQ(dxy == 0, x == y);
    EXPECT_EQ(dxy, poset_distance(y, x, f, p));
    EXPECT_LE(poset_distance(x, z, f, p), dxy + poset_distance(y, z, f, p));
  }
}

TEST(DualCode, FullSpaceHasZeroDual) {
  auto full = make(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, Poset::chain(3));
  auto d = dual_code(full);
  EXPECT_EQ(d.k(), 0);
  EXPECT_EQ(d.n(), 3);
}

TEST(DualCode, SelfDualExample) {
  auto c = self_dual_hamming();
  EXPECT_TRUE(same_code(dual_code(c), c));
}

TEST(DualCode, ChainExampleLivesInReversedChain) {
  auto c = make(2, {{1, 0, 0}, {0, 0, 1}}, Poset::chain(3));
  auto d = dual_code(c);
  EXPECT_TRUE(same_code(d, make(2, {{0, 1, 0}}, Poset::chain(3).dual())));
}

TEST(DualCode, DoubleDualIsOriginal) {
  for (const auto& e : corpus()) {
    EXPECT_TRUE(same_code(dual_code(dual_code(e.code)), e.code));
    EXPECT_TRUE(e.code.generator().orthogonal_to(e.code.parity_check()));
  }
}

TEST(MinDistance, Examples) {
  EXPECT_EQ(min_distance(self_dual_hamming()), 2);
  EXPECT_EQ(min_distance(ordered_422()), 2);
  EXPECT_EQ(min_distance(make(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, Poset::chain(3))), 1);
}

TEST(MinDistance, MatchesEnumerationOracle) {
  for (const auto& e : corpus()) {
    auto order = oracle::Order::from(e.code.n(), e.relations);
    EXPECT_EQ(min_distance(e.code), oracle::min_distance(order, e.code.generator()));
  }
}

TEST(MinDistance, BudgetIsEnforced) {
  Budget tiny{3};
  EXPECT_THROW(min_distance(self_dual_hamming(), tiny), ResourceError);
  try {
    min_distance(self_dual_hamming(), tiny);
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("--max-enum=3"), std::string::npos);
  }
}

TEST(GeneralizedWeights, Examples) {
  auto full = make(5, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, Poset::chain(4));
  EXPECT_EQ(generalized_weights(full).d, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(generalized_weights(self_dual_hamming()).d, (std::vector<int>{2, 4}));
  EXPECT_EQ(generalized_weights(ordered_422()).d, (std::vector<int>{2, 4}));
}

TEST(GeneralizedWeights, RankCriterionMatchesSubcodeEnumeration) {
  int checked = 0;
  for (const auto& e : corpus()) {
    if (oracle::ipow(e.code.q(), e.code.k()) > 243) continue;
    auto order = oracle::Order::from(e.code.n(), e.relations);
    EXPECT_EQ(generalized_weights(e.code).d, oracle::generalized_weights(order, e.code.generator()));
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(GeneralizedWeights, StrictlyIncreasingAndBounded) {
  for (const auto& e : corpus()) {
    auto p = generalized_weights(e.code);
    const int n = e.code.n(), k = e.code.k();
    for (int t = 1; t <= k; ++t) {
      EXPECT_LE(p[t], n - k + t);
      if (t > 1) {
        EXPECT_LT(p[t - 1], p[t]);
      }
    }
  }
}

TEST(WeiDuality, Examples) {
  EXPECT_TRUE(wei_duality_check(self_dual_hamming()));
  EXPECT_TRUE(wei_duality_check(make(2, {{0, 1, 0}}, Poset::chain(3))));
  EXPECT_EQ(generalized_weights(dual_code(make(2, {{0, 1, 0}}, Poset::chain(3)))).d, (std::vector<int>{1, 3}));
}

TEST(WeiDuality, HoldsOnRandomCorpus) {
  for (const auto& e : corpus()) EXPECT_TRUE(wei_duality_check(e.code));
}

TEST(WeiDuality, RejectsDegenerateDimensions) {
  auto full = make(2, {{1, 0}, {0, 1}}, Poset::antichain(2));
  EXPECT_THROW(wei_duality_check(full), PreconditionError);
}

TEST(OrthogonalArray, Examples) {
  auto full = make(2, {{1, 0}, {0, 1}}, Poset::antichain(2));
  auto cert = oa_strength(full);
  EXPECT_EQ(cert.strength, 2);
  EXPECT_EQ(cert.index, 1u);
  auto c = ordered_422();
  auto in_dual = oa_strength(c, c.poset().dual());
  EXPECT_EQ(in_dual.strength, 1);
  EXPECT_EQ(in_dual.index, 2u);
  auto mds = make(2, {{0, 1, 1, 1}, {1, 0, 0, 1}}, chain_product_poset(2, 2));
  ASSERT_EQ(min_distance(mds), 3);
  EXPECT_EQ(oa_strength(dual_code(mds), mds.poset()).strength, 2);
}

TEST(OrthogonalArray, DualRowsHaveStrengthDMinusOne) {
  for (const auto& e : corpus()) {
    auto dual = dual_code(e.code);
    auto cert = oa_strength(dual, e.code.poset());
    EXPECT_EQ(cert.strength, min_distance(e.code) - 1);
    EXPECT_EQ(cert.index * oracle::ipow(e.code.q(), cert.strength), oracle::ipow(e.code.q(), dual.k()));
  }
}

TEST(OrthogonalArray, MatchesPatternCountOracle) {
  for (const auto& e : corpus()) {
    auto order = oracle::Order::from(e.code.n(), e.relations);
    EXPECT_EQ(oa_strength(e.code).strength, oa_strength_oracle(e.code.generator(), order));
  }
}

TEST(Classify, Examples) {
  auto a = classify(self_dual_hamming());
  EXPECT_EQ(a.kind, CodeClass::nmds);
  EXPECT_EQ(a.d, 2);
  EXPECT_EQ(a.d2, 4);
  auto b = classify(ordered_422());
  EXPECT_EQ(b.kind, CodeClass::nmds);
  EXPECT_EQ(b.dual_d, 2);
  auto c = classify(make(2, {{0, 1, 0}}, Poset::chain(3)));
  EXPECT_TRUE(c.degenerate);
  EXPECT_EQ(c.d, 2);
  EXPECT_EQ(c.dual_d, 1);
  EXPECT_EQ(c.kind, CodeClass::nmds);
  EXPECT_EQ(c.label(), "NMDS (degenerate k=1)");
  auto mds = classify(make(2, {{0, 1, 1, 1}, {1, 0, 0, 1}}, chain_product_poset(2, 2)));
  EXPECT_EQ(mds.kind, CodeClass::mds);
}

TEST(Classify, DegenerateDimensionsAreRejected) {
  auto full = make(2, {{1, 0}, {0, 1}}, Poset::antichain(2));
  EXPECT_THROW(classify(full), PreconditionError);
}

TEST(Classify, AlmostMdsThatIsNotNmds) {
  // d = n-k = 1 but d_2 = 2 < n-k+2.
  auto c = make(2, {{1, 0, 0, 0}, {0, 1, 0, 0}}, Poset::antichain(4));
  auto cls = classify(c);
  EXPECT_EQ(cls.d, 2 - 1);
  EXPECT_EQ(cls.kind, CodeClass::other);
  auto amds = make(2, {{1, 1, 0, 0}, {0, 1, 1, 0}}, Poset::antichain(4));
  auto a = classify(amds);
  EXPECT_EQ(a.d, 2);
  EXPECT_EQ(a.d2, 3);
  EXPECT_EQ(a.kind, CodeClass::almost_mds);
  EXPECT_EQ(to_string(a.kind), "AMDS-not-NMDS");
}

TEST(Classify, NmdsIffDistancesSumToLength) {
  int nmds = 0;
  for (const auto& e : corpus()) {
    const auto order = oracle::Order::from(e.code.n(), e.relations);
    const int d = oracle::min_distance(order, e.code.generator());
    Matrix h = e.code.parity_check();
    const int dd = oracle::min_distance(order.reversed(), h);
    auto cls = classify(e.code);
    EXPECT_EQ(cls.is_nmds(), d + dd == e.code.n());
    EXPECT_EQ(cls.d, d);
    EXPECT_EQ(cls.dual_d, dd);
    if (cls.is_nmds()) {
      ++nmds;
      EXPECT_TRUE(classify(dual_code(e.code)).is_nmds());
    }
  }
  EXPECT_GT(nmds, 20);
}

void expect_derived(const LinearCode& c) {
  auto base = classify(c);
  auto out = derive_codes(c);
  EXPECT_EQ(out.shortened.n(), c.n() - 1);
  EXPECT_EQ(out.shortened.k(), c.k() - 1);
  auto s = classify(out.shortened);
  EXPECT_TRUE(s.is_nmds());
  EXPECT_EQ(s.d, base.d);
  EXPECT_EQ(out.punctured.n(), c.n() - 1);
  EXPECT_EQ(out.punctured.k(), c.k());
  auto p = classify(out.punctured);
  EXPECT_TRUE(p.is_nmds());
  EXPECT_EQ(p.d, base.d - 1);
  EXPECT_GE(out.shortened_deleted, 1);
  EXPECT_LE(out.punctured_deleted, c.n());
}

TEST(DeriveCodes, FromOrderedExample) {
  expect_derived(ordered_422());
  auto out = derive_codes(ordered_422());
  EXPECT_EQ(out.shortened.poset().size(), 3);
}

TEST(DeriveCodes, FromHammingExample) { expect_derived(self_dual_hamming()); }

TEST(DeriveCodes, OnRandomNmdsCodes) {
  int done = 0;
  for (const auto& e : corpus()) {
    if (e.code.k() < 2 || e.code.n() - e.code.k() < 2 || !classify(e.code).is_nmds()) continue;
    expect_derived(e.code);
    ++done;
  }
  EXPECT_GT(done, 5);
}

TEST(DeriveCodes, Preconditions) {
  auto mds = make(2, {{0, 1, 1, 1}, {1, 0, 0, 1}}, chain_product_poset(2, 2));
  EXPECT_THROW(derive_codes(mds), PreconditionError);
  auto small = make(2, {{1, 1, 0}}, Poset::antichain(3));
  EXPECT_THROW(derive_codes(small), PreconditionError);
}

TEST(LinearCode, RejectsBadGenerators) {
  EXPECT_THROW(make(2, {{1, 1, 0}, {1, 1, 0}}, Poset::antichain(3)), UsageError);
  EXPECT_THROW(LinearCode(Matrix(PrimeField(2), {{1, 1}}, 2), Poset::antichain(3)), UsageError);
  auto spanned = LinearCode::span(Matrix(PrimeField(2), {{1, 1, 0}, {1, 1, 0}, {0, 1, 1}}, 3), Poset::antichain(3));
  EXPECT_EQ(spanned.k(), 2);
}

TEST(Codewords, EnumerationVisitsEachWordOnce) {
  for (const auto& e : corpus()) {
    std::map<std::vector<PrimeField::Elem>, int> seen;
    for_each_codeword(e.code, Budget{}, [&](std::span<const PrimeField::Elem> w) { ++seen[{w.begin(), w.end()}]; });
    EXPECT_EQ(seen.size(), oracle::ipow(e.code.q(), e.code.k()));
    EXPECT_EQ(seen.begin()->first, std::vector<PrimeField::Elem>(e.code.n(), 0));
  }
}
