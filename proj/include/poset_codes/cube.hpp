#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "budget.hpp"
#include "code.hpp"
#include "errors.hpp"
#include "ordered.hpp"
#include "poset.hpp"

namespace poset_codes {

/// Points of [0,1)^n with coordinates numerator / q^r, 0 <= numerator < q^r.
struct PointSet {
  OrderedSpace space;
  std::vector<std::vector<std::uint64_t>> points;

  std::uint64_t denominator() const { return saturating_pow(space.q, space.r); }
  std::size_t size() const { return points.size(); }
};

/// prod_i [a_i / q^{d_i}, (a_i + 1) / q^{d_i}).
struct ElementaryInterval {
  std::vector<int> resolution;
  std::vector<std::uint64_t> index;

  int volume_exponent() const {  // volume = q^-exponent
    int v = 0;
    for (int d : resolution) v += d;
    return v;
  }

  /// prod_i [0, q^{-l_i}).
  static ElementaryInterval anchored(std::vector<int> l) {
    ElementaryInterval e{std::move(l), {}};
    e.index.assign(e.resolution.size(), 0);
    return e;
  }

  std::string str(std::uint32_t q) const {
    std::string s;
    for (std::size_t i = 0; i < resolution.size(); ++i) {
      if (i > 0) s += "x";
      std::string den = std::to_string(saturating_pow(q, resolution[i]));
      s += "[" + std::to_string(index[i]) + "/" + den + "," + std::to_string(index[i] + 1) + "/" + den + ")";
    }
    return s;
  }

  friend bool operator==(const ElementaryInterval&, const ElementaryInterval&) = default;
};

inline void check_point_space(const OrderedSpace& space) {
  if (saturating_pow(space.q, space.r) == UINT64_MAX) throw UnsupportedError("q^r does not fit in 64 bits");
}

/// Block i of a codeword becomes sum_j c_ij q^{j-1} over q^r, so the top of
/// each chain is the most significant digit.
inline PointSet code_to_points(const LinearCode& code, const Budget& budget = {}) {
  auto space = detect_chain_product(code.poset(), code.q());
  if (!space) throw UsageError("point sets need a code on a chain-product (ordered) poset");
  check_point_space(*space);
  PointSet ps{*space, {}};
  for_each_codeword(code, budget, [&](std::span<const PrimeField::Elem> w) {
    std::vector<std::uint64_t> x(space->n, 0);
    for (int i = 0; i < space->n; ++i) {
      for (int j = space->r; j >= 1; --j) x[i] = x[i] * space->q + w[i * space->r + j - 1];
    }
    ps.points.push_back(std::move(x));
  });
  return ps;
}

namespace detail {

inline void check_resolution(const PointSet& ps, const std::vector<int>& resolution) {
  if (static_cast<int>(resolution.size()) != ps.space.n) throw UsageError("interval dimension does not match points");
  for (int d : resolution) {
    if (d < 0) throw UsageError("negative interval resolution");
    if (d > ps.space.r) {
      throw UnsupportedError("interval resolution " + std::to_string(d) + " exceeds the point resolution r=" +
                             std::to_string(ps.space.r));
    }
  }
}

inline std::vector<std::uint64_t> cell_of(const PointSet& ps, const std::vector<std::uint64_t>& x,
                                          const std::vector<int>& resolution) {
  std::vector<std::uint64_t> a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = x[i] / saturating_pow(ps.space.q, ps.space.r - resolution[i]);
  return a;
}

// Every (d_1..d_n) with 0 <= d_i <= cap and sum m, lexicographically descending.
inline std::vector<std::vector<int>> resolutions(int n, int cap, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      if (left <= cap) {
        cur[i] = left;
        out.push_back(cur);
      }
      return;
    }
    for (int v = std::min(cap, left); v >= 0; --v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (n > 0 && m >= 0) rec(rec, 0, m);
  return out;
}

}  // namespace detail

inline std::uint64_t interval_count(const PointSet& ps, const ElementaryInterval& e) {
  detail::check_resolution(ps, e.resolution);
  if (e.index.size() != e.resolution.size()) throw UsageError("interval index has the wrong dimension");
  std::uint64_t hits = 0;
  for (const auto& x : ps.points) {
    if (detail::cell_of(ps, x, e.resolution) == e.index) ++hits;
  }
  return hits;
}

/// Result of checking that every interval of one volume holds a fixed count.
struct UniformityReport {
  bool holds = true;
  std::uint64_t intervals_checked = 0;
  std::optional<ElementaryInterval> counterexample;
  std::uint64_t counterexample_count = 0;
  bool limited = false;  // some intervals of this volume need resolution > r
};

/// Every representable elementary interval of volume q^-m holds exactly
/// `expected` points.
inline UniformityReport check_uniform(const PointSet& ps, int m, std::uint64_t expected) {
  UniformityReport rep;
  const auto q = ps.space.q;
  rep.limited = m > ps.space.r;
  const std::uint64_t cells = saturating_pow(q, m);
  for (const auto& res : detail::resolutions(ps.space.n, ps.space.r, m)) {
    std::map<std::vector<std::uint64_t>, std::uint64_t> counts;
    for (const auto& x : ps.points) ++counts[detail::cell_of(ps, x, res)];
    rep.intervals_checked += cells;
    if (!rep.holds) continue;
    for (const auto& [a, c] : counts) {
      if (c != expected) {
        rep.holds = false;
        rep.counterexample = ElementaryInterval{res, a};
        rep.counterexample_count = c;
        break;
      }
    }
    if (rep.holds && counts.size() != cells && expected != 0) {
      // Some cell is empty; report the first one in index order.
      std::vector<std::uint64_t> a(ps.space.n, 0);
      while (counts.contains(a)) {
        for (int i = ps.space.n - 1; i >= 0; --i) {
          if (++a[i] < saturating_pow(q, res[i])) break;
          a[i] = 0;
        }
      }
      rep.holds = false;
      rep.counterexample = ElementaryInterval{res, a};
      rep.counterexample_count = 0;
    }
  }
  return rep;
}

/// (t, m, n)-net test: every elementary interval of volume q^{t-m} holds
/// exactly q^t points. Only intervals with every d_i <= r are checked;
/// `limited` reports when others exist.
inline UniformityReport verify_net(const PointSet& ps, int t, int m) {
  if (t < 0 || t > m) throw UsageError("net parameters need 0 <= t <= m");
  if (ps.size() != saturating_pow(ps.space.q, m)) {
    throw UsageError("a net with m=" + std::to_string(m) + " needs q^m points, got " + std::to_string(ps.size()));
  }
  return check_uniform(ps, m - t, saturating_pow(ps.space.q, t));
}

/// Exactly one point in every elementary interval of volume q^-k.
inline UniformityReport verify_optimal_distribution(const PointSet& ps, int k) {
  if (ps.size() != saturating_pow(ps.space.q, k)) throw UsageError("an [nr,k] distribution needs q^k points");
  auto rep = check_uniform(ps, k, 1);
  rep.limited = false;  // the interval family is capped at resolution r by definition
  return rep;
}

inline std::uint64_t anchored_count(const PointSet& ps, const std::vector<int>& l) {
  return interval_count(ps, ElementaryInterval::anchored(l));
}

struct DistributionReport {
  bool degenerate = false;  // k = 1
  int k = 0;
  UniformityReport part1;
  std::vector<std::vector<int>> anchored_hits;  // volume q^-k, exactly q points
  std::optional<std::vector<int>> smaller_hit;  // volume < q^-k, exactly q points
  bool part2 = false;
  bool passed() const { return part1.holds && part2; }
};

/// Interval characterization of ordered NMDS codes: (1) every interval of
/// volume q^{-(k-1)} holds q points; (2) some anchored interval of volume
/// q^-k holds q points and no anchored interval of smaller volume does.
inline DistributionReport verify_nmds_distribution(const LinearCode& code, const Budget& budget = {}) {
  PointSet ps = code_to_points(code, budget);
  const auto q = ps.space.q;
  DistributionReport rep;
  rep.k = code.k();
  rep.degenerate = code.k() <= 1;
  rep.part1 = check_uniform(ps, code.k() - 1, q);
  for (const auto& l : detail::resolutions(ps.space.n, ps.space.r, code.k())) {
    if (anchored_count(ps, l) == q) rep.anchored_hits.push_back(l);
  }
  for (int m = code.k() + 1; m <= ps.space.length() && !rep.smaller_hit; ++m) {
    for (const auto& l : detail::resolutions(ps.space.n, ps.space.r, m)) {
      if (anchored_count(ps, l) == q) {
        rep.smaller_hit = l;
        break;
      }
    }
  }
  rep.part2 = !rep.anchored_hits.empty() && !rep.smaller_hit;
  return rep;
}

/// Partition of a code into cosets of its subcode supported inside an ideal,
/// and how the I-neighborhoods of those parts sit in GF(q)^n.
struct Tiling {
  Ideal ideal;
  std::uint64_t parts = 0;
  std::uint64_t part_size = 0;
  bool equal_parts = false;  // exactly q^{k-1} parts
  bool disjoint = false;
  bool tiling = false;
  bool cover_checked = false;  // false: cardinality accounting was used instead
  bool perfect = false;
  std::string counterexample;
};

inline constexpr std::uint64_t kMaxCoverScan = std::uint64_t{1} << 20;

inline Tiling verify_tiling(const LinearCode& code, const Ideal& ideal, const Budget& budget = {}) {
  const int n = code.n(), k = code.k();
  if (k < 2) throw PreconditionError("tiling verification needs k >= 2 (k=1 is degenerate)");
  const auto& field = code.field();
  const auto q = code.q();
  code.poset().ideal(ideal.bits());

  // Basis of the subcode supported inside the ideal, in RREF so that a coset
  // has a canonical representative.
  Matrix local = code.parity_check().select_columns(ideal.bits()).null_space();
  std::vector<int> inside;
  for (int l : ideal.labels()) inside.push_back(l - 1);
  Matrix sub(field, local.rows(), n);
  for (std::size_t r = 0; r < local.rows(); ++r) {
    for (std::size_t c = 0; c < inside.size(); ++c) sub.at(r, inside[c]) = local.at(r, c);
  }
  auto pivots = sub.rref_in_place();

  const Mask outside = code.poset().all() & ~ideal.bits();
  std::map<std::vector<PrimeField::Elem>, std::uint64_t> part_of_rep;
  std::map<std::vector<PrimeField::Elem>, std::uint64_t> part_of_key;
  std::map<std::uint64_t, std::uint64_t> part_sizes;
  Tiling out;
  out.ideal = ideal;
  out.disjoint = true;
  for_each_codeword(code, budget, [&](std::span<const PrimeField::Elem> w) {
    std::vector<PrimeField::Elem> rep(w.begin(), w.end());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      auto f = rep[pivots[i]];
      if (f == 0) continue;
      for (int c = 0; c < n; ++c) rep[c] = field.sub(rep[c], field.mul(f, sub.at(i, c)));
    }
    auto [it, fresh] = part_of_rep.try_emplace(rep, part_of_rep.size());
    const std::uint64_t part = it->second;
    ++part_sizes[part];
    std::vector<PrimeField::Elem> key;
    for (int c = 0; c < n; ++c) {
      if ((outside >> c) & 1u) key.push_back(w[c]);
    }
    auto [kt, kfresh] = part_of_key.try_emplace(key, part);
    if (kt->second != part && out.disjoint) {
      out.disjoint = false;
      out.counterexample = "neighborhoods of parts " + std::to_string(kt->second + 1) + " and " +
                           std::to_string(part + 1) + " intersect";
    }
  });

  out.parts = part_of_rep.size();
  out.part_size = part_sizes.empty() ? 0 : part_sizes.begin()->second;
  const std::uint64_t want_parts = saturating_pow(q, k - 1);
  out.equal_parts = out.parts == want_parts;
  for (const auto& [p, sz] : part_sizes) out.equal_parts = out.equal_parts && sz == out.part_size;
  if (!out.equal_parts && out.counterexample.empty()) {
    out.counterexample = std::to_string(out.parts) + " cosets, expected q^(k-1)=" + std::to_string(want_parts);
  }
  out.tiling = out.equal_parts && out.disjoint;

  const std::uint64_t space_size = saturating_pow(q, n);
  if (space_size <= kMaxCoverScan && space_size <= budget.max_enum) {
    out.cover_checked = true;
    bool covered = true;
    std::vector<PrimeField::Elem> v(n, 0);
    std::vector<PrimeField::Elem> key;
    for (std::uint64_t idx = 0; idx < space_size && covered; ++idx) {
      key.clear();
      for (int c = 0; c < n; ++c) {
        if ((outside >> c) & 1u) key.push_back(v[c]);
      }
      if (!part_of_key.contains(key)) {
        covered = false;
        std::string vs;
        for (auto x : v) vs += std::to_string(x);
        if (out.counterexample.empty()) out.counterexample = "vector " + vs + " lies in no neighborhood";
      }
      for (int c = 0; c < n; ++c) {
        if (++v[c] < q) break;
        v[c] = 0;
      }
    }
    out.perfect = out.tiling && covered;
  } else {
    // Disjoint neighborhoods of size q^{|I|} each; they cover the space iff
    // the sizes add up to q^n.
    BigInt covered = BigInt(out.parts) * big_pow(q, ideal.size());
    out.perfect = out.tiling && covered == big_pow(q, n);
  }
  return out;
}

struct TilingCharacterization {
  bool part1 = true;  // every ideal of size n-k+1 gives a perfect tiling
  std::optional<Tiling> part1_counterexample;
  std::optional<Ideal> witness;  // an ideal of size n-k that gives a tiling
  std::optional<Ideal> smaller;  // an ideal of size < n-k that gives a tiling
  bool part2 = false;
  bool holds() const { return part1 && part2; }
};

/// Tiling characterization of NMDS poset codes, checked over every ideal of
/// size at most n-k+1.
inline TilingCharacterization tiling_characterization(const LinearCode& code, const Budget& budget = {}) {
  const int n = code.n(), k = code.k();
  if (k < 2 || k > n - 1) throw PreconditionError("tiling characterization needs 2 <= k <= n-1");
  TilingCharacterization out;
  code.poset().for_each_ideal(n - k + 1, [&](const Ideal& ideal) {
    auto t = verify_tiling(code, ideal, budget);
    if (!t.perfect) {
      out.part1 = false;
      out.part1_counterexample = t;
    }
    return out.part1;
  });
  code.poset().for_each_ideal(n - k, [&](const Ideal& ideal) {
    if (verify_tiling(code, ideal, budget).tiling) out.witness = ideal;
    return !out.witness;
  });
  for (int s = 0; s < n - k && !out.smaller; ++s) {
    code.poset().for_each_ideal(s, [&](const Ideal& ideal) {
      if (verify_tiling(code, ideal, budget).tiling) out.smaller = ideal;
      return !out.smaller;
    });
  }
  out.part2 = out.witness.has_value() && !out.smaller;
  return out;
}

}  // namespace poset_codes
