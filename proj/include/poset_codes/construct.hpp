#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "budget.hpp"
#include "code.hpp"
#include "errors.hpp"
#include "ordered.hpp"

namespace poset_codes {

enum class Family { n1, n2, n3 };

/// Parameters for the explicit ordered NMDS families with n = 1, 2, 3
/// blocks. Empty vectors take their defaults: every free entry zero and a
/// single 1 at the position that fixes the l.a. weight. With a seed, free
/// entries are drawn uniformly from GF(q) instead.
struct ConstructionSpec {
  Family family = Family::n1;
  std::uint32_t q = 2;
  int r = 1;
  int k = 0;   // n1
  int k1 = 0;  // n2
  int k2 = 0;  // n2
  std::vector<std::int64_t> x{};                // n1, length r-k
  std::vector<std::vector<std::int64_t>> m{};   // n1, (k-1) x (r-k)
  std::vector<std::int64_t> u{}, v{}, w{};      // n2 / n3, length r
  std::optional<std::uint64_t> seed{};
};

namespace detail {

inline std::string dump(const Matrix& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) os << (j ? " " : "") << g.at(i, j);
    os << "\n";
  }
  return os.str();
}

// Fails loudly if a constructor produced something that is not NMDS.
inline LinearCode verified(LinearCode code, const std::string& family, const Budget& budget) {
  auto cls = classify(code, budget);
  if (!cls.is_nmds()) {
    throw InternalError(family + " construction produced a " + cls.label() + " code (d=" + std::to_string(cls.d) +
                        ", d_dual=" + std::to_string(cls.dual_d) + ");\n" + dump(code.generator()));
  }
  return code;
}

// Checks that z has l.a. weight exactly `weight` in a chain of length z.size().
inline void require_la_weight(const std::vector<std::int64_t>& z, int weight, const PrimeField& f,
                              const std::string& name) {
  int top = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (f.reduce(z[i]) != 0) top = static_cast<int>(i) + 1;
  }
  if (top != weight) {
    throw UsageError(name + " must have l.a. weight " + std::to_string(weight) + " (nonzero at position " +
                     std::to_string(weight) + ", zero above), got " + std::to_string(top));
  }
}

inline Matrix anti_diagonal(const PrimeField& f, int l) {
  Matrix d(f, l, l);
  for (int a = 0; a < l; ++a) d.at(a, l - 1 - a) = 1;
  return d;
}

}  // namespace detail

/// (i-1) x (r-j-1) cross block of the two-block construction.
inline Matrix cross_block(const PrimeField& f, int r, int i, int j) {
  const int rows = i - 1, cols = r - j - 1;
  if (rows < 0 || cols < 0) {
    throw UnsupportedError("E_r(" + std::to_string(i) + "," + std::to_string(j) + ") with r=" + std::to_string(r) +
                           " has negative dimensions");
  }
  Matrix e(f, rows, cols);
  if (i + j > r) {
    // D_{r-j-1} on top of a zero block.
    Matrix d = detail::anti_diagonal(f, cols);
    for (int a = 0; a < cols; ++a) {
      for (int b = 0; b < cols; ++b) e.at(a, b) = d.at(a, b);
    }
  } else {
    // Zero block to the left of D_{i-1}.
    Matrix d = detail::anti_diagonal(f, rows);
    const int offset = r - i - j;
    for (int a = 0; a < rows; ++a) {
      for (int b = 0; b < rows; ++b) e.at(a, offset + b) = d.at(a, b);
    }
  }
  return e;
}

/// Single chain of length r, dimension k: top row (x_1..x_d, 0, 0...) and
/// bottom rows (M, 0, I_{k-1}) with d = r-k.
inline LinearCode construct_n1(std::uint32_t q, int r, int k, const std::vector<std::int64_t>& x,
                               const std::vector<std::vector<std::int64_t>>& m = {}, const Budget& budget = {}) {
  PrimeField f(q);
  if (r < 2 || k < 1 || k > r - 1) throw UsageError("n1 construction needs 1 <= k <= r-1");
  const int d = r - k;
  if (static_cast<int>(x.size()) != d) {
    throw UsageError("x must have length d=r-k=" + std::to_string(d) + ", got " + std::to_string(x.size()));
  }
  detail::require_la_weight(x, d, f, "x");
  if (!m.empty() && static_cast<int>(m.size()) != k - 1) throw UsageError("M must have k-1 rows");
  Matrix g(f, k, r);
  for (int j = 0; j < d; ++j) g.at(0, j) = f.reduce(x[j]);
  for (int i = 1; i < k; ++i) {
    if (!m.empty()) {
      if (static_cast<int>(m[i - 1].size()) != d) throw UsageError("M must have d=r-k columns");
      for (int j = 0; j < d; ++j) g.at(i, j) = f.reduce(m[i - 1][j]);
    }
    g.at(i, d + i) = 1;
  }
  return detail::verified(LinearCode(std::move(g), chain_product_poset(1, r)), "n1", budget);
}

/// Two blocks of length r, K = k1 + k2, a [2r, K, 2r-K] code.
inline LinearCode construct_n2(std::uint32_t q, int r, int k1, int k2, const std::vector<std::int64_t>& u,
                               const std::vector<std::int64_t>& v, const Budget& budget = {}) {
  PrimeField f(q);
  if (k1 < 1) throw UnsupportedError("n2 construction needs k1 >= 1");
  if (k2 < 1) throw UnsupportedError("n2 construction needs k2 >= 1");
  if (k1 > r - 1) throw UnsupportedError("n2 construction needs k1 <= r-1 (u has l.a. weight r-k1 >= 1)");
  if (k2 > r - 1) throw UnsupportedError("n2 construction needs k2 <= r-1 (v has l.a. weight r-k2 >= 1)");
  if (static_cast<int>(u.size()) != r || static_cast<int>(v.size()) != r) throw UsageError("u and v must have length r");
  detail::require_la_weight(u, r - k1, f, "u");
  detail::require_la_weight(v, r - k2, f, "v");

  const int kk = k1 + k2;
  // Each block: (r-k-1) + 1 + 1 + (k-1) = r columns.
  Matrix e12 = cross_block(f, r, k1, k2);
  Matrix e21 = cross_block(f, r, k2, k1);
  Matrix g(f, kk, 2 * r);
  for (int j = 0; j < r; ++j) {
    g.at(0, j) = f.reduce(u[j]);
    g.at(0, r + j) = f.reduce(v[j]);
  }
  g.at(1, r - k1) = 1;
  g.at(1, r + r - k2) = 1;
  for (int a = 0; a < k1 - 1; ++a) {
    g.at(2 + a, r - k1 + 1 + a) = 1;
    for (std::size_t b = 0; b < e12.cols(); ++b) g.at(2 + a, r + b) = e12.at(a, b);
  }
  for (int b = 0; b < k2 - 1; ++b) {
    for (std::size_t c = 0; c < e21.cols(); ++c) g.at(k1 + 1 + b, c) = e21.at(b, c);
    g.at(k1 + 1 + b, r + r - k2 + 1 + b) = 1;
  }
  return detail::verified(LinearCode(std::move(g), chain_product_poset(2, r)), "n2", budget);
}

/// Three blocks of length r >= 6 over q >= 3, a [3r, 6] code.
inline LinearCode construct_n3(std::uint32_t q, int r, const std::vector<std::int64_t>& u,
                               const std::vector<std::int64_t>& v, const std::vector<std::int64_t>& w,
                               const Budget& budget = {}) {
  if (q < 3) throw UnsupportedError("n3 construction needs q >= 3");
  if (r < 6) throw UnsupportedError("n3 construction needs r >= 6");
  PrimeField f(q);
  const std::vector<std::int64_t>* tops[3] = {&u, &v, &w};
  const char* names[3] = {"u", "v", "w"};
  for (int b = 0; b < 3; ++b) {
    if (static_cast<int>(tops[b]->size()) != r) throw UsageError(std::string(names[b]) + " must have length r");
    detail::require_la_weight(*tops[b], r - 2, f, names[b]);
  }
  // Rows 2..6 of each block over its last six columns.
  static constexpr int kLower[3][5][6] = {
      {{0, 0, 0, 0, 1, 0}, {0, 1, 0, 0, 1, 0}, {1, 0, 0, 0, 0, 1}, {0, 1, 0, 0, 0, 1}, {0, 0, 1, 0, 0, 0}},
      {{0, 0, 0, 0, 1, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 1, 0, 0, 0, 1}, {1, 0, 0, 0, 0, 1}},
      {{0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 1, 0, 0, 0, 1}, {0, 0, 1, 0, 0, 0}, {1, 0, 0, 0, 0, 1}},
  };
  Matrix g(f, 6, 3 * r);
  for (int b = 0; b < 3; ++b) {
    for (int j = 0; j < r; ++j) g.at(0, b * r + j) = f.reduce((*tops[b])[j]);
    for (int row = 0; row < 5; ++row) {
      for (int c = 0; c < 6; ++c) g.at(row + 1, b * r + (r - 6) + c) = kLower[b][row][c];
    }
  }
  return detail::verified(LinearCode(std::move(g), chain_product_poset(3, r)), "n3", budget);
}

namespace detail {

// Length-r vector of l.a. weight `weight`: a 1 at that position, free entries
// below it zero or (with an RNG) uniform.
inline std::vector<std::int64_t> default_top(int r, int weight, std::uint32_t q, std::mt19937_64* rng) {
  std::vector<std::int64_t> z(r, 0);
  if (weight >= 1 && weight <= r) z[weight - 1] = 1;
  if (rng != nullptr) {
    for (int i = 0; i + 1 < weight; ++i) z[i] = static_cast<std::int64_t>((*rng)() % q);
  }
  return z;
}

}  // namespace detail

inline LinearCode build(const ConstructionSpec& spec, const Budget& budget = {}) {
  std::optional<std::mt19937_64> rng;
  if (spec.seed) rng.emplace(*spec.seed);
  std::mt19937_64* gen = rng ? &*rng : nullptr;
  switch (spec.family) {
    case Family::n1: {
      const int d = spec.r - spec.k;
      auto x = spec.x;
      if (x.empty()) {
        x = detail::default_top(d, d, spec.q, gen);
      }
      auto m = spec.m;
      if (m.empty() && gen != nullptr && spec.k > 1 && d > 0) {
        m.assign(spec.k - 1, std::vector<std::int64_t>(d, 0));
        for (auto& row : m) {
          for (auto& e : row) e = static_cast<std::int64_t>((*gen)() % spec.q);
        }
      }
      return construct_n1(spec.q, spec.r, spec.k, x, m, budget);
    }
    case Family::n2: {
      auto u = spec.u.empty() ? detail::default_top(spec.r, spec.r - spec.k1, spec.q, gen) : spec.u;
      auto v = spec.v.empty() ? detail::default_top(spec.r, spec.r - spec.k2, spec.q, gen) : spec.v;
      return construct_n2(spec.q, spec.r, spec.k1, spec.k2, u, v, budget);
    }
    case Family::n3: {
      auto u = spec.u.empty() ? detail::default_top(spec.r, spec.r - 2, spec.q, gen) : spec.u;
      auto v = spec.v.empty() ? detail::default_top(spec.r, spec.r - 2, spec.q, gen) : spec.v;
      auto w = spec.w.empty() ? detail::default_top(spec.r, spec.r - 2, spec.q, gen) : spec.w;
      return construct_n3(spec.q, spec.r, u, v, w, budget);
    }
  }
  throw UsageError("unknown construction family");
}

struct SearchResult {
  std::optional<LinearCode> code;
  int trials = 0;
};

/// Draws uniform k x n generator matrices from a seeded stream until one
/// classifies as NMDS. Rank-deficient draws count as trials.
inline SearchResult search_random_nmds(const Poset& poset, std::uint32_t q, int k, std::uint64_t seed, int max_trials,
                                       const Budget& budget = {}) {
  const int n = poset.size();
  if (k < 1 || k > n - 1) throw UsageError("random search needs 1 <= k <= n-1");
  PrimeField f(q);
  std::mt19937_64 rng(seed);
  SearchResult out;
  for (out.trials = 1; out.trials <= max_trials; ++out.trials) {
    Matrix g(f, k, n);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < n; ++j) g.at(i, j) = static_cast<PrimeField::Elem>(rng() % q);
    }
    if (g.rank() != static_cast<std::size_t>(k)) continue;
    LinearCode code(std::move(g), poset);
    if (classify(code, budget).is_nmds()) {
      out.code = std::move(code);
      return out;
    }
  }
  out.trials = max_trials;
  return out;
}

}  // namespace poset_codes
