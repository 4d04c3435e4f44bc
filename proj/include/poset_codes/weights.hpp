#pragma once

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

/// A_s by weight, optionally refined by exact l.a. support (A_I) and, on
/// chain products, by shape (A_e). Refinements hold nonzero entries only.
struct WeightDistribution {
  std::vector<BigInt> by_size;
  std::map<Ideal, BigInt> by_ideal;
  std::map<Shape, BigInt> by_shape;

  BigInt total() const {
    BigInt t = 0;
    for (const auto& a : by_size) t += a;
    return t;
  }
};

using IdealSeed = std::map<Ideal, BigInt>;
using ShapeSeed = std::map<Shape, BigInt>;

/// Buckets every codeword by its l.a. support.
inline WeightDistribution weight_dist_bruteforce(const LinearCode& code, const Budget& budget = {}) {
  const auto& poset = code.poset();
  std::map<Mask, std::uint64_t> counts;
  for_each_codeword(code, budget, [&](std::span<const PrimeField::Elem> w) { ++counts[poset.closure(support_of(w))]; });

  WeightDistribution out;
  out.by_size.assign(code.n() + 1, 0);
  auto space = detect_chain_product(poset, code.q());
  for (const auto& [bits, count] : counts) {
    Ideal ideal = poset.ideal(bits);
    out.by_size[ideal.size()] += count;
    out.by_ideal[ideal] = count;
    if (space) out.by_shape[shape_of(ideal, *space)] += count;
  }
  return out;
}

/// Number of codewords whose l.a. support is exactly `ideal`. Enumerates only
/// the subcode supported inside the ideal (the kernel of H restricted to it).
inline BigInt count_exact_support(const LinearCode& code, const Ideal& ideal, const Budget& budget = {}) {
  const auto& field = code.field();
  Matrix local = code.parity_check().select_columns(ideal.bits()).null_space();
  const auto q = code.q();
  budget.require(saturating_pow(q, local.rows()), "enumerating the subcode on " + ideal.str());
  std::vector<int> coords;
  for (int l : ideal.labels()) coords.push_back(l - 1);

  std::uint64_t hits = 0;
  std::vector<PrimeField::Elem> coeff(local.rows(), 0);
  std::vector<PrimeField::Elem> word(code.n(), 0);
  while (true) {
    if (code.poset().closure(support_of(word)) == ideal.bits()) ++hits;
    std::size_t i = 0;
    for (; i < local.rows(); ++i) {
      for (std::size_t c = 0; c < coords.size(); ++c) word[coords[c]] = field.add(word[coords[c]], local.at(i, c));
      if (++coeff[i] < q) break;
      coeff[i] = 0;
    }
    if (i == local.rows()) break;
  }
  return hits;
}

/// A_J for every ideal J of size `d` (zero entries included).
inline IdealSeed ideal_seed(const LinearCode& code, int d, const Budget& budget = {}) {
  IdealSeed seed;
  code.poset().for_each_ideal(d, [&](const Ideal& j) { seed[j] = count_exact_support(code, j, budget); });
  return seed;
}

/// A_e for every shape with |e|' = d (zero entries included).
inline ShapeSeed shape_seed(const LinearCode& code, const OrderedSpace& space, int d, const Budget& budget = {}) {
  ShapeSeed seed;
  for (const auto& e : enumerate_shapes(space, d)) seed[e] = 0;
  for (const auto& [ideal, a] : ideal_seed(code, d, budget)) seed[shape_of(ideal, space)] += a;
  return seed;
}

namespace detail {

// sum_{l=0}^{s-d-1} (-1)^l binom(m, l) (q^{s-d-l} - 1)
inline BigInt alternating_ball_term(int m, int s, int d, std::uint32_t q) {
  BigInt acc = 0;
  for (int l = 0; l <= s - d - 1; ++l) {
    BigInt term = binomial(m, l) * (big_pow(q, s - d - l) - 1);
    if (l % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

inline WeightDistribution leading_part(int length) {
  WeightDistribution out;
  out.by_size.assign(length + 1, 0);
  out.by_size[0] = 1;
  return out;
}

}  // namespace detail

/// Weight distribution of an NMDS poset code from the counts A_J of
/// codewords with l.a. support J, |J| = d:
///   A_s = sum_{|I|=s} sum_l (-1)^l binom(|Omega(I)|, l)(q^{s-d-l} - 1)
///         + (-1)^{s-d} sum_{|I|=s} sum_{J in I_d(I), J >= I~} A_J.
inline WeightDistribution weight_dist_nmds_poset(const LinearCode& code, const IdealSeed& seed,
                                                 const Budget& budget = {}) {
  auto cls = classify(code, budget);
  if (!cls.is_nmds()) throw PreconditionError("analytic weight distribution needs an NMDS code, got " + cls.label());
  const int n = code.n(), d = cls.d;
  const auto& poset = code.poset();

  std::size_t expected = 0;
  poset.for_each_ideal(d, [&](const Ideal& j) {
    ++expected;
    if (!seed.contains(j)) throw UsageError("seed is missing A_J for J=" + j.str());
  });
  if (seed.size() != expected) throw UsageError("seed has entries for ideals whose size is not d=" + std::to_string(d));

  WeightDistribution out = detail::leading_part(n);
  for (const auto& [j, a] : seed) out.by_size[d] += a;

  std::uint64_t visited = 0;
  for (int s = d + 1; s <= n; ++s) {
    BigInt balls = 0, seeded = 0;
    poset.for_each_ideal(s, [&](const Ideal& ideal) {
      budget.require(++visited, "scanning ideals for the analytic weight distribution");
      auto [omega, rest] = poset.maximal_elements(ideal);
      balls += detail::alternating_ball_term(std::popcount(omega), s, d, code.q());
      poset.for_each_ideal(
          d,
          [&](const Ideal& j) {
            if (rest.subset_of(j)) seeded += seed.at(j);
          },
          ideal.bits());
    });
    out.by_size[s] = (s - d) % 2 == 0 ? balls + seeded : balls - seeded;
  }
  return out;
}

/// Ordered-space specialization, driven by shapes:
///   A_s = sum_l (-1)^l [sum_{|e|'=s} binom(|e|, l) multinom(n; e)] (q^{s-d-l} - 1)
///         + (-1)^{s-d} sum_{|e|'=d} N_s(e) A_e,   s = d..nr.
inline WeightDistribution weight_dist_nmds_ordered(const OrderedSpace& space, int k, int d, const ShapeSeed& seed) {
  const int length = space.length();
  if (k < 1 || k > length - 1) throw PreconditionError("need 1 <= k <= nr-1");
  if (d != length - k) {
    throw PreconditionError("NMDS parameters need d = nr-k = " + std::to_string(length - k) + ", got d=" +
                            std::to_string(d));
  }
  const auto shapes_d = enumerate_shapes(space, d);
  for (const auto& e : shapes_d) {
    if (!seed.contains(e)) throw UsageError("seed is missing A_e for e=" + e.str());
  }
  if (seed.size() != shapes_d.size()) throw UsageError("seed has shapes whose weight is not d=" + std::to_string(d));

  WeightDistribution out = detail::leading_part(length);
  for (const auto& [e, a] : seed) out.by_size[d] += a;
  for (int s = d + 1; s <= length; ++s) {
    const auto shapes_s = enumerate_shapes(space, s);
    BigInt acc = 0;
    for (int l = 0; l <= s - d - 1; ++l) {
      BigInt inner = 0;
      for (const auto& e : shapes_s) inner += binomial(e.count(), l) * e.multinomial();
      BigInt term = inner * (big_pow(space.q, s - d - l) - 1);
      if (l % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    BigInt seeded = 0;
    for (const auto& [e, a] : seed) seeded += count_N_s(e, s, space) * a;
    out.by_size[s] = (s - d) % 2 == 0 ? acc + seeded : acc - seeded;
  }
  return out;
}

/// Hamming-metric NMDS weight distribution:
///   A_s = sum_{l=0}^{s-d-1} (-1)^l binom(s, l) binom(n, s)(q^{s-d-l} - 1)
///         + (-1)^{s-d} binom(n-d, s-d) A_d.
inline WeightDistribution weight_dist_nmds_hamming(int n, int k, int d, std::uint32_t q, const BigInt& a_d) {
  if (k < 1 || k > n - 1) throw PreconditionError("need 1 <= k <= n-1");
  if (d != n - k) throw PreconditionError("NMDS parameters need d = n-k");
  WeightDistribution out = detail::leading_part(n);
  out.by_size[d] = a_d;
  for (int s = d + 1; s <= n; ++s) {
    BigInt acc = 0;
    for (int l = 0; l <= s - d - 1; ++l) {
      BigInt term = binomial(s, l) * binomial(n, s) * (big_pow(q, s - d - l) - 1);
      if (l % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    BigInt tail = binomial(n - d, s - d) * a_d;
    out.by_size[s] = (s - d) % 2 == 0 ? acc + tail : acc - tail;
  }
  return out;
}

}  // namespace poset_codes
