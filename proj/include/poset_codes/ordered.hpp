#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "code.hpp"
#include "errors.hpp"
#include "poset.hpp"

namespace poset_codes {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

/// binom(a, b), zero whenever b < 0 or b > a.
inline BigInt binomial(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  BigInt out = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    out *= a - b + i;
    out /= i;
  }
  return out;
}

inline BigInt big_pow(std::uint32_t base, int exp) {
  BigInt out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

/// n blocks, each a chain of length r. Coordinate (block i, height j), both
/// 1-based, carries label (i-1)*r + j; height 1 is the bottom of the chain.
struct OrderedSpace {
  int n = 1;
  int r = 1;
  std::uint32_t q = 2;

  int length() const { return n * r; }
  int label(int block, int height) const { return (block - 1) * r + height; }

  friend bool operator==(const OrderedSpace&, const OrderedSpace&) = default;
};

inline Poset chain_product_poset(int n, int r) {
  if (n < 1 || r < 1) throw UsageError("chain product needs n >= 1 and r >= 1");
  if (n * r > Poset::kMaxElements) {
    throw ResourceError("chain product with n*r=" + std::to_string(n * r) + " exceeds the 64-coordinate cap");
  }
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j < r; ++j) covers.emplace_back(i * r + j, i * r + j + 1);
  }
  return Poset::from_cover_relations(n * r, covers);
}

inline Poset chain_product_poset(const OrderedSpace& space) { return chain_product_poset(space.n, space.r); }

/// Recognizes a poset that is a disjoint union of equal chains in the
/// project labelling. The antichain is recognized as r = 1.
inline std::optional<OrderedSpace> detect_chain_product(const Poset& poset, std::uint32_t q) {
  const int total = poset.size();
  for (int r = 1; r <= total; ++r) {
    if (total % r != 0) continue;
    if (poset == chain_product_poset(total / r, r)) return OrderedSpace{total / r, r, q};
  }
  return std::nullopt;
}

/// Shape e = (e_1..e_r) of an ideal or vector, with e_0 = n - |e| stored at
/// index 0.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<int> counts_with_e0) : e_(std::move(counts_with_e0)) {}

  /// From (e_1..e_r) for a space with n blocks.
  static Shape from_counts(const std::vector<int>& e1_to_er, int n) {
    std::vector<int> e(e1_to_er.size() + 1, 0);
    int total = 0;
    for (std::size_t i = 0; i < e1_to_er.size(); ++i) {
      if (e1_to_er[i] < 0) throw UsageError("shape entries must be nonnegative");
      e[i + 1] = e1_to_er[i];
      total += e1_to_er[i];
    }
    if (total > n) throw UsageError("shape has |e|=" + std::to_string(total) + " > n=" + std::to_string(n));
    e[0] = n - total;
    return Shape(std::move(e));
  }

  int r() const { return static_cast<int>(e_.size()) - 1; }
  int operator[](int i) const { return e_.at(i); }
  int e0() const { return e_.at(0); }
  int count() const { return std::accumulate(e_.begin() + 1, e_.end(), 0); }  // |e|
  int weight() const {                                                        // |e|'
    int w = 0;
    for (int i = 1; i <= r(); ++i) w += i * e_[i];
    return w;
  }

  /// n! / (e_0! e_1! ... e_r!), the number of ideals with this shape.
  BigInt multinomial() const {
    BigInt out = 1;
    int placed = 0;
    for (int c : e_) {
      placed += c;
      out *= binomial(placed, c);
    }
    return out;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 1; i <= r(); ++i) {
      if (i > 1) s += ",";
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

  friend auto operator<=>(const Shape&, const Shape&) = default;

 private:
  std::vector<int> e_;
};

/// Height of the ideal in each block; throws if `bits` is not an ideal of
/// the chain product.
inline std::vector<int> block_heights(Mask bits, const OrderedSpace& space) {
  if (space.length() < 64 && (bits >> space.length()) != 0) throw UsageError("set exceeds the ordered space");
  std::vector<int> h(space.n);
  const Mask block_mask = space.r == 64 ? ~Mask{0} : (Mask{1} << space.r) - 1;
  for (int i = 0; i < space.n; ++i) {
    Mask b = (bits >> (i * space.r)) & block_mask;
    if ((b & (b + 1)) != 0) {
      throw UsageError(format_set(bits) + " is not an ideal of the ordered space (block " + std::to_string(i + 1) + ")");
    }
    h[i] = std::popcount(b);
  }
  return h;
}

inline Shape shape_of(const Ideal& ideal, const OrderedSpace& space) {
  std::vector<int> e(space.r + 1, 0);
  for (int h : block_heights(ideal.bits(), space)) ++e[h];
  return Shape(std::move(e));
}

/// Shape of <supp x>: per block, the position of the rightmost nonzero entry.
inline Shape shape_of_vector(std::span<const PrimeField::Elem> x, const OrderedSpace& space) {
  if (static_cast<int>(x.size()) != space.length()) throw UsageError("vector length does not match n*r");
  std::vector<int> e(space.r + 1, 0);
  for (int i = 0; i < space.n; ++i) {
    int top = 0;
    for (int j = 1; j <= space.r; ++j) {
      if (x[i * space.r + j - 1] != 0) top = j;
    }
    ++e[top];
  }
  return Shape(std::move(e));
}

/// All shapes with |e| <= n and |e|' = s, e_1 descending, then e_2, ...
inline std::vector<Shape> enumerate_shapes(const OrderedSpace& space, int s) {
  std::vector<Shape> out;
  if (s < 0 || s > space.length()) return out;
  std::vector<int> e(space.r + 1, 0);
  auto rec = [&](auto&& self, int i, int remaining_weight, int remaining_blocks) -> void {
    if (i > space.r) {
      if (remaining_weight == 0) {
        e[0] = remaining_blocks;
        out.emplace_back(e);
      }
      return;
    }
    for (int c = std::min(remaining_blocks, remaining_weight / i); c >= 0; --c) {
      e[i] = c;
      self(self, i + 1, remaining_weight - i * c, remaining_blocks - c);
    }
    e[i] = 0;
  };
  rec(rec, 1, s, space.n);
  return out;
}

/// N_s(e): the number of ideals I with |I| = s and I minus its maximal
/// elements inside J inside I, for a fixed J of shape e. Evaluated as the
/// product-of-binomials sum over shapes f with |f|' = s.
inline BigInt count_N_s(const Shape& e, int s, const OrderedSpace& space) {
  if (e.r() != space.r) throw UsageError("shape length does not match r");
  const int r = space.r;
  BigInt total = 0;
  for (const Shape& f : enumerate_shapes(space, s)) {
    BigInt term = 1;
    int f_tail = 0, e_tail = 0;
    // Factor j grows chains from height r-j to r-j+1:
    // binom(e_{r-j}, (f_r+..+f_{r-j+1}) - (e_r+..+e_{r-j+1})).
    for (int j = 1; j <= r && term != 0; ++j) {
      f_tail += f[r - j + 1];
      e_tail += e[r - j + 1];
      term *= binomial(e[r - j], f_tail - e_tail);
    }
    total += term;
  }
  return total;
}

}  // namespace poset_codes
