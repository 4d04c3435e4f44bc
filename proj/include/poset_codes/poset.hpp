#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace poset_codes {

// Coordinates carry 1-based labels in every public signature; label i lives
// in bit i-1 of a Mask.
constexpr Mask label_bit(int label) { return Mask{1} << (label - 1); }

inline Mask mask_of(std::initializer_list<int> labels) {
  Mask m = 0;
  for (int l : labels) m |= label_bit(l);
  return m;
}

inline std::vector<int> labels_of(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

inline int popcount(Mask m) { return std::popcount(m); }

inline std::string format_set(Mask m) {
  std::string s = "{";
  bool first = true;
  for (int l : labels_of(m)) {
    if (!first) s += ",";
    s += std::to_string(l);
    first = false;
  }
  return s + "}";
}

/// A downward-closed coordinate set. Obtain one through Poset so the closure
/// property has been checked against a concrete order.
class Ideal {
 public:
  constexpr Ideal() = default;

  Mask bits() const noexcept { return bits_; }
  int size() const noexcept { return std::popcount(bits_); }
  bool contains(int label) const noexcept { return (bits_ & label_bit(label)) != 0; }
  bool subset_of(const Ideal& other) const noexcept { return (bits_ & ~other.bits_) == 0; }
  std::vector<int> labels() const { return labels_of(bits_); }
  std::string str() const { return format_set(bits_); }

  friend auto operator<=>(const Ideal&, const Ideal&) = default;

 private:
  friend class Poset;
  explicit constexpr Ideal(Mask bits) : bits_(bits) {}
  Mask bits_ = 0;
};

class Poset {
 public:
  static constexpr int kMaxElements = 64;

  /// Builds the order generated by `relations` (pairs lo < hi, 1-based).
  /// The relation list may contain non-cover pairs; covers() returns the
  /// transitive reduction.
  static Poset from_cover_relations(int n, std::span<const std::pair<int, int>> relations) {
    if (n < 0 || n > kMaxElements) {
      throw UsageError("poset size " + std::to_string(n) + " outside [0, 64]");
    }
    Poset p;
    p.n_ = n;
    p.down_.assign(n, 0);
    for (int i = 0; i < n; ++i) p.down_[i] = Mask{1} << i;
    for (auto [lo, hi] : relations) {
      if (lo < 1 || lo > n || hi < 1 || hi > n) {
        throw UsageError("relation " + std::to_string(lo) + " < " + std::to_string(hi) + " has a label outside 1.." +
                         std::to_string(n));
      }
      if (lo == hi) throw InvalidPosetError("relation " + std::to_string(lo) + " < " + std::to_string(hi) + " is a cycle");
      p.down_[hi - 1] |= label_bit(lo);
    }
    // Transitive closure by fixpoint over down-sets.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < n; ++i) {
        Mask acc = p.down_[i];
        for (Mask m = p.down_[i]; m != 0; m &= m - 1) acc |= p.down_[std::countr_zero(m)];
        if (acc != p.down_[i]) {
          p.down_[i] = acc;
          changed = true;
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      for (Mask m = p.down_[i] & ~(Mask{1} << i); m != 0; m &= m - 1) {
        int j = std::countr_zero(m);
        if (p.down_[j] & (Mask{1} << i)) {
          throw InvalidPosetError("relations contain a cycle through " + std::to_string(j + 1) + " and " +
                                  std::to_string(i + 1));
        }
      }
    }
    p.finish();
    return p;
  }

  static Poset antichain(int n) { return from_cover_relations(n, {}); }

  /// 1 < 2 < ... < n.
  static Poset chain(int n) {
    std::vector<std::pair<int, int>> rel;
    for (int i = 1; i < n; ++i) rel.emplace_back(i, i + 1);
    return from_cover_relations(n, rel);
  }

  int size() const noexcept { return n_; }
  Mask all() const noexcept { return n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1; }

  bool leq(int a, int b) const { return (down_set(b) & label_bit(a)) != 0; }
  Mask down_set(int label) const { return down_[check(label) - 1]; }
  Mask up_set(int label) const { return up_[check(label) - 1]; }
  const std::vector<std::pair<int, int>>& covers() const noexcept { return covers_; }

  Mask closure(Mask s) const {
    range_check(s);
    Mask out = 0;
    for (; s != 0; s &= s - 1) out |= down_[std::countr_zero(s)];
    return out;
  }

  bool is_ideal(Mask s) const { return closure(s) == s; }

  Ideal ideal(Mask s) const {
    if (!is_ideal(s)) throw UsageError(format_set(s) + " is not downward closed");
    return Ideal(s);
  }

  /// Smallest ideal containing s.
  Ideal ideal_closure(Mask s) const { return Ideal(closure(s)); }

  /// Maximal elements Ω(I) and the remainder I \ Ω(I).
  std::pair<Mask, Ideal> maximal_elements(const Ideal& ideal) const {
    Mask omega = 0;
    for (Mask m = ideal.bits(); m != 0; m &= m - 1) {
      int i = std::countr_zero(m);
      if ((up_[i] & ideal.bits()) == (Mask{1} << i)) omega |= Mask{1} << i;
    }
    return {omega, Ideal(ideal.bits() & ~omega)};
  }

  /// Same chains with every order reversed.
  Poset dual() const {
    Poset p;
    p.n_ = n_;
    p.down_ = up_;
    p.finish();
    return p;
  }

  /// Order induced on the labels in `keep`, relabelled 1..|keep| preserving
  /// label order.
  Poset induced(Mask keep) const {
    range_check(keep);
    std::vector<int> old = labels_of(keep);
    Poset p;
    p.n_ = static_cast<int>(old.size());
    p.down_.assign(old.size(), 0);
    for (std::size_t a = 0; a < old.size(); ++a) {
      for (std::size_t b = 0; b < old.size(); ++b) {
        if (leq(old[b], old[a])) p.down_[a] |= Mask{1} << b;
      }
    }
    p.finish();
    return p;
  }

  /// Visits every ideal of cardinality `size` contained in `within`, in
  /// lexicographic order of the sorted label lists. The callback may return
  /// bool; false stops the scan.
  template <class F>
  void for_each_ideal(int size, F&& visit, Mask within = ~Mask{0}) const {
    within &= all();
    if (size < 0 || size > std::popcount(within)) return;
    bool stop = false;
    scan(0, 0, all() & ~within, size, within, visit, stop);
  }

  std::vector<Ideal> ideals(int size, Mask within = ~Mask{0}) const {
    std::vector<Ideal> out;
    for_each_ideal(size, [&](const Ideal& i) { out.push_back(i); }, within);
    return out;
  }

  /// Ideals of size `size` contained in `ideal`.
  std::vector<Ideal> ideals_within(const Ideal& ideal, int size) const { return ideals(size, ideal.bits()); }

  friend bool operator==(const Poset& a, const Poset& b) { return a.n_ == b.n_ && a.down_ == b.down_; }

 private:
  Poset() = default;

  int check(int label) const {
    if (label < 1 || label > n_) {
      throw UsageError("label " + std::to_string(label) + " outside 1.." + std::to_string(n_));
    }
    return label;
  }

  void range_check(Mask s) const {
    if ((s & ~all()) != 0) throw UsageError(format_set(s) + " has labels outside 1.." + std::to_string(n_));
  }

  void finish() {
    up_.assign(n_, 0);
    for (int i = 0; i < n_; ++i) {
      for (Mask m = down_[i]; m != 0; m &= m - 1) up_[std::countr_zero(m)] |= Mask{1} << i;
    }
    covers_.clear();
    for (int hi = 0; hi < n_; ++hi) {
      Mask below = down_[hi] & ~(Mask{1} << hi);
      for (Mask m = below; m != 0; m &= m - 1) {
        int lo = std::countr_zero(m);
        // lo is covered by hi unless something strictly between exists.
        Mask between = below & up_[lo] & ~(Mask{1} << lo);
        if (between == 0) covers_.emplace_back(lo + 1, hi + 1);
      }
    }
    std::sort(covers_.begin(), covers_.end());
  }

  template <class F>
  void scan(int pos, Mask chosen, Mask excluded, int remaining, Mask within, F& visit, bool& stop) const {
    if (stop) return;
    if (remaining == 0) {
      if (closure(chosen) != chosen) return;
      if constexpr (std::is_same_v<std::invoke_result_t<F&, const Ideal&>, bool>) {
        stop = !visit(Ideal(chosen));
      } else {
        visit(Ideal(chosen));
      }
      return;
    }
    if (pos >= n_) return;
    Mask above = within & ~((Mask{2} << pos) - 1);
    if (pos == 63) above = 0;
    Mask b = Mask{1} << pos;
    if ((within & b) && (down_[pos] & excluded) == 0) {
      Mask next = chosen | b;
      if (std::popcount(closure(next)) <= std::popcount(chosen) + remaining) {
        scan(pos + 1, next, excluded, remaining - 1, within, visit, stop);
      }
    }
    if ((up_[pos] & chosen) == 0 && std::popcount(above) >= remaining) {
      scan(pos + 1, chosen, excluded | b, remaining, within, visit, stop);
    }
  }

  int n_ = 0;
  std::vector<Mask> down_;
  std::vector<Mask> up_;
  std::vector<std::pair<int, int>> covers_;
};

}  // namespace poset_codes
