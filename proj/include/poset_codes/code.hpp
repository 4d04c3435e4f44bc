#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "poset.hpp"

namespace poset_codes {

/// A linear [n, k] code over GF(q) whose distance is measured in a poset on
/// the n coordinates. The generator is kept exactly as supplied (full row
/// rank); the parity check is its null space.
class LinearCode {
 public:
  LinearCode(Matrix generator, Poset poset)
      : generator_(std::move(generator)),
        poset_(std::move(poset)),
        parity_check_(generator_.null_space()) {
    if (static_cast<int>(generator_.cols()) != poset_.size()) {
      throw UsageError("generator has " + std::to_string(generator_.cols()) + " columns but the poset has " +
                       std::to_string(poset_.size()) + " elements");
    }
    if (generator_.rank() != generator_.rows()) {
      throw UsageError("generator rows are linearly dependent (rank " + std::to_string(generator_.rank()) + " < " +
                       std::to_string(generator_.rows()) + ")");
    }
  }

  /// Code spanned by arbitrary rows; dependent rows are reduced away.
  static LinearCode span(const Matrix& rows, Poset poset) {
    Matrix basis = rows;
    basis.rref_in_place();
    return LinearCode(std::move(basis), std::move(poset));
  }

  const PrimeField& field() const noexcept { return generator_.field(); }
  std::uint32_t q() const noexcept { return field().q(); }
  const Poset& poset() const noexcept { return poset_; }
  const Matrix& generator() const noexcept { return generator_; }
  const Matrix& parity_check() const noexcept { return parity_check_; }
  int n() const noexcept { return static_cast<int>(generator_.cols()); }
  int k() const noexcept { return static_cast<int>(generator_.rows()); }

  /// Same code bound to another order on the same coordinates.
  LinearCode with_poset(Poset poset) const { return LinearCode(generator_, std::move(poset)); }

  /// Dimension of the subcode supported inside `coords`: |S| - rank H[S].
  int support_dimension(Mask coords) const {
    return std::popcount(coords) - static_cast<int>(parity_check_.column_rank(coords));
  }

  /// Same coordinates and order; compares the spanned spaces.
  friend bool same_code(const LinearCode& a, const LinearCode& b) {
    if (!(a.poset_ == b.poset_) || a.k() != b.k() || !(a.field() == b.field())) return false;
    Matrix ra = a.generator_, rb = b.generator_;
    ra.rref_in_place();
    rb.rref_in_place();
    return ra == rb;
  }

 private:
  Matrix generator_;
  Poset poset_;
  Matrix parity_check_;
};

inline Mask support_of(std::span<const PrimeField::Elem> x) {
  Mask m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) m |= Mask{1} << i;
  }
  return m;
}

/// |<supp x>|, the size of the smallest ideal containing the support.
inline int poset_weight(std::span<const PrimeField::Elem> x, const Poset& poset) {
  if (static_cast<int>(x.size()) != poset.size()) {
    throw UsageError("vector length " + std::to_string(x.size()) + " does not match poset size " +
                     std::to_string(poset.size()));
  }
  return std::popcount(poset.closure(support_of(x)));
}

inline int poset_distance(std::span<const PrimeField::Elem> x, std::span<const PrimeField::Elem> y,
                          const PrimeField& field, const Poset& poset) {
  if (x.size() != y.size()) throw UsageError("vectors of different length");
  std::vector<PrimeField::Elem> diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = field.sub(x[i], y[i]);
  return poset_weight(diff, poset);
}

/// Calls visit(word) for all q^k codewords. The zero word comes first;
/// order is the base-q odometer over message symbols.
template <class F>
void for_each_codeword(const LinearCode& code, const Budget& budget, F&& visit) {
  const auto& field = code.field();
  const auto q = code.q();
  const int k = code.k();
  budget.require(saturating_pow(q, static_cast<std::uint64_t>(k)), "enumerating q^k codewords");
  std::vector<PrimeField::Elem> message(k, 0);
  std::vector<PrimeField::Elem> word(code.n(), 0);
  const Matrix& g = code.generator();
  while (true) {
    visit(std::span<const PrimeField::Elem>(word));
    int i = 0;
    for (; i < k; ++i) {
      auto row = g.row(i);
      for (std::size_t c = 0; c < word.size(); ++c) word[c] = field.add(word[c], row[c]);
      if (++message[i] < q) break;
      message[i] = 0;
    }
    if (i == k) break;
  }
}

inline LinearCode dual_code(const LinearCode& code) {
  return LinearCode(code.parity_check(), code.poset().dual());
}

/// Minimum poset distance by exhaustive codeword enumeration.
inline int min_distance(const LinearCode& code, const Budget& budget = {}) {
  if (code.k() < 1) throw PreconditionError("minimum distance of a zero-dimensional code is undefined");
  int best = code.n() + 1;
  for_each_codeword(code, budget, [&](std::span<const PrimeField::Elem> w) {
    Mask s = support_of(w);
    if (s != 0) best = std::min(best, std::popcount(code.poset().closure(s)));
  });
  return best;
}

/// d_1 < d_2 < ... < d_k.
struct WeightProfile {
  std::vector<int> d;

  int operator[](int t) const { return d.at(t - 1); }
  int size() const { return static_cast<int>(d.size()); }
  friend bool operator==(const WeightProfile&, const WeightProfile&) = default;
};

/// Generalized poset weights from the corank of parity-check column
/// restrictions: d_t is the least |I| over ideals I with |I| - rk H[I] >= t.
inline WeightProfile generalized_weights(const LinearCode& code, const Budget& budget = {}) {
  const int k = code.k();
  if (k < 1) throw PreconditionError("generalized weights need k >= 1");
  WeightProfile out{std::vector<int>(k, 0)};
  int found = 0;
  std::uint64_t visited = 0;
  for (int s = 1; s <= code.n() && found < k; ++s) {
    code.poset().for_each_ideal(s, [&](const Ideal& ideal) {
      budget.require(++visited, "scanning ideals for generalized weights");
      int corank = code.support_dimension(ideal.bits());
      while (found < std::min(corank, k)) out.d[found++] = s;
      return found < k;
    });
  }
  return out;
}

/// The support-partition identity between the profiles of C and its dual.
inline bool wei_duality_check(const LinearCode& code, const Budget& budget = {}) {
  const int n = code.n(), k = code.k();
  if (k < 1 || k > n - 1) throw PreconditionError("duality check needs 1 <= k <= n-1");
  auto primal = generalized_weights(code, budget);
  auto dual = generalized_weights(dual_code(code), budget);
  std::vector<int> seen(n + 1, 0);
  for (int v : primal.d) {
    if (v < 1 || v > n) return false;
    ++seen[v];
  }
  for (int v : dual.d) {
    int m = n + 1 - v;
    if (m < 1 || m > n) return false;
    ++seen[m];
  }
  for (int i = 1; i <= n; ++i) {
    if (seen[i] != 1) return false;
  }
  return true;
}

struct OrthogonalArrayCertificate {
  int strength = 0;
  std::uint64_t index = 1;  // q^(k - strength)
};

/// Strength of the array whose rows are the codewords, with respect to `wrt`:
/// the largest t such that every ideal of size t sees each pattern in GF(q)^t
/// equally often. Counted pattern by pattern over all q^k rows.
inline OrthogonalArrayCertificate oa_strength(const LinearCode& code, const Poset& wrt, const Budget& budget = {}) {
  if (wrt.size() != code.n()) throw UsageError("poset size does not match code length");
  const auto q = code.q();
  const int k = code.k();
  budget.require(saturating_pow(q, static_cast<std::uint64_t>(k)), "orthogonal-array pattern count");
  auto uniform_on = [&](const Ideal& ideal) {
    const int t = ideal.size();
    std::vector<int> coords;
    for (int l : ideal.labels()) coords.push_back(l - 1);
    std::vector<std::uint64_t> counts(saturating_pow(q, t), 0);
    for_each_codeword(code, budget, [&](std::span<const PrimeField::Elem> w) {
      std::uint64_t key = 0;
      for (int c : coords) key = key * q + w[c];
      ++counts[key];
    });
    const std::uint64_t expect = saturating_pow(q, k - t);
    return std::all_of(counts.begin(), counts.end(), [&](std::uint64_t c) { return c == expect; });
  };
  int strength = 0;
  for (int t = 1; t <= std::min(k, code.n()); ++t) {
    bool ok = true;
    wrt.for_each_ideal(t, [&](const Ideal& ideal) {
      ok = uniform_on(ideal);
      return ok;
    });
    if (!ok) break;
    strength = t;
  }
  return {strength, saturating_pow(q, k - strength)};
}

inline OrthogonalArrayCertificate oa_strength(const LinearCode& code, const Budget& budget = {}) {
  return oa_strength(code, code.poset(), budget);
}

enum class CodeClass { mds, nmds, almost_mds, other };

inline std::string to_string(CodeClass c) {
  switch (c) {
    case CodeClass::mds:
      return "MDS";
    case CodeClass::nmds:
      return "NMDS";
    case CodeClass::almost_mds:
      return "AMDS-not-NMDS";
    case CodeClass::other:
      break;
  }
  return "other";
}

struct Classification {
  CodeClass kind = CodeClass::other;
  bool degenerate = false;  // k = 1: d_2 undefined, decided by d + d_dual = n alone
  int n = 0;
  int k = 0;
  int d = 0;
  std::optional<int> d2;
  int dual_d = 0;
  WeightProfile profile;
  WeightProfile dual_profile;
  bool nmds_by_definition = false;  // d = n-k and d_2 = n-k+2
  bool nmds_by_duality = false;     // d + d_dual = n

  bool is_nmds() const { return kind == CodeClass::nmds; }
  std::string label() const {
    return degenerate && kind == CodeClass::nmds ? "NMDS (degenerate k=1)" : to_string(kind);
  }
};

/// Classifies from (d_1, d_2) and cross-checks against d + d_dual = n.
inline Classification classify(const LinearCode& code, const Budget& budget = {}) {
  const int n = code.n(), k = code.k();
  if (k < 1 || k > n - 1) {
    throw PreconditionError("classification is unsupported for k=" + std::to_string(k) + " (needs 1 <= k <= n-1)");
  }
  Classification c;
  c.n = n;
  c.k = k;
  c.profile = generalized_weights(code, budget);
  c.dual_profile = generalized_weights(dual_code(code), budget);
  c.d = c.profile[1];
  c.dual_d = c.dual_profile[1];
  c.nmds_by_duality = c.d + c.dual_d == n;
  if (k >= 2) {
    c.d2 = c.profile[2];
    c.nmds_by_definition = c.d == n - k && *c.d2 == n - k + 2;
    if (c.nmds_by_definition != c.nmds_by_duality) {
      throw InternalError("NMDS verdicts disagree: d=" + std::to_string(c.d) + " d_2=" + std::to_string(*c.d2) +
                          " d_dual=" + std::to_string(c.dual_d) + " n=" + std::to_string(n));
    }
  } else {
    c.degenerate = true;
    c.nmds_by_definition = c.nmds_by_duality;
  }
  if (c.d == n - k + 1) {
    c.kind = CodeClass::mds;
  } else if (c.nmds_by_duality) {
    c.kind = CodeClass::nmds;
  } else if (c.d == n - k) {
    c.kind = CodeClass::almost_mds;
  }
  return c;
}

struct DerivedCodes {
  LinearCode shortened;  // [n-1, k-1, d]
  int shortened_deleted;
  LinearCode punctured;  // [n-1, k, d-1]
  int punctured_deleted;
};

/// Deletes one coordinate (keeping the induced order on the survivors) from
/// H, resp. G, and returns the first deletion whose result is NMDS with the
/// expected parameters.
inline DerivedCodes derive_codes(const LinearCode& code, const Budget& budget = {}) {
  const int n = code.n(), k = code.k();
  if (k < 2 || n - k < 2) throw PreconditionError("derived codes need k >= 2 and n-k >= 2");
  auto base = classify(code, budget);
  if (!base.is_nmds()) throw PreconditionError("derived codes need an NMDS input, got " + base.label());

  auto try_build = [&](const Matrix& m, bool is_parity, int want_k, int want_d) -> std::optional<std::pair<LinearCode, int>> {
    for (int j = 1; j <= n; ++j) {
      Matrix reduced = m.remove_column(j - 1);
      if (reduced.rank() != reduced.rows()) continue;
      Poset sub = code.poset().induced(code.poset().all() & ~label_bit(j));
      LinearCode candidate = is_parity ? LinearCode(reduced.null_space(), sub) : LinearCode(reduced, sub);
      if (candidate.k() != want_k || candidate.k() < 1 || candidate.k() > n - 2) continue;
      auto cls = classify(candidate, budget);
      if (cls.is_nmds() && cls.d == want_d) return std::make_pair(std::move(candidate), j);
    }
    return std::nullopt;
  };

  auto shortened = try_build(code.parity_check(), true, k - 1, base.d);
  if (!shortened) {
    throw ConstructionError("no single column deletion of H yields an NMDS [" + std::to_string(n - 1) + "," +
                            std::to_string(k - 1) + "," + std::to_string(base.d) + "] code");
  }
  auto punctured = try_build(code.generator(), false, k, base.d - 1);
  if (!punctured) {
    throw ConstructionError("no single column deletion of G yields an NMDS [" + std::to_string(n - 1) + "," +
                            std::to_string(k) + "," + std::to_string(base.d - 1) + "] code");
  }
  return {std::move(shortened->first), shortened->second, std::move(punctured->first), punctured->second};
}

}  // namespace poset_codes
