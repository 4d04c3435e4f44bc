#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace poset_codes {

/// Arithmetic in GF(q) for prime q. Elements are plain integers in [0, q).
class PrimeField {
 public:
  using Elem = std::uint32_t;

  static constexpr std::uint32_t kMaxModulus = 1u << 16;

  explicit PrimeField(std::uint32_t q) : q_(q) {
    if (q < 2 || q > kMaxModulus) {
      throw UsageError("field size q=" + std::to_string(q) + " outside [2, 65536]");
    }
    if (!is_prime(q)) throw UsageError("field size q=" + std::to_string(q) + " is not prime");
  }

  std::uint32_t q() const noexcept { return q_; }

  Elem reduce(std::int64_t v) const noexcept {
    std::int64_t m = v % static_cast<std::int64_t>(q_);
    return static_cast<Elem>(m < 0 ? m + q_ : m);
  }

  Elem add(Elem a, Elem b) const noexcept {
    Elem s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % q_);
  }

  // Extended Euclid; no tables.
  Elem inv(Elem a) const {
    if (a % q_ == 0) throw DomainError("inverse of zero in GF(" + std::to_string(q_) + ")");
    std::int64_t r0 = q_, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
      std::int64_t quot = r0 / r1;
      std::int64_t r2 = r0 - quot * r1;
      r0 = r1;
      r1 = r2;
      std::int64_t t2 = t0 - quot * t1;
      t0 = t1;
      t1 = t2;
    }
    return reduce(t0);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

  static bool is_prime(std::uint32_t v) noexcept {
    if (v < 2) return false;
    for (std::uint32_t d = 2; d * d <= v; ++d) {
      if (v % d == 0) return false;
    }
    return true;
  }

 private:
  std::uint32_t q_;
};

/// A field element that remembers its field; mixing fields is a usage error.
class FieldElement {
 public:
  FieldElement(const PrimeField& field, std::int64_t value) : field_(field), value_(field.reduce(value)) {}

  std::uint32_t value() const noexcept { return value_; }
  const PrimeField& field() const noexcept { return field_; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    return {common(a, b), a.field_.add(a.value_, b.value_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return {common(a, b), a.field_.sub(a.value_, b.value_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    return {common(a, b), a.field_.mul(a.value_, b.value_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return {common(a, b), a.field_.div(a.value_, b.value_)};
  }
  FieldElement operator-() const { return {field_, field_.neg(value_)}; }
  FieldElement inverse() const { return {field_, field_.inv(value_)}; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  static const PrimeField& common(const FieldElement& a, const FieldElement& b) {
    if (a.field_ != b.field_) {
      throw UsageError("mixing elements of GF(" + std::to_string(a.field_.q()) + ") and GF(" +
                       std::to_string(b.field_.q()) + ")");
    }
    return a.field_;
  }

  PrimeField field_;
  std::uint32_t value_;
};

}  // namespace poset_codes
