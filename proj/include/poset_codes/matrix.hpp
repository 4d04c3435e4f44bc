#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace poset_codes {

using Mask = std::uint64_t;

/// Dense row-major matrix over a prime field.
class Matrix {
 public:
  using Elem = PrimeField::Elem;

  Matrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  Matrix(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols)
      : Matrix(field, rows.size(), cols) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) {
        throw UsageError("matrix row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                         " entries, expected " + std::to_string(cols));
      }
      for (std::size_t j = 0; j < cols; ++j) at(i, j) = field.reduce(rows[i][j]);
    }
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Reduced row echelon form, pivots chosen left to right (lowest column
  // first). Zero rows are dropped. Returns the pivot column of each row.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
      std::size_t p = lead;
      while (p < rows_ && at(p, c) == 0) ++p;
      if (p == rows_) continue;
      swap_rows(p, lead);
      scale_row(lead, field_.inv(at(lead, c)));
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r != lead && at(r, c) != 0) add_row_multiple(r, lead, field_.neg(at(r, c)));
      }
      pivots.push_back(c);
      ++lead;
    }
    rows_ = lead;
    data_.resize(rows_ * cols_);
    return pivots;
  }

  std::size_t rank() const {
    Matrix copy = *this;
    return copy.rref_in_place().size();
  }

  // Basis of {y : M y^T = 0} as rows, one per non-pivot column, with a 1 in
  // that column. Deterministic for a given M.
  Matrix null_space() const {
    Matrix reduced = *this;
    auto pivots = reduced.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    Matrix out(field_, cols_ - pivots.size(), cols_);
    std::size_t r = 0;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      out.at(r, f) = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) out.at(r, pivots[i]) = field_.neg(reduced.at(i, f));
      ++r;
    }
    return out;
  }

  // Columns whose bit is set in `columns`, in increasing order.
  Matrix select_columns(Mask columns) const {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((columns >> c) & 1u) keep.push_back(c);
    }
    Matrix out(field_, rows_, keep.size());
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t j = 0; j < keep.size(); ++j) out.at(r, j) = at(r, keep[j]);
    }
    return out;
  }

  Matrix remove_column(std::size_t col) const {
    Mask all = cols_ == 64 ? ~Mask{0} : (Mask{1} << cols_) - 1;
    return select_columns(all & ~(Mask{1} << col));
  }

  std::size_t column_rank(Mask columns) const { return select_columns(columns).rank(); }

  // v * M for a row vector v of length rows().
  std::vector<Elem> left_multiply(std::span<const Elem> v) const {
    std::vector<Elem> out(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (v[r] == 0) continue;
      for (std::size_t c = 0; c < cols_; ++c) out[c] = field_.add(out[c], field_.mul(v[r], at(r, c)));
    }
    return out;
  }

  // True iff every row of this matrix is orthogonal to every row of `other`.
  bool orthogonal_to(const Matrix& other) const {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < other.rows_; ++j) {
        Elem acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc = field_.add(acc, field_.mul(at(i, c), other.at(j, c)));
        if (acc != 0) return false;
      }
    }
    return true;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
  }
  void scale_row(std::size_t r, Elem s) {
    for (std::size_t c = 0; c < cols_; ++c) at(r, c) = field_.mul(at(r, c), s);
  }
  void add_row_multiple(std::size_t dst, std::size_t src, Elem s) {
    for (std::size_t c = 0; c < cols_; ++c) at(dst, c) = field_.add(at(dst, c), field_.mul(s, at(src, c)));
  }

  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

}  // namespace poset_codes
