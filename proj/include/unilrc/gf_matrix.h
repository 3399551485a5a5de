#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "unilrc/common.h"
#include "unilrc/gf256.h"

namespace unilrc {

// Dense row-major matrix over GF(2^8).
class GfMatrix {
 public:
  GfMatrix() = default;
  GfMatrix(std::size_t rows, std::size_t cols);

  static GfMatrix identity(std::size_t order);
  static GfMatrix from_rows(const std::vector<std::vector<gf::Element>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  gf::Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  gf::Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const gf::Element> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<gf::Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const gf::Element> elements() const { return data_; }

  GfMatrix select_rows(std::span<const std::size_t> indices) const;
  GfMatrix select_cols(std::span<const std::size_t> indices) const;
  GfMatrix transpose() const;

  bool is_zero() const;

  friend GfMatrix operator*(const GfMatrix& a, const GfMatrix& b);
  friend bool operator==(const GfMatrix& a, const GfMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<gf::Element> data_;
};

// Entry (i, j) = points[j]^(start_power + i). Points must be distinct, and
// nonzero whenever start_power >= 1. Throws ParameterError otherwise.
GfMatrix vandermonde(std::span<const gf::Element> points, std::size_t num_rows,
                     unsigned start_power);

std::size_t rank(GfMatrix m);

// Throws DecodeError when m is singular or not square.
GfMatrix invert(const GfMatrix& m);

// Solves m * x = rhs blockwise.
std::vector<Block> solve(const GfMatrix& m, const std::vector<Block>& rhs);

// Blockwise product: out[i] = sum_j m(i, j) * blocks[j].
std::vector<Block> multiply_blocks(const GfMatrix& m, const std::vector<Block>& blocks);

// For a systematic n x k generator [I_k ; A] returns H = [A | I_{n-k}],
// which satisfies H * G = 0 in characteristic 2.
GfMatrix derive_parity_check(const GfMatrix& generator);

}  // namespace unilrc
