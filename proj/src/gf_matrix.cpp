#include "unilrc/gf_matrix.h"

#include <algorithm>
#include <string>

namespace unilrc {

GfMatrix::GfMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

GfMatrix GfMatrix::identity(std::size_t order) {
  GfMatrix m(order, order);
  for (std::size_t i = 0; i < order; ++i) m(i, i) = 1;
  return m;
}

GfMatrix GfMatrix::from_rows(const std::vector<std::vector<gf::Element>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  GfMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

GfMatrix GfMatrix::select_rows(std::span<const std::size_t> indices) const {
  GfMatrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

GfMatrix GfMatrix::select_cols(std::span<const std::size_t> indices) const {
  GfMatrix out(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < indices.size(); ++j) out(r, j) = (*this)(r, indices[j]);
  }
  return out;
}

GfMatrix GfMatrix::transpose() const {
  GfMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

bool GfMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](gf::Element e) { return e == 0; });
}

GfMatrix operator*(const GfMatrix& a, const GfMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
  GfMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const gf::Element c = a(i, t);
      if (c == 0) continue;
      const auto& prod = gf::tables().product[c];
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) ^= prod[b(t, j)];
    }
  }
  return out;
}

GfMatrix vandermonde(std::span<const gf::Element> points, std::size_t num_rows,
                     unsigned start_power) {
  if (num_rows == 0) throw ParameterError("vandermonde: num_rows must be >= 1");
  std::vector<bool> seen(256, false);
  for (gf::Element p : points) {
    if (seen[p]) throw ParameterError("vandermonde: duplicate point " + std::to_string(p));
    if (p == 0 && start_power >= 1) throw ParameterError("vandermonde: zero point");
    seen[p] = true;
  }
  GfMatrix m(num_rows, points.size());
  for (std::size_t i = 0; i < num_rows; ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      m(i, j) = gf::pow(points[j], start_power + static_cast<unsigned>(i));
    }
  }
  return m;
}

namespace {

// Reduces m to row echelon form in place; returns the rank.
std::size_t eliminate(GfMatrix& m) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t sel = pivot_row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pivot_row) {
      auto a = m.row(sel);
      auto b = m.row(pivot_row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const gf::Element inv_pivot = gf::inv(m(pivot_row, col));
    for (std::size_t r = pivot_row + 1; r < m.rows(); ++r) {
      const gf::Element f = m(r, col);
      if (f == 0) continue;
      const gf::Element factor = gf::mul(f, inv_pivot);
      gf::mul_block_acc(m.row(r).subspan(col), factor, m.row(pivot_row).subspan(col));
    }
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace

std::size_t rank(GfMatrix m) { return eliminate(m); }

GfMatrix invert(const GfMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DecodeError("invert: matrix is not square");
  GfMatrix work = m;
  GfMatrix out = GfMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && work(sel, col) == 0) ++sel;
    if (sel == n) throw DecodeError("invert: matrix is singular");
    if (sel != col) {
      std::swap_ranges(work.row(sel).begin(), work.row(sel).end(), work.row(col).begin());
      std::swap_ranges(out.row(sel).begin(), out.row(sel).end(), out.row(col).begin());
    }
    const gf::Element inv_pivot = gf::inv(work(col, col));
    gf::scale_block(work.row(col), inv_pivot);
    gf::scale_block(out.row(col), inv_pivot);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const gf::Element f = work(r, col);
      if (f == 0) continue;
      gf::mul_block_acc(work.row(r), f, work.row(col));
      gf::mul_block_acc(out.row(r), f, out.row(col));
    }
  }
  return out;
}

std::vector<Block> solve(const GfMatrix& m, const std::vector<Block>& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs count != rows");
  for (const auto& b : rhs) {
    if (b.size() != rhs.front().size())
      throw std::invalid_argument("solve: rhs blocks differ in length");
  }
  return multiply_blocks(invert(m), rhs);
}

std::vector<Block> multiply_blocks(const GfMatrix& m, const std::vector<Block>& blocks) {
  if (blocks.size() != m.cols()) throw std::invalid_argument("multiply_blocks: count != cols");
  const std::size_t len = blocks.empty() ? 0 : blocks.front().size();
  std::vector<Block> out(m.rows(), Block(len, 0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) gf::mul_block_acc(out[i], m(i, j), blocks[j]);
  }
  return out;
}

GfMatrix derive_parity_check(const GfMatrix& generator) {
  const std::size_t n = generator.rows();
  const std::size_t k = generator.cols();
  if (k > n) throw std::invalid_argument("derive_parity_check: generator has k > n");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (generator(i, j) != (i == j ? 1 : 0))
        throw std::invalid_argument("derive_parity_check: generator is not systematic");
    }
  }
  const std::size_t m = n - k;
  GfMatrix h(m, n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < k; ++c) h(r, c) = generator(k + r, c);
    h(r, k + r) = 1;
  }
  return h;
}

}  // namespace unilrc
