#include <random>

#include "doctest.h"
#include "unilrc/gf_matrix.h"

using namespace unilrc;
using Pts = std::vector<gf::Element>;

namespace {

GfMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937& rng) {
  GfMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<gf::Element>(rng());
  return m;
}

}  // namespace

TEST_CASE("vandermonde entries and shape") {
  CHECK(vandermonde(Pts{5}, 1, 0) == GfMatrix::from_rows({{1}}));
  const GfMatrix v = vandermonde(Pts{1, 2, 3}, 3, 1);
  CHECK(v.rows() == 3);
  CHECK(v.cols() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(v(i, j) == gf::pow(static_cast<gf::Element>(j + 1), static_cast<unsigned>(i + 1)));
  CHECK(rank(v) == 3);
  const GfMatrix ones = vandermonde(Pts{4, 9, 200}, 2, 0);
  for (std::size_t j = 0; j < 3; ++j) CHECK(ones(0, j) == 1);
}

TEST_CASE("vandermonde rejects bad points") {
  CHECK_THROWS_AS(vandermonde(Pts{1, 2, 1}, 2, 0), ParameterError);
  CHECK_THROWS_AS(vandermonde(Pts{0, 2}, 2, 1), ParameterError);
  CHECK_THROWS_AS(vandermonde(Pts{1, 2}, 0, 0), ParameterError);
  CHECK_NOTHROW(vandermonde(Pts{0, 2}, 2, 0));
}

TEST_CASE("square vandermonde on distinct nonzero points is invertible") {
  std::mt19937 rng(11);
  for (std::size_t order = 1; order <= 8; ++order)
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<gf::Element> pts;
      while (pts.size() < order) {
        const auto p = static_cast<gf::Element>(1 + rng() % 255);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
      }
      for (std::size_t start : {0u, 1u}) {
        const GfMatrix v = vandermonde(pts, order, start);
        REQUIRE(rank(v) == order);
        REQUIRE(v * invert(v) == GfMatrix::identity(order));
      }
    }
}

TEST_CASE("inverse round trip and singular detection") {
  std::mt19937 rng(5);
  int inverted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const GfMatrix m = random_matrix(6, 6, rng);
    if (rank(m) < 6) {
      CHECK_THROWS_AS(invert(m), DecodeError);
      continue;
    }
    const GfMatrix inv = invert(m);
    REQUIRE(m * inv == GfMatrix::identity(6));
    REQUIRE(inv * m == GfMatrix::identity(6));
    ++inverted;
  }
  CHECK(inverted > 150);
  CHECK_THROWS_AS(invert(GfMatrix::from_rows({{1, 2}, {1, 2}})), DecodeError);
  CHECK_THROWS_AS(invert(GfMatrix(2, 3)), DecodeError);
}

TEST_CASE("solve agrees with substitution on random 4x4 systems") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    GfMatrix a = random_matrix(4, 4, rng);
    if (rank(a) < 4) continue;
    std::vector<Block> x(4, Block(16));
    for (auto& b : x)
      for (auto& v : b) v = static_cast<std::uint8_t>(rng());
    // b = A x, evaluated entry by entry.
    std::vector<Block> rhs(4, Block(16, 0));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t t = 0; t < 16; ++t) rhs[i][t] ^= gf::mul(a(i, j), x[j][t]);
    REQUIRE(solve(a, rhs) == x);
  }
}

TEST_CASE("rank of structured matrices") {
  CHECK(rank(GfMatrix(3, 4)) == 0);
  CHECK(rank(GfMatrix::identity(5)) == 5);
  CHECK(rank(GfMatrix::from_rows({{1, 2, 3}, {2, 4, 6}})) == 1);  // second row is 2 times the first
}

TEST_CASE("parity-check derivation annihilates the generator") {
  std::mt19937 rng(9);
  for (std::size_t k : {1u, 3u, 6u})
    for (std::size_t extra : {0u, 1u, 4u}) {
      GfMatrix g(k + extra, k);
      for (std::size_t i = 0; i < k; ++i) g(i, i) = 1;
      for (std::size_t r = k; r < k + extra; ++r)
        for (std::size_t c = 0; c < k; ++c) g(r, c) = static_cast<gf::Element>(rng());
      const GfMatrix h = derive_parity_check(g);
      REQUIRE(h.rows() == extra);
      REQUIRE(h.cols() == k + extra);
      REQUIRE((h * g).is_zero());
      if (extra > 0) REQUIRE(rank(h) == extra);
    }
  CHECK_THROWS_AS(derive_parity_check(GfMatrix::from_rows({{1, 1}, {0, 1}, {1, 0}})), std::invalid_argument);
}

TEST_CASE("row and column selection, transpose") {
  const GfMatrix m = GfMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  CHECK(m.transpose() == GfMatrix::from_rows({{1, 4}, {2, 5}, {3, 6}}));
  const std::vector<std::size_t> rows{1}, cols{2, 0};
  CHECK(m.select_rows(rows) == GfMatrix::from_rows({{4, 5, 6}}));
  CHECK(m.select_cols(cols) == GfMatrix::from_rows({{3, 1}, {6, 4}}));
  CHECK_THROWS(m * m);
}
