#include <random>
#include <stdexcept>

#include "doctest.h"
#include "unilrc/gf256.h"

using namespace unilrc;

namespace {

// Shift-and-add product reduced by x^8 + x^4 + x^3 + x^2 + 1.
gf::Element slow_mul(gf::Element a, gf::Element b) {
  unsigned acc = 0;
  for (int i = 0; i < 8; ++i)
    if (b >> i & 1) acc ^= static_cast<unsigned>(a) << i;
  for (int bit = 14; bit >= 8; --bit)
    if (acc >> bit & 1) acc ^= 0x11Du << (bit - 8);
  return static_cast<gf::Element>(acc);
}

}  // namespace

TEST_CASE("table multiplication matches shift-and-add for every pair") {
  for (unsigned a = 0; a < 256; ++a)
    for (unsigned b = 0; b < 256; ++b)
      REQUIRE(gf::mul(static_cast<gf::Element>(a), static_cast<gf::Element>(b)) ==
              slow_mul(static_cast<gf::Element>(a), static_cast<gf::Element>(b)));
}

TEST_CASE("known products and inverses") {
  CHECK(gf::mul(0x02, 0x80) == 0x1D);
  CHECK(gf::inv(0x02) == 0x8E);
  CHECK(gf::inv(0x01) == 0x01);
  CHECK(gf::add(0x53, 0xCA) == 0x99);
  CHECK(gf::sub(0x53, 0xCA) == 0x99);
}

TEST_CASE("inverse agrees with brute-force search") {
  for (unsigned a = 1; a < 256; ++a) {
    unsigned found = 0;
    for (unsigned b = 1; b < 256; ++b)
      if (slow_mul(static_cast<gf::Element>(a), static_cast<gf::Element>(b)) == 1) found = b;
    REQUIRE(gf::inv(static_cast<gf::Element>(a)) == found);
    REQUIRE(gf::div(1, static_cast<gf::Element>(a)) == found);
  }
  CHECK_THROWS_AS(gf::inv(0), std::domain_error);
  CHECK_THROWS_AS(gf::div(3, 0), std::domain_error);
}

TEST_CASE("0x02 generates the multiplicative group") {
  std::vector<bool> seen(256, false);
  for (unsigned e = 0; e < 255; ++e) {
    const gf::Element x = gf::exp(e);
    REQUIRE_FALSE(seen[x]);
    seen[x] = true;
  }
  CHECK_FALSE(seen[0]);
  CHECK(gf::exp(255) == 1);
}

TEST_CASE("pow matches repeated multiplication") {
  for (unsigned a = 0; a < 256; a += 7)
    for (unsigned e = 0; e < 20; ++e) {
      gf::Element want = 1;
      for (unsigned i = 0; i < e; ++i) want = slow_mul(want, static_cast<gf::Element>(a));
      REQUIRE(gf::pow(static_cast<gf::Element>(a), e) == want);
    }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const auto a = static_cast<gf::Element>(rng()), b = static_cast<gf::Element>(rng()),
               c = static_cast<gf::Element>(rng());
    REQUIRE(gf::mul(a, gf::mul(b, c)) == gf::mul(gf::mul(a, b), c));
    REQUIRE(gf::mul(a, gf::add(b, c)) == gf::add(gf::mul(a, b), gf::mul(a, c)));
    REQUIRE(gf::mul(a, b) == gf::mul(b, a));
  }
}

TEST_CASE("block kernels agree with the scalar definition") {
  std::mt19937 rng(3);
  for (std::size_t len : {0u, 1u, 7u, 8u, 9u, 63u, 64u, 1000u}) {
    std::vector<gf::Element> dst(len), src(len);
    for (auto& x : dst) x = static_cast<gf::Element>(rng());
    for (auto& x : src) x = static_cast<gf::Element>(rng());
    for (gf::Element coeff : {gf::Element{0}, gf::Element{1}, gf::Element{0x37}}) {
      auto got = dst;
      gf::mul_block_acc(got, coeff, src);
      for (std::size_t i = 0; i < len; ++i) REQUIRE(got[i] == (dst[i] ^ slow_mul(coeff, src[i])));
    }
    auto x = dst;
    gf::xor_block_acc(x, src);
    for (std::size_t i = 0; i < len; ++i) REQUIRE(x[i] == (dst[i] ^ src[i]));
    auto s = dst;
    gf::scale_block(s, 0x9A);
    for (std::size_t i = 0; i < len; ++i) REQUIRE(s[i] == slow_mul(0x9A, dst[i]));
  }
}

TEST_CASE("block kernels reject length mismatches") {
  std::vector<gf::Element> a(4), b(5);
  CHECK_THROWS_AS(gf::xor_block_acc(a, b), std::invalid_argument);
  CHECK_THROWS_AS(gf::mul_block_acc(a, 3, b), std::invalid_argument);
}
