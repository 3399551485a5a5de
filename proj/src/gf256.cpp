#include "unilrc/gf256.h"

#include <cstring>
#include <stdexcept>

namespace unilrc::gf {

namespace {

Tables build_tables() {
  Tables t;
  unsigned x = 1;
  for (unsigned i = 0; i < 255; ++i) {
    t.exp[i] = static_cast<Element>(x);
    t.exp[i + 255] = static_cast<Element>(x);
    t.log[x] = static_cast<std::uint8_t>(i);
    x <<= 1;
    if (x & 0x100) x ^= kPolynomial;
  }
  for (unsigned a = 1; a < 256; ++a) {
    t.inverse[a] = t.exp[255 - t.log[a]];
  }
  for (unsigned a = 1; a < 256; ++a) {
    for (unsigned b = 1; b < 256; ++b) {
      t.product[a][b] = t.exp[t.log[a] + t.log[b]];
    }
  }
  return t;
}

void check_lengths(std::size_t dst, std::size_t src) {
  if (dst != src) {
    throw std::invalid_argument("block length mismatch: " + std::to_string(dst) +
                                " vs " + std::to_string(src));
  }
}

}  // namespace

const Tables& tables() {
  static const Tables t = build_tables();
  return t;
}

Element inv(Element a) {
  if (a == 0) throw std::domain_error("inverse of zero in GF(2^8)");
  return tables().inverse[a];
}

Element div(Element a, Element b) { return mul(a, inv(b)); }

Element pow(Element a, unsigned exponent) {
  if (exponent == 0) return 1;
  if (a == 0) return 0;
  const auto& t = tables();
  return t.exp[(static_cast<unsigned long>(t.log[a]) * exponent) % 255];
}

void xor_block_acc(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  check_lengths(dst.size(), src.size());
  std::size_t i = 0;
  const std::size_t n = dst.size();
  for (; i + 8 <= n; i += 8) {
    std::uint64_t a, b;
    std::memcpy(&a, dst.data() + i, 8);
    std::memcpy(&b, src.data() + i, 8);
    a ^= b;
    std::memcpy(dst.data() + i, &a, 8);
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

void mul_block_acc(std::span<std::uint8_t> dst, Element coeff,
                   std::span<const std::uint8_t> src) {
  check_lengths(dst.size(), src.size());
  if (coeff == 0) return;
  if (coeff == 1) {
    xor_block_acc(dst, src);
    return;
  }
  const auto& row = tables().product[coeff];
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= row[src[i]];
}

void scale_block(std::span<std::uint8_t> dst, Element coeff) {
  if (coeff == 1) return;
  const auto& row = tables().product[coeff];
  for (auto& b : dst) b = row[b];
}

}  // namespace unilrc::gf
