#pragma once

#include <array>
#include <cstdint>
#include <span>

// Arithmetic in GF(2^8) over x^8 + x^4 + x^3 + x^2 + 1.
namespace unilrc::gf {

using Element = std::uint8_t;

inline constexpr unsigned kPolynomial = 0x11D;
inline constexpr Element kGenerator = 0x02;

struct Tables {
  std::array<std::uint8_t, 256> log{};  // log[0] is unused
  std::array<Element, 510> exp{};       // exp[i] = generator^i, doubled to skip a modulo
  std::array<Element, 256> inverse{};   // inverse[0] is unused
  std::array<std::array<Element, 256>, 256> product{};
};

// Built once on first use; immutable afterwards.
const Tables& tables();

inline Element add(Element a, Element b) { return a ^ b; }
inline Element sub(Element a, Element b) { return a ^ b; }

inline Element mul(Element a, Element b) { return tables().product[a][b]; }

// Throws std::domain_error for a == 0.
Element inv(Element a);
Element div(Element a, Element b);

Element pow(Element a, unsigned exponent);

// generator^exponent
inline Element exp(unsigned exponent) { return tables().exp[exponent % 255]; }

// dst ^= src. Throws std::invalid_argument on a length mismatch.
void xor_block_acc(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src);

// dst ^= coeff * src.
void mul_block_acc(std::span<std::uint8_t> dst, Element coeff,
                   std::span<const std::uint8_t> src);

// dst = coeff * dst
void scale_block(std::span<std::uint8_t> dst, Element coeff);

}  // namespace unilrc::gf
