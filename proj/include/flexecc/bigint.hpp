#ifndef FLEXECC_BIGINT_HPP
#define FLEXECC_BIGINT_HPP

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "flexecc/bitvec.hpp"
#include "flexecc/error.hpp"

namespace flexecc {

using BigUint = boost::multiprecision::cpp_int;

/// Big-endian hex, lowercase, no prefix; "0" for zero.
inline std::string to_hex(const BigUint& v) {
  if (v < 0) throw Error(ErrorKind::InvalidArgument, "negative value has no hex form");
  if (v == 0) return "0";
  std::string s;
  BigUint x = v;
  static constexpr char kHex[] = "0123456789abcdef";
  while (x != 0) {
    s.push_back(kHex[static_cast<unsigned>(x & 0xF)]);
    x >>= 4;
  }
  return {s.rbegin(), s.rend()};
}

inline BigUint biguint_from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw Error(ErrorKind::InvalidArgument, "empty hex string");
  BigUint v = 0;
  for (char c : hex) {
    const int nib = detail::hex_value(c);
    if (nib < 0) throw Error(ErrorKind::InvalidArgument, "invalid hex digit '" + std::string(1, c) + "'");
    v <<= 4;
    v |= nib;
  }
  return v;
}

/// Number of significant bits; 0 for zero.
inline std::size_t bit_length(const BigUint& v) {
  return v == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(v)) + 1;
}

inline bool test_bit(const BigUint& v, std::size_t i) { return boost::multiprecision::bit_test(v, static_cast<unsigned>(i)); }

/// Interprets a bit vector (bit i = 2^i) as an unsigned integer.
template <std::size_t Bits>
BigUint to_biguint(const BitVector<Bits>& bits) {
  BigUint v = 0;
  const auto w = bits.words();
  for (std::size_t i = w.size(); i-- > 0;) {
    v <<= kWordBits;
    v |= w[i];
  }
  return v;
}

/// Uniform integer in [0, bound) by rejection sampling over bit_length(bound)
/// random bits from a 64-bit generator.
template <class Rng>
BigUint random_below(const BigUint& bound, Rng& rng) {
  static_assert(std::numeric_limits<typename Rng::result_type>::digits == 64, "needs a 64-bit generator");
  if (bound <= 0) throw Error(ErrorKind::InvalidArgument, "random_below needs a positive bound");
  const std::size_t nbits = bit_length(bound);
  const std::size_t nwords = (nbits + kWordBits - 1) / kWordBits;
  for (;;) {
    BigUint v = 0;
    for (std::size_t i = 0; i < nwords; ++i) {
      v <<= kWordBits;
      v |= rng();
    }
    v &= (BigUint(1) << nbits) - 1;
    if (v < bound) return v;
  }
}

}  // namespace flexecc

#endif  // FLEXECC_BIGINT_HPP
