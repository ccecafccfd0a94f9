#ifndef FLEXECC_BITVEC_HPP
#define FLEXECC_BITVEC_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "flexecc/error.hpp"

namespace flexecc {

using word_t = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for_bits(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

namespace detail {

// dst ^= w << bitpos, with bits falling off the top of dst discarded.
inline void xor_word_at(std::span<word_t> dst, word_t w, std::size_t bitpos) {
  const std::size_t idx = bitpos / kWordBits;
  const std::size_t off = bitpos % kWordBits;
  if (idx < dst.size()) dst[idx] ^= w << off;
  if (off != 0 && idx + 1 < dst.size()) dst[idx + 1] ^= w >> (kWordBits - off);
}

inline int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace detail

/// Fixed-capacity bit vector over GF(2). Bit i is the coefficient of t^i;
/// words are little-endian (word 0 holds bits 0..63).
template <std::size_t Bits>
class BitVector {
 public:
  static_assert(Bits > 0);
  static constexpr std::size_t kBits = Bits;
  static constexpr std::size_t kWords = words_for_bits(Bits);

  constexpr BitVector() = default;

  static constexpr BitVector one() {
    BitVector v;
    v.w_[0] = 1;
    return v;
  }

  /// Builds from little-endian words; throws Overflow if any bit at or above
  /// `Bits` would be set.
  static BitVector from_words(std::span<const word_t> words) {
    BitVector v;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i < kWords) {
        v.w_[i] = words[i];
      } else if (words[i] != 0) {
        throw Error(ErrorKind::Overflow, "bit vector wider than " + std::to_string(Bits) + " bits");
      }
    }
    if (!v.top_clear()) throw Error(ErrorKind::Overflow, "bit vector wider than " + std::to_string(Bits) + " bits");
    return v;
  }

  constexpr bool bit(std::size_t i) const {
    if (i >= Bits) return false;
    return ((w_.data()[i / kWordBits] >> (i % kWordBits)) & 1U) != 0;
  }

  constexpr void set_bit(std::size_t i, bool value = true) {
    if (i >= Bits) throw Error(ErrorKind::Overflow, "bit index " + std::to_string(i) + " out of range");
    const word_t mask = word_t{1} << (i % kWordBits);
    if (value) {
      w_[i / kWordBits] |= mask;
    } else {
      w_[i / kWordBits] &= ~mask;
    }
  }

  constexpr std::span<const word_t, kWords> words() const { return w_; }
  constexpr std::span<word_t, kWords> words() { return w_; }

  constexpr bool is_zero() const {
    return std::all_of(w_.begin(), w_.end(), [](word_t w) { return w == 0; });
  }

  /// Degree of the polynomial, -1 for zero.
  constexpr int degree() const {
    for (std::size_t i = kWords; i-- > 0;) {
      if (w_[i] != 0) return static_cast<int>(i * kWordBits + (kWordBits - 1 - std::countl_zero(w_[i])));
    }
    return -1;
  }

  constexpr std::size_t popcount() const {
    std::size_t n = 0;
    for (word_t w : w_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  constexpr BitVector& operator^=(const BitVector& o) {
    for (std::size_t i = 0; i < kWords; ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  friend constexpr BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend constexpr bool operator==(const BitVector&, const BitVector&) = default;

  /// this ^= (src << shift). Bits shifted past capacity raise Overflow.
  template <std::size_t Other>
  void xor_shifted(const BitVector<Other>& src, std::size_t shift) {
    if (src.degree() >= 0 && static_cast<std::size_t>(src.degree()) + shift >= Bits) {
      throw Error(ErrorKind::Overflow, "shifted operand exceeds " + std::to_string(Bits) + " bits");
    }
    for (std::size_t i = 0; i < BitVector<Other>::kWords; ++i) {
      if (src.words()[i] != 0) detail::xor_word_at(w_, src.words()[i], shift + i * kWordBits);
    }
  }

  /// Bits [offset, offset + Width) as a new vector.
  template <std::size_t Width>
  BitVector<Width> slice(std::size_t offset) const {
    BitVector<Width> out;
    auto dst = out.words();
    for (std::size_t i = 0; i < BitVector<Width>::kWords; ++i) {
      const std::size_t pos = offset + i * kWordBits;
      const std::size_t idx = pos / kWordBits;
      const std::size_t off = pos % kWordBits;
      word_t w = idx < kWords ? (w_[idx] >> off) : 0;
      if (off != 0 && idx + 1 < kWords) w |= w_[idx + 1] << (kWordBits - off);
      dst[i] = w;
    }
    out.clear_above(Width);
    return out;
  }

  /// Same bits in a vector of another capacity; Overflow if truncation loses bits.
  template <std::size_t Other>
  BitVector<Other> resized() const {
    return BitVector<Other>::from_words(std::span<const word_t>(w_));
  }

  /// Clears every bit at index >= n.
  constexpr void clear_above(std::size_t n) {
    for (std::size_t i = 0; i < kWords; ++i) {
      const std::size_t lo = i * kWordBits;
      if (lo >= n) {
        w_[i] = 0;
      } else if (n - lo < kWordBits) {
        w_[i] &= (word_t{1} << (n - lo)) - 1;
      }
    }
  }

  /// Fixed-width hex, most significant nibble first, ceil(nbits/4) digits.
  std::string to_hex(std::size_t nbits = Bits) const {
    const std::size_t digits = (nbits + 3) / 4;
    std::string s(digits, '0');
    static constexpr char kHex[] = "0123456789abcdef";
    for (std::size_t d = 0; d < digits; ++d) {
      const std::size_t pos = d * 4;
      const word_t nib = (w_[pos / kWordBits] >> (pos % kWordBits)) & 0xF;
      s[digits - 1 - d] = kHex[nib];
    }
    return s;
  }

  /// Parses hex (optional 0x prefix). Overflow if the value needs more than
  /// `nbits` bits.
  static BitVector from_hex(std::string_view hex, std::size_t nbits = Bits) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.empty()) throw Error(ErrorKind::InvalidArgument, "empty hex string");
    nbits = std::min(nbits, Bits);
    BitVector v;
    std::size_t pos = 0;
    for (std::size_t i = hex.size(); i-- > 0; pos += 4) {
      const int nib = detail::hex_value(hex[i]);
      if (nib < 0) throw Error(ErrorKind::InvalidArgument, "invalid hex digit '" + std::string(1, hex[i]) + "'");
      if (nib == 0) continue;
      if (pos + static_cast<std::size_t>(std::bit_width(static_cast<unsigned>(nib))) > nbits) {
        throw Error(ErrorKind::Overflow, "hex value exceeds " + std::to_string(nbits) + " bits");
      }
      v.w_[pos / kWordBits] |= static_cast<word_t>(nib) << (pos % kWordBits);
    }
    return v;
  }

 private:
  constexpr bool top_clear() const {
    constexpr std::size_t rem = Bits % kWordBits;
    if constexpr (rem == 0) {
      return true;
    } else {
      return (w_[kWords - 1] >> rem) == 0;
    }
  }

  std::array<word_t, kWords> w_{};
};

/// Population count of a word sequence.
inline std::size_t hamming_weight(std::span<const word_t> v) {
  std::size_t n = 0;
  for (word_t w : v) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

/// Number of differing bits; operands must have the same length.
inline std::size_t hamming_distance(std::span<const word_t> u, std::span<const word_t> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "hamming distance of " + std::to_string(u.size()) + " and " + std::to_string(v.size()) + " words");
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i < u.size(); ++i) n += static_cast<std::size_t>(std::popcount(u[i] ^ v[i]));
  return n;
}

template <std::size_t Bits>
std::size_t hamming_weight(const BitVector<Bits>& v) {
  return v.popcount();
}

template <std::size_t Bits>
std::size_t hamming_distance(const BitVector<Bits>& u, const BitVector<Bits>& v) {
  return (u ^ v).popcount();
}

}  // namespace flexecc

#endif  // FLEXECC_BITVEC_HPP
