#ifndef FLEXECC_GF2M_HPP
#define FLEXECC_GF2M_HPP

// Arithmetic in GF(2^233) and GF(2^283) with the NIST trinomial/pentanomial.

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "flexecc/bitvec.hpp"
#include "flexecc/error.hpp"

namespace flexecc {

enum class FieldId { B233, B283 };

struct FieldSpec {
  std::size_t degree;
  // Exponents of f(t) below the leading term, always including 0.
  std::array<std::size_t, 4> taps;
  std::size_t tap_count;
  const char* name;
};

inline constexpr FieldSpec kB233Spec{233, {0, 74, 0, 0}, 2, "B233"};
inline constexpr FieldSpec kB283Spec{283, {0, 5, 7, 12}, 4, "B283"};

constexpr const FieldSpec& field_spec(FieldId f) { return f == FieldId::B233 ? kB233Spec : kB283Spec; }
constexpr std::size_t field_degree(FieldId f) { return field_spec(f).degree; }
constexpr std::size_t hex_digits(FieldId f) { return (field_degree(f) + 3) / 4; }

inline std::string to_string(FieldId f) { return field_spec(f).name; }

inline std::optional<FieldId> parse_field_id(std::string_view s) {
  if (s == "B233" || s == "b233" || s == "B-233" || s == "233") return FieldId::B233;
  if (s == "B283" || s == "b283" || s == "B-283" || s == "283") return FieldId::B283;
  return std::nullopt;
}

inline constexpr std::size_t kMaxFieldBits = 283;
// Room for any unreduced value the multiplier model produces: a 141-bit
// partial product folded at offset 6*71 reaches bit 566.
inline constexpr std::size_t kPolynomialBits = 576;

using ElementBits = BitVector<kMaxFieldBits>;
/// Unreduced product or interleaved square.
using Polynomial = BitVector<kPolynomialBits>;

class FieldElement {
 public:
  explicit FieldElement(FieldId field) : field_(field) {}

  static FieldElement zero(FieldId f) { return FieldElement(f); }
  static FieldElement one(FieldId f) { return FieldElement(f, ElementBits::one()); }

  /// Overflow if `bits` has a coefficient at or above t^l.
  static FieldElement from_bits(FieldId f, const ElementBits& bits) {
    if (bits.degree() >= static_cast<int>(field_degree(f))) {
      throw Error(ErrorKind::Overflow, "element has degree " + std::to_string(bits.degree()) + " in " + to_string(f));
    }
    return FieldElement(f, bits);
  }

  static FieldElement from_u64(FieldId f, std::uint64_t v) {
    ElementBits b;
    b.words()[0] = v;
    return FieldElement(f, b);
  }

  static FieldElement from_hex(FieldId f, std::string_view hex) {
    return FieldElement(f, ElementBits::from_hex(hex, field_degree(f)));
  }

  std::string to_hex() const { return bits_.to_hex(field_degree(field_)); }

  FieldId field() const { return field_; }
  std::size_t degree_bound() const { return field_degree(field_); }
  const ElementBits& bits() const { return bits_; }
  bool bit(std::size_t i) const { return bits_.bit(i); }
  bool is_zero() const { return bits_.is_zero(); }
  bool is_one() const { return bits_ == ElementBits::one(); }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  FieldElement(FieldId f, const ElementBits& bits) : field_(f), bits_(bits) {}

  FieldId field_;
  ElementBits bits_;
};

namespace detail {

inline void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, to_string(a.field()) + " vs " + to_string(b.field()));
}

// Top-down word-wise reduction. Each word above t^l is folded back via
// t^l = sum of taps; targets always land below the word being folded so one
// descending pass suffices for any input that fits in a Polynomial.
inline FieldElement reduce_wide(Polynomial p, FieldId f) {
  const FieldSpec& spec = field_spec(f);
  auto w = p.words();
  const std::size_t top = spec.degree / kWordBits;
  const std::size_t rem = spec.degree % kWordBits;
  for (std::size_t i = Polynomial::kWords - 1; i > top; --i) {
    const word_t t = w[i];
    if (t == 0) continue;
    w[i] = 0;
    const std::size_t base = i * kWordBits - spec.degree;
    for (std::size_t k = 0; k < spec.tap_count; ++k) xor_word_at(w, t, base + spec.taps[k]);
  }
  const word_t t = w[top] >> rem;
  if (t != 0) {
    w[top] &= (word_t{1} << rem) - 1;
    for (std::size_t k = 0; k < spec.tap_count; ++k) xor_word_at(w, t, spec.taps[k]);
  }
  return FieldElement::from_bits(f, p.resized<kMaxFieldBits>());
}

// 64x64 -> 128 carry-less product, 4-bit window.
inline std::pair<word_t, word_t> clmul64(word_t a, word_t b) {
  std::array<std::pair<word_t, word_t>, 16> table{};
  for (unsigned j = 1; j < 16; ++j) {
    word_t lo = 0;
    word_t hi = 0;
    for (unsigned bit = 0; bit < 4; ++bit) {
      if ((j >> bit) & 1U) {
        lo ^= a << bit;
        if (bit != 0) hi ^= a >> (kWordBits - bit);
      }
    }
    table[j] = {lo, hi};
  }
  word_t lo = 0;
  word_t hi = 0;
  for (int nib = 15; nib >= 0; --nib) {
    hi = (hi << 4) | (lo >> 60);
    lo <<= 4;
    const auto& e = table[(b >> (4 * nib)) & 0xF];
    lo ^= e.first;
    hi ^= e.second;
  }
  return {lo, hi};
}

// Schoolbook carry-less product of word arrays into `out` (zeroed by caller).
inline void clmul_words(std::span<const word_t> a, std::span<const word_t> b, std::span<word_t> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      const auto [lo, hi] = clmul64(a[i], b[j]);
      if (i + j < out.size()) out[i + j] ^= lo;
      if (i + j + 1 < out.size()) out[i + j + 1] ^= hi;
    }
  }
}

// Spreads the low 32 bits of x to the even bit positions.
inline word_t spread_bits(word_t x) {
  x &= 0xFFFFFFFFULL;
  x = (x | (x << 16)) & 0x0000FFFF0000FFFFULL;
  x = (x | (x << 8)) & 0x00FF00FF00FF00FFULL;
  x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0FULL;
  x = (x | (x << 2)) & 0x3333333333333333ULL;
  x = (x | (x << 1)) & 0x5555555555555555ULL;
  return x;
}

}  // namespace detail

/// Bitwise XOR.
inline FieldElement add(const FieldElement& a, const FieldElement& b) {
  detail::require_same_field(a, b);
  return FieldElement::from_bits(a.field(), a.bits() ^ b.bits());
}

/// Reduces p modulo f(t). Overflow if deg(p) > 2l - 2.
inline FieldElement reduce(const Polynomial& p, FieldId f) {
  const int limit = static_cast<int>(2 * field_degree(f) - 2);
  if (p.degree() > limit) {
    throw Error(ErrorKind::Overflow,
                "polynomial degree " + std::to_string(p.degree()) + " exceeds " + std::to_string(limit));
  }
  return detail::reduce_wide(p, f);
}

/// a_{l-1} 0 a_{l-2} 0 ... 0 a_1 0 a_0: coefficient a_i moved to t^{2i}.
inline Polynomial interleave(const FieldElement& a) {
  Polynomial out;
  auto dst = out.words();
  const auto src = a.bits().words();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[2 * i] = detail::spread_bits(src[i]);
    if (2 * i + 1 < dst.size()) dst[2 * i + 1] = detail::spread_bits(src[i] >> 32);
  }
  return out;
}

inline FieldElement square(const FieldElement& a) { return reduce(interleave(a), a.field()); }

/// Carry-less schoolbook product without reduction.
inline Polynomial poly_mul(const ElementBits& a, const ElementBits& b) {
  Polynomial out;
  detail::clmul_words(a.words(), b.words(), out.words());
  return out;
}

inline FieldElement mul_classical(const FieldElement& a, const FieldElement& b) {
  detail::require_same_field(a, b);
  return reduce(poly_mul(a.bits(), b.bits()), a.field());
}

/// Multiplicative inverse by the binary extended Euclidean algorithm over
/// GF(2)[t]. Not constant time.
inline FieldElement invert(const FieldElement& a) {
  if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in " + to_string(a.field()));
  using Wide = BitVector<kMaxFieldBits + 1>;
  const FieldSpec& spec = field_spec(a.field());
  Wide f;
  f.set_bit(spec.degree);
  for (std::size_t k = 0; k < spec.tap_count; ++k) f.set_bit(spec.taps[k]);

  const auto shr1 = [](Wide& v) {
    auto w = v.words();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) w[i] = (w[i] >> 1) | (w[i + 1] << 63);
    w[w.size() - 1] >>= 1;
  };
  const auto halve = [&](Wide& v, Wide& g) {
    while (!v.bit(0)) {
      shr1(v);
      if (g.bit(0)) g ^= f;
      shr1(g);
    }
  };

  Wide u = a.bits().resized<kMaxFieldBits + 1>();
  Wide v = f;
  Wide g1 = Wide::one();
  Wide g2;
  const Wide one = Wide::one();
  while (u != one && v != one) {
    halve(u, g1);
    if (u == one) break;
    halve(v, g2);
    if (v == one) break;
    if (u.degree() > v.degree()) {
      u ^= v;
      g1 ^= g2;
    } else {
      v ^= u;
      g2 ^= g1;
    }
  }
  const Wide& g = (u == one) ? g1 : g2;
  return FieldElement::from_bits(a.field(), g.resized<kMaxFieldBits>());
}

inline FieldElement divide(const FieldElement& num, const FieldElement& den) { return mul_classical(num, invert(den)); }

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul_classical(a, b); }

/// Uniform element drawn from a 64-bit generator.
template <class Rng>
FieldElement random_element(FieldId f, Rng& rng) {
  static_assert(std::numeric_limits<typename Rng::result_type>::digits == 64, "needs a 64-bit generator");
  ElementBits b;
  for (auto& w : b.words()) w = rng();
  b.clear_above(field_degree(f));
  return FieldElement::from_bits(f, b);
}

}  // namespace flexecc

#endif  // FLEXECC_GF2M_HPP
