#ifndef FLEXECC_CURVE_HPP
#define FLEXECC_CURVE_HPP

// Binary curves y^2 + xy = x^3 + a x^2 + b over GF(2^l): affine group law,
// a double-and-add reference, and the Montgomery ladder in Lopez-Dahab
// projective coordinates with a per-iteration transcript of its field
// multiplications.

#include <array>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flexecc/bigint.hpp"
#include "flexecc/error.hpp"
#include "flexecc/gf2m.hpp"

namespace flexecc {

class AffinePoint {
 public:
  static AffinePoint infinity() { return AffinePoint(); }

  AffinePoint(FieldElement x, FieldElement y) : coords_(std::make_pair(std::move(x), std::move(y))) {
    detail::require_same_field(coords_->first, coords_->second);
  }

  bool is_infinity() const { return !coords_.has_value(); }

  const FieldElement& x() const {
    if (!coords_) throw Error(ErrorKind::InvalidArgument, "point at infinity has no coordinates");
    return coords_->first;
  }
  const FieldElement& y() const {
    if (!coords_) throw Error(ErrorKind::InvalidArgument, "point at infinity has no coordinates");
    return coords_->second;
  }

  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;

 private:
  AffinePoint() = default;
  std::optional<std::pair<FieldElement, FieldElement>> coords_;
};

struct CurveParams {
  FieldId field;
  FieldElement a;
  FieldElement b;
  AffinePoint G;
  BigUint order;
  unsigned cofactor;
};

inline bool is_on_curve(const AffinePoint& p, const CurveParams& c) {
  if (p.is_infinity()) return true;
  if (p.x().field() != c.field) return false;
  const FieldElement& x = p.x();
  const FieldElement& y = p.y();
  const FieldElement x2 = square(x);
  const FieldElement lhs = square(y) + x * y;
  const FieldElement rhs = x2 * x + c.a * x2 + c.b;
  return lhs == rhs;
}

inline AffinePoint negate(const AffinePoint& p) {
  if (p.is_infinity()) return p;
  return AffinePoint(p.x(), p.x() + p.y());
}

inline AffinePoint affine_double(const AffinePoint& p, const CurveParams& c) {
  if (p.is_infinity() || p.x().is_zero()) return AffinePoint::infinity();
  const FieldElement& x1 = p.x();
  const FieldElement lambda = x1 + divide(p.y(), x1);
  const FieldElement x3 = square(lambda) + lambda + c.a;
  const FieldElement y3 = square(x1) + (lambda + FieldElement::one(c.field)) * x3;
  return AffinePoint(x3, y3);
}

inline AffinePoint affine_add(const AffinePoint& p, const AffinePoint& q, const CurveParams& c) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  if (p.x() == q.x()) {
    if (p.y() == q.y()) return affine_double(p, c);
    return AffinePoint::infinity();  // q == -p
  }
  const FieldElement dx = p.x() + q.x();
  const FieldElement lambda = divide(p.y() + q.y(), dx);
  const FieldElement x3 = square(lambda) + lambda + dx + c.a;
  const FieldElement y3 = lambda * (p.x() + x3) + x3 + p.y();
  return AffinePoint(x3, y3);
}

/// Left-to-right double-and-add in affine coordinates. Reference for the
/// ladder; not side-channel hardened.
inline AffinePoint kp_double_and_add(const BigUint& k, const AffinePoint& p, const CurveParams& c) {
  AffinePoint r = AffinePoint::infinity();
  for (std::size_t i = bit_length(k); i-- > 0;) {
    r = affine_double(r, c);
    if (test_bit(k, i)) r = affine_add(r, p, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Montgomery ladder

struct LadderState {
  FieldElement X1, Z1, X2, Z2, T;
  std::size_t i;  // bit index processed last (for the initial state: msb)
};

enum class OperandRole { None, CurveB, BaseX };

inline const char* to_string(OperandRole r) {
  switch (r) {
    case OperandRole::None: return "none";
    case OperandRole::CurveB: return "b-operand";
    case OperandRole::BaseX: return "x-operand";
  }
  return "none";
}

inline constexpr std::size_t kMultsPerIteration = 6;
inline constexpr std::size_t kSquaringsPerIteration = 5;
inline constexpr std::size_t kCyclesPerMultiplication = 9;
inline constexpr std::size_t kCyclesPerSlot = kMultsPerIteration * kCyclesPerMultiplication;

// Slot positions (1-based) of the multiplications with fixed operands.
inline constexpr std::size_t kCurveBPosition = 3;
inline constexpr std::size_t kBaseXPosition = 5;

/// Cycle within the 54-cycle slot at which each squaring result is latched.
/// Order: Zd^2, Zd^4, Xd^2, Xd^4 (ready before M3 and M6), then
/// (M1 + M2)^2 right after M2 completes. The squarer runs in parallel with
/// the multiplier and costs no multiplier cycles.
inline constexpr std::array<std::size_t, kSquaringsPerIteration> kSquaringCycles{0, 1, 2, 3, 18};

struct MultiplicationRecord {
  std::size_t position;  // 1..6 within the slot
  FieldElement left;
  FieldElement right;
  OperandRole role;
};

struct SquaringRecord {
  std::size_t cycle;  // within the slot
  FieldElement output;
};

struct LadderIteration {
  std::size_t bit_index;
  bool bit;
  std::vector<MultiplicationRecord> mults;   // kMultsPerIteration, slot order
  std::vector<SquaringRecord> squarings;     // kSquaringsPerIteration
  LadderState after;
};

struct LadderTranscript {
  FieldId field = FieldId::B233;
  std::optional<LadderState> initial;
  std::vector<LadderIteration> iterations;
};

struct LadderResult {
  AffinePoint point;
  LadderTranscript transcript;
};

namespace detail {

// One loop body of the ladder. (xa, za) is the pair receiving the
// differential addition, (xd, zd) the pair being doubled; for k_i = 1 these
// are (X1, Z1) and (X2, Z2), for k_i = 0 the roles swap.
inline void ladder_step(FieldElement& xa, FieldElement& za, FieldElement& xd, FieldElement& zd, FieldElement& t,
                        const FieldElement& x, const FieldElement& b, LadderIteration& rec) {
  rec.mults.clear();
  rec.squarings.clear();
  const auto mul = [&](std::size_t pos, const FieldElement& l, const FieldElement& r, OperandRole role) {
    rec.mults.push_back(MultiplicationRecord{pos, l, r, role});
    return l * r;
  };
  const auto sqr = [&](std::size_t idx, const FieldElement& v) {
    FieldElement out = square(v);
    rec.squarings.push_back(SquaringRecord{kSquaringCycles[idx], out});
    return out;
  };

  t = za;
  const FieldElement zd2 = sqr(0, zd);
  const FieldElement zd4 = sqr(1, zd2);
  const FieldElement xd2 = sqr(2, xd);
  const FieldElement xd4 = sqr(3, xd2);
  const FieldElement m1 = mul(1, xa, zd, OperandRole::None);
  const FieldElement m2 = mul(2, xd, t, OperandRole::None);
  const FieldElement m3 = mul(3, b, zd4, OperandRole::CurveB);
  const FieldElement za_new = sqr(4, m1 + m2);
  const FieldElement m4 = mul(4, m1, m2, OperandRole::None);
  const FieldElement m5 = mul(5, x, za_new, OperandRole::BaseX);
  const FieldElement m6 = mul(6, xd2, zd2, OperandRole::None);

  za = za_new;
  xa = m5 + m4;
  t = xd;
  xd = xd4 + m3;
  zd = m6;
}

}  // namespace detail

/// kP by the Montgomery ladder. The loop runs from the bit below the most
/// significant set bit of k down to bit 0. k == 0 yields Infinity with an
/// empty transcript; k a multiple of ord(P) yields Infinity. Throws
/// DegenerateLadder when Z2 == 0 at the end (kP == -P), since y recovery is
/// undefined there.
inline LadderResult montgomery_kp(const BigUint& k, const AffinePoint& p, const CurveParams& c) {
  LadderResult res{AffinePoint::infinity(), LadderTranscript{c.field, std::nullopt, {}}};
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative scalar");
  if (p.is_infinity()) throw Error(ErrorKind::InvalidArgument, "ladder input must be a finite point");
  if (!is_on_curve(p, c)) throw Error(ErrorKind::InvalidArgument, "ladder input is not on the curve");
  if (k == 0) return res;
  const FieldElement& x = p.x();
  const FieldElement& y = p.y();
  if (x.is_zero()) throw Error(ErrorKind::DegenerateLadder, "input point has x = 0");

  const std::size_t msb = bit_length(k) - 1;
  FieldElement X1 = x;
  FieldElement Z1 = FieldElement::one(c.field);
  FieldElement Z2 = square(x);
  FieldElement X2 = square(Z2) + c.b;
  FieldElement T = FieldElement::zero(c.field);
  res.transcript.initial = LadderState{X1, Z1, X2, Z2, T, msb};
  res.transcript.iterations.reserve(msb);

  for (std::size_t i = msb; i-- > 0;) {
    LadderIteration it{i, test_bit(k, i), {}, {}, LadderState{X1, Z1, X2, Z2, T, i}};
    if (it.bit) {
      detail::ladder_step(X1, Z1, X2, Z2, T, x, c.b, it);
    } else {
      detail::ladder_step(X2, Z2, X1, Z1, T, x, c.b, it);
    }
    it.after = LadderState{X1, Z1, X2, Z2, T, i};
    res.transcript.iterations.push_back(std::move(it));
  }

  if (Z1.is_zero()) return res;
  const FieldElement xl = divide(X1, Z1);
  if (Z2.is_zero()) throw Error(ErrorKind::DegenerateLadder, "Z2 = 0 in y recovery (kP = -P)");
  const FieldElement num = (X1 + x * Z1) * (X2 + x * Z2) + (square(x) + y) * (Z1 * Z2);
  const FieldElement yl = y + (x + xl) * divide(num, x * Z1 * Z2);
  res.point = AffinePoint(xl, yl);
  return res;
}

namespace detail {

// Z2 = 0 at the end of the ladder means (k+1)P = O, so kP = -P.
inline AffinePoint ladder_point(const BigUint& k, const AffinePoint& p, const CurveParams& c) {
  if (k == 0) return AffinePoint::infinity();
  try {
    return montgomery_kp(k, p, c).point;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateLadder || p.x().is_zero()) throw;
    return negate(p);
  }
}

}  // namespace detail

/// u1*G + u2*Pub as two ladders and one affine addition.
inline AffinePoint multi_scalar(const BigUint& u1, const BigUint& u2, const AffinePoint& pub, const CurveParams& c) {
  return affine_add(detail::ladder_point(u1, c.G, c), detail::ladder_point(u2, pub, c), c);
}

/// k + j*order for the smallest j >= 0 giving exactly l bits, so the ladder
/// runs l-1 iterations while computing the same multiple of any point of
/// that order. Throws InvalidArgument if no such j exists or k >= 2^l.
inline BigUint pad_to_full_length(const BigUint& k, const CurveParams& c) {
  const std::size_t l = field_degree(c.field);
  if (k < 0 || bit_length(k) > l) throw Error(ErrorKind::InvalidArgument, "scalar longer than the field degree");
  BigUint padded = k;
  while (bit_length(padded) < l) padded += c.order;
  if (bit_length(padded) != l) throw Error(ErrorKind::InvalidArgument, "scalar cannot be padded to full length");
  return padded;
}

// ---------------------------------------------------------------------------
// Domain parameters

/// Parses "key = value" lines (field, a, b, Gx, Gy, order, cofactor; hex
/// except field and cofactor). '#' starts a comment.
inline CurveParams parse_curve_params(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidCurve, "malformed parameter line '" + line + "'");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  const auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorKind::InvalidCurve, "missing curve parameter '" + key + "'");
    return it->second;
  };
  const auto field = parse_field_id(get("field"));
  if (!field) throw Error(ErrorKind::InvalidCurve, "unknown field '" + get("field") + "'");
  const FieldId f = *field;
  return CurveParams{f,
                     FieldElement::from_hex(f, get("a")),
                     FieldElement::from_hex(f, get("b")),
                     AffinePoint(FieldElement::from_hex(f, get("Gx")), FieldElement::from_hex(f, get("Gy"))),
                     biguint_from_hex(get("order")),
                     static_cast<unsigned>(std::stoul(get("cofactor")))};
}

/// Throws InvalidCurve unless G is on the curve, the order is odd and
/// order*G is the point at infinity.
inline void validate_curve(const CurveParams& c) {
  if (!is_on_curve(c.G, c)) throw Error(ErrorKind::InvalidCurve, "base point not on curve " + to_string(c.field));
  if (c.order <= 1 || (c.order & 1) == 0) throw Error(ErrorKind::InvalidCurve, "order must be odd and > 1");
  if (!montgomery_kp(c.order, c.G, c).point.is_infinity()) {
    throw Error(ErrorKind::InvalidCurve, "order*G is not the point at infinity");
  }
}

inline CurveParams load_curve_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open curve parameter file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  CurveParams c = parse_curve_params(ss.str());
  validate_curve(c);
  return c;
}

}  // namespace flexecc

#endif  // FLEXECC_CURVE_HPP
