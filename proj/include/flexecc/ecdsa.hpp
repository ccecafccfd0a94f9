#ifndef FLEXECC_ECDSA_HPP
#define FLEXECC_ECDSA_HPP

// ECDSA over the binary curves. Digests are supplied by the caller, already
// reduced modulo the group order; no hashing happens here.

#include <string>
#include <utility>

#include "flexecc/bigint.hpp"
#include "flexecc/curve.hpp"
#include "flexecc/error.hpp"

namespace flexecc {

/// Integer modulo the group order of a curve.
class Scalar {
 public:
  /// InvalidArgument unless 0 <= value < modulus.
  Scalar(BigUint value, BigUint modulus) : value_(std::move(value)), modulus_(std::move(modulus)) {
    if (modulus_ <= 1) throw Error(ErrorKind::InvalidArgument, "scalar modulus must exceed 1");
    if (value_ < 0 || value_ >= modulus_) throw Error(ErrorKind::InvalidArgument, "scalar out of range [0, modulus)");
  }

  static Scalar reduced(const BigUint& value, const BigUint& modulus) {
    BigUint v = value % modulus;
    if (v < 0) v += modulus;
    return Scalar(std::move(v), modulus);
  }

  const BigUint& value() const { return value_; }
  const BigUint& modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  BigUint value_;
  BigUint modulus_;
};

namespace detail {

inline void require_same_modulus(const Scalar& x, const Scalar& y) {
  if (x.modulus() != y.modulus()) throw Error(ErrorKind::FieldMismatch, "scalars modulo different orders");
}

}  // namespace detail

inline Scalar add(const Scalar& x, const Scalar& y) {
  detail::require_same_modulus(x, y);
  return Scalar::reduced(x.value() + y.value(), x.modulus());
}

inline Scalar sub(const Scalar& x, const Scalar& y) {
  detail::require_same_modulus(x, y);
  return Scalar::reduced(x.value() - y.value() + x.modulus(), x.modulus());
}

inline Scalar mul(const Scalar& x, const Scalar& y) {
  detail::require_same_modulus(x, y);
  return Scalar::reduced(x.value() * y.value(), x.modulus());
}

/// Extended Euclid. DivisionByZero for 0 (or any non-unit).
inline Scalar inv(const Scalar& x) {
  if (x.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero scalar");
  BigUint r0 = x.modulus();
  BigUint r1 = x.value();
  BigUint t0 = 0;
  BigUint t1 = 1;
  while (r1 != 0) {
    const BigUint q = r0 / r1;
    BigUint r2 = r0 - q * r1;
    BigUint t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0 != 1) throw Error(ErrorKind::DivisionByZero, "scalar has no inverse");
  return Scalar::reduced(t0, x.modulus());
}

inline Scalar operator+(const Scalar& x, const Scalar& y) { return add(x, y); }
inline Scalar operator-(const Scalar& x, const Scalar& y) { return sub(x, y); }
inline Scalar operator*(const Scalar& x, const Scalar& y) { return mul(x, y); }

struct KeyPair {
  Scalar key;
  AffinePoint pub;
};

struct Signature {
  Scalar r;
  Scalar s;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// The ephemeral scalar of a signature. Only laboratory code should keep it.
struct EphemeralDisclosure {
  Scalar k;
};

struct SignResult {
  Signature signature;
  EphemeralDisclosure disclosure;
};

/// Uniform nonzero scalar by rejection sampling.
template <class Rng>
Scalar random_nonzero_scalar(const CurveParams& c, Rng& rng) {
  for (;;) {
    BigUint v = random_below(c.order, rng);
    if (v != 0) return Scalar(std::move(v), c.order);
  }
}

/// Digest integer reduced modulo the order.
inline Scalar digest_scalar(const BigUint& digest, const CurveParams& c) { return Scalar::reduced(digest, c.order); }

template <class Rng>
KeyPair keygen(Rng& rng, const CurveParams& c) {
  Scalar key = random_nonzero_scalar(c, rng);
  AffinePoint pub = montgomery_kp(key.value(), c.G, c).point;
  return KeyPair{std::move(key), std::move(pub)};
}

/// r = x(kG) mod order with x read as an integer; s = (e + r*key)/k. A fresh
/// k is drawn whenever r or s comes out zero.
template <class Rng>
SignResult sign(const Scalar& e, const Scalar& key, Rng& rng, const CurveParams& c) {
  if (e.modulus() != c.order || key.modulus() != c.order) {
    throw Error(ErrorKind::InvalidArgument, "digest and key must be reduced modulo the curve order");
  }
  if (key.is_zero()) throw Error(ErrorKind::InvalidArgument, "private key must be nonzero");
  for (;;) {
    Scalar k = random_nonzero_scalar(c, rng);
    const AffinePoint t = montgomery_kp(k.value(), c.G, c).point;
    if (t.is_infinity()) continue;
    Scalar r = Scalar::reduced(to_biguint(t.x().bits()), c.order);
    if (r.is_zero()) continue;
    Scalar s = (e + r * key) * inv(k);
    if (s.is_zero()) continue;
    return SignResult{Signature{std::move(r), std::move(s)}, EphemeralDisclosure{std::move(k)}};
  }
}

/// Accepts iff r, s in [1, order-1], Pub is a finite curve point and
/// x(u1 G + u2 Pub) mod order == r with u1 = e/s, u2 = r/s.
inline bool verify(const Scalar& e, const Signature& sig, const AffinePoint& pub, const CurveParams& c) {
  if (sig.r.modulus() != c.order || sig.s.modulus() != c.order || e.modulus() != c.order) return false;
  if (sig.r.is_zero() || sig.s.is_zero()) return false;
  if (pub.is_infinity() || !is_on_curve(pub, c)) return false;
  const Scalar w = inv(sig.s);
  const Scalar u1 = e * w;
  const Scalar u2 = sig.r * w;
  const AffinePoint t = multi_scalar(u1.value(), u2.value(), pub, c);
  if (t.is_infinity()) return false;
  return Scalar::reduced(to_biguint(t.x().bits()), c.order) == sig.r;
}

/// (s*k - e)/r: the signer's key whenever k is the signature's true nonce.
inline Scalar recover_private_key(const Signature& sig, const Scalar& e, const Scalar& k) {
  if (sig.r.is_zero()) throw Error(ErrorKind::DivisionByZero, "signature has r = 0");
  return (sig.s * k - e) * inv(sig.r);
}

}  // namespace flexecc

#endif  // FLEXECC_ECDSA_HPP
