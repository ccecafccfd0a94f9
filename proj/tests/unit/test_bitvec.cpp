#include <catch_amalgamated.hpp>

#include <random>

#include "flexecc/bitvec.hpp"

using flexecc::BitVector;
using flexecc::Error;
using flexecc::ErrorKind;

TEST_CASE("bit access and degree") {
  BitVector<130> v;
  CHECK(v.is_zero());
  CHECK(v.degree() == -1);
  v.set_bit(129);
  v.set_bit(3);
  CHECK(v.bit(129));
  CHECK(v.bit(3));
  CHECK_FALSE(v.bit(4));
  CHECK(v.degree() == 129);
  CHECK(v.popcount() == 2);
  v.set_bit(129, false);
  CHECK(v.degree() == 3);
}

TEST_CASE("hex roundtrip is fixed width, most significant nibble first") {
  const auto v = BitVector<71>::from_hex("0x7f0000000000000001", 71);
  CHECK(v.bit(0));
  CHECK(v.bit(70));
  CHECK(v.to_hex(71) == "7f0000000000000001");
  CHECK(BitVector<71>::from_hex(v.to_hex(71), 71) == v);
  CHECK(BitVector<8>::from_hex("a", 8).to_hex(8) == "0a");
}

TEST_CASE("hex parsing errors") {
  CHECK_THROWS_AS(BitVector<16>::from_hex("", 16), Error);
  CHECK_THROWS_AS(BitVector<16>::from_hex("12g4", 16), Error);
  try {
    (void)BitVector<8>::from_hex("1ff", 8);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
  }
}

TEST_CASE("from_words rejects bits above the width") {
  std::array<flexecc::word_t, 2> w{0, 1ULL << 8};
  CHECK_THROWS_AS(BitVector<72>::from_words(w), Error);
  w[1] = 1ULL << 7;
  CHECK(BitVector<72>::from_words(w).bit(71));
}

TEST_CASE("xor_shifted places a value at any offset") {
  BitVector<200> acc;
  const auto x = BitVector<71>::from_hex("5", 71);
  acc.xor_shifted(x, 130);
  CHECK(acc.bit(130));
  CHECK(acc.bit(132));
  CHECK(acc.popcount() == 2);
  acc.xor_shifted(x, 130);
  CHECK(acc.is_zero());
  CHECK_THROWS_AS(acc.xor_shifted(BitVector<71>::one(), 200), Error);
}

TEST_CASE("slice extracts a window") {
  BitVector<200> v;
  v.set_bit(71);
  v.set_bit(141);
  const auto s = v.template slice<71>(71);
  CHECK(s.bit(0));
  CHECK(s.bit(70));
  CHECK(s.popcount() == 2);
}

TEST_CASE("hamming weight and distance") {
  BitVector<283> zero;
  CHECK(flexecc::hamming_weight(zero) == 0);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    std::array<flexecc::word_t, 5> a{};
    std::array<flexecc::word_t, 5> b{};
    for (auto& w : a) w = rng();
    for (auto& w : b) w = rng();
    a[4] &= (1ULL << 27) - 1;
    b[4] &= (1ULL << 27) - 1;
    const auto u = BitVector<283>::from_words(a);
    const auto v = BitVector<283>::from_words(b);
    CHECK(flexecc::hamming_distance(u, u) == 0);
    CHECK(flexecc::hamming_distance(u, v) == flexecc::hamming_weight(u ^ v));
  }
}

TEST_CASE("hamming distance over spans of different length fails") {
  const std::array<flexecc::word_t, 2> a{1, 2};
  const std::array<flexecc::word_t, 3> b{1, 2, 3};
  try {
    (void)flexecc::hamming_distance(std::span<const flexecc::word_t>(a), std::span<const flexecc::word_t>(b));
    FAIL("expected length mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }
}
