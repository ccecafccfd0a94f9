#include <catch_amalgamated.hpp>

#include <random>

#include "flexecc/karatsuba.hpp"
#include "oracles.hpp"

using namespace flexecc;

namespace {

const FieldId kFields[] = {FieldId::B233, FieldId::B283};

BigUint seg_int(const BigUint& v, std::size_t i) {
  const BigUint mask = (BigUint(1) << kSegmentBits) - 1;
  return (v >> (i * kSegmentBits)) & mask;
}

BigUint combine_int(const BigUint& v, std::uint8_t m) {
  BigUint out = 0;
  for (std::size_t i = 0; i < kSegmentCount; ++i) {
    if ((m >> i) & 1U) out ^= seg_int(v, i);
  }
  return out;
}

// Reduced fold of plan steps 0..last, evaluated on integers.
BigUint prefix_oracle(const PartialProductPlan& plan, const FieldElement& a, const FieldElement& b, std::size_t last) {
  const BigUint ai = oracle::as_int(a);
  const BigUint bi = oracle::as_int(b);
  BigUint acc = 0;
  for (std::size_t c = 0; c <= last; ++c) {
    const PlanStep& s = plan.steps[c];
    const BigUint pp = oracle::clmul(combine_int(ai, s.left), combine_int(bi, s.right));
    for (std::size_t k = 0; k <= kMaxFoldSlot; ++k) {
      if ((s.fold_slots >> k) & 1U) acc ^= pp << (k * kSegmentBits);
    }
  }
  return oracle::poly_mod(acc, a.field());
}

Segment random_segment(std::mt19937_64& rng) {
  std::array<word_t, Segment::kWords> w{rng(), rng() & ((1ULL << 7) - 1)};
  return Segment::from_words(w);
}

BigUint to_int(const Segment& s) { return BigUint("0x" + s.to_hex(kSegmentBits)); }
BigUint to_int(const PartialProduct& p) { return BigUint("0x" + p.to_hex(kPartialProductBits)); }

}  // namespace

TEST_CASE("segmentation") {
  for (FieldId f : kFields) {
    const SegmentedOperand z = segment(FieldElement::zero(f));
    for (const Segment& s : z.segments) CHECK(s.is_zero());
    const SegmentedOperand one = segment(FieldElement::one(f));
    CHECK(one.segments[0] == Segment::one());
    CHECK(one.segments[1].is_zero());
    CHECK(one.segments[2].is_zero());
    CHECK(one.segments[3].is_zero());
  }
  std::mt19937_64 rng(11);
  for (FieldId f : kFields) {
    for (int i = 0; i < 1000; ++i) {
      const FieldElement a = random_element(f, rng);
      const SegmentedOperand s = segment(a);
      CHECK(reassemble(s) == a);
      for (std::size_t j = 0; j < kSegmentCount; ++j) CHECK(to_int(s.segments[j]) == seg_int(oracle::as_int(a), j));
    }
  }
}

TEST_CASE("segment width covers both fields") {
  CHECK(kSegmentBits == 71);
  CHECK(kSegmentBits * kSegmentCount >= field_degree(FieldId::B283));
  CHECK(kPartialProductBits == 2 * kSegmentBits - 1);
}

TEST_CASE("default plan shape") {
  const PartialProductPlan p = default_plan();
  CHECK(p.steps.size() == 9);
  for (const PlanStep& s : p.steps) {
    CHECK(s.left != 0);
    CHECK(s.right != 0);
    CHECK(s.fold_slots != 0);
  }
  CHECK_NOTHROW(validate_plan(p));
  CHECK(plan_is_exact(p));
}

TEST_CASE("plan text roundtrip") {
  const PartialProductPlan p = default_plan();
  const std::string text = to_text(p);
  CHECK(text.find("cycle 0: L={0} R={0} fold={0,71,142,213}") != std::string::npos);
  CHECK(text.find("cycle 8: L={0,1,2,3} R={0,1,2,3} fold={213}") != std::string::npos);
  CHECK(parse_plan(text) == p);
  CHECK(parse_plan("# comment\n\n" + text) == p);
}

TEST_CASE("plan parsing errors") {
  std::string text = to_text(default_plan());
  CHECK_THROWS_AS(parse_plan("cycle 0: nonsense"), Error);
  const auto first_nl = text.find('\n');
  CHECK_THROWS_AS(parse_plan(text.substr(first_nl + 1)), Error);
  CHECK_THROWS_AS(parse_plan(text + "cycle 3: L={2} R={2} fold={142}\n"), Error);
  std::string bad_fold = text;
  bad_fold.replace(bad_fold.find("fold={0,71,142,213}"), 19, "fold={0,70}");
  CHECK_THROWS_AS(parse_plan(bad_fold), Error);
  std::string empty_set = text;
  empty_set.replace(empty_set.find("L={0} R={0}"), 11, "L={} R={0}");
  CHECK_THROWS_AS(parse_plan(empty_set), Error);
}

TEST_CASE("exactness check catches a broken plan") {
  PartialProductPlan p = default_plan();
  p.steps[2].fold_slots = detail::mask_of({1});
  CHECK_NOTHROW(validate_plan(p));
  CHECK_FALSE(plan_is_exact(p));
}

TEST_CASE("71-bit partial products") {
  std::mt19937_64 rng(12);
  const Segment zero;
  for (int i = 0; i < 10000; ++i) {
    const Segment x = random_segment(rng);
    const Segment y = random_segment(rng);
    if (i == 0) {
      CHECK(partial_mul_71(x, zero).is_zero());
      CHECK(partial_mul_71(Segment::one(), y) == y.resized<kPartialProductBits>());
    }
    const PartialProduct p = partial_mul_71(x, y);
    REQUIRE(to_int(p) == oracle::clmul(to_int(x), to_int(y)));
  }
}

TEST_CASE("karatsuba equals classical multiplication") {
  std::mt19937_64 rng(13);
  for (FieldId f : kFields) {
    for (int i = 0; i < 2000; ++i) {
      const FieldElement a = random_element(f, rng);
      const FieldElement b = random_element(f, rng);
      const KaratsubaResult r = mul_karatsuba(a, b);
      REQUIRE(r.product == mul_classical(a, b));
      REQUIRE(r.cycles.size() == 9);
    }
    const FieldElement a = random_element(f, rng);
    const KaratsubaResult r1 = mul_karatsuba(a, FieldElement::one(f));
    CHECK(r1.product == a);
    CHECK(r1.cycles.size() == 9);
  }
  CHECK_THROWS_AS(mul_karatsuba(FieldElement::one(FieldId::B233), FieldElement::one(FieldId::B283)), Error);
}

TEST_CASE("cycle states: prefix property and determinism") {
  std::mt19937_64 rng(14);
  const PartialProductPlan plan = default_plan();
  for (FieldId f : kFields) {
    for (int i = 0; i < 100; ++i) {
      const FieldElement a = random_element(f, rng);
      const FieldElement b = random_element(f, rng);
      const KaratsubaResult r = mul_karatsuba(a, b, plan);
      for (std::size_t c = 0; c < kPlanSteps; ++c) {
        const MultCycleState& s = r.cycles[c];
        CHECK(s.cycle_index == c);
        CHECK(s.accumulator.bits().degree() < static_cast<int>(field_degree(f)));
        CHECK(oracle::as_int(s.accumulator) == prefix_oracle(plan, a, b, c));
        CHECK(s.partial_product == partial_mul_71(s.partial_left, s.partial_right));
      }
      CHECK(r.cycles.back().accumulator == r.product);
      const KaratsubaResult again = mul_karatsuba(a, b, plan);
      for (std::size_t c = 0; c < kPlanSteps; ++c) {
        CHECK(again.cycles[c].partial_product == r.cycles[c].partial_product);
        CHECK(again.cycles[c].accumulator == r.cycles[c].accumulator);
      }
    }
  }
}

TEST_CASE("zero operands leave the register untouched") {
  for (FieldId f : kFields) {
    const KaratsubaResult r = mul_karatsuba(FieldElement::zero(f), FieldElement::zero(f));
    for (const MultCycleState& s : r.cycles) {
      CHECK(s.partial_product.is_zero());
      CHECK(s.accumulator.is_zero());
    }
  }
}
