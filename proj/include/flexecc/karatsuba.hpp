#ifndef FLEXECC_KARATSUBA_HPP
#define FLEXECC_KARATSUBA_HPP

// Cycle model of the 4-segment Karatsuba field multiplier: one 71x71 partial
// product per clock cycle, folded into an l-bit register that is reduced
// every cycle. Nine cycles per field product.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "flexecc/bitvec.hpp"
#include "flexecc/error.hpp"
#include "flexecc/gf2m.hpp"

namespace flexecc {

inline constexpr std::size_t kSegmentBits = 71;
inline constexpr std::size_t kSegmentCount = 4;
inline constexpr std::size_t kPlanSteps = 9;
inline constexpr std::size_t kPartialProductBits = 2 * kSegmentBits - 1;
// Fold positions run over 0..6 segment widths (X^0 .. X^6, X = t^71).
inline constexpr std::size_t kMaxFoldSlot = 2 * (kSegmentCount - 1);

using Segment = BitVector<kSegmentBits>;
using PartialProduct = BitVector<kPartialProductBits>;

/// Operand split into A0 (lowest 71 bits) .. A3, zero-padded above l-1.
struct SegmentedOperand {
  FieldId origin;
  std::array<Segment, kSegmentCount> segments;  // segments[i] == A_i

  friend bool operator==(const SegmentedOperand&, const SegmentedOperand&) = default;
};

inline SegmentedOperand segment(const FieldElement& a) {
  SegmentedOperand s{a.field(), {}};
  for (std::size_t i = 0; i < kSegmentCount; ++i) s.segments[i] = a.bits().slice<kSegmentBits>(i * kSegmentBits);
  return s;
}

inline FieldElement reassemble(const SegmentedOperand& s) {
  BitVector<kSegmentBits * kSegmentCount> wide;
  for (std::size_t i = 0; i < kSegmentCount; ++i) wide.xor_shifted(s.segments[i], i * kSegmentBits);
  return FieldElement::from_bits(s.origin, wide.resized<kMaxFieldBits>());
}

/// One cycle of the plan. Masks are bit sets over segment indices (bit i
/// selects A_i / B_i); fold_slots is a bit set over 0..6 naming the
/// positions j*71 at which the partial product is XORed into the register.
struct PlanStep {
  std::uint8_t left = 0;
  std::uint8_t right = 0;
  std::uint8_t fold_slots = 0;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct PartialProductPlan {
  std::array<PlanStep, kPlanSteps> steps{};

  friend bool operator==(const PartialProductPlan&, const PartialProductPlan&) = default;
};

namespace detail {

constexpr std::uint8_t mask_of(std::initializer_list<unsigned> idx) {
  std::uint8_t m = 0;
  for (unsigned i : idx) m = static_cast<std::uint8_t>(m | (1U << i));
  return m;
}

}  // namespace detail

/// Two-level Karatsuba: with L = A0 + A1 X and H = A2 + A3 X,
/// AB = P_L + (P_L + P_H + P_M) X^2 + P_H X^4, each of P_L, P_H, P_M itself a
/// three-product Karatsuba. The fold slots below are that expansion.
inline PartialProductPlan default_plan() {
  using detail::mask_of;
  const auto step = [](std::uint8_t segs, std::uint8_t folds) { return PlanStep{segs, segs, folds}; };
  PartialProductPlan p;
  p.steps = {
      step(mask_of({0}), mask_of({0, 1, 2, 3})),        // A0 B0
      step(mask_of({1}), mask_of({1, 2, 3, 4})),        // A1 B1
      step(mask_of({0, 1}), mask_of({1, 3})),           // (A0+A1)(B0+B1)
      step(mask_of({2}), mask_of({2, 3, 4, 5})),        // A2 B2
      step(mask_of({3}), mask_of({3, 4, 5, 6})),        // A3 B3
      step(mask_of({2, 3}), mask_of({3, 5})),           // (A2+A3)(B2+B3)
      step(mask_of({0, 2}), mask_of({2, 3})),           // (A0+A2)(B0+B2)
      step(mask_of({1, 3}), mask_of({3, 4})),           // (A1+A3)(B1+B3)
      step(mask_of({0, 1, 2, 3}), mask_of({3})),        // (A0+..+A3)(B0+..+B3)
  };
  return p;
}

/// Structural checks: nonempty subsets of {0..3}, fold slots within 0..6.
inline void validate_plan(const PartialProductPlan& plan) {
  for (std::size_t c = 0; c < kPlanSteps; ++c) {
    const PlanStep& s = plan.steps[c];
    const auto bad = [&](const std::string& why) {
      throw Error(ErrorKind::InvalidArgument, "plan cycle " + std::to_string(c) + ": " + why);
    };
    if (s.left == 0 || s.left >= (1U << kSegmentCount)) bad("left combination must be a nonempty subset of A0..A3");
    if (s.right == 0 || s.right >= (1U << kSegmentCount)) bad("right combination must be a nonempty subset of B0..B3");
    if (s.fold_slots == 0 || s.fold_slots >= (1U << (kMaxFoldSlot + 1))) bad("fold offsets must be in 0..426");
  }
}

/// True when the plan's symbolic expansion equals sum_{i,j} A_i B_j X^{i+j}
/// over GF(2), i.e. the plan computes the product for every operand pair.
inline bool plan_is_exact(const PartialProductPlan& plan) {
  // Parity of the term A_i B_j X^k summed over all steps.
  std::array<std::array<std::array<int, kMaxFoldSlot + 1>, kSegmentCount>, kSegmentCount> parity{};
  for (const PlanStep& s : plan.steps) {
    for (std::size_t i = 0; i < kSegmentCount; ++i) {
      if (!((s.left >> i) & 1U)) continue;
      for (std::size_t j = 0; j < kSegmentCount; ++j) {
        if (!((s.right >> j) & 1U)) continue;
        for (std::size_t k = 0; k <= kMaxFoldSlot; ++k) {
          if ((s.fold_slots >> k) & 1U) parity[i][j][k] ^= 1;
        }
      }
    }
  }
  for (std::size_t i = 0; i < kSegmentCount; ++i) {
    for (std::size_t j = 0; j < kSegmentCount; ++j) {
      for (std::size_t k = 0; k <= kMaxFoldSlot; ++k) {
        if (parity[i][j][k] != (k == i + j ? 1 : 0)) return false;
      }
    }
  }
  return true;
}

/// "cycle i: L={...} R={...} fold={...}" per line; fold offsets in bits.
inline std::string to_text(const PartialProductPlan& plan) {
  const auto list = [](std::uint8_t mask, std::size_t scale) {
    std::string s = "{";
    bool first = true;
    for (unsigned i = 0; i < 8; ++i) {
      if (!((mask >> i) & 1U)) continue;
      if (!first) s += ",";
      s += std::to_string(i * scale);
      first = false;
    }
    return s + "}";
  };
  std::string out;
  for (std::size_t c = 0; c < kPlanSteps; ++c) {
    const PlanStep& s = plan.steps[c];
    out += "cycle " + std::to_string(c) + ": L=" + list(s.left, 1) + " R=" + list(s.right, 1) +
           " fold=" + list(s.fold_slots, kSegmentBits) + "\n";
  }
  return out;
}

/// Inverse of to_text. Blank lines and '#' comments are ignored; every cycle
/// 0..8 must appear exactly once. The result is structurally validated.
inline PartialProductPlan parse_plan(std::string_view text) {
  static const std::regex line_re(R"(^\s*cycle\s+(\d+)\s*:\s*L=\{([\d,\s]*)\}\s*R=\{([\d,\s]*)\}\s*fold=\{([\d,\s]*)\}\s*$)");
  const auto parse_set = [](const std::string& body, std::size_t scale, std::size_t max_index, std::size_t lineno) {
    std::uint8_t mask = 0;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      if (b == std::string::npos) continue;
      const unsigned long v = std::stoul(item.substr(b));
      if (v % scale != 0 || v / scale > max_index) {
        throw Error(ErrorKind::InvalidArgument, "plan line " + std::to_string(lineno) + ": bad entry " + item);
      }
      mask = static_cast<std::uint8_t>(mask | (1U << (v / scale)));
    }
    return mask;
  };

  PartialProductPlan plan;
  std::array<bool, kPlanSteps> seen{};
  std::stringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (!std::regex_match(line, m, line_re)) {
      throw Error(ErrorKind::InvalidArgument, "plan line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
    }
    const unsigned long c = std::stoul(m[1].str());
    if (c >= kPlanSteps || seen[c]) {
      throw Error(ErrorKind::InvalidArgument, "plan line " + std::to_string(lineno) + ": bad or repeated cycle " + m[1].str());
    }
    seen[c] = true;
    plan.steps[c] = PlanStep{parse_set(m[2].str(), 1, kSegmentCount - 1, lineno),
                             parse_set(m[3].str(), 1, kSegmentCount - 1, lineno),
                             parse_set(m[4].str(), kSegmentBits, kMaxFoldSlot, lineno)};
  }
  for (std::size_t c = 0; c < kPlanSteps; ++c) {
    if (!seen[c]) throw Error(ErrorKind::InvalidArgument, "plan is missing cycle " + std::to_string(c));
  }
  validate_plan(plan);
  return plan;
}

/// Schoolbook carry-less product of two 71-bit segments.
inline PartialProduct partial_mul_71(const Segment& x, const Segment& y) {
  std::array<word_t, 2 * Segment::kWords> out{};
  detail::clmul_words(x.words(), y.words(), out);
  return PartialProduct::from_words(out);
}

/// XOR of the segments selected by `mask`.
inline Segment combine(const SegmentedOperand& s, std::uint8_t mask) {
  Segment out;
  for (std::size_t i = 0; i < kSegmentCount; ++i) {
    if ((mask >> i) & 1U) out ^= s.segments[i];
  }
  return out;
}

/// Partial product placed at every fold slot of the step.
inline Polynomial fold(const PartialProduct& pp, std::uint8_t fold_slots) {
  Polynomial out;
  for (std::size_t k = 0; k <= kMaxFoldSlot; ++k) {
    if ((fold_slots >> k) & 1U) out.xor_shifted(pp, k * kSegmentBits);
  }
  return out;
}

struct MultCycleState {
  std::size_t cycle_index;
  Segment partial_left;
  Segment partial_right;
  PartialProduct partial_product;
  FieldElement accumulator;  // reduced register after this cycle
};

struct KaratsubaResult {
  FieldElement product;
  std::vector<MultCycleState> cycles;  // always kPlanSteps entries
};

/// Runs the multiplier for nine cycles. The register starts at zero and
/// after every cycle holds reduce(register ^ fold(partial product)).
inline KaratsubaResult mul_karatsuba(const FieldElement& a, const FieldElement& b, const PartialProductPlan& plan) {
  detail::require_same_field(a, b);
  const FieldId f = a.field();
  const SegmentedOperand sa = segment(a);
  const SegmentedOperand sb = segment(b);
  FieldElement acc = FieldElement::zero(f);
  std::vector<MultCycleState> cycles;
  cycles.reserve(kPlanSteps);
  for (std::size_t c = 0; c < kPlanSteps; ++c) {
    const PlanStep& step = plan.steps[c];
    const Segment left = combine(sa, step.left);
    const Segment right = combine(sb, step.right);
    const PartialProduct pp = partial_mul_71(left, right);
    Polynomial reg = fold(pp, step.fold_slots);
    reg.xor_shifted(acc.bits(), 0);
    acc = detail::reduce_wide(reg, f);
    cycles.push_back(MultCycleState{c, left, right, pp, acc});
  }
  return KaratsubaResult{acc, std::move(cycles)};
}

inline KaratsubaResult mul_karatsuba(const FieldElement& a, const FieldElement& b) {
  static const PartialProductPlan plan = default_plan();
  return mul_karatsuba(a, b, plan);
}

}  // namespace flexecc

#endif  // FLEXECC_KARATSUBA_HPP
