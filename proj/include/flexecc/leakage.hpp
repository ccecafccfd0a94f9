#ifndef FLEXECC_LEAKAGE_HPP
#define FLEXECC_LEAKAGE_HPP

// Synthetic power traces from the multiplier cycle model. Each clock cycle
// gets a noiseless level
//
//   alpha * HD(register before, register after)
// + beta  * HW(partial product)
// + gamma * HD(squarer output before, after)   (cycles with a squaring only)
//
// spread over N samples by a fixed template, plus Gaussian noise. This is a
// declared model, not a characterisation of any physical device.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flexecc/curve.hpp"
#include "flexecc/error.hpp"
#include "flexecc/gf2m.hpp"
#include "flexecc/karatsuba.hpp"

namespace flexecc {

inline constexpr std::size_t kDefaultSamplesPerCycle = 625;

/// Single raised-cosine peak with unit mean.
inline std::vector<double> raised_cosine_shape(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "samples per cycle must be positive");
  if (n == 1) return {1.0};
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = 1.0 - std::cos(2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
  }
  return w;
}

struct LeakageModel {
  double alpha = 1.0;
  double beta = 0.25;
  double gamma = 0.5;
  double sigma = 0.0;
  std::size_t samples_per_cycle = kDefaultSamplesPerCycle;
  std::vector<double> shape = raised_cosine_shape(kDefaultSamplesPerCycle);

  /// Default weights with a raised-cosine template of n samples.
  static LeakageModel with_samples_per_cycle(std::size_t n) {
    LeakageModel m;
    m.samples_per_cycle = n;
    m.shape = raised_cosine_shape(n);
    return m;
  }

  friend bool operator==(const LeakageModel&, const LeakageModel&) = default;
};

inline void validate_model(const LeakageModel& m) {
  if (m.samples_per_cycle == 0) throw Error(ErrorKind::InvalidArgument, "samples per cycle must be positive");
  if (m.shape.size() != m.samples_per_cycle) {
    throw Error(ErrorKind::InvalidArgument, "shape needs exactly " + std::to_string(m.samples_per_cycle) + " weights");
  }
  if (std::any_of(m.shape.begin(), m.shape.end(), [](double w) { return !(w >= 0.0) || !std::isfinite(w); })) {
    throw Error(ErrorKind::InvalidArgument, "shape weights must be finite and nonnegative");
  }
  if (m.alpha == 0.0 && m.beta == 0.0 && m.gamma == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "at least one of alpha, beta, gamma must be nonzero");
  }
  if (!(m.sigma >= 0.0) || !std::isfinite(m.sigma)) throw Error(ErrorKind::InvalidArgument, "sigma must be >= 0");
  for (double v : {m.alpha, m.beta, m.gamma}) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "model weights must be finite");
  }
}

enum class AnnotationKind { Slot, Multiplication };

inline const char* to_string(AnnotationKind k) { return k == AnnotationKind::Slot ? "slot" : "mult"; }

/// Ground-truth label for a cycle range. Ranges of the same kind never
/// overlap; a slot annotation and the multiplications inside it do.
struct Annotation {
  AnnotationKind kind = AnnotationKind::Multiplication;
  std::size_t first_cycle = 0;
  std::size_t cycle_count = 0;
  std::string label;
  std::optional<std::size_t> slot;
  std::optional<std::size_t> position;  // 1..6 within a slot
  std::vector<std::string> tags;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct TraceMetadata {
  std::string kind;  // "kp", "mult", "planted", "external", ...
  std::optional<FieldId> field;
  std::optional<LeakageModel> model;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> config;

  friend bool operator==(const TraceMetadata&, const TraceMetadata&) = default;
};

struct Trace {
  std::size_t samples_per_cycle = kDefaultSamplesPerCycle;
  std::vector<double> samples;
  std::vector<Annotation> annotations;
  TraceMetadata metadata;

  std::size_t num_cycles() const { return samples_per_cycle == 0 ? 0 : samples.size() / samples_per_cycle; }

  std::span<const double> cycle(std::size_t c) const {
    return std::span<const double>(samples).subspan(c * samples_per_cycle, samples_per_cycle);
  }

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Throws TraceMetadata when the sample count is not a whole number of
/// cycles, or when annotations fall outside the trace or overlap within a kind.
inline void validate_trace(const Trace& t) {
  if (t.samples_per_cycle == 0) throw Error(ErrorKind::TraceMetadata, "samples per cycle must be positive");
  if (t.samples.size() % t.samples_per_cycle != 0) {
    throw Error(ErrorKind::TraceMetadata, "sample count is not a multiple of samples per cycle");
  }
  const std::size_t n = t.num_cycles();
  for (AnnotationKind kind : {AnnotationKind::Slot, AnnotationKind::Multiplication}) {
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (const Annotation& a : t.annotations) {
      if (a.kind != kind) continue;
      if (a.cycle_count == 0 || a.first_cycle > n || a.cycle_count > n - a.first_cycle) {
        throw Error(ErrorKind::TraceMetadata, "annotation '" + a.label + "' at cycle " + std::to_string(a.first_cycle) +
                                                  " is out of bounds");
      }
      ranges.emplace_back(a.first_cycle, a.first_cycle + a.cycle_count);
    }
    std::sort(ranges.begin(), ranges.end());
    for (std::size_t i = 1; i < ranges.size(); ++i) {
      if (ranges[i].first < ranges[i - 1].second) {
        throw Error(ErrorKind::TraceMetadata,
                    std::string(to_string(kind)) + " annotations overlap at cycle " + std::to_string(ranges[i].first));
      }
    }
  }
}

namespace detail {

struct MultLevels {
  FieldElement product;
  std::array<double, kPlanSteps> levels;
};

// Noiseless per-cycle levels of one multiplication; the register starts at zero.
inline MultLevels mult_levels(const FieldElement& a, const FieldElement& b, const LeakageModel& m,
                              const PartialProductPlan& plan) {
  const KaratsubaResult r = mul_karatsuba(a, b, plan);
  MultLevels out{r.product, {}};
  ElementBits prev;
  for (std::size_t c = 0; c < kPlanSteps; ++c) {
    const MultCycleState& s = r.cycles[c];
    out.levels[c] = m.alpha * static_cast<double>(hamming_distance(prev, s.accumulator.bits())) +
                    m.beta * static_cast<double>(hamming_weight(s.partial_product));
    prev = s.accumulator.bits();
  }
  return out;
}

}  // namespace detail

/// Expands per-cycle levels into samples: level * shape[j] + N(0, sigma).
/// The generator is untouched when sigma is zero.
template <class Rng>
std::vector<double> render_samples(std::span<const double> levels, const LeakageModel& m, Rng& rng) {
  validate_model(m);
  const std::size_t n = m.samples_per_cycle;
  std::vector<double> samples(levels.size() * n);
  for (std::size_t c = 0; c < levels.size(); ++c) {
    for (std::size_t j = 0; j < n; ++j) samples[c * n + j] = levels[c] * m.shape[j];
  }
  if (m.sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, m.sigma);
    for (double& v : samples) v += noise(rng);
  }
  return samples;
}

/// Noiseless cycle levels of the ladder main loop: six multiplications of
/// nine cycles per iteration, squarer activity at the scheduled cycles.
inline std::vector<double> ladder_cycle_levels(const LadderTranscript& tr, const LeakageModel& m,
                                               const PartialProductPlan& plan) {
  std::vector<double> levels(tr.iterations.size() * kCyclesPerSlot, 0.0);
  ElementBits squarer;
  for (std::size_t s = 0; s < tr.iterations.size(); ++s) {
    const LadderIteration& it = tr.iterations[s];
    if (it.mults.size() != kMultsPerIteration) {
      throw Error(ErrorKind::InvalidArgument, "transcript iteration without six multiplications");
    }
    const std::size_t base = s * kCyclesPerSlot;
    for (const MultiplicationRecord& rec : it.mults) {
      const auto ml = detail::mult_levels(rec.left, rec.right, m, plan);
      const std::size_t off = base + (rec.position - 1) * kCyclesPerMultiplication;
      for (std::size_t c = 0; c < kPlanSteps; ++c) levels[off + c] += ml.levels[c];
    }
    for (const SquaringRecord& sq : it.squarings) {
      levels[base + sq.cycle] += m.gamma * static_cast<double>(hamming_distance(squarer, sq.output.bits()));
      squarer = sq.output.bits();
    }
  }
  return levels;
}

/// One slot annotation per ladder iteration plus one per multiplication,
/// tagged with the operand role of the fixed-operand multiplications.
inline std::vector<Annotation> ladder_annotations(const LadderTranscript& tr) {
  std::vector<Annotation> out;
  out.reserve(tr.iterations.size() * (kMultsPerIteration + 1));
  for (std::size_t s = 0; s < tr.iterations.size(); ++s) {
    const std::size_t base = s * kCyclesPerSlot;
    out.push_back(Annotation{AnnotationKind::Slot, base, kCyclesPerSlot, "slot", s, std::nullopt, {}});
    for (const MultiplicationRecord& rec : tr.iterations[s].mults) {
      Annotation a{AnnotationKind::Multiplication,
                   base + (rec.position - 1) * kCyclesPerMultiplication,
                   kCyclesPerMultiplication,
                   "mult",
                   s,
                   rec.position,
                   {}};
      if (rec.role != OperandRole::None) a.tags.emplace_back(to_string(rec.role));
      out.push_back(std::move(a));
    }
  }
  return out;
}

/// Trace of the main loop driven verbatim by a ladder transcript.
template <class Rng>
Trace simulate_ladder_trace(const LadderTranscript& tr, const LeakageModel& m, Rng& rng,
                            const PartialProductPlan& plan = default_plan()) {
  validate_model(m);
  const std::vector<double> levels = ladder_cycle_levels(tr, m, plan);
  Trace t;
  t.samples_per_cycle = m.samples_per_cycle;
  t.samples = render_samples(levels, m, rng);
  t.annotations = ladder_annotations(tr);
  t.metadata.kind = "kp";
  t.metadata.field = tr.field;
  t.metadata.model = m;
  return t;
}

template <class Rng>
Trace simulate_kp_trace(const BigUint& k, const AffinePoint& p, const CurveParams& c, const LeakageModel& m, Rng& rng,
                        const PartialProductPlan& plan = default_plan()) {
  const LadderResult lr = montgomery_kp(k, p, c);
  return simulate_ladder_trace(lr.transcript, m, rng, plan);
}

/// Back-to-back standalone multiplications, nine cycles each. The
/// multiplier register is cleared before every product.
template <class Rng>
Trace simulate_mult_batch(std::span<const std::pair<FieldElement, FieldElement>> pairs, const LeakageModel& m,
                          Rng& rng, const PartialProductPlan& plan = default_plan()) {
  validate_model(m);
  std::vector<double> levels;
  levels.reserve(pairs.size() * kPlanSteps);
  Trace t;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto ml = detail::mult_levels(pairs[i].first, pairs[i].second, m, plan);
    levels.insert(levels.end(), ml.levels.begin(), ml.levels.end());
    t.annotations.push_back(Annotation{AnnotationKind::Multiplication, i * kPlanSteps, kPlanSteps,
                                       "mult" + std::to_string(i + 1), std::nullopt, std::nullopt, {}});
  }
  t.samples_per_cycle = m.samples_per_cycle;
  t.samples = render_samples(levels, m, rng);
  t.metadata.kind = "mult";
  if (!pairs.empty()) t.metadata.field = pairs.front().first.field();
  t.metadata.model = m;
  return t;
}

template <class Rng>
Trace simulate_mult_trace(const FieldElement& a, const FieldElement& b, const LeakageModel& m, Rng& rng,
                          const PartialProductPlan& plan = default_plan()) {
  const std::pair<FieldElement, FieldElement> pair{a, b};
  return simulate_mult_batch(std::span(&pair, 1), m, rng, plan);
}

/// Synthetic slot-structured trace with a known collision: every window at
/// `target_position` carries one shared 9-cycle profile (scaled by
/// `strength`) plus small jitter, all other windows are independent random
/// levels. Windows at the target position are tagged "planted".
template <class Rng>
Trace synthesize_planted_collision_trace(std::size_t slots, std::size_t target_position, const LeakageModel& m,
                                         Rng& rng, double strength = 10.0) {
  validate_model(m);
  if (target_position < 1 || target_position > kMultsPerIteration) {
    throw Error(ErrorKind::InvalidArgument, "target position must be in 1..6");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, kCyclesPerMultiplication> common{};
  for (double& v : common) v = unit(rng);
  std::vector<double> levels(slots * kCyclesPerSlot);
  Trace t;
  for (std::size_t s = 0; s < slots; ++s) {
    const std::size_t base = s * kCyclesPerSlot;
    t.annotations.push_back(Annotation{AnnotationKind::Slot, base, kCyclesPerSlot, "slot", s, std::nullopt, {}});
    for (std::size_t p = 1; p <= kMultsPerIteration; ++p) {
      const std::size_t off = base + (p - 1) * kCyclesPerMultiplication;
      for (std::size_t c = 0; c < kCyclesPerMultiplication; ++c) {
        levels[off + c] = p == target_position ? 1.0 + strength * common[c] + 0.05 * strength * unit(rng)
                                               : 1.0 + strength * unit(rng);
      }
      Annotation a{AnnotationKind::Multiplication, off, kCyclesPerMultiplication, "mult", s, p, {}};
      if (p == target_position) a.tags.emplace_back("planted");
      t.annotations.push_back(std::move(a));
    }
  }
  t.samples_per_cycle = m.samples_per_cycle;
  t.samples = render_samples(levels, m, rng);
  t.metadata.kind = "planted";
  t.metadata.model = m;
  return t;
}

}  // namespace flexecc

#endif  // FLEXECC_LEAKAGE_HPP
