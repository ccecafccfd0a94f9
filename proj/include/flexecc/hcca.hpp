#ifndef FLEXECC_HCCA_HPP
#define FLEXECC_HCCA_HPP

// Horizontal collision correlation analysis on single traces: per-cycle
// compression, slot slicing, averaged multiplication profiles, Pearson
// coefficients per multiplication window, and separation statistics between
// windows that share an operand and windows that do not.
//
// Everything here reads traces only (samples plus annotations), never
// operand values.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "flexecc/curve.hpp"
#include "flexecc/error.hpp"
#include "flexecc/gf2m.hpp"
#include "flexecc/leakage.hpp"

namespace flexecc {

namespace detail {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

struct CompressedTrace {
  std::vector<double> values;  // one per clock cycle
  std::size_t source_samples_per_cycle = 0;
  std::size_t source_cycles = 0;
};

/// Mean of squared samples per clock cycle.
inline CompressedTrace compress(const Trace& t) {
  if (t.samples.empty()) throw Error(ErrorKind::InvalidArgument, "cannot compress an empty trace");
  if (t.samples_per_cycle == 0 || t.samples.size() % t.samples_per_cycle != 0) {
    throw Error(ErrorKind::TraceMetadata, "sample count is not a multiple of samples per cycle");
  }
  const std::size_t n = t.samples_per_cycle;
  CompressedTrace ct{std::vector<double>(t.num_cycles()), n, t.num_cycles()};
  for (std::size_t c = 0; c < ct.values.size(); ++c) {
    detail::CompensatedSum acc;
    for (double v : t.cycle(c)) acc.add(v * v);
    ct.values[c] = acc.value() / static_cast<double>(n);
  }
  return ct;
}

/// Consecutive slot_len-value slots. A trailing partial slot is an error
/// unless `truncate` is set, in which case it is dropped.
inline std::vector<std::vector<double>> slice_slots(const CompressedTrace& ct, std::size_t slot_len = kCyclesPerSlot,
                                                    bool truncate = false) {
  if (slot_len == 0) throw Error(ErrorKind::InvalidArgument, "slot length must be positive");
  if (ct.values.size() % slot_len != 0 && !truncate) {
    throw Error(ErrorKind::InvalidArgument, "trace of " + std::to_string(ct.values.size()) +
                                                " cycles is not a whole number of " + std::to_string(slot_len) +
                                                "-cycle slots");
  }
  std::vector<std::vector<double>> slots;
  slots.reserve(ct.values.size() / slot_len);
  for (std::size_t off = 0; off + slot_len <= ct.values.size(); off += slot_len) {
    slots.emplace_back(ct.values.begin() + static_cast<std::ptrdiff_t>(off),
                       ct.values.begin() + static_cast<std::ptrdiff_t>(off + slot_len));
  }
  return slots;
}

struct MultProfile {
  std::array<double, kCyclesPerMultiplication> values{};
  std::size_t position = 0;  // 1..6; 3 is the b multiplication, 5 the x multiplication
};

inline std::span<const double> mult_window(std::span<const double> slot, std::size_t position) {
  if (position < 1 || (position * kCyclesPerMultiplication) > slot.size()) {
    throw Error(ErrorKind::InvalidArgument, "multiplication position " + std::to_string(position) + " outside slot");
  }
  return slot.subspan((position - 1) * kCyclesPerMultiplication, kCyclesPerMultiplication);
}

/// Element-wise mean of window `position` (cycles 9(p-1)+1 .. 9p, 1-based)
/// over all slots.
inline MultProfile average_profile(std::span<const std::vector<double>> slots, std::size_t position) {
  if (slots.empty()) throw Error(ErrorKind::InvalidArgument, "no slots to average");
  if (position < 1 || position > kMultsPerIteration) {
    throw Error(ErrorKind::InvalidArgument, "multiplication position must be in 1..6");
  }
  MultProfile p;
  p.position = position;
  std::array<detail::CompensatedSum, kCyclesPerMultiplication> sums{};
  for (const auto& slot : slots) {
    const auto w = mult_window(slot, position);
    for (std::size_t c = 0; c < kCyclesPerMultiplication; ++c) sums[c].add(w[c]);
  }
  for (std::size_t c = 0; c < kCyclesPerMultiplication; ++c) {
    p.values[c] = sums[c].value() / static_cast<double>(slots.size());
  }
  return p;
}

/// Sample Pearson correlation via a single-pass co-moment update.
/// UndefinedCorrelation when either sequence is constant.
inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::LengthMismatch, "pearson needs sequences of equal length");
  if (x.size() < 2) throw Error(ErrorKind::InvalidArgument, "pearson needs at least two values");
  double mx = 0.0;
  double my = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    mx += dx / n;
    my += dy / n;
    sxx += dx * (x[i] - mx);
    syy += dy * (y[i] - my);
    sxy += dx * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) throw Error(ErrorKind::UndefinedCorrelation, "constant input sequence");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

struct WelchResult {
  double t;
  double df;
  double p_value;  // two-sided
};

/// Welch's unequal-variance t test of mean(a) - mean(b).
inline WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw Error(ErrorKind::VarianceUndefined, "t test needs two values per group");
  const auto moments = [](std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::pair{mean, ss / (n - 1.0)};
  };
  const auto [ma, va] = moments(a);
  const auto [mb, vb] = moments(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double sa = va / na;
  const double sb = vb / nb;
  if (sa + sb <= 0.0) throw Error(ErrorKind::VarianceUndefined, "both groups have zero variance");
  const double t = (ma - mb) / std::sqrt(sa + sb);
  const double df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  const boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return WelchResult{t, df, p};
}

/// Probability that a random `positive` value exceeds a random `negative`
/// one, ties counted half, from the rank-sum statistic.
inline double auc(std::span<const double> positive, std::span<const double> negative) {
  if (positive.empty() || negative.empty()) throw Error(ErrorKind::InvalidArgument, "AUC needs two nonempty groups");
  std::vector<std::pair<double, bool>> all;
  all.reserve(positive.size() + negative.size());
  for (double v : positive) all.emplace_back(v, true);
  for (double v : negative) all.emplace_back(v, false);
  std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double mid_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (all[k].second) rank_sum += mid_rank;
    }
    i = j;
  }
  const double n1 = static_cast<double>(positive.size());
  const double n2 = static_cast<double>(negative.size());
  const double u = rank_sum - n1 * (n1 + 1.0) / 2.0;
  return u / (n1 * n2);
}

struct SeparationStats {
  std::size_t n_common = 0;
  std::size_t n_different = 0;
  double mean_common = 0.0;
  double mean_different = 0.0;
  std::optional<WelchResult> welch;  // absent when a group has fewer than two values
  double auc = 0.5;                  // common ranked above different
};

inline SeparationStats separation_stats(std::span<const double> common, std::span<const double> different) {
  if (common.empty() || different.empty()) throw Error(ErrorKind::InvalidArgument, "separation needs two nonempty groups");
  const auto mean = [](std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  SeparationStats s;
  s.n_common = common.size();
  s.n_different = different.size();
  s.mean_common = mean(common);
  s.mean_different = mean(different);
  s.auc = auc(common, different);
  try {
    s.welch = welch_t_test(common, different);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::VarianceUndefined) throw;
  }
  return s;
}

enum class WindowLabel { Common, Different };

inline const char* to_string(WindowLabel l) { return l == WindowLabel::Common ? "common" : "different"; }

struct AttackRow {
  std::size_t window_index;
  std::size_t slot;
  std::size_t position;
  std::optional<double> coefficient;  // empty when the window is constant
  std::optional<WindowLabel> label;
};

struct AttackReport {
  MultProfile profile;
  std::vector<AttackRow> rows;
  std::size_t missing = 0;
  std::optional<SeparationStats> stats;
};

/// One coefficient per 9-cycle window, in window order (slot-major).
/// `labels`, when given, must hold one entry per window.
inline AttackReport correlate_all(const MultProfile& profile, std::span<const std::vector<double>> slots,
                                  std::span<const std::optional<WindowLabel>> labels = {}) {
  AttackReport rep;
  rep.profile = profile;
  const std::size_t windows = slots.size() * kMultsPerIteration;
  if (!labels.empty() && labels.size() != windows) {
    throw Error(ErrorKind::LengthMismatch, "label count does not match window count");
  }
  rep.rows.reserve(windows);
  std::vector<double> common;
  std::vector<double> different;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    for (std::size_t p = 1; p <= kMultsPerIteration; ++p) {
      AttackRow row{rep.rows.size(), s, p, std::nullopt, std::nullopt};
      if (!labels.empty()) row.label = labels[row.window_index];
      try {
        row.coefficient = pearson(profile.values, mult_window(slots[s], p));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UndefinedCorrelation) throw;
        ++rep.missing;
      }
      if (row.coefficient && row.label) {
        (*row.label == WindowLabel::Common ? common : different).push_back(*row.coefficient);
      }
      rep.rows.push_back(row);
    }
  }
  if (!common.empty() && !different.empty()) rep.stats = separation_stats(common, different);
  return rep;
}

/// Ground truth per window from the trace's multiplication annotations:
/// Common when the annotated position equals `target_position`. Windows
/// without an annotation stay unlabeled. Returns an empty vector when the
/// trace carries no multiplication annotations at all.
inline std::vector<std::optional<WindowLabel>> window_labels(const Trace& t, std::size_t target_position,
                                                             std::size_t num_slots) {
  std::vector<std::optional<WindowLabel>> labels(num_slots * kMultsPerIteration);
  bool any = false;
  for (const Annotation& a : t.annotations) {
    if (a.kind != AnnotationKind::Multiplication || !a.position) continue;
    if (a.first_cycle % kCyclesPerMultiplication != 0) continue;
    const std::size_t w = a.first_cycle / kCyclesPerMultiplication;
    if (w >= labels.size()) continue;
    labels[w] = *a.position == target_position ? WindowLabel::Common : WindowLabel::Different;
    any = true;
  }
  if (!any) labels.clear();
  return labels;
}

/// Compress, slice into 54-cycle slots, average the profile at
/// `target_position` and correlate it with every window.
inline AttackReport run_hcca(const Trace& t, std::size_t target_position, bool truncate = false) {
  const CompressedTrace ct = compress(t);
  const auto slots = slice_slots(ct, kCyclesPerSlot, truncate);
  const MultProfile profile = average_profile(slots, target_position);
  const auto labels = window_labels(t, target_position, slots.size());
  return correlate_all(profile, slots, labels);
}

// ---------------------------------------------------------------------------
// Multiplier-only collision experiment

struct CollisionExperimentResult {
  FieldId field = FieldId::B233;
  std::size_t bit_length = 0;
  std::size_t repetitions = 0;
  // One entry per repetition; empty when the pair had a constant profile.
  std::vector<std::optional<double>> k1, k2, k3, k4;
};

using CollisionCoefficients = std::array<std::optional<double>, 4>;

namespace detail {

template <class Rng>
std::array<double, kCyclesPerMultiplication> mult_profile(const FieldElement& x, const FieldElement& y,
                                                          const LeakageModel& m, Rng& rng,
                                                          const PartialProductPlan& plan) {
  const CompressedTrace ct = compress(simulate_mult_trace(x, y, m, rng, plan));
  std::array<double, kCyclesPerMultiplication> out{};
  std::copy(ct.values.begin(), ct.values.end(), out.begin());
  return out;
}

inline std::optional<double> try_pearson(std::span<const double> x, std::span<const double> y) {
  try {
    return pearson(x, y);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UndefinedCorrelation) throw;
    return std::nullopt;
  }
}

}  // namespace detail

/// mult1 = a*b, mult2 = c*d, mult3 = a*e, mult4 = f*g, each simulated and
/// compressed to nine values; returns {K1, K2, K3, K4} =
/// {r(1,3), r(2,4), r(1,2), r(1,4)}. Only K1 pairs share an operand.
template <class Rng>
CollisionCoefficients collision_coefficients(const FieldElement& a, const FieldElement& b, const FieldElement& c,
                                             const FieldElement& d, const FieldElement& e, const FieldElement& f,
                                             const FieldElement& g, const LeakageModel& m, Rng& rng,
                                             const PartialProductPlan& plan = default_plan()) {
  const auto m1 = detail::mult_profile(a, b, m, rng, plan);
  const auto m2 = detail::mult_profile(c, d, m, rng, plan);
  const auto m3 = detail::mult_profile(a, e, m, rng, plan);
  const auto m4 = detail::mult_profile(f, g, m, rng, plan);
  return {detail::try_pearson(m1, m3), detail::try_pearson(m2, m4), detail::try_pearson(m1, m2),
          detail::try_pearson(m1, m4)};
}

template <class Rng>
CollisionExperimentResult mult_collision_experiment(FieldId field, const LeakageModel& m, std::size_t repetitions,
                                                    Rng& rng, const PartialProductPlan& plan = default_plan()) {
  if (repetitions == 0) throw Error(ErrorKind::InvalidArgument, "repetitions must be at least 1");
  validate_model(m);
  CollisionExperimentResult r;
  r.field = field;
  r.bit_length = field_degree(field);
  r.repetitions = repetitions;
  for (std::size_t i = 0; i < repetitions; ++i) {
    std::array<FieldElement, 7> ops{FieldElement(field), FieldElement(field), FieldElement(field), FieldElement(field),
                                    FieldElement(field), FieldElement(field), FieldElement(field)};
    for (auto& op : ops) op = random_element(field, rng);
    const auto k = collision_coefficients(ops[0], ops[1], ops[2], ops[3], ops[4], ops[5], ops[6], m, rng, plan);
    r.k1.push_back(k[0]);
    r.k2.push_back(k[1]);
    r.k3.push_back(k[2]);
    r.k4.push_back(k[3]);
  }
  return r;
}

}  // namespace flexecc

#endif  // FLEXECC_HCCA_HPP
