#include <catch_amalgamated.hpp>

#include <random>
#include <type_traits>

#include "flexecc/ecdsa.hpp"
#include "flexecc/hcca.hpp"
#include "flexecc/standard_curves.hpp"
#include "oracles.hpp"

using namespace flexecc;

namespace {

template <class Fn>
void expect_error(ErrorKind kind, Fn&& fn) {
  try {
    fn();
    FAIL("expected " << to_string(kind));
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  }
}

Trace raw_trace(std::vector<double> samples, std::size_t n) {
  Trace t;
  t.samples_per_cycle = n;
  t.samples = std::move(samples);
  return t;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d(3.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("compression") {
  const CompressedTrace c = compress(raw_trace(std::vector<double>(12, 1.5), 4));
  CHECK(c.values == std::vector<double>{2.25, 2.25, 2.25});
  CHECK(c.source_samples_per_cycle == 4);
  CHECK(c.source_cycles == 3);

  std::vector<double> alt(10);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 == 0 ? 1.0 : -1.0;
  CHECK(compress(raw_trace(alt, 10)).values == std::vector<double>{1.0});

  expect_error(ErrorKind::InvalidArgument, [] { (void)compress(raw_trace({}, 4)); });
  expect_error(ErrorKind::TraceMetadata, [] { (void)compress(raw_trace({1, 2, 3}, 2)); });

  std::mt19937_64 rng(51);
  for (int i = 0; i < 20; ++i) {
    const auto s = random_values(rng, 625 * 30);
    const auto got = compress(raw_trace(s, 625)).values;
    const auto want = oracle::compress(s, 625);
    REQUIRE(got.size() == want.size());
    for (std::size_t c2 = 0; c2 < got.size(); ++c2) CHECK(oracle::close(got[c2], want[c2], 1e-12));

    std::vector<double> scaled = s;
    for (double& x : scaled) x *= -3.0;
    const auto sc = compress(raw_trace(scaled, 625)).values;
    for (std::size_t c2 = 0; c2 < got.size(); ++c2) CHECK(oracle::close(sc[c2], 9.0 * got[c2], 1e-12));
  }
}

TEST_CASE("slot slicing") {
  CompressedTrace ct;
  ct.values.assign(54, 1.0);
  CHECK(slice_slots(ct).size() == 1);
  ct.values.assign(53, 1.0);
  expect_error(ErrorKind::InvalidArgument, [&] { (void)slice_slots(ct); });
  CHECK(slice_slots(ct, 54, true).empty());
  ct.values.assign(54 * 3 + 10, 1.0);
  CHECK(slice_slots(ct, 54, true).size() == 3);
}

TEST_CASE("multiplication windows and profiles") {
  std::vector<double> slot(54);
  std::iota(slot.begin(), slot.end(), 1.0);
  const auto w3 = mult_window(slot, 3);
  CHECK(w3.front() == 19.0);
  CHECK(w3.back() == 27.0);
  const auto w5 = mult_window(slot, 5);
  CHECK(w5.front() == 37.0);
  CHECK(w5.back() == 45.0);
  expect_error(ErrorKind::InvalidArgument, [&] { (void)mult_window(slot, 0); });
  expect_error(ErrorKind::InvalidArgument, [&] { (void)mult_window(slot, 7); });

  const std::vector<std::vector<double>> one{slot};
  const MultProfile p = average_profile(one, 3);
  CHECK(std::equal(p.values.begin(), p.values.end(), w3.begin()));
  CHECK(p.position == 3);

  std::vector<double> other(54, 1.0);
  const std::vector<std::vector<double>> two{slot, other};
  const MultProfile avg = average_profile(two, 1);
  for (std::size_t i = 0; i < 9; ++i) CHECK(avg.values[i] == (static_cast<double>(i + 1) + 1.0) / 2.0);

  expect_error(ErrorKind::InvalidArgument, [] { (void)average_profile(std::vector<std::vector<double>>{}, 3); });
}

TEST_CASE("pearson") {
  const std::vector<double> x{1, 4, 2, 8, 5, 7};
  CHECK(pearson(x, x) == Catch::Approx(1.0).epsilon(1e-15));
  std::vector<double> neg(x.size());
  std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -2.5 * v + 4.0; });
  CHECK(pearson(x, neg) == Catch::Approx(-1.0).epsilon(1e-15));

  expect_error(ErrorKind::UndefinedCorrelation, [] { (void)pearson(std::vector<double>(5, 2.0), std::vector<double>{1, 2, 3, 4, 5}); });
  expect_error(ErrorKind::LengthMismatch, [] { (void)pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}); });

  std::mt19937_64 rng(52);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_values(rng, 9);
    const auto b = random_values(rng, 9);
    const double r = pearson(a, b);
    CHECK(oracle::close(r, oracle::pearson(a, b), 1e-12));
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
    std::vector<double> a2 = a;
    for (double& v : a2) v = 7.0 * v + 1e3;
    CHECK(oracle::close(pearson(a2, b), r, 1e-9));
  }
}

TEST_CASE("welch t test against reference values") {
  const std::vector<double> a{0.91, 0.85, 0.97, 0.88, 0.93, 0.79};
  const std::vector<double> b{0.12, -0.05, 0.33, 0.21, 0.08, -0.14, 0.27, 0.02};
  const WelchResult w = welch_t_test(a, b);
  CHECK(w.t == Catch::Approx(12.54082024821207).epsilon(1e-10));
  CHECK(w.df == Catch::Approx(9.622095929018037).epsilon(1e-10));
  CHECK(w.p_value == Catch::Approx(2.8051733614100155e-07).epsilon(1e-8));

  const std::vector<double> c{1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> d{2.5, 3.1, 2.9, 4.2};
  const WelchResult w2 = welch_t_test(c, d);
  CHECK(w2.t == Catch::Approx(-0.2200793626510884).epsilon(1e-10));
  CHECK(w2.df == Catch::Approx(5.850594667838183).epsilon(1e-10));
  CHECK(w2.p_value == Catch::Approx(0.8332869548646652).epsilon(1e-8));

  expect_error(ErrorKind::VarianceUndefined, [] { (void)welch_t_test(std::vector<double>{1.0}, std::vector<double>{1, 2}); });
}

TEST_CASE("AUC") {
  const std::vector<double> g{0.1, 0.5, 0.9};
  CHECK(auc(g, g) == 0.5);
  CHECK(auc(std::vector<double>{5, 6}, std::vector<double>{1, 2, 3}) == 1.0);
  CHECK(auc(std::vector<double>{1, 2}, std::vector<double>{5, 6}) == 0.0);
  CHECK(auc(std::vector<double>{1, 2, 3, 4, 5}, std::vector<double>{2.5, 3.1, 2.9, 4.2, 3.0}) == Catch::Approx(0.46));

  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> coarse(0, 9);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> p(3 + i % 17);
    std::vector<double> q(2 + i % 11);
    for (double& v : p) v = coarse(rng);
    for (double& v : q) v = coarse(rng) - 1;
    CHECK(auc(p, q) == Catch::Approx(oracle::auc(p, q)).epsilon(1e-14));
  }
}

TEST_CASE("separation statistics") {
  const SeparationStats s = separation_stats(std::vector<double>{0.9}, std::vector<double>{0.1, 0.2, 0.3});
  CHECK_FALSE(s.welch.has_value());
  CHECK(s.auc == 1.0);
  CHECK(s.n_common == 1);
  CHECK(s.mean_different == Catch::Approx(0.2));
  const SeparationStats t = separation_stats(std::vector<double>{0.9, 0.8}, std::vector<double>{0.1, 0.2, 0.3});
  CHECK(t.welch.has_value());
  CHECK_THROWS_AS(separation_stats(std::vector<double>{}, std::vector<double>{1.0}), Error);
}

TEST_CASE("correlating identical slots gives coefficient one") {
  std::mt19937_64 rng(54);
  const auto slot = random_values(rng, 54);
  const std::vector<std::vector<double>> slots(5, slot);
  const MultProfile p = average_profile(slots, 3);
  const AttackReport rep = correlate_all(p, slots);
  CHECK(rep.rows.size() == 30);
  CHECK_FALSE(rep.stats.has_value());
  for (const AttackRow& r : rep.rows) {
    REQUIRE(r.coefficient.has_value());
    if (r.position == 3) CHECK(*r.coefficient == Catch::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("constant windows are reported as missing") {
  std::vector<double> slot(54, 1.0);
  for (std::size_t i = 0; i < 18; ++i) slot[i] = static_cast<double>(i % 5);
  const std::vector<std::vector<double>> slots{slot, slot};
  const AttackReport rep = correlate_all(average_profile(slots, 1), slots);
  CHECK(rep.rows.size() == 12);
  CHECK(rep.missing == 8);
  std::size_t empty = 0;
  for (const AttackRow& r : rep.rows) empty += r.coefficient ? 0 : 1;
  CHECK(empty == 8);
  const std::vector<std::optional<WindowLabel>> wrong(3);
  expect_error(ErrorKind::LengthMismatch, [&] { (void)correlate_all(average_profile(slots, 1), slots, wrong); });
}

TEST_CASE("planted collisions separate") {
  std::mt19937_64 rng(55);
  for (std::size_t pos : {1U, 3U, 5U}) {
    LeakageModel m = LeakageModel::with_samples_per_cycle(16);
    m.sigma = 0.5;
    const Trace t = synthesize_planted_collision_trace(100, pos, m, rng);
    const AttackReport rep = run_hcca(t, pos);
    REQUIRE(rep.stats.has_value());
    CHECK(rep.rows.size() == 600);
    CHECK(rep.stats->n_common == 100);
    CHECK(rep.stats->auc >= 0.99);
  }
}

TEST_CASE("analysis consumes only trace data") {
  static_assert(std::is_invocable_r_v<AttackReport, decltype(&run_hcca), const Trace&, std::size_t, bool>);
  static_assert(std::is_invocable_r_v<CompressedTrace, decltype(&compress), const Trace&>);

  std::mt19937_64 rng(56);
  Trace t = synthesize_planted_collision_trace(30, 5, LeakageModel::with_samples_per_cycle(4), rng);
  const AttackReport labeled = run_hcca(t, 5);
  t.annotations.clear();
  t.metadata = TraceMetadata{};
  t.metadata.kind = "external";
  const AttackReport blind = run_hcca(t, 5);
  CHECK_FALSE(blind.stats.has_value());
  REQUIRE(blind.rows.size() == labeled.rows.size());
  for (std::size_t i = 0; i < blind.rows.size(); ++i) {
    CHECK(blind.rows[i].coefficient == labeled.rows[i].coefficient);
    CHECK_FALSE(blind.rows[i].label.has_value());
  }
}

TEST_CASE("attack on a simulated kP trace") {
  std::mt19937_64 rng(57);
  const CurveParams& c = standard_curve(FieldId::B233);
  const BigUint k = pad_to_full_length(random_nonzero_scalar(c, rng).value(), c);
  const Trace t = simulate_kp_trace(k, c.G, c, LeakageModel::with_samples_per_cycle(4), rng);
  const AttackReport rep = run_hcca(t, 3);
  CHECK(rep.rows.size() == 1392);
  REQUIRE(rep.stats.has_value());
  CHECK(rep.stats->n_common + rep.stats->n_different + rep.missing == 1392);

  Trace cut = t;
  cut.samples.resize(cut.samples.size() - 4 * 10);
  cut.annotations.clear();
  expect_error(ErrorKind::InvalidArgument, [&] { (void)run_hcca(cut, 3); });
  CHECK(run_hcca(cut, 3, true).rows.size() == 1386);
}

TEST_CASE("multiplier collision experiment") {
  std::mt19937_64 rng(58);
  LeakageModel alpha_only = LeakageModel::with_samples_per_cycle(4);
  alpha_only.beta = 0.0;
  alpha_only.gamma = 0.0;
  std::array<FieldElement, 7> ops{FieldElement(FieldId::B233), FieldElement(FieldId::B233), FieldElement(FieldId::B233),
                                  FieldElement(FieldId::B233), FieldElement(FieldId::B233), FieldElement(FieldId::B233),
                                  FieldElement(FieldId::B233)};
  for (auto& o : ops) o = random_element(FieldId::B233, rng);
  const auto k = collision_coefficients(ops[0], ops[1], ops[0], ops[1], ops[4], ops[5], ops[6], alpha_only, rng);
  REQUIRE(k[2].has_value());
  CHECK(*k[2] == Catch::Approx(1.0).epsilon(1e-12));

  for (FieldId f : {FieldId::B233, FieldId::B283}) {
    const CollisionExperimentResult r = mult_collision_experiment(f, LeakageModel::with_samples_per_cycle(8), 20, rng);
    CHECK(r.bit_length == field_degree(f));
    CHECK(r.repetitions == 20);
    for (const auto* arr : {&r.k1, &r.k2, &r.k3, &r.k4}) {
      REQUIRE(arr->size() == 20);
      for (const auto& v : *arr) {
        REQUIRE(v.has_value());
        CHECK(*v >= -1.0);
        CHECK(*v <= 1.0);
      }
    }
  }
  std::mt19937_64 a(3);
  std::mt19937_64 b(3);
  const auto r1 = mult_collision_experiment(FieldId::B283, LeakageModel::with_samples_per_cycle(2), 3, a);
  const auto r2 = mult_collision_experiment(FieldId::B283, LeakageModel::with_samples_per_cycle(2), 3, b);
  CHECK(r1.k1 == r2.k1);
  CHECK(r1.k4 == r2.k4);
  CHECK_THROWS_AS(mult_collision_experiment(FieldId::B233, LeakageModel{}, 0, rng), Error);
}
