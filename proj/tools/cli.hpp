#ifndef FLEXECC_TOOLS_CLI_HPP
#define FLEXECC_TOOLS_CLI_HPP

// flexecc command line: keygen, sign, verify, kp, simulate, attack,
// mult-experiment. run() is the whole program minus main(), so tests can
// drive it in-process.
//
// Exit codes: 0 success, 1 negative outcome (INVALID signature, attack
// groups not separated), 2 usage error, 3 I/O error, 4 computation error
// (degenerate ladder, invalid curve data).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "flexecc/flexecc.hpp"

namespace flexecc::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kIo = 3, kCompute = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct CommonOptions {
  std::string curve = "B233";
  std::uint64_t seed = 1;
};

struct ModelOptions {
  double alpha = 1.0;
  double beta = 0.25;
  double gamma = 0.5;
  double sigma = 0.0;
  std::size_t samples_per_cycle = kDefaultSamplesPerCycle;

  LeakageModel model() const {
    LeakageModel m = LeakageModel::with_samples_per_cycle(samples_per_cycle);
    m.alpha = alpha;
    m.beta = beta;
    m.gamma = gamma;
    m.sigma = sigma;
    validate_model(m);
    return m;
  }
};

inline FieldId field_of(const std::string& s) {
  const auto f = parse_field_id(s);
  if (!f) throw UsageError("unknown curve '" + s + "' (expected B233 or B283)");
  return *f;
}

inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  return format_double(v);
}

inline std::string opt_fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

inline nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

inline void add_model_flags(CLI::App* cmd, ModelOptions& mo) {
  cmd->add_option("--alpha", mo.alpha, "weight of register Hamming distance")->capture_default_str();
  cmd->add_option("--beta", mo.beta, "weight of partial-product Hamming weight")->capture_default_str();
  cmd->add_option("--gamma", mo.gamma, "weight of squarer-output Hamming distance")->capture_default_str();
  cmd->add_option("--sigma", mo.sigma, "Gaussian noise standard deviation")->capture_default_str();
  cmd->add_option("--samples-per-cycle", mo.samples_per_cycle, "samples per clock cycle")->capture_default_str();
}

inline std::string header_comment(const std::string& what, const std::map<std::string, std::string>& config) {
  std::string s = "# flexecc " + what + "\n";
  for (const auto& [k, v] : config) s += "# " + k + "=" + v + "\n";
  return s;
}

// First non-comment, non-blank line of a text file.
inline std::string read_payload(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t");
    return line.substr(b, e - b + 1);
  }
  throw UsageError(path + ": no data line");
}

inline std::pair<std::string, std::string> split_pair(const std::string& s, const std::string& what) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("malformed " + what + " (expected hex:hex)");
  return {s.substr(0, colon), s.substr(colon + 1)};
}

inline AffinePoint read_point(const std::string& path, const CurveParams& c) {
  const auto [x, y] = split_pair(read_payload(path), "public key");
  AffinePoint p(FieldElement::from_hex(c.field, x), FieldElement::from_hex(c.field, y));
  if (!is_on_curve(p, c)) throw UsageError(path + ": point is not on " + to_string(c.field));
  return p;
}

inline void write_text(const std::string& path, const std::string& text) { flexecc::detail::write_file(path, text); }

inline std::string signature_text(const Signature& s) { return to_hex(s.r.value()) + ":" + to_hex(s.s.value()); }

inline PartialProductPlan load_plan(const std::string& path) {
  if (path.empty()) return default_plan();
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open plan " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  PartialProductPlan plan = parse_plan(ss.str());
  if (!plan_is_exact(plan)) throw UsageError(path + ": plan does not compute the full product");
  return plan;
}

inline std::string model_summary(const LeakageModel& m) {
  return "alpha=" + fmt(m.alpha) + " beta=" + fmt(m.beta) + " gamma=" + fmt(m.gamma) + " sigma=" + fmt(m.sigma) +
         " N=" + std::to_string(m.samples_per_cycle);
}

inline nlohmann::json transcript_json(const LadderTranscript& tr) {
  nlohmann::json j;
  j["field"] = to_string(tr.field);
  j["iterations"] = nlohmann::json::array();
  for (const LadderIteration& it : tr.iterations) {
    nlohmann::json ji{{"bit_index", it.bit_index}, {"bit", it.bit ? 1 : 0}};
    for (const MultiplicationRecord& m : it.mults) {
      ji["mults"].push_back(
          {{"position", m.position}, {"left", m.left.to_hex()}, {"right", m.right.to_hex()}, {"role", to_string(m.role)}});
    }
    for (const SquaringRecord& s : it.squarings) ji["squarings"].push_back({{"cycle", s.cycle}, {"output", s.output.to_hex()}});
    j["iterations"].push_back(std::move(ji));
  }
  return j;
}

inline nlohmann::json stats_json(const std::optional<SeparationStats>& s) {
  if (!s) return nullptr;
  nlohmann::json j{{"n_common", s->n_common},
                   {"n_different", s->n_different},
                   {"mean_common", s->mean_common},
                   {"mean_different", s->mean_different},
                   {"auc", s->auc}};
  if (s->welch) {
    j["welch_t"] = s->welch->t;
    j["welch_df"] = s->welch->df;
    j["p_value"] = s->welch->p_value;
  } else {
    j["welch_t"] = nullptr;
    j["welch_df"] = nullptr;
    j["p_value"] = nullptr;
  }
  return j;
}

}  // namespace detail

/// Runs the CLI with argv-style arguments (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"flexecc: binary-curve ECDSA engine and horizontal collision correlation laboratory"};
  app.require_subcommand(1);

  CommonOptions common;
  ModelOptions model_opts;

  // keygen
  std::string out_path;
  auto* keygen = app.add_subcommand("keygen", "generate a key pair (<out>.key, <out>.pub)");
  keygen->add_option("--curve", common.curve, "B233 or B283")->capture_default_str();
  keygen->add_option("--seed", common.seed, "random seed")->capture_default_str();
  keygen->add_option("--out", out_path, "output prefix")->required();

  // sign
  std::string key_path;
  std::string digest_hex;
  std::string disclose_path;
  auto* sign_cmd = app.add_subcommand("sign", "sign a digest");
  sign_cmd->add_option("--curve", common.curve, "B233 or B283")->capture_default_str();
  sign_cmd->add_option("--seed", common.seed, "random seed for the nonce")->capture_default_str();
  sign_cmd->add_option("--key", key_path, "private key file")->required();
  sign_cmd->add_option("--digest", digest_hex, "message digest, hex")->required();
  sign_cmd->add_option("--out", out_path, "signature file")->required();
  sign_cmd->add_option("--disclose-k", disclose_path, "also write the ephemeral scalar (laboratory use)");

  // verify
  std::string pub_path;
  std::string sig_path;
  auto* verify_cmd = app.add_subcommand("verify", "verify a signature; prints VALID or INVALID");
  verify_cmd->add_option("--curve", common.curve, "B233 or B283")->capture_default_str();
  verify_cmd->add_option("--pub", pub_path, "public key file")->required();
  verify_cmd->add_option("--digest", digest_hex, "message digest, hex")->required();
  verify_cmd->add_option("--sig", sig_path, "signature file")->required();

  // kp
  std::string k_hex;
  std::string x_hex;
  std::string y_hex;
  std::string transcript_path;
  bool oracle = false;
  auto* kp_cmd = app.add_subcommand("kp", "point multiplication k*P (P = G by default)");
  kp_cmd->add_option("--curve", common.curve, "B233 or B283")->capture_default_str();
  kp_cmd->add_option("--k", k_hex, "scalar, hex")->required();
  kp_cmd->add_option("--x", x_hex, "x of P, hex");
  kp_cmd->add_option("--y", y_hex, "y of P, hex");
  kp_cmd->add_flag("--oracle", oracle, "use affine double-and-add instead of the ladder");
  kp_cmd->add_option("--transcript", transcript_path, "write the ladder transcript as JSON");

  // simulate
  std::string mode = "kp";
  std::string format = "hct1";
  std::string plan_path;
  std::size_t count = 4;
  std::size_t slots = 232;
  std::size_t position = kCurveBPosition;
  auto* sim_cmd = app.add_subcommand("simulate", "synthesize a leakage trace");
  sim_cmd->add_option("--curve", common.curve, "B233 or B283")->capture_default_str();
  sim_cmd->add_option("--seed", common.seed, "random seed")->capture_default_str();
  add_model_flags(sim_cmd, model_opts);
  sim_cmd->add_option("--mode", mode, "kp, mult or planted")->check(CLI::IsMember({"kp", "mult", "planted"}))->capture_default_str();
  sim_cmd->add_option("--k", k_hex, "scalar for kp mode, hex (default: random nonce padded to full length)");
  sim_cmd->add_option("--count", count, "multiplications in mult mode")->capture_default_str();
  sim_cmd->add_option("--slots", slots, "slots in planted mode")->capture_default_str();
  sim_cmd->add_option("--position", position, "planted multiplication position (1..6)")->capture_default_str();
  sim_cmd->add_option("--plan", plan_path, "partial-product plan file");
  sim_cmd->add_option("--format", format, "hct1 or csv")->check(CLI::IsMember({"hct1", "csv"}))->capture_default_str();
  sim_cmd->add_option("--out", out_path, "trace file")->required();

  // attack
  std::string trace_path;
  bool truncate = false;
  double min_auc = 0.9;
  std::string report_format = "both";
  std::optional<std::size_t> csv_spc;
  auto* attack_cmd = app.add_subcommand("attack", "horizontal collision correlation analysis of one trace");
  attack_cmd->add_option("--trace", trace_path, "HCT1 or CSV trace")->required();
  attack_cmd->add_option("--position", position, "profiled multiplication position (1..6)")->capture_default_str();
  attack_cmd->add_option("--out", out_path, "report prefix (<out>.json, <out>.csv)")->required();
  attack_cmd->add_flag("--truncate", truncate, "drop a trailing partial slot");
  attack_cmd->add_option("--min-auc", min_auc, "AUC below which the groups count as not separated")->capture_default_str();
  attack_cmd->add_option("--format", report_format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}))->capture_default_str();
  attack_cmd->add_option("--samples-per-cycle", csv_spc, "for CSV traces without a sidecar");

  // mult-experiment
  std::optional<std::string> exp_curve;
  std::size_t repetitions = 20;
  auto* exp_cmd = app.add_subcommand("mult-experiment", "multiplier-only collision experiment (K1..K4)");
  exp_cmd->add_option("--curve", exp_curve, "B233 or B283 (default: both)");
  exp_cmd->add_option("--seed", common.seed, "random seed")->capture_default_str();
  exp_cmd->add_option("--repetitions", repetitions, "repetitions per operand length")->capture_default_str();
  add_model_flags(exp_cmd, model_opts);
  exp_cmd->add_option("--plan", plan_path, "partial-product plan file");
  exp_cmd->add_option("--format", report_format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}))->capture_default_str();
  exp_cmd->add_option("--out", out_path, "output prefix (<out>.csv, <out>.json)")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (keygen->parsed()) {
      const FieldId f = field_of(common.curve);
      const CurveParams& c = standard_curve(f);
      std::mt19937_64 rng(common.seed);
      const KeyPair kp = flexecc::keygen(rng, c);
      const std::map<std::string, std::string> cfg{{"command", "keygen"}, {"curve", to_string(f)}, {"seed", std::to_string(common.seed)}};
      write_text(out_path + ".key", header_comment("private key", cfg) + to_hex(kp.key.value()) + "\n");
      const std::string pub = kp.pub.x().to_hex() + ":" + kp.pub.y().to_hex();
      write_text(out_path + ".pub", header_comment("public key", cfg) + pub + "\n");
      out << pub << "\n";
      return kOk;
    }

    if (sign_cmd->parsed()) {
      const FieldId f = field_of(common.curve);
      const CurveParams& c = standard_curve(f);
      const Scalar key = Scalar::reduced(biguint_from_hex(read_payload(key_path)), c.order);
      if (key.is_zero()) throw UsageError(key_path + ": private key is zero modulo the order");
      const Scalar e = digest_scalar(biguint_from_hex(digest_hex), c);
      std::mt19937_64 rng(common.seed);
      const SignResult res = flexecc::sign(e, key, rng, c);
      const std::map<std::string, std::string> cfg{{"command", "sign"},
                                                   {"curve", to_string(f)},
                                                   {"seed", std::to_string(common.seed)},
                                                   {"digest", digest_hex}};
      write_text(out_path, header_comment("signature r:s", cfg) + signature_text(res.signature) + "\n");
      if (!disclose_path.empty()) {
        write_text(disclose_path, header_comment("ephemeral scalar k", cfg) + to_hex(res.disclosure.k.value()) + "\n");
      }
      out << signature_text(res.signature) << "\n";
      return kOk;
    }

    if (verify_cmd->parsed()) {
      const FieldId f = field_of(common.curve);
      const CurveParams& c = standard_curve(f);
      const AffinePoint pub = read_point(pub_path, c);
      const auto [r_hex, s_hex] = split_pair(read_payload(sig_path), "signature");
      const BigUint r = biguint_from_hex(r_hex);
      const BigUint s = biguint_from_hex(s_hex);
      bool ok = false;
      if (r < c.order && s < c.order) {
        ok = flexecc::verify(digest_scalar(biguint_from_hex(digest_hex), c), Signature{Scalar(r, c.order), Scalar(s, c.order)},
                             pub, c);
      }
      out << (ok ? "VALID" : "INVALID") << "\n";
      return ok ? kOk : kNegative;
    }

    if (kp_cmd->parsed()) {
      const FieldId f = field_of(common.curve);
      const CurveParams& c = standard_curve(f);
      const BigUint k = biguint_from_hex(k_hex);
      AffinePoint p = c.G;
      if (!x_hex.empty() || !y_hex.empty()) {
        if (x_hex.empty() || y_hex.empty()) throw UsageError("--x and --y must be given together");
        p = AffinePoint(FieldElement::from_hex(f, x_hex), FieldElement::from_hex(f, y_hex));
        if (!is_on_curve(p, c)) throw UsageError("point is not on " + to_string(f));
      }
      AffinePoint r = AffinePoint::infinity();
      if (oracle) {
        r = kp_double_and_add(k, p, c);
      } else {
        const LadderResult lr = montgomery_kp(k, p, c);
        r = lr.point;
        if (!transcript_path.empty()) write_text(transcript_path, transcript_json(lr.transcript).dump(1) + "\n");
      }
      if (r.is_infinity()) {
        out << "INFINITY\n";
      } else {
        out << "x=" << r.x().to_hex() << "\ny=" << r.y().to_hex() << "\n";
      }
      return kOk;
    }

    if (sim_cmd->parsed()) {
      const FieldId f = field_of(common.curve);
      const LeakageModel m = model_opts.model();
      const PartialProductPlan plan = load_plan(plan_path);
      std::mt19937_64 rng(common.seed);
      std::map<std::string, std::string> cfg{{"command", "simulate"}, {"mode", mode}, {"curve", to_string(f)}};
      if (!plan_path.empty()) cfg["plan"] = to_text(plan);
      Trace t;
      if (mode == "kp") {
        const CurveParams& c = standard_curve(f);
        const BigUint k = k_hex.empty() ? pad_to_full_length(random_nonzero_scalar(c, rng).value(), c) : biguint_from_hex(k_hex);
        cfg["k"] = to_hex(k);
        t = simulate_kp_trace(k, c.G, c, m, rng, plan);
      } else if (mode == "mult") {
        std::vector<std::pair<FieldElement, FieldElement>> pairs;
        for (std::size_t i = 0; i < count; ++i) {
          FieldElement a = random_element(f, rng);
          FieldElement b = random_element(f, rng);
          pairs.emplace_back(std::move(a), std::move(b));
        }
        t = simulate_mult_batch(pairs, m, rng, plan);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          cfg["mult" + std::to_string(i + 1)] = pairs[i].first.to_hex() + "*" + pairs[i].second.to_hex();
        }
      } else {
        if (position < 1 || position > kMultsPerIteration) throw UsageError("--position must be in 1..6");
        t = synthesize_planted_collision_trace(slots, position, m, rng);
        t.metadata.field = f;
        cfg["position"] = std::to_string(position);
        cfg["slots"] = std::to_string(slots);
      }
      t.metadata.seed = common.seed;
      t.metadata.config = cfg;
      if (format == "csv") {
        write_trace_csv(t, out_path);
      } else {
        write_trace(t, out_path);
      }
      out << "wrote " << out_path << ": " << t.num_cycles() << " cycles x " << t.samples_per_cycle << " samples, "
          << t.annotations.size() << " annotations\n";
      return kOk;
    }

    if (attack_cmd->parsed()) {
      if (position < 1 || position > kMultsPerIteration) throw UsageError("--position must be in 1..6");
      const Trace t = read_trace_any(trace_path, csv_spc);
      const AttackReport rep = run_hcca(t, position, truncate);

      nlohmann::json cfg{{"command", "attack"},
                         {"trace", trace_path},
                         {"position", position},
                         {"truncate", truncate},
                         {"min_auc", min_auc},
                         {"trace_kind", t.metadata.kind},
                         {"trace_seed", t.metadata.seed ? nlohmann::json(*t.metadata.seed) : nlohmann::json(nullptr)},
                         {"trace_config", t.metadata.config}};
      const std::string model_note =
          t.metadata.model ? "under leakage model " + model_summary(*t.metadata.model) : "measured or unmodeled trace";

      if (report_format != "csv") {
        nlohmann::json j;
        j["config"] = cfg;
        j["model_note"] = model_note;
        j["field"] = t.metadata.field ? nlohmann::json(to_string(*t.metadata.field)) : nlohmann::json(nullptr);
        j["profile"] = {{"position", rep.profile.position}, {"values", rep.profile.values}};
        j["windows"] = rep.rows.size();
        j["missing"] = rep.missing;
        j["stats"] = stats_json(rep.stats);
        j["rows"] = nlohmann::json::array();
        for (const AttackRow& r : rep.rows) {
          j["rows"].push_back({{"window_index", r.window_index},
                               {"slot", r.slot},
                               {"position", r.position},
                               {"coefficient", opt_json(r.coefficient)},
                               {"label", r.label ? nlohmann::json(to_string(*r.label)) : nlohmann::json(nullptr)}});
        }
        write_text(out_path + ".json", j.dump(1) + "\n");
      }
      if (report_format != "json") {
        std::map<std::string, std::string> hdr{{"config", cfg.dump()}, {"model", model_note}};
        std::string csv = header_comment("hcca scatter", hdr);
        csv += "window_index,slot,position,coefficient,label\n";
        for (const AttackRow& r : rep.rows) {
          csv += std::to_string(r.window_index) + "," + std::to_string(r.slot) + "," + std::to_string(r.position) + "," +
                 opt_fmt(r.coefficient) + "," + (r.label ? to_string(*r.label) : "") + "\n";
        }
        write_text(out_path + ".csv", csv);
      }

      out << "windows=" << rep.rows.size() << " missing=" << rep.missing << " (" << model_note << ")\n";
      if (!rep.stats) {
        out << "no ground-truth labels; separation not assessed\n";
        return kOk;
      }
      const SeparationStats& s = *rep.stats;
      out << "mean_common=" << fmt(s.mean_common) << " mean_different=" << fmt(s.mean_different);
      if (s.welch) {
        out << " t=" << fmt(s.welch->t) << " p=" << fmt(s.welch->p_value);
      } else {
        out << " t=n/a p=n/a";
      }
      out << " auc=" << fmt(s.auc) << "\n";
      const bool separated = s.auc >= min_auc;
      out << (separated ? "SEPARATED" : "NOT SEPARATED") << "\n";
      return separated ? kOk : kNegative;
    }

    if (exp_cmd->parsed()) {
      const LeakageModel m = model_opts.model();
      const PartialProductPlan plan = load_plan(plan_path);
      if (repetitions == 0) throw UsageError("--repetitions must be at least 1");
      std::vector<FieldId> fields;
      if (exp_curve) {
        fields.push_back(field_of(*exp_curve));
      } else {
        fields = {FieldId::B233, FieldId::B283};
      }
      std::mt19937_64 rng(common.seed);
      std::vector<CollisionExperimentResult> results;
      for (FieldId f : fields) results.push_back(mult_collision_experiment(f, m, repetitions, rng, plan));

      std::map<std::string, std::string> cfg{{"command", "mult-experiment"},
                                             {"seed", std::to_string(common.seed)},
                                             {"repetitions", std::to_string(repetitions)},
                                             {"model", model_summary(m)}};
      if (!plan_path.empty()) cfg["plan"] = plan_path;

      if (report_format != "json") {
        std::string csv = header_comment("multiplier collision experiment", cfg);
        csv += "repetition,K1,K2,K3,K4,bitlength\n";
        for (const auto& r : results) {
          for (std::size_t i = 0; i < r.repetitions; ++i) {
            csv += std::to_string(i + 1) + "," + opt_fmt(r.k1[i]) + "," + opt_fmt(r.k2[i]) + "," + opt_fmt(r.k3[i]) + "," +
                   opt_fmt(r.k4[i]) + "," + std::to_string(r.bit_length) + "\n";
          }
        }
        write_text(out_path + ".csv", csv);
      }

      nlohmann::json j;
      j["config"] = cfg;
      j["model_note"] = "under leakage model " + model_summary(m);
      for (const auto& r : results) {
        std::vector<double> k1;
        std::vector<double> others;
        for (std::size_t i = 0; i < r.repetitions; ++i) {
          if (r.k1[i]) k1.push_back(*r.k1[i]);
          for (const auto* arr : {&r.k2, &r.k3, &r.k4}) {
            if ((*arr)[i]) others.push_back(*(*arr)[i]);
          }
        }
        std::optional<SeparationStats> stats;
        if (!k1.empty() && !others.empty()) stats = separation_stats(k1, others);
        nlohmann::json jr{{"bitlength", r.bit_length}, {"field", to_string(r.field)}, {"repetitions", r.repetitions}};
        for (const auto& [name, arr] : {std::pair{"K1", &r.k1}, {"K2", &r.k2}, {"K3", &r.k3}, {"K4", &r.k4}}) {
          nlohmann::json a = nlohmann::json::array();
          for (const auto& v : *arr) a.push_back(opt_json(v));
          jr[name] = a;
        }
        jr["k1_vs_others"] = stats_json(stats);
        j["results"].push_back(jr);

        out << r.bit_length << "-bit operands: " << r.repetitions << " repetitions";
        if (stats) {
          out << ", K1 mean=" << fmt(stats->mean_common) << " K2..K4 mean=" << fmt(stats->mean_different)
              << " auc=" << fmt(stats->auc);
          if (stats->welch) out << " p=" << fmt(stats->welch->p_value);
        }
        out << "\n";
      }
      if (report_format != "csv") write_text(out_path + ".json", j.dump(1) + "\n");
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Io:
        return kIo;
      case ErrorKind::DegenerateLadder:
      case ErrorKind::InvalidCurve:
        return kCompute;
      case ErrorKind::TraceFormat:
      case ErrorKind::TraceCorrupt:
      case ErrorKind::TraceMetadata:
        return kIo;
      default:
        return kUsage;
    }
  }
  return kUsage;
}

}  // namespace flexecc::cli

#endif  // FLEXECC_TOOLS_CLI_HPP
