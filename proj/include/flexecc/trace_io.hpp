#ifndef FLEXECC_TRACE_IO_HPP
#define FLEXECC_TRACE_IO_HPP

// HCT1 binary traces and CSV + JSON sidecar traces.
//
// HCT1 layout, little-endian throughout:
//   offset  0  4 bytes  magic "HCT1"
//   offset  4  u16      version (1)
//   offset  6  u32      samples per cycle
//   offset 10  u64      cycle count
//   offset 18  u32      metadata length in bytes
//   offset 22  UTF-8 JSON metadata (model, field, seed, config, annotations)
//   then cycle count * samples per cycle IEEE-754 binary64 samples

#include <array>
#include <bit>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "flexecc/error.hpp"
#include "flexecc/gf2m.hpp"
#include "flexecc/leakage.hpp"

namespace flexecc {

inline constexpr std::array<char, 4> kTraceMagic{'H', 'C', 'T', '1'};
inline constexpr std::uint16_t kTraceVersion = 1;
inline constexpr std::size_t kTraceHeaderBytes = 22;

struct TraceFileHeader {
  std::uint16_t version = kTraceVersion;
  std::uint32_t samples_per_cycle = 0;
  std::uint64_t num_cycles = 0;
  std::uint32_t metadata_len = 0;
};

// ---------------------------------------------------------------------------
// Metadata JSON

inline nlohmann::json model_to_json(const LeakageModel& m) {
  return {{"alpha", m.alpha},
          {"beta", m.beta},
          {"gamma", m.gamma},
          {"sigma", m.sigma},
          {"samples_per_cycle", m.samples_per_cycle},
          {"shape", m.shape}};
}

inline LeakageModel model_from_json(const nlohmann::json& j) {
  LeakageModel m;
  m.alpha = j.at("alpha").get<double>();
  m.beta = j.at("beta").get<double>();
  m.gamma = j.at("gamma").get<double>();
  m.sigma = j.at("sigma").get<double>();
  m.samples_per_cycle = j.at("samples_per_cycle").get<std::size_t>();
  m.shape = j.at("shape").get<std::vector<double>>();
  return m;
}

inline nlohmann::json annotation_to_json(const Annotation& a) {
  nlohmann::json j{{"kind", to_string(a.kind)},
                   {"first_cycle", a.first_cycle},
                   {"cycle_count", a.cycle_count},
                   {"label", a.label},
                   {"tags", a.tags}};
  if (a.slot) j["slot"] = *a.slot;
  if (a.position) j["position"] = *a.position;
  return j;
}

inline Annotation annotation_from_json(const nlohmann::json& j) {
  Annotation a;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "slot") {
    a.kind = AnnotationKind::Slot;
  } else if (kind == "mult") {
    a.kind = AnnotationKind::Multiplication;
  } else {
    throw Error(ErrorKind::TraceMetadata, "unknown annotation kind '" + kind + "'");
  }
  a.first_cycle = j.at("first_cycle").get<std::size_t>();
  a.cycle_count = j.at("cycle_count").get<std::size_t>();
  a.label = j.value("label", std::string());
  if (j.contains("slot")) a.slot = j.at("slot").get<std::size_t>();
  if (j.contains("position")) a.position = j.at("position").get<std::size_t>();
  a.tags = j.value("tags", std::vector<std::string>{});
  return a;
}

inline nlohmann::json metadata_to_json(const Trace& t) {
  const TraceMetadata& md = t.metadata;
  nlohmann::json j;
  j["kind"] = md.kind;
  j["field"] = md.field ? nlohmann::json(to_string(*md.field)) : nlohmann::json(nullptr);
  j["seed"] = md.seed ? nlohmann::json(*md.seed) : nlohmann::json(nullptr);
  j["model"] = md.model ? model_to_json(*md.model) : nlohmann::json(nullptr);
  j["config"] = md.config;
  j["annotations"] = nlohmann::json::array();
  for (const Annotation& a : t.annotations) j["annotations"].push_back(annotation_to_json(a));
  return j;
}

// Fills metadata and annotations of `t` from JSON.
inline void metadata_from_json(const nlohmann::json& j, Trace& t) {
  try {
    TraceMetadata md;
    md.kind = j.value("kind", std::string());
    if (j.contains("field") && !j.at("field").is_null()) {
      const auto f = parse_field_id(j.at("field").get<std::string>());
      if (!f) throw Error(ErrorKind::TraceMetadata, "unknown field in metadata");
      md.field = *f;
    }
    if (j.contains("seed") && !j.at("seed").is_null()) md.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("model") && !j.at("model").is_null()) md.model = model_from_json(j.at("model"));
    if (j.contains("config")) md.config = j.at("config").get<std::map<std::string, std::string>>();
    std::vector<Annotation> anns;
    if (j.contains("annotations")) {
      for (const auto& a : j.at("annotations")) anns.push_back(annotation_from_json(a));
    }
    t.metadata = std::move(md);
    t.annotations = std::move(anns);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::TraceMetadata, std::string("malformed metadata: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// HCT1

namespace detail {

template <class T>
void put_le(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF));
}

template <class T>
T get_le(std::string_view in, std::size_t off) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[off + i])) << (8 * i);
  return static_cast<T>(v);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::Io, "read failed: " + path);
  return data;
}

inline void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path);
}

}  // namespace detail

/// Serialized HCT1 bytes for a validated trace.
inline std::string encode_trace(const Trace& t) {
  validate_trace(t);
  if (t.samples_per_cycle > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorKind::TraceFormat, "samples per cycle exceeds 32 bits");
  }
  const std::string meta = metadata_to_json(t).dump();
  if (meta.size() > std::numeric_limits<std::uint32_t>::max()) throw Error(ErrorKind::TraceFormat, "metadata too large");
  std::string out;
  out.reserve(kTraceHeaderBytes + meta.size() + t.samples.size() * 8);
  out.append(kTraceMagic.begin(), kTraceMagic.end());
  detail::put_le<std::uint16_t>(out, kTraceVersion);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(t.samples_per_cycle));
  detail::put_le<std::uint64_t>(out, t.num_cycles());
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(meta.size()));
  out += meta;
  for (double v : t.samples) detail::put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

/// Parses HCT1 bytes. Distinct error kinds: TraceFormat (magic, version,
/// header values), TraceCorrupt (truncation or trailing bytes, naming the
/// section), TraceMetadata (JSON or annotation problems).
inline Trace decode_trace(std::string_view data) {
  if (data.size() < kTraceMagic.size()) throw Error(ErrorKind::TraceCorrupt, "truncated header (magic)");
  if (!std::equal(kTraceMagic.begin(), kTraceMagic.end(), data.begin())) {
    throw Error(ErrorKind::TraceFormat, "bad magic, not an HCT1 trace");
  }
  if (data.size() < kTraceHeaderBytes) throw Error(ErrorKind::TraceCorrupt, "truncated header");
  TraceFileHeader h;
  h.version = detail::get_le<std::uint16_t>(data, 4);
  h.samples_per_cycle = detail::get_le<std::uint32_t>(data, 6);
  h.num_cycles = detail::get_le<std::uint64_t>(data, 10);
  h.metadata_len = detail::get_le<std::uint32_t>(data, 18);
  if (h.version != kTraceVersion) throw Error(ErrorKind::TraceFormat, "unsupported version " + std::to_string(h.version));
  if (h.samples_per_cycle == 0) throw Error(ErrorKind::TraceFormat, "samples per cycle is zero");
  if (data.size() - kTraceHeaderBytes < h.metadata_len) throw Error(ErrorKind::TraceCorrupt, "truncated metadata");
  const std::uint64_t max_samples = std::numeric_limits<std::uint64_t>::max() / 8 / h.samples_per_cycle;
  if (h.num_cycles > max_samples) throw Error(ErrorKind::TraceFormat, "cycle count overflows sample size");
  const std::uint64_t nsamples = h.num_cycles * h.samples_per_cycle;
  const std::size_t payload_off = kTraceHeaderBytes + h.metadata_len;
  const std::uint64_t payload = data.size() - payload_off;
  if (payload < nsamples * 8) throw Error(ErrorKind::TraceCorrupt, "truncated samples");
  if (payload > nsamples * 8) throw Error(ErrorKind::TraceCorrupt, "trailing bytes after samples");

  Trace t;
  t.samples_per_cycle = h.samples_per_cycle;
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(data.substr(kTraceHeaderBytes, h.metadata_len));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::TraceMetadata, std::string("metadata is not valid JSON: ") + e.what());
  }
  metadata_from_json(meta, t);
  t.samples.resize(static_cast<std::size_t>(nsamples));
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    t.samples[i] = std::bit_cast<double>(detail::get_le<std::uint64_t>(data, payload_off + 8 * i));
  }
  validate_trace(t);
  return t;
}

inline void write_trace(const Trace& t, const std::string& path) { detail::write_file(path, encode_trace(t)); }

inline Trace read_trace(const std::string& path) {
  try {
    return decode_trace(detail::read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Io) throw;
    throw Error(e.kind(), path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// CSV: one sample per line (shortest round-trip decimal), plus a JSON
// sidecar holding samples_per_cycle and the same metadata as HCT1.

inline std::string sidecar_path(const std::string& csv_path) { return csv_path + ".meta.json"; }

inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline void write_trace_csv(const Trace& t, const std::string& csv_path) {
  validate_trace(t);
  std::string csv;
  csv.reserve(t.samples.size() * 12);
  for (double v : t.samples) {
    csv += format_double(v);
    csv += '\n';
  }
  nlohmann::json side = metadata_to_json(t);
  side["samples_per_cycle"] = t.samples_per_cycle;
  side["num_cycles"] = t.num_cycles();
  detail::write_file(csv_path, csv);
  detail::write_file(sidecar_path(csv_path), side.dump(2) + "\n");
}

/// Reads a CSV trace. The sidecar defaults to `<csv>.meta.json`; when it
/// does not exist, `samples_per_cycle` must be given and the trace has no
/// annotations (externally measured data).
inline Trace read_trace_csv(const std::string& csv_path, std::optional<std::string> sidecar = std::nullopt,
                            std::optional<std::size_t> samples_per_cycle = std::nullopt) {
  const std::string text = detail::read_file(csv_path);
  Trace t;
  t.metadata.kind = "external";
  const std::string side = sidecar.value_or(sidecar_path(csv_path));
  const bool have_side = sidecar.has_value() || std::filesystem::exists(side);
  std::optional<std::size_t> declared_cycles;
  if (have_side) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(detail::read_file(side));
      t.samples_per_cycle = j.at("samples_per_cycle").get<std::size_t>();
      if (j.contains("num_cycles")) declared_cycles = j.at("num_cycles").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::TraceMetadata, side + ": " + e.what());
    }
    metadata_from_json(j, t);
  } else if (samples_per_cycle) {
    t.samples_per_cycle = *samples_per_cycle;
  } else {
    throw Error(ErrorKind::TraceMetadata, "no sidecar for " + csv_path + " and no samples per cycle given");
  }

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    line.remove_prefix(first);
    // first column only; extra columns are ignored
    line = line.substr(0, line.find_first_of(", \t;"));
    double v = 0.0;
    const auto res = std::from_chars(line.data(), line.data() + line.size(), v);
    if (res.ec != std::errc() || res.ptr != line.data() + line.size()) {
      if (lineno == 1 && t.samples.empty()) continue;  // header row
      throw Error(ErrorKind::TraceCorrupt, csv_path + ": bad sample on line " + std::to_string(lineno));
    }
    t.samples.push_back(v);
  }
  if (t.samples_per_cycle == 0 || t.samples.size() % t.samples_per_cycle != 0) {
    throw Error(ErrorKind::TraceCorrupt, csv_path + ": sample count is not a whole number of cycles");
  }
  if (declared_cycles && *declared_cycles != t.num_cycles()) {
    throw Error(ErrorKind::TraceCorrupt, csv_path + ": sidecar declares " + std::to_string(*declared_cycles) +
                                             " cycles, file has " + std::to_string(t.num_cycles()));
  }
  validate_trace(t);
  return t;
}

/// HCT1 when the file starts with the magic, CSV otherwise.
inline Trace read_trace_any(const std::string& path, std::optional<std::size_t> samples_per_cycle = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  if (in.gcount() == 4 && head == kTraceMagic) return read_trace(path);
  return read_trace_csv(path, std::nullopt, samples_per_cycle);
}

}  // namespace flexecc

#endif  // FLEXECC_TRACE_IO_HPP
