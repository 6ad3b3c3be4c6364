#pragma once

// JSON and CSV encodings for tables, series and reports, plus the versioned
// on-disk cache. Big integers are always written as decimal strings.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "cranklab/bigint.hpp"
#include "cranklab/congruence.hpp"
#include "cranklab/qseries.hpp"
#include "cranklab/tables.hpp"

namespace cranklab {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// ---------------------------------------------------------------- encoding

inline json decimal_array(std::span<const BigInt> values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(to_decimal(v));
  return arr;
}

inline std::vector<BigInt> parse_decimal_array(const json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("expected an array of decimal strings");
  std::vector<BigInt> out;
  out.reserve(arr.size());
  for (const auto& v : arr) out.push_back(from_decimal(v.get<std::string>()));
  return out;
}

/// Human-facing table document: non-zero entries only.
inline json table_to_json(const StatTable& t) {
  json rows = json::array();
  for (std::size_t n = 1; n <= t.max_n(); ++n) {
    json entries = json::array();
    for (const auto& [m, c] : t.row_map(n)) entries.push_back({{"m", m}, {"count", to_decimal(c)}});
    rows.push_back({{"n", n}, {"entries", std::move(entries)}});
  }
  return {{"format_version", kFormatVersion},
          {"kind", std::string(to_string(t.kind()))},
          {"method", std::string(to_string(t.method()))},
          {"max_n", t.max_n()},
          {"rows", std::move(rows)}};
}

inline void write_table_csv(std::ostream& out, const StatTable& t) {
  out << "n,m,count\n";
  for (std::size_t n = 1; n <= t.max_n(); ++n)
    for (const auto& [m, c] : t.row_map(n)) out << n << ',' << m << ',' << c << '\n';
}

inline json classes_to_json(const StatTable& t, std::uint64_t q) {
  json rows = json::array();
  for (std::size_t n = 1; n <= t.max_n(); ++n)
    rows.push_back({{"n", n}, {"counts", decimal_array(class_counts(t, n, q).counts)}});
  return {{"format_version", kFormatVersion},
          {"kind", std::string(to_string(t.kind()))},
          {"method", std::string(to_string(t.method()))},
          {"max_n", t.max_n()},
          {"q", q},
          {"rows", std::move(rows)}};
}

inline void write_classes_csv(std::ostream& out, const StatTable& t, std::uint64_t q) {
  out << "n,residue,count\n";
  for (std::size_t n = 1; n <= t.max_n(); ++n) {
    const auto cv = class_counts(t, n, q);
    for (std::uint64_t r = 0; r < q; ++r) out << n << ',' << r << ',' << cv.counts[r] << '\n';
  }
}

inline json series_to_json(const TruncatedSeries<BigInt>& s, const std::string& kind) {
  return {{"format_version", kFormatVersion},
          {"kind", kind},
          {"precision", s.precision()},
          {"coefficients", decimal_array(s.coefficients())}};
}

inline json series_to_json(const BivariateSeries<BigInt>& s, const std::string& kind) {
  json rows = json::array();
  for (std::size_t n = 0; n <= s.precision(); ++n) {
    rows.push_back({{"n", n},
                    {"m_min", -static_cast<std::int64_t>(n)},
                    {"coefficients", decimal_array(s.row(n))}});
  }
  return {{"format_version", kFormatVersion},
          {"kind", kind},
          {"precision", s.precision()},
          {"rows", std::move(rows)}};
}

inline void write_series_csv(std::ostream& out, const TruncatedSeries<BigInt>& s) {
  out << "n,coefficient\n";
  for (std::size_t n = 0; n <= s.precision(); ++n) out << n << ',' << s[n] << '\n';
}

inline void write_series_csv(std::ostream& out, const BivariateSeries<BigInt>& s) {
  out << "n,m,coefficient\n";
  for (std::size_t n = 0; n <= s.precision(); ++n)
    for (const auto& [m, c] : s.row_map(n)) out << n << ',' << m << ',' << c << '\n';
}

inline json report_to_json(const CongruenceReport& r, double elapsed_ms) {
  json params = json::object();
  for (const auto& [k, v] : r.parameters()) params[k] = v;
  json instances = json::array();
  for (const auto& inst : r.instances()) {
    json inputs = json::object();
    for (const auto& [k, v] : inst.inputs) inputs[k] = v;
    json entry = {{"inputs", std::move(inputs)}, {"verdict", std::string(to_string(inst.verdict))}};
    if (!inst.note.empty()) entry["note"] = inst.note;
    instances.push_back(std::move(entry));
  }
  const auto s = r.summary();
  return {{"format_version", kFormatVersion},
          {"command", "verify " + r.family()},
          {"family", r.family()},
          {"description", r.description()},
          {"framing", "empirical, bounded"},
          {"parameters", std::move(params)},
          {"instances", std::move(instances)},
          {"summary",
           {{"checked", s.checked},
            {"holds", s.holds},
            {"fails", s.fails},
            {"not_applicable", s.not_applicable},
            {"out_of_budget", s.out_of_budget},
            {"failures_expected", r.failures_expected()},
            {"unexpected_failures", r.unexpected_failures()}}},
          {"timing", {{"elapsed_ms", elapsed_ms}}}};
}

inline json witness_to_json(const ProgressionWitness& w) {
  json out = {{"A", w.A}, {"B", w.B}, {"l", w.l}, {"i", w.i}, {"j", w.j},
              {"k_checked", w.k_checked}, {"verdict", std::string(to_string(w.verdict))}};
  if (w.counterexample) out["counterexample"] = {{"k", w.counterexample->first}, {"m", w.counterexample->second}};
  return out;
}

inline json sl_to_json(const SlSet& s) {
  return {{"format_version", kFormatVersion}, {"l", s.l}, {"theta", s.theta}, {"x", s.x},
          {"size", s.members.size()}, {"members", s.members}};
}

// ------------------------------------------------------------------- cache

enum class CacheKind { partition_counts, rank_table, crank_table };

inline std::string_view to_string(CacheKind k) {
  switch (k) {
    case CacheKind::partition_counts: return "partition_counts";
    case CacheKind::rank_table: return "rank_table";
    case CacheKind::crank_table: return "crank_table";
  }
  return "unknown";
}

inline CacheKind parse_cache_kind(std::string_view s) {
  if (s == "partition_counts") return CacheKind::partition_counts;
  if (s == "rank_table") return CacheKind::rank_table;
  if (s == "crank_table") return CacheKind::crank_table;
  throw std::invalid_argument("unknown cache kind: " + std::string(s));
}

inline CacheKind cache_kind_for(Statistic s) {
  return s == Statistic::rank ? CacheKind::rank_table : CacheKind::crank_table;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string checksum_hex(const json& payload) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(payload.dump());
  return os.str();
}

inline json table_payload(const StatTable& t) {
  json rows = json::array();
  for (std::size_t n = 0; n <= t.max_n(); ++n) rows.push_back(decimal_array(t.row(n)));
  return {{"method", std::string(to_string(t.method()))}, {"rows", std::move(rows)}};
}

inline StatTable table_from_payload(Statistic kind, std::size_t max_n, const json& payload) {
  const auto& rows = payload.at("rows");
  if (!rows.is_array() || rows.size() != max_n + 1)
    throw std::invalid_argument("cache payload row count does not match max_n");
  StatTable t(kind, parse_method(payload.at("method").get<std::string>()), max_n);
  for (std::size_t n = 0; n <= max_n; ++n) {
    auto values = parse_decimal_array(rows[n]);
    if (values.size() != 2 * n + 1) throw std::invalid_argument("cache payload row has the wrong width");
    t.mutable_row(n) = std::move(values);
  }
  return t;
}

inline json counts_payload(std::span<const BigInt> values) { return {{"values", decimal_array(values)}}; }

inline std::string make_envelope(CacheKind kind, std::size_t max_n, const json& payload) {
  json envelope = {{"format_version", kFormatVersion},
                   {"kind", std::string(to_string(kind))},
                   {"max_n", max_n},
                   {"checksum", checksum_hex(payload)},
                   {"payload", payload}};
  return envelope.dump() + "\n";
}

/// Writes next to `path` and renames over it, so readers never see a partial file.
inline void write_atomically(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write cache file " + tmp.string());
    f << bytes;
    if (!f.flush()) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

/// Validated envelope contents.
struct CacheEnvelope {
  int format_version = 0;
  CacheKind kind = CacheKind::partition_counts;
  std::size_t max_n = 0;
  std::string checksum;
  json payload;
};

/// Parses and validates a cache file. Returns nullopt with `why` set when the
/// file is missing, unreadable, of another version or kind, or corrupt.
inline std::optional<CacheEnvelope> read_envelope(const std::filesystem::path& path, CacheKind kind,
                                                  std::string& why) {
  if (!std::filesystem::exists(path)) {
    why = "no cache file";
    return std::nullopt;
  }
  try {
    const json doc = json::parse(read_file(path));
    CacheEnvelope env;
    env.format_version = doc.at("format_version").get<int>();
    if (env.format_version != kFormatVersion) {
      why = "format version " + std::to_string(env.format_version) + " != " + std::to_string(kFormatVersion);
      return std::nullopt;
    }
    env.kind = parse_cache_kind(doc.at("kind").get<std::string>());
    if (env.kind != kind) {
      why = "cache holds " + std::string(to_string(env.kind));
      return std::nullopt;
    }
    env.max_n = doc.at("max_n").get<std::size_t>();
    env.checksum = doc.at("checksum").get<std::string>();
    env.payload = doc.at("payload");
    if (checksum_hex(env.payload) != env.checksum) {
      why = "checksum mismatch";
      return std::nullopt;
    }
    return env;
  } catch (const std::exception& e) {
    why = std::string("unreadable cache: ") + e.what();
    return std::nullopt;
  }
}

inline void save_table(const std::filesystem::path& path, const StatTable& t) {
  write_atomically(path, make_envelope(cache_kind_for(t.kind()), t.max_n(), table_payload(t)));
}

inline void save_partition_counts(const std::filesystem::path& path, std::span<const BigInt> values) {
  if (values.empty()) throw std::invalid_argument("nothing to save");
  write_atomically(path, make_envelope(CacheKind::partition_counts, values.size() - 1, counts_payload(values)));
}

/// Outcome of a cache lookup.
struct CacheStatus {
  bool hit = false;
  std::string detail;
};

/// Loads the table at `path` when it is valid and covers max_n (serving a
/// prefix of a larger table); otherwise builds it, replaces the file, and
/// reports why on `warn` when the old file was present but unusable.
inline StatTable load_or_build_table(Statistic kind, std::size_t max_n, const std::filesystem::path& path,
                                     std::ostream* warn = nullptr, CacheStatus* status = nullptr) {
  std::string why;
  if (auto env = read_envelope(path, cache_kind_for(kind), why)) {
    if (env->max_n >= max_n) {
      try {
        StatTable t = table_from_payload(kind, env->max_n, env->payload);
        if (status) *status = {true, "loaded max_n=" + std::to_string(env->max_n)};
        return env->max_n == max_n ? t : t.prefix(max_n);
      } catch (const std::exception& e) {
        why = std::string("malformed payload: ") + e.what();
      }
    } else {
      why = "cache max_n " + std::to_string(env->max_n) + " < " + std::to_string(max_n);
    }
  }
  if (warn && std::filesystem::exists(path)) *warn << "warning: rebuilding " << path.string() << " (" << why << ")\n";
  StatTable t = build_stat_table(kind, max_n);
  save_table(path, t);
  if (status) *status = {false, why};
  return t;
}

inline std::vector<BigInt> load_or_build_partition_counts(std::size_t max_n, const std::filesystem::path& path,
                                                          std::ostream* warn = nullptr,
                                                          CacheStatus* status = nullptr) {
  std::string why;
  if (auto env = read_envelope(path, CacheKind::partition_counts, why)) {
    if (env->max_n >= max_n) {
      try {
        auto values = parse_decimal_array(env->payload.at("values"));
        if (values.size() != env->max_n + 1) throw std::invalid_argument("value count does not match max_n");
        values.resize(max_n + 1);
        if (status) *status = {true, "loaded max_n=" + std::to_string(env->max_n)};
        return values;
      } catch (const std::exception& e) {
        why = std::string("malformed payload: ") + e.what();
      }
    } else {
      why = "cache max_n " + std::to_string(env->max_n) + " < " + std::to_string(max_n);
    }
  }
  if (warn && std::filesystem::exists(path)) *warn << "warning: rebuilding " << path.string() << " (" << why << ")\n";
  auto values = partition_counts(max_n);
  save_partition_counts(path, values);
  if (status) *status = {false, why};
  return values;
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, CacheKind kind) {
  return dir / (std::string(to_string(kind)) + ".json");
}

}  // namespace cranklab
