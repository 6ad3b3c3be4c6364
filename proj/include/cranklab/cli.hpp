#pragma once

// Command-line front end. run_cli is the whole program minus argv handling,
// so it can be driven in-process by tests.
//
// Exit codes: 0 all expected checks passed, 1 genuine verification failure,
// 2 usage or budget error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cranklab/congruence.hpp"
#include "cranklab/io.hpp"
#include "cranklab/qseries.hpp"
#include "cranklab/tables.hpp"

namespace cranklab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Raised for requests that are well-formed but outside what we will compute.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string cache_dir;
  std::uint64_t budget = PartitionBudget{}.max_n;
};

namespace detail {

inline std::optional<std::filesystem::path> cache_dir(const GlobalOptions& g) {
  if (g.cache_dir.empty()) return std::nullopt;
  return std::filesystem::path(g.cache_dir);
}

/// Writes `body` to `file` if given, else to `out`.
inline void emit(const std::string& file, std::ostream& out, const std::string& body) {
  if (file.empty()) {
    out << body;
    return;
  }
  std::ofstream f(file, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open output file " + file);
  f << body;
}

inline StatTable obtain_table(const GlobalOptions& g, Statistic kind, std::size_t n,
                              std::optional<TableMethod> method, std::ostream& err) {
  const TableMethod m = method.value_or(default_method(kind));
  if (kind == Statistic::rank && m == TableMethod::series)
    throw UsageError("rank tables can only be built by enumeration");
  if (m == TableMethod::enumeration && n > kEnumerationLimit)
    throw UsageError("enumeration budget exceeded: n must be <= " + std::to_string(kEnumerationLimit));
  if (auto dir = cache_dir(g); dir && m == default_method(kind))
    return load_or_build_table(kind, n, cache_file(*dir, cache_kind_for(kind)), &err);
  return build_stat_table(kind, n, m);
}

inline std::string summary_line(const CongruenceReport& r) {
  const auto s = r.summary();
  std::ostringstream os;
  os << r.family() << ": " << s.checked << " checked, " << s.holds << " hold, " << s.fails << " failures, "
     << s.not_applicable << " not-applicable, " << s.out_of_budget << " out-of-budget";
  if (r.failures_expected() && s.fails > 0) os << " (non-congruences are expected here and reported as data)";
  return os.str();
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cranklab: partition counts, rank/crank tables and partition congruence checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  GlobalOptions g;
  app.add_option("--cache-dir", g.cache_dir, "Directory for cached tables")->envname("CRANKLAB_CACHE_DIR");
  app.add_option("--budget", g.budget, "Largest n for which p(n) is evaluated")->capture_default_str();

  // pcount
  auto* pcount = app.add_subcommand("pcount", "Print p(n), or p(n) mod M");
  std::uint64_t pc_n = 0;
  std::optional<std::uint64_t> pc_mod;
  pcount->add_option("n", pc_n, "Argument of p")->required();
  pcount->add_option("--mod", pc_mod, "Reduce modulo M")->check(CLI::PositiveNumber);

  // table
  auto* table = app.add_subcommand("table", "Rank or crank histograms, optionally by residue class");
  std::string tb_kind, tb_out, tb_format = "csv";
  std::string tb_method;
  std::size_t tb_n = 0;
  std::optional<std::uint64_t> tb_q;
  table->add_option("kind", tb_kind, "rank or crank")->required()->check(CLI::IsMember({"rank", "crank"}));
  table->add_option("N", tb_n, "Largest n")->required();
  table->add_option("--q", tb_q, "Aggregate into residue classes mod q")->check(CLI::PositiveNumber);
  table->add_option("--out", tb_out, "Output file (default: stdout)");
  table->add_option("--format", tb_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  table->add_option("--method", tb_method)->check(CLI::IsMember({"enumeration", "series"}));

  // series
  auto* series = app.add_subcommand("series", "Dump the partition or crank generating series");
  std::string se_kind, se_out, se_format = "json";
  std::size_t se_n = 0;
  std::optional<std::uint64_t> se_mod;
  series->add_option("kind", se_kind, "euler or crank")->required()->check(CLI::IsMember({"euler", "crank"}));
  series->add_option("N", se_n, "Precision (highest power of q)")->required();
  series->add_option("--mod", se_mod, "Reduce coefficients modulo M (M >= 2)");
  series->add_option("--out", se_out, "Output file (default: stdout)");
  series->add_option("--format", se_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Check a congruence family and report every instance");
  std::string vf_family, vf_out, vf_format = "text";
  std::optional<std::int64_t> vf_nmax, vf_kmax, vf_l, vf_k, vf_m, vf_prime, vf_y, vf_count, vf_A, vf_B, vf_i, vf_j;
  verify
      ->add_option("family", vf_family)
      ->required()
      ->check(CLI::IsMember(
          {"ramanujan", "theta", "dyson-rank", "dyson-crank", "ono", "ahlgren-ono", "mahlburg-progression"}));
  verify->add_option("--nmax", vf_nmax)->check(CLI::NonNegativeNumber);
  verify->add_option("--kmax", vf_kmax)->check(CLI::NonNegativeNumber);
  verify->add_option("--l", vf_l);
  verify->add_option("--k", vf_k);
  verify->add_option("--m", vf_m, "Ono: the prime m");
  verify->add_option("--prime", vf_prime, "Ahlgren-Ono: the prime I");
  verify->add_option("--y", vf_y, "Ahlgren-Ono: residue in S_l");
  verify->add_option("--count", vf_count, "Ahlgren-Ono: number of n values")->check(CLI::NonNegativeNumber);
  verify->add_option("--A", vf_A)->check(CLI::PositiveNumber);
  verify->add_option("--B", vf_B)->check(CLI::NonNegativeNumber);
  verify->add_option("--i", vf_i)->check(CLI::NonNegativeNumber);
  verify->add_option("--j", vf_j)->check(CLI::PositiveNumber);
  verify->add_option("--out", vf_out, "Write the JSON report here");
  verify->add_option("--format", vf_format, "text: summary line; json: full report on stdout")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // scan
  auto* scan = app.add_subcommand("scan", "Search progressions Ak+B with crank classes divisible by l^i");
  std::int64_t sc_l = 5;
  unsigned sc_i = 1, sc_j = 1, sc_threads = 1;
  std::uint64_t sc_amax = 50, sc_kmin = 10;
  std::size_t sc_nmax = 2000;
  std::string sc_out, sc_format = "text";
  scan->add_option("--l", sc_l)->capture_default_str();
  scan->add_option("--i", sc_i)->capture_default_str();
  scan->add_option("--j", sc_j)->check(CLI::PositiveNumber)->capture_default_str();
  scan->add_option("--amax", sc_amax)->check(CLI::PositiveNumber)->capture_default_str();
  scan->add_option("--kmin", sc_kmin)->capture_default_str();
  scan->add_option("--nmax", sc_nmax, "Crank table size")->capture_default_str();
  scan->add_option("--threads", sc_threads)->check(CLI::PositiveNumber)->capture_default_str();
  scan->add_option("--out", sc_out, "Write the JSON witness list here");
  scan->add_option("--format", sc_format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  // sl
  auto* sl = app.add_subcommand("sl", "Print the Ahlgren-Ono set S_l");
  std::int64_t sl_l = 0;
  std::string sl_format = "text";
  sl->add_option("l", sl_l)->required();
  sl->add_option("--format", sl_format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  // cache
  auto* cache = app.add_subcommand("cache", "Build, inspect or clear cached tables");
  std::string ca_action, ca_kind;
  std::size_t ca_n = 0;
  cache->add_option("action", ca_action)->required()->check(CLI::IsMember({"build", "info", "clear"}));
  cache->add_option("kind", ca_kind)->check(CLI::IsMember({"partition_counts", "rank_table", "crank_table"}));
  cache->add_option("N", ca_n);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  };

  try {
    if (*pcount) {
      if (pc_n > g.budget)
        throw UsageError("n = " + std::to_string(pc_n) + " exceeds the budget of " + std::to_string(g.budget));
      if (pc_mod && *pc_mod <= 0xFFFFFFFFull) {
        out << partition_count_mod(pc_n, static_cast<std::uint32_t>(*pc_mod)) << "\n";
        return kExitOk;
      }
      BigInt value;
      if (auto dir = detail::cache_dir(g))
        value = load_or_build_partition_counts(pc_n, cache_file(*dir, CacheKind::partition_counts), &err)[pc_n];
      else
        value = partition_count(pc_n);
      if (pc_mod) value %= *pc_mod;
      out << value << "\n";
      return kExitOk;
    }

    if (*table) {
      const Statistic kind = parse_statistic(tb_kind);
      std::optional<TableMethod> method;
      if (!tb_method.empty()) method = parse_method(tb_method);
      const StatTable t = detail::obtain_table(g, kind, tb_n, method, err);
      std::ostringstream body;
      if (tb_q) {
        if (tb_format == "json")
          body << classes_to_json(t, *tb_q).dump(2) << "\n";
        else
          write_classes_csv(body, t, *tb_q);
      } else if (tb_format == "json") {
        body << table_to_json(t).dump(2) << "\n";
      } else {
        write_table_csv(body, t);
      }
      detail::emit(tb_out, out, body.str());
      return kExitOk;
    }

    if (*series) {
      if (se_mod && *se_mod < 2) throw UsageError("--mod must be at least 2");
      std::ostringstream body;
      if (se_kind == "euler") {
        auto s = euler_partition_series(se_n);
        if (se_mod) s = reduce_mod(s, BigInt(*se_mod));
        if (se_format == "json")
          body << series_to_json(s, "euler_partition_series").dump(2) << "\n";
        else
          write_series_csv(body, s);
      } else {
        auto s = crank_generating_series_crt(se_n);
        if (se_mod) s = reduce_mod(s, BigInt(*se_mod));
        if (se_format == "json")
          body << series_to_json(s, "crank_generating_series").dump(2) << "\n";
        else
          write_series_csv(body, s);
      }
      detail::emit(se_out, out, body.str());
      return kExitOk;
    }

    if (*verify) {
      auto need = [&](const std::optional<std::int64_t>& v, const char* flag) {
        if (!v) throw UsageError(std::string("verify ") + vf_family + " requires " + flag);
        return *v;
      };
      const PartitionBudget budget{g.budget};
      std::optional<CongruenceReport> report;
      if (vf_family == "ramanujan") {
        const auto n_max = static_cast<std::size_t>(vf_nmax.value_or(200));
        if (25 * n_max + 24 > g.budget) throw UsageError("p(25*nmax+24) exceeds the budget");
        report = verify_ramanujan(n_max);
      } else if (vf_family == "theta") {
        const std::int64_t l = need(vf_l, "--l");
        const auto n_max = static_cast<std::size_t>(vf_nmax.value_or(200));
        if (l < 5 || l % 2 == 0 || l % 3 == 0) throw UsageError("--l must be >= 5 and coprime to 6");
        if (static_cast<std::uint64_t>(l) * n_max > g.budget) throw UsageError("p(l*nmax) exceeds the budget");
        report = verify_theta_form(l, n_max);
      } else if (vf_family == "dyson-rank") {
        const auto k_max = static_cast<std::size_t>(vf_kmax.value_or(7));
        report = verify_dyson_rank(detail::obtain_table(g, Statistic::rank, 7 * k_max + 5, std::nullopt, err), k_max);
      } else if (vf_family == "dyson-crank") {
        const auto k_max = static_cast<std::size_t>(vf_kmax.value_or(50));
        report = verify_dyson_crank_guess(
            detail::obtain_table(g, Statistic::crank, 11 * k_max + 6, std::nullopt, err), k_max);
      } else if (vf_family == "ono") {
        report = sweep_ono(need(vf_l, "--l"), vf_k.value_or(1), need(vf_m, "--m"), vf_nmax.value_or(100), budget);
      } else if (vf_family == "ahlgren-ono") {
        report = sweep_ahlgren_ono(need(vf_l, "--l"), vf_k.value_or(1), need(vf_prime, "--prime"),
                                   need(vf_y, "--y"), vf_count.value_or(1), budget);
      } else {
        ProgressionWitness w;
        w.A = static_cast<std::uint64_t>(need(vf_A, "--A"));
        w.B = static_cast<std::uint64_t>(need(vf_B, "--B"));
        w.l = vf_l.value_or(5);
        w.i = static_cast<unsigned>(vf_i.value_or(1));
        w.j = static_cast<unsigned>(vf_j.value_or(1));
        w.k_checked = static_cast<std::uint64_t>(need(vf_kmax, "--kmax"));
        if (w.B >= w.A) throw UsageError("--B must be smaller than --A");
        report = progression_report(
            w, detail::obtain_table(g, Statistic::crank, w.A * w.k_checked + w.B, std::nullopt, err));
      }

      const json doc = report_to_json(*report, elapsed_ms());
      if (!vf_out.empty()) detail::emit(vf_out, out, doc.dump(2) + "\n");
      if (vf_format == "json") {
        out << doc.dump(2) << "\n";
        err << detail::summary_line(*report) << "\n";
      } else {
        out << detail::summary_line(*report) << "\n";
      }
      return report->unexpected_failures() == 0 ? kExitOk : kExitVerificationFailed;
    }

    if (*scan) {
      const StatTable t = detail::obtain_table(g, Statistic::crank, sc_nmax, std::nullopt, err);
      const auto witnesses = scan_progressions(sc_l, sc_i, sc_j, sc_amax, sc_kmin, t, sc_threads);
      json list = json::array();
      std::size_t reverified = 0;
      for (const auto& w : witnesses) {
        const bool ok = verify_progression(w, t).verdict == Verdict::holds;
        reverified += ok;
        json entry = witness_to_json(w);
        entry["reverified"] = ok;
        list.push_back(std::move(entry));
      }
      const json doc = {{"format_version", kFormatVersion},
                        {"command", "scan"},
                        {"framing", "empirical, bounded"},
                        {"parameters",
                         {{"l", sc_l}, {"i", sc_i}, {"j", sc_j}, {"amax", sc_amax}, {"kmin", sc_kmin}, {"nmax", sc_nmax}}},
                        {"witnesses", list},
                        {"summary", {{"candidates", witnesses.size()}, {"reverified", reverified}}},
                        {"timing", {{"elapsed_ms", elapsed_ms()}}}};
      if (!sc_out.empty()) detail::emit(sc_out, out, doc.dump(2) + "\n");
      if (sc_format == "json") {
        out << doc.dump(2) << "\n";
      } else {
        for (const auto& w : witnesses) out << "A=" << w.A << " B=" << w.B << " k_checked=" << w.k_checked << "\n";
        out << "scan: " << witnesses.size() << " candidates, " << reverified << " re-verified\n";
      }
      return reverified == witnesses.size() ? kExitOk : kExitVerificationFailed;
    }

    if (*sl) {
      if (sl_l < 5 || !is_prime(sl_l)) throw UsageError("l must be a prime >= 5");
      const SlSet s = compute_sl(sl_l);
      if (sl_format == "json") {
        out << sl_to_json(s).dump(2) << "\n";
      } else {
        out << "l=" << s.l << " theta=" << s.theta << " x=" << (s.x > 0 ? "+1" : "-1") << " size=" << s.members.size()
            << " members=";
        for (std::size_t i = 0; i < s.members.size(); ++i) out << (i ? " " : "") << s.members[i];
        out << "\n";
      }
      return kExitOk;
    }

    if (*cache) {
      const auto dir = detail::cache_dir(g);
      if (!dir) throw UsageError("cache needs --cache-dir or CRANKLAB_CACHE_DIR");
      if (ca_action == "clear") {
        for (auto kind : {CacheKind::partition_counts, CacheKind::rank_table, CacheKind::crank_table}) {
          if (!ca_kind.empty() && parse_cache_kind(ca_kind) != kind) continue;
          std::filesystem::remove(cache_file(*dir, kind));
        }
        return kExitOk;
      }
      if (ca_kind.empty()) throw UsageError("cache " + ca_action + " needs a kind");
      const CacheKind kind = parse_cache_kind(ca_kind);
      const auto path = cache_file(*dir, kind);
      if (ca_action == "info") {
        std::string why;
        if (auto env = read_envelope(path, kind, why))
          out << to_string(kind) << ": valid, max_n=" << env->max_n << ", checksum=" << env->checksum << "\n";
        else
          out << to_string(kind) << ": unavailable (" << why << ")\n";
        return kExitOk;
      }
      CacheStatus status;
      if (kind == CacheKind::partition_counts) {
        if (ca_n > g.budget) throw UsageError("N exceeds the budget");
        load_or_build_partition_counts(ca_n, path, &err, &status);
      } else {
        const Statistic stat = kind == CacheKind::rank_table ? Statistic::rank : Statistic::crank;
        if (stat == Statistic::rank && ca_n > kEnumerationLimit)
          throw UsageError("enumeration budget exceeded: N must be <= " + std::to_string(kEnumerationLimit));
        load_or_build_table(stat, ca_n, path, &err, &status);
      }
      out << to_string(kind) << ": " << (status.hit ? "already cached" : "built") << " (" << path.string() << ")\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cranklab::cli
