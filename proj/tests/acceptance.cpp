// Acceptance run: one line per criterion, "AC<k> PASS|FAIL|DEVIATION <seconds>s <detail>".
// DEVIATION marks a stated value that is mathematically wrong; the line says
// what was expected and what every independent method computes instead.
// Exit status is non-zero iff some criterion FAILs.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "cranklab/cranklab.hpp"
#include "oracles.hpp"

using namespace cranklab;

namespace {

enum class Status { pass, fail, deviation };

struct Outcome {
  Status status = Status::pass;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    status = Status::fail;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

int failures = 0;

void criterion(const std::string& id, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.status = Status::fail;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s && o.status != Status::fail) {
    o.status = Status::fail;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("time limit ") + std::to_string(limit_s) + "s exceeded";
  }
  const char* word = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "DEVIATION";
  failures += o.status == Status::fail;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << id << " " << word << " " << secs << "s";
  if (limit_s > 0) line << " (limit " << limit_s << "s)";
  if (!o.detail.empty()) line << " " << o.detail;
  std::cout << line.str() << std::endl;
}

std::map<std::int64_t, CountValue> as_map(const std::map<int, std::uint64_t>& h) {
  std::map<std::int64_t, CountValue> out;
  for (const auto& [m, c] : h) out[m] = c;
  return out;
}

std::vector<int> conjugate(std::span<const int> parts) {
  std::vector<int> out(parts.front(), 0);
  for (int p : parts)
    for (int i = 0; i < p; ++i) ++out[i];
  return out;
}

}  // namespace

int main() {
  criterion("AC1", 1.0, [] {
    Outcome o;
    o.require(partition_count(8) == 22, "p(8) != 22");
    o.require(rank(Partition({3, 2, 2, 1})) == -1, "rank(3+2+2+1) != -1");
    o.require(rank(Partition({5, 1, 1})) == 2, "rank(5+1+1) != 2");
    o.require(crank(Partition({4, 2, 1})) == 1, "crank(4+2+1) != 1");
    o.require(crank(Partition({4, 3, 2})) == 4, "crank(4+3+2) != 4");
    o.require(congruent<std::int64_t>(8649, 3462, 1729), "8649 !~ 3462 mod 1729");
    const CountValue p7 = partition_count(7);
    const std::size_t listed = enumerate_partitions(7).size();
    const std::uint64_t recursion = oracle::count_partitions(7);
    if (o.status == Status::pass && p7 != 14) {
      // the stated p(7) = 14 is a misprint; only report it as such if every method agrees on 15
      if (p7 == 15 && listed == 15 && recursion == 15) {
        o.status = Status::deviation;
        o.detail = "stated p(7)=14 is wrong: recurrence, enumeration and the q(n,k) recursion all give 15; "
                   "the other six checks pass exactly";
      } else {
        o.require(false, "p(7) methods disagree");
      }
    }
    return o;
  });

  criterion("AC2", 30.0, [] {
    Outcome o;
    const auto series = euler_partition_series(60);
    for (int n = 0; n <= 60; ++n) {
      std::uint64_t enumerated = 0;
      for_each_partition(n, [&](std::span<const int>) { ++enumerated; });
      const auto p = partition_count(n);
      o.require(p == enumerated, "p(" + std::to_string(n) + ") != enumeration count");
      o.require(p == oracle::count_partitions(n), "p(" + std::to_string(n) + ") != recursion oracle");
      o.require(series[n] == p, "series coefficient " + std::to_string(n) + " differs");
    }
    if (o.status == Status::pass) o.detail = "n <= 60, three methods agree";
    return o;
  });

  criterion("AC3", 10.0, [] {
    Outcome o;
    const auto r = verify_ramanujan(1000);
    const auto s = r.summary();
    o.require(s.checked == 4 * 1001 && s.holds == s.checked, std::to_string(s.fails) + " failures");
    o.detail = std::to_string(s.checked) + " instances (5n+4, 7n+5, 11n+6, 25n+24; n <= 1000), " +
               std::to_string(s.fails) + " failures";
    return o;
  });

  criterion("AC4", 120.0, [] {
    Outcome o;
    const auto t = build_stat_table(Statistic::rank, 54, TableMethod::enumeration);
    const auto r = verify_dyson_rank(t, 7);
    o.require(r.summary().checked == 16 && r.summary().holds == 16, std::to_string(r.summary().fails) + " failures");
    o.detail = "rank classes of 5k+4 (mod 5) and 7k+5 (mod 7), k <= 7, enumeration to n = 54: " +
               std::to_string(r.summary().fails) + " failures";
    return o;
  });

  criterion("AC5", 300.0, [] {
    Outcome o;
    const auto series = build_stat_table(Statistic::crank, 556, TableMethod::series);
    const auto enumerated = build_stat_table(Statistic::crank, 40, TableMethod::enumeration);
    for (std::size_t n = 2; n <= 40; ++n)
      o.require(series.row_map(n) == enumerated.row_map(n), "series/enumeration mismatch at n=" + std::to_string(n));
    const auto r = verify_dyson_crank_guess(series, 50);
    o.require(r.summary().checked == 51 && r.summary().holds == 51, std::to_string(r.summary().fails) + " failures");
    o.detail = "eleven crank classes of 11k+6, k <= 50, series to q^556: " + std::to_string(r.summary().fails) +
               " failures; series = enumeration for 2 <= n <= 40";
    return o;
  });

  criterion("AC6", 0, [] {
    Outcome o;
    const auto reference = crank_generating_series(40);
    const auto fast = crank_generating_series_crt(40);
    o.require(reference == fast, "reference and multi-modular series differ");
    for (int n = 2; n <= 40; ++n)
      o.require(reference.row_map(n) == as_map(oracle::crank_histogram(n)), "row " + std::to_string(n) + " differs");
    o.require(reference.row_map(1) == std::map<std::int64_t, BigInt>{{-1, 1}, {0, -1}, {1, 1}}, "row 1 anomaly");
    if (o.status == Status::pass) o.detail = "rows 2..40 equal brute-force histograms; row 1 = {-1:1, 0:-1, 1:1}";
    return o;
  });

  criterion("AC7", 1.0, [] {
    Outcome o;
    int primes = 0;
    for (std::int64_t l = 5; l <= 97; ++l) {
      if (!oracle::is_prime(l)) continue;
      ++primes;
      const auto s = compute_sl(l);
      o.require(s.members.size() == static_cast<std::size_t>((l + 1) / 2), "|S_" + std::to_string(l) + "| wrong");
      o.require(s.members == oracle::sl_by_sweep(l), "S_" + std::to_string(l) + " differs from sweep");
    }
    o.require(compute_sl(5).members == std::vector<std::int64_t>{1, 2, 4}, "S_5 != {1,2,4}");
    if (o.status == Status::pass) o.detail = std::to_string(primes) + " primes 5..97; S_5 = {1, 2, 4}";
    return o;
  });

  criterion("AC8", 600.0, [] {
    Outcome o;
    const auto t = build_stat_table(Statistic::crank, 2000);
    const auto seq = scan_progressions(5, 1, 1, 50, 10, t, 1);
    const unsigned workers = std::max(4u, std::thread::hardware_concurrency());
    const auto par = scan_progressions(5, 1, 1, 50, 10, t, workers);
    o.require(seq == par, "parallel and sequential scans differ");
    std::string list;
    for (const auto& w : seq) {
      o.require(verify_progression(w, t).verdict == Verdict::holds,
                "witness " + std::to_string(w.A) + "k+" + std::to_string(w.B) + " not re-confirmed");
      // recount classes straight from the rows as well
      for (std::uint64_t k = 0; k <= w.k_checked; ++k) {
        const std::size_t n = w.A * k + w.B;
        std::vector<CountValue> classes(5, 0);
        const auto row = t.row(n);
        for (std::size_t i = 0; i < row.size(); ++i)
          classes[static_cast<std::size_t>(floor_mod(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(n), 5))] +=
              row[i];
        for (const auto& c : classes) o.require(c % 5 == 0, "recount failed at n=" + std::to_string(n));
      }
      list += (list.empty() ? "" : ", ") + std::to_string(w.A) + "k+" + std::to_string(w.B);
    }
    o.detail = std::to_string(seq.size()) + " witnesses [" + list + "] re-confirmed; " + std::to_string(workers) +
               "-thread scan identical";
    return o;
  });

  criterion("AC9", 0, [] {
    Outcome o;
    for (int n = 1; n <= 40; ++n) {
      std::map<int, std::uint64_t> cranks;
      for_each_partition(n, [&](std::span<const int> parts) {
        if (detail::rank_of(conjugate(parts)) != -detail::rank_of(parts)) o.require(false, "rank conjugacy n=" + std::to_string(n));
        ++cranks[detail::crank_of(parts)];
      });
      if (n >= 2)
        for (const auto& [m, c] : cranks) o.require(cranks[-m] == c, "crank symmetry n=" + std::to_string(n));
    }

    std::mt19937_64 rng(7);
    const std::vector<std::int64_t> primes = {3, 5, 7, 11, 13, 101, 1009, 7919, 104729};
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    std::uniform_int_distribution<std::int64_t> value(-1'000'000, 1'000'000);
    for (int i = 0; i < 10'000; ++i) {
      const std::int64_t l = primes[pick(rng)], a = value(rng), b = value(rng);
      if (legendre(a * b, l) != legendre(a, l) * legendre(b, l)) o.require(false, "legendre multiplicativity");
    }

    std::uniform_int_distribution<std::int64_t> modulus(1, 1000);
    for (int i = 0; i < 10'000; ++i) {
      const std::int64_t a = value(rng), b = value(rng), c = value(rng), m = modulus(rng);
      const bool ok = congruent(a, a, m) && congruent(a, b, m) == congruent(b, a, m) &&
                      (!(congruent(a, b, m) && congruent(b, c, m)) || congruent(a, c, m));
      if (!ok) o.require(false, "congruence laws");
    }

    const auto dir = std::filesystem::temp_directory_path() / "cranklab_acceptance_cache";
    std::filesystem::remove_all(dir);
    for (auto kind : {Statistic::rank, Statistic::crank}) {
      const auto path = cache_file(dir, cache_kind_for(kind));
      const auto built = load_or_build_table(kind, 40, path);
      const std::string bytes = read_file(path);
      const auto loaded = load_or_build_table(kind, 40, path);
      save_table(path, loaded);
      o.require(loaded == built && read_file(path) == bytes, std::string(to_string(kind)) + " cache round-trip");
    }
    {
      const auto path = cache_file(dir, CacheKind::partition_counts);
      const auto built = load_or_build_partition_counts(400, path);
      const std::string bytes = read_file(path);
      const auto loaded = load_or_build_partition_counts(400, path);
      save_partition_counts(path, loaded);
      o.require(loaded == built && read_file(path) == bytes, "partition count cache round-trip");
    }
    std::filesystem::remove_all(dir);
    if (o.status == Status::pass)
      o.detail = "rank conjugacy and crank symmetry n <= 40; 10^4 Legendre pairs; 10^4 congruence triples; "
                 "cache round-trip byte-identical for all three kinds";
    return o;
  });

  std::cout << (failures == 0 ? "acceptance: all criteria met or documented\n" : "acceptance: FAILURES\n");
  return failures == 0 ? 0 : 1;
}
