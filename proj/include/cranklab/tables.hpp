#pragma once

// Rank and crank histograms N(m, n), M(m, n), their residue classes
// N(m, q, n), M(m, q, n), and the equal-class verifiers.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cranklab/bigint.hpp"
#include "cranklab/core.hpp"
#include "cranklab/crank_series_crt.hpp"
#include "cranklab/number_theory.hpp"

namespace cranklab {

enum class Statistic { rank, crank };
enum class TableMethod { enumeration, series };

inline std::string_view to_string(Statistic s) { return s == Statistic::rank ? "rank" : "crank"; }
inline std::string_view to_string(TableMethod m) {
  return m == TableMethod::enumeration ? "enumeration" : "series";
}

inline Statistic parse_statistic(std::string_view s) {
  if (s == "rank") return Statistic::rank;
  if (s == "crank") return Statistic::crank;
  throw std::invalid_argument("unknown statistic: " + std::string(s));
}

inline TableMethod parse_method(std::string_view s) {
  if (s == "enumeration") return TableMethod::enumeration;
  if (s == "series") return TableMethod::series;
  throw std::invalid_argument("unknown table method: " + std::string(s));
}

/// Largest n a table may be enumerated to (p(80) is about 1.6e7 partitions).
inline constexpr std::size_t kEnumerationLimit = 80;

/// For each n <= max_n, the histogram m -> number of partitions of n with the
/// statistic equal to m. Row n is stored densely over m in [-n, n]. Row 0 is
/// empty: neither statistic is defined on the empty partition.
class StatTable {
 public:
  StatTable(Statistic kind, TableMethod method, std::size_t max_n)
      : kind_(kind), method_(method), rows_(max_n + 1) {
    for (std::size_t n = 0; n <= max_n; ++n) rows_[n].assign(2 * n + 1, CountValue(0));
  }

  Statistic kind() const noexcept { return kind_; }
  TableMethod method() const noexcept { return method_; }
  std::size_t max_n() const noexcept { return rows_.size() - 1; }

  CountValue count(std::size_t n, std::int64_t m) const {
    const auto bound = static_cast<std::int64_t>(n);
    if (m < -bound || m > bound) return CountValue(0);
    return rows_.at(n)[static_cast<std::size_t>(m + bound)];
  }

  /// Index i of row n holds the count for m = i - n.
  std::span<const CountValue> row(std::size_t n) const { return rows_.at(n); }
  std::vector<CountValue>& mutable_row(std::size_t n) { return rows_.at(n); }

  std::map<std::int64_t, CountValue> row_map(std::size_t n) const {
    std::map<std::int64_t, CountValue> out;
    const auto& row = rows_.at(n);
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i] != 0) out.emplace(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(n), row[i]);
    return out;
  }

  CountValue row_sum(std::size_t n) const {
    CountValue acc = 0;
    for (const auto& c : rows_.at(n)) acc += c;
    return acc;
  }

  /// Rows 0..n of this table.
  StatTable prefix(std::size_t n) const {
    if (n > max_n()) throw std::out_of_range("prefix beyond table range");
    StatTable out(kind_, method_, 0);
    out.rows_.assign(rows_.begin(), rows_.begin() + static_cast<std::ptrdiff_t>(n) + 1);
    return out;
  }

  friend bool operator==(const StatTable&, const StatTable&) = default;

 private:
  Statistic kind_;
  TableMethod method_;
  std::vector<std::vector<CountValue>> rows_;
};

inline TableMethod default_method(Statistic kind) {
  return kind == Statistic::rank ? TableMethod::enumeration : TableMethod::series;
}

/// Exact statistic histograms for every n <= max_n. The series method is
/// only available for cranks; its row 1 keeps the product's signed
/// coefficients {-1: 1, 0: -1, 1: 1}.
inline StatTable build_stat_table(Statistic kind, std::size_t max_n, TableMethod method) {
  StatTable table(kind, method, max_n);
  if (method == TableMethod::series) {
    if (kind == Statistic::rank)
      throw std::invalid_argument("rank tables can only be built by enumeration");
    const auto series = crank_generating_series_crt(max_n);
    for (std::size_t n = 1; n <= max_n; ++n) {
      const auto src = series.row(n);
      std::copy(src.begin(), src.end(), table.mutable_row(n).begin());
    }
    return table;
  }

  if (max_n > kEnumerationLimit)
    throw std::invalid_argument("enumeration is limited to n <= " + std::to_string(kEnumerationLimit));
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto& row = table.mutable_row(n);
    const auto offset = static_cast<std::int64_t>(n);
    std::vector<std::uint64_t> tally(row.size(), 0);
    for_each_partition(static_cast<int>(n), [&](std::span<const int> parts) {
      const int stat = kind == Statistic::rank ? detail::rank_of(parts) : detail::crank_of(parts);
      ++tally[static_cast<std::size_t>(stat + offset)];
    });
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = tally[i];
  }
  return table;
}

inline StatTable build_stat_table(Statistic kind, std::size_t max_n) {
  return build_stat_table(kind, max_n, default_method(kind));
}

/// counts[r] = number of partitions of n whose statistic is congruent to r mod q.
struct ClassVector {
  std::uint64_t q = 1;
  std::size_t n = 0;
  std::vector<CountValue> counts;

  bool all_equal() const {
    return std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) == counts.end();
  }
  CountValue total() const {
    CountValue acc = 0;
    for (const auto& c : counts) acc += c;
    return acc;
  }
};

inline ClassVector class_counts(const StatTable& t, std::size_t n, std::uint64_t q) {
  if (q < 1) throw std::invalid_argument("class modulus must be positive");
  if (n > t.max_n())
    throw std::out_of_range("n = " + std::to_string(n) + " exceeds table max_n = " +
                            std::to_string(t.max_n()));
  ClassVector out{q, n, std::vector<CountValue>(q, CountValue(0))};
  const auto row = t.row(n);
  const auto offset = static_cast<std::int64_t>(n);
  const auto modulus = static_cast<std::int64_t>(q);
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] == 0) continue;
    const std::int64_t m = static_cast<std::int64_t>(i) - offset;
    out.counts[static_cast<std::size_t>(floor_mod(m, modulus))] += row[i];
  }
  return out;
}

enum class Verdict { holds, fails, not_applicable, out_of_budget };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::not_applicable: return "not-applicable";
    case Verdict::out_of_budget: return "out-of-budget";
  }
  return "unknown";
}

/// One checked instance: named inputs (decimal strings), verdict, and a free-form note.
struct CheckedInstance {
  std::vector<std::pair<std::string, std::string>> inputs;
  Verdict verdict = Verdict::not_applicable;
  std::string note;
};

struct ReportSummary {
  std::size_t checked = 0;
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t not_applicable = 0;
  std::size_t out_of_budget = 0;
};

/// Verdicts for a swept family of congruence instances. When
/// failures_expected is set, "fails" records a non-congruence as data.
class CongruenceReport {
 public:
  CongruenceReport(std::string family, std::string description, bool failures_expected = false)
      : family_(std::move(family)),
        description_(std::move(description)),
        failures_expected_(failures_expected) {}

  void add(CheckedInstance instance) { instances_.push_back(std::move(instance)); }
  void add_parameter(std::string key, std::string value) {
    parameters_.emplace_back(std::move(key), std::move(value));
  }

  const std::string& family() const noexcept { return family_; }
  const std::string& description() const noexcept { return description_; }
  bool failures_expected() const noexcept { return failures_expected_; }
  const std::vector<CheckedInstance>& instances() const noexcept { return instances_; }
  const std::vector<std::pair<std::string, std::string>>& parameters() const noexcept {
    return parameters_;
  }

  ReportSummary summary() const {
    ReportSummary s;
    s.checked = instances_.size();
    for (const auto& inst : instances_) {
      switch (inst.verdict) {
        case Verdict::holds: ++s.holds; break;
        case Verdict::fails: ++s.fails; break;
        case Verdict::not_applicable: ++s.not_applicable; break;
        case Verdict::out_of_budget: ++s.out_of_budget; break;
      }
    }
    return s;
  }

  std::size_t unexpected_failures() const { return failures_expected_ ? 0 : summary().fails; }

 private:
  std::string family_;
  std::string description_;
  bool failures_expected_;
  std::vector<std::pair<std::string, std::string>> parameters_;
  std::vector<CheckedInstance> instances_;
};

namespace detail {

inline std::string join_counts(const std::vector<CountValue>& counts) {
  std::string out = "[";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ",";
    out += to_decimal(counts[i]);
  }
  return out + "]";
}

inline CheckedInstance divisibility_instance(std::string family, std::size_t n, std::size_t argument,
                                             std::uint64_t modulus, const CountValue& value) {
  const CountValue residue = value % modulus;
  return {{{"family", std::move(family)},
           {"n", std::to_string(n)},
           {"argument", std::to_string(argument)},
           {"modulus", std::to_string(modulus)},
           {"residue", to_decimal(residue)}},
          residue == 0 ? Verdict::holds : Verdict::fails,
          {}};
}

inline CheckedInstance equal_class_instance(const StatTable& t, std::size_t k, std::size_t n,
                                            std::uint64_t q) {
  const ClassVector cv = class_counts(t, n, q);
  return {{{"k", std::to_string(k)}, {"n", std::to_string(n)}, {"q", std::to_string(q)}},
          cv.all_equal() ? Verdict::holds : Verdict::fails,
          "classes=" + join_counts(cv.counts)};
}

}  // namespace detail

/// Ramanujan's p(5n+4), p(7n+5), p(11n+6) and p(25n+24) families for n <= n_max.
inline CongruenceReport verify_ramanujan(std::size_t n_max) {
  CongruenceReport report("ramanujan",
                          "p(5n+4) = 0 mod 5, p(7n+5) = 0 mod 7, p(11n+6) = 0 mod 11, "
                          "p(25n+24) = 0 mod 25");
  report.add_parameter("nmax", std::to_string(n_max));
  const auto p = partition_counts(25 * n_max + 24);
  struct Family {
    const char* name;
    std::size_t a, b;
    std::uint64_t modulus;
  };
  constexpr Family families[] = {
      {"5n+4", 5, 4, 5}, {"7n+5", 7, 5, 7}, {"11n+6", 11, 6, 11}, {"25n+24", 25, 24, 25}};
  for (const auto& f : families) {
    for (std::size_t n = 0; n <= n_max; ++n) {
      const std::size_t arg = f.a * n + f.b;
      report.add(detail::divisibility_instance(f.name, n, arg, f.modulus, p[arg]));
    }
  }
  return report;
}

/// l | p(l n - theta_l) for 1 <= n <= n_max. Only l in {5, 7, 11} is expected
/// to hold; for other l the failures are reported as data.
inline CongruenceReport verify_theta_form(std::int64_t l, std::size_t n_max) {
  if (l < 5) throw std::invalid_argument("theta form requires l >= 5");
  const std::int64_t th = theta(l);
  const bool ramanujan_prime = l == 5 || l == 7 || l == 11;
  CongruenceReport report("theta", "p(l n - theta_l) = 0 mod l, theta_l = (l^2 - 1)/24",
                          !ramanujan_prime);
  report.add_parameter("l", std::to_string(l));
  report.add_parameter("nmax", std::to_string(n_max));
  report.add_parameter("theta", std::to_string(th));
  if (n_max == 0) return report;
  const auto ul = static_cast<std::size_t>(l);
  const auto p = partition_counts(ul * n_max - static_cast<std::size_t>(th));
  const std::string family = std::to_string(l) + "n-" + std::to_string(th);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t arg = ul * n - static_cast<std::size_t>(th);
    report.add(detail::divisibility_instance(family, n, arg, static_cast<std::uint64_t>(l), p[arg]));
  }
  return report;
}

/// Rank classes mod 5 of 5k+4 and mod 7 of 7k+5 are all equal, for k <= k_max.
inline CongruenceReport verify_dyson_rank(const StatTable& rank_table, std::size_t k_max) {
  if (rank_table.kind() != Statistic::rank)
    throw std::invalid_argument("verify_dyson_rank needs a rank table");
  if (rank_table.max_n() < 7 * k_max + 5)
    throw std::invalid_argument("rank table too small: need max_n >= " + std::to_string(7 * k_max + 5));
  CongruenceReport report("dyson-rank",
                          "N(0,5,5k+4) = ... = N(4,5,5k+4) and N(0,7,7k+5) = ... = N(6,7,7k+5)");
  report.add_parameter("kmax", std::to_string(k_max));
  for (std::size_t k = 0; k <= k_max; ++k) {
    report.add(detail::equal_class_instance(rank_table, k, 5 * k + 4, 5));
    report.add(detail::equal_class_instance(rank_table, k, 7 * k + 5, 7));
  }
  return report;
}

inline CongruenceReport verify_dyson_rank(std::size_t k_max) {
  return verify_dyson_rank(build_stat_table(Statistic::rank, 7 * k_max + 5), k_max);
}

/// All eleven crank classes mod 11 of 11k+6 are equal, for k <= k_max.
inline CongruenceReport verify_dyson_crank_guess(const StatTable& crank_table, std::size_t k_max) {
  if (crank_table.kind() != Statistic::crank)
    throw std::invalid_argument("verify_dyson_crank_guess needs a crank table");
  if (crank_table.max_n() < 11 * k_max + 6)
    throw std::invalid_argument("crank table too small: need max_n >= " +
                                std::to_string(11 * k_max + 6));
  CongruenceReport report("dyson-crank", "M(0,11,11k+6) = M(1,11,11k+6) = ... = M(10,11,11k+6)");
  report.add_parameter("kmax", std::to_string(k_max));
  for (std::size_t k = 0; k <= k_max; ++k)
    report.add(detail::equal_class_instance(crank_table, k, 11 * k + 6, 11));
  return report;
}

inline CongruenceReport verify_dyson_crank_guess(std::size_t k_max) {
  return verify_dyson_crank_guess(build_stat_table(Statistic::crank, 11 * k_max + 6), k_max);
}

}  // namespace cranklab
