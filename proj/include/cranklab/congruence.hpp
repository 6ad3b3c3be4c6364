#pragma once

// Instance checkers for the Ono and Ahlgren-Ono partition congruences, the
// Ahlgren-Ono residue set S_l, and a bounded search for arithmetic
// progressions Ak+B on which every crank class M(m, l^j, Ak+B) is divisible
// by l^i. All results are empirical and bounded: they check finitely many
// instances and prove nothing about density or infinitude.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cranklab/bigint.hpp"
#include "cranklab/number_theory.hpp"
#include "cranklab/partition_residues.hpp"
#include "cranklab/tables.hpp"

namespace cranklab {

/// Ceiling on the argument of p(.) that checkers will evaluate (mod a small modulus).
struct PartitionBudget {
  std::uint64_t max_n = 1'000'000;
};

/// S_l = { y in [0, l) : ((y + theta_l) / l) is 0 or -x_l }, with x_l = (-6 / l).
struct SlSet {
  std::int64_t l = 0;
  std::int64_t theta = 0;
  int x = 0;
  std::vector<std::int64_t> members;

  bool contains(std::int64_t y) const {
    return std::binary_search(members.begin(), members.end(), y);
  }
};

inline void require_prime_at_least_5(std::int64_t l, const char* what) {
  if (l < 5 || !is_prime(l))
    throw std::invalid_argument(std::string(what) + " must be a prime >= 5, got " + std::to_string(l));
}

inline SlSet compute_sl(std::int64_t l) {
  require_prime_at_least_5(l, "l");
  SlSet s;
  s.l = l;
  s.theta = theta(l);
  s.x = legendre(-6, l);
  for (std::int64_t y = 0; y < l; ++y) {
    const int symbol = legendre(y + s.theta, l);
    if (symbol == 0 || symbol == -s.x) s.members.push_back(y);
  }
  return s;
}

/// Outcome of one congruence instance. argument/residue are set once the
/// applicability gates pass.
struct InstanceCheck {
  Verdict verdict = Verdict::not_applicable;
  std::string reason;
  std::optional<BigInt> argument;
  std::optional<std::uint64_t> residue;
  std::uint64_t modulus = 0;
};

namespace detail {

inline std::uint32_t checked_modulus(std::int64_t l, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("exponent k must be positive");
  const BigInt m = pow_int(l, static_cast<unsigned>(k));
  if (m > 0xFFFFFFFFu) throw std::invalid_argument("modulus l^k does not fit in 32 bits");
  return static_cast<std::uint32_t>(m);
}

inline InstanceCheck evaluate_divisibility(InstanceCheck check, const BigInt& numerator,
                                           const PartitionBudget& budget) {
  if (numerator % 24 != 0) {
    check.reason = "argument is not an integer (24 does not divide the numerator)";
    return check;
  }
  const BigInt arg = numerator / 24;
  check.argument = arg;
  if (arg > budget.max_n) {
    check.verdict = Verdict::out_of_budget;
    check.reason = "argument exceeds the p(n) budget of " + std::to_string(budget.max_n);
    return check;
  }
  const auto r = partition_count_mod(static_cast<std::size_t>(arg), static_cast<std::uint32_t>(check.modulus));
  check.residue = r;
  check.verdict = r == 0 ? Verdict::holds : Verdict::fails;
  return check;
}

}  // namespace detail

/// p((l^k m^3 n + 1) / 24) = 0 mod l, applicable when gcd(n, m) = 1 and the
/// argument is an integer.
inline InstanceCheck check_ono_instance(std::int64_t l, std::int64_t k, std::int64_t m,
                                        std::int64_t n, const PartitionBudget& budget = {}) {
  require_prime_at_least_5(l, "l");
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!is_prime(m)) throw std::invalid_argument("m must be prime, got " + std::to_string(m));
  if (n < 0) throw std::invalid_argument("n must be non-negative");

  InstanceCheck check;
  check.modulus = detail::checked_modulus(l, 1);
  if (gcd_i64(n, m) != 1) {
    check.reason = "n is not coprime to m";
    return check;
  }
  const BigInt numerator = pow_int(l, static_cast<unsigned>(k)) * pow_int(m, 3) * n + 1;
  return detail::evaluate_divisibility(std::move(check), numerator, budget);
}

/// p((I^3 n + 1) / 24) = 0 mod l^k, applicable when y is in S_l, I is a prime
/// congruent to -1 mod 24l, n = 1 - 24y mod 24l, and gcd(I, n) = 1.
inline InstanceCheck check_ahlgren_ono_instance(std::int64_t l, std::int64_t k, std::int64_t prime_i,
                                                std::int64_t y, std::int64_t n,
                                                const PartitionBudget& budget = {}) {
  require_prime_at_least_5(l, "l");
  InstanceCheck check;
  check.modulus = detail::checked_modulus(l, k);
  if (n < 1) throw std::invalid_argument("n must be positive");

  const SlSet sl = compute_sl(l);
  const std::int64_t step = 24 * l;
  if (y < 0 || y >= l || !sl.contains(y)) {
    check.reason = "y is not in S_l";
    return check;
  }
  if (!is_prime(prime_i)) {
    check.reason = "I is not prime";
    return check;
  }
  if (floor_mod(prime_i, step) != step - 1) {
    check.reason = "I is not congruent to -1 mod 24l";
    return check;
  }
  if (floor_mod(n, step) != floor_mod(1 - 24 * y, step)) {
    check.reason = "n is not congruent to 1 - 24y mod 24l";
    return check;
  }
  if (gcd_i64(prime_i, n) != 1) {
    check.reason = "n is not coprime to I";
    return check;
  }
  const BigInt numerator = pow_int(prime_i, 3) * n + 1;
  return detail::evaluate_divisibility(std::move(check), numerator, budget);
}

namespace detail {

inline CheckedInstance to_checked(std::vector<std::pair<std::string, std::string>> inputs,
                                  const InstanceCheck& c) {
  if (c.argument) inputs.emplace_back("argument", to_decimal(*c.argument));
  inputs.emplace_back("modulus", std::to_string(c.modulus));
  if (c.residue) inputs.emplace_back("residue", std::to_string(*c.residue));
  return {std::move(inputs), c.verdict, c.reason};
}

}  // namespace detail

/// Ono instances for n = 0..n_max with fixed (l, k, m). The theorem covers a
/// positive proportion of primes m, so a failing m is data, not an error.
inline CongruenceReport sweep_ono(std::int64_t l, std::int64_t k, std::int64_t m, std::int64_t n_max,
                                  const PartitionBudget& budget = {}) {
  CongruenceReport report("ono", "p((l^k m^3 n + 1)/24) = 0 mod l for n coprime to m", true);
  report.add_parameter("l", std::to_string(l));
  report.add_parameter("k", std::to_string(k));
  report.add_parameter("m", std::to_string(m));
  report.add_parameter("nmax", std::to_string(n_max));
  report.add_parameter("budget", std::to_string(budget.max_n));
  for (std::int64_t n = 0; n <= n_max; ++n) {
    report.add(detail::to_checked({{"n", std::to_string(n)}}, check_ono_instance(l, k, m, n, budget)));
  }
  return report;
}

/// Ahlgren-Ono instances for the first `count` positive n = 1 - 24y mod 24l.
inline CongruenceReport sweep_ahlgren_ono(std::int64_t l, std::int64_t k, std::int64_t prime_i,
                                          std::int64_t y, std::int64_t count,
                                          const PartitionBudget& budget = {}) {
  require_prime_at_least_5(l, "l");
  CongruenceReport report("ahlgren-ono",
                          "p((I^3 n + 1)/24) = 0 mod l^k for n = 1 - 24y mod 24l, (I, n) = 1", true);
  report.add_parameter("l", std::to_string(l));
  report.add_parameter("k", std::to_string(k));
  report.add_parameter("I", std::to_string(prime_i));
  report.add_parameter("y", std::to_string(y));
  report.add_parameter("count", std::to_string(count));
  report.add_parameter("budget", std::to_string(budget.max_n));
  const std::int64_t step = 24 * l;
  std::int64_t n = floor_mod(1 - 24 * y, step);
  if (n == 0) n = step;
  for (std::int64_t i = 0; i < count; ++i, n += step) {
    report.add(detail::to_checked({{"n", std::to_string(n)}},
                                  check_ahlgren_ono_instance(l, k, prime_i, y, n, budget)));
  }
  return report;
}

/// Candidate progression Ak+B for which M(m, l^j, Ak+B) = 0 mod l^i for every
/// residue m and every k <= k_checked.
struct ProgressionWitness {
  std::uint64_t A = 1;
  std::uint64_t B = 0;
  std::int64_t l = 5;
  unsigned i = 1;
  unsigned j = 1;
  std::uint64_t k_checked = 0;
  Verdict verdict = Verdict::not_applicable;
  /// First (k, m) with a non-divisible class, when the verdict is fails.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> counterexample;

  friend bool operator==(const ProgressionWitness&, const ProgressionWitness&) = default;
};

namespace detail {

inline std::uint64_t checked_power(std::int64_t l, unsigned e) {
  const BigInt v = pow_int(l, e);
  if (v > BigInt(std::numeric_limits<std::uint32_t>::max()))
    throw std::invalid_argument("l^e is too large for a class modulus");
  return static_cast<std::uint64_t>(v);
}

/// Index of the first class of row n not divisible by `divisor`, if any.
inline std::optional<std::uint64_t> first_bad_class(const StatTable& t, std::size_t n,
                                                    std::uint64_t classes, std::uint64_t divisor) {
  const ClassVector cv = class_counts(t, n, classes);
  for (std::uint64_t m = 0; m < classes; ++m)
    if (cv.counts[m] % divisor != 0) return m;
  return std::nullopt;
}

inline void require_crank_table(const StatTable& t) {
  if (t.kind() != Statistic::crank) throw std::invalid_argument("a crank table is required");
}

inline void validate_progression(const ProgressionWitness& w, const StatTable& crank_table) {
  require_crank_table(crank_table);
  require_prime_at_least_5(w.l, "l");
  if (w.A < 1 || w.B >= w.A) throw std::invalid_argument("progression needs A >= 1 and 0 <= B < A");
  if (w.A * w.k_checked + w.B > crank_table.max_n())
    throw std::invalid_argument("crank table does not cover n = A*k_checked + B = " +
                                std::to_string(w.A * w.k_checked + w.B));
}

}  // namespace detail

/// Re-derives the verdict of `w` from the table, recomputing every class count.
inline ProgressionWitness verify_progression(ProgressionWitness w, const StatTable& crank_table) {
  detail::validate_progression(w, crank_table);
  const std::uint64_t classes = detail::checked_power(w.l, w.j);
  const std::uint64_t divisor = detail::checked_power(w.l, w.i);
  w.verdict = Verdict::holds;
  w.counterexample.reset();
  for (std::uint64_t k = 0; k <= w.k_checked; ++k) {
    if (auto bad = detail::first_bad_class(crank_table, w.A * k + w.B, classes, divisor)) {
      w.verdict = Verdict::fails;
      w.counterexample = std::make_pair(k, *bad);
      break;
    }
  }
  return w;
}

/// Every (A <= a_max, B < A), in lexicographic order, whose progression stays
/// divisible for all k with Ak+B inside the table, provided at least k_min
/// values of k fit. Work is split across `threads`; the result does not
/// depend on the split.
inline std::vector<ProgressionWitness> scan_progressions(std::int64_t l, unsigned i, unsigned j,
                                                         std::uint64_t a_max, std::uint64_t k_min,
                                                         const StatTable& crank_table,
                                                         unsigned threads = 1) {
  detail::require_crank_table(crank_table);
  require_prime_at_least_5(l, "l");
  const std::uint64_t classes = detail::checked_power(l, j);
  const std::uint64_t divisor = detail::checked_power(l, i);
  const std::size_t max_n = crank_table.max_n();
  threads = std::max(1u, threads);

  std::vector<char> divisible(max_n + 1, 0);
  auto classify = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t n = lo; n < hi; ++n)
      divisible[n] = !detail::first_bad_class(crank_table, n, classes, divisor).has_value();
  };
  auto search = [&](std::uint64_t a_lo, std::uint64_t a_hi) {
    std::vector<ProgressionWitness> found;
    for (std::uint64_t a = a_lo; a < a_hi; ++a) {
      for (std::uint64_t b = 0; b < a && b <= max_n; ++b) {
        const std::uint64_t k_top = (max_n - b) / a;
        if (k_top + 1 < k_min) continue;
        bool ok = true;
        for (std::uint64_t k = 0; k <= k_top && ok; ++k) ok = divisible[a * k + b] != 0;
        if (ok) found.push_back({a, b, l, i, j, k_top, Verdict::holds, std::nullopt});
      }
    }
    return found;
  };

  std::vector<ProgressionWitness> out;
  if (threads == 1) {
    classify(0, max_n + 1);
    out = search(1, a_max + 1);
    return out;
  }

  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (max_n + threads) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t lo = std::min<std::size_t>(t * chunk, max_n + 1);
      const std::size_t hi = std::min<std::size_t>(lo + chunk, max_n + 1);
      pool.emplace_back(classify, lo, hi);
    }
  }
  std::vector<std::vector<ProgressionWitness>> parts(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      // strided ownership of A balances the cost, which grows with A
      pool.emplace_back([&, t] {
        for (std::uint64_t a = 1 + t; a <= a_max; a += threads) {
          auto found = search(a, a + 1);
          parts[t].insert(parts[t].end(), found.begin(), found.end());
        }
      });
    }
  }
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end(), [](const ProgressionWitness& x, const ProgressionWitness& y) {
    return std::pair(x.A, x.B) < std::pair(y.A, y.B);
  });
  return out;
}

/// Report form of verify_progression, for the CLI.
inline CongruenceReport progression_report(const ProgressionWitness& w, const StatTable& crank_table) {
  detail::validate_progression(w, crank_table);
  CongruenceReport report("mahlburg-progression",
                          "M(m, l^j, Ak+B) = 0 mod l^i for every 0 <= m < l^j and k <= kmax");
  report.add_parameter("A", std::to_string(w.A));
  report.add_parameter("B", std::to_string(w.B));
  report.add_parameter("l", std::to_string(w.l));
  report.add_parameter("i", std::to_string(w.i));
  report.add_parameter("j", std::to_string(w.j));
  report.add_parameter("kmax", std::to_string(w.k_checked));
  const std::uint64_t classes = detail::checked_power(w.l, w.j);
  const std::uint64_t divisor = detail::checked_power(w.l, w.i);
  for (std::uint64_t k = 0; k <= w.k_checked; ++k) {
    const std::size_t n = w.A * k + w.B;
    const ClassVector cv = class_counts(crank_table, n, classes);
    std::vector<CountValue> residues;
    for (const auto& c : cv.counts) residues.push_back(floor_mod(c, BigInt(divisor)));
    const bool ok = std::all_of(residues.begin(), residues.end(), [](const CountValue& r) { return r == 0; });
    report.add({{{"k", std::to_string(k)}, {"n", std::to_string(n)}},
                ok ? Verdict::holds : Verdict::fails,
                "class residues mod " + std::to_string(divisor) + "=" + detail::join_counts(residues)});
  }
  return report;
}

}  // namespace cranklab
