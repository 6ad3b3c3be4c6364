#pragma once

// p(n) modulo a small modulus for n far beyond the range where exact values
// are practical. Same pentagonal recurrence as PartitionCountTable, carried
// out in Z/MZ and blocked so the long-offset terms run as contiguous loops.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "cranklab/core.hpp"

namespace cranklab {

namespace detail {

struct PentagonalTerm {
  std::size_t offset;
  bool positive;
};

inline std::vector<PentagonalTerm> pentagonal_terms(std::size_t max_n) {
  std::vector<PentagonalTerm> terms;
  for (std::int64_t k = 1;; ++k) {
    const auto g = static_cast<std::size_t>(generalized_pentagonal(k));
    if (g > max_n) break;
    terms.push_back({g, pentagonal_sign(k) > 0});
  }
  return terms;
}

// Store holds residues, Acc must hold modulus * (terms.size() + 1) without wrapping.
template <class Store, class Acc>
std::vector<Store> residue_kernel(std::uint32_t modulus, std::size_t max_n,
                                  const std::vector<PentagonalTerm>& terms) {
  constexpr std::size_t kBlock = 4096;
  const Acc m = static_cast<Acc>(modulus);
  std::vector<Store> table(max_n + 1);
  std::vector<Acc> acc(kBlock);
  Store* t = table.data();

  for (std::size_t block = 0; block <= max_n; block += kBlock) {
    const std::size_t end = std::min(block + kBlock, max_n + 1);
    std::fill(acc.begin(), acc.end(), Acc{0});

    // Offsets of at least kBlock only read values finished before this block.
    for (const PentagonalTerm& term : terms) {
      if (term.offset < kBlock) continue;
      if (term.offset >= end) break;
      const std::size_t lo = std::max(block, term.offset);
      const Store* src = t + (lo - term.offset);
      Acc* dst = acc.data() + (lo - block);
      const std::size_t len = end - lo;
      if (term.positive) {
        for (std::size_t i = 0; i < len; ++i) dst[i] = static_cast<Acc>(dst[i] + src[i]);
      } else {
        for (std::size_t i = 0; i < len; ++i) dst[i] = static_cast<Acc>(dst[i] + (m - src[i]));
      }
    }

    for (std::size_t n = block; n < end; ++n) {
      if (n == 0) {
        t[0] = static_cast<Store>(1 % modulus);
        continue;
      }
      std::uint64_t sum = acc[n - block];
      for (const PentagonalTerm& term : terms) {
        if (term.offset >= kBlock || term.offset > n) break;
        const std::uint64_t v = t[n - term.offset];
        sum += term.positive ? v : m - v;
      }
      t[n] = static_cast<Store>(sum % modulus);
    }
  }
  return table;
}

}  // namespace detail

/// p(0..max_n) modulo `modulus`. Lane width is chosen from the modulus so
/// small moduli stream through narrow integers.
inline std::vector<std::uint32_t> partition_residue_table(std::uint32_t modulus,
                                                          std::size_t max_n) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  const auto terms = detail::pentagonal_terms(max_n);
  const std::uint64_t bound = std::uint64_t{modulus} * (terms.size() + 1);
  auto widen = [](const auto& narrow) {
    return std::vector<std::uint32_t>(narrow.begin(), narrow.end());
  };
  if (modulus <= 0xFF && bound <= 0xFFFF)
    return widen(detail::residue_kernel<std::uint8_t, std::uint16_t>(modulus, max_n, terms));
  if (modulus <= 0xFFFF && bound <= 0xFFFFFFFFull)
    return widen(detail::residue_kernel<std::uint16_t, std::uint32_t>(modulus, max_n, terms));
  return detail::residue_kernel<std::uint32_t, std::uint64_t>(modulus, max_n, terms);
}

/// Shared cache of p(n) mod M tables, one per modulus.
class PartitionResidues {
 public:
  static PartitionResidues& shared() {
    static PartitionResidues cache;
    return cache;
  }

  std::uint32_t at(std::size_t n, std::uint32_t modulus) {
    std::lock_guard lock(mutex_);
    auto& table = tables_[modulus];
    if (table.size() <= n) {
      // grow geometrically so sweeps over increasing n stay linear overall
      const std::size_t target = std::max(n, table.size() + table.size() / 2);
      table = partition_residue_table(modulus, target);
    }
    return table[n];
  }

 private:
  std::mutex mutex_;
  std::map<std::uint32_t, std::vector<std::uint32_t>> tables_;
};

inline std::uint32_t partition_count_mod(std::size_t n, std::uint32_t modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  return PartitionResidues::shared().at(n, modulus);
}

}  // namespace cranklab
