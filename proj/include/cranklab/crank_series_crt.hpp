#pragma once

// Fast route to the crank generating series for large truncation orders.
//
// The product is evaluated modulo several word-sized primes, one machine
// word per coefficient, and the exact integers are recovered by Chinese
// remaindering. Only z-exponents m >= 0 are stored: every complete factor
//
//     (1 - q^k) / (1 - (z + 1/z) q^k + q^{2k})
//
// is symmetric under z <-> 1/z, so the partial products stay symmetric.
// For n >= 2 every true coefficient lies in [0, p(n)], so primes are added
// until their product exceeds 2 p(N) + 1, and every recovered row is checked
// against p(n) before it is returned.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cranklab/bigint.hpp"
#include "cranklab/core.hpp"
#include "cranklab/number_theory.hpp"
#include "cranklab/qseries.hpp"

namespace cranklab {

namespace detail {

/// Primes below 2^61 (so four residues sum without overflow), largest first.
inline std::vector<std::uint64_t> crt_primes(std::size_t count) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t c = (std::uint64_t{1} << 61) - 1; primes.size() < count; c -= 2) {
    if (is_prime_u64(c)) primes.push_back(c);
  }
  return primes;
}

/// Half-row crank product modulo one prime. Row n occupies n + 3 words
/// (m = 0..n plus two zero pads) starting at offsets[n].
class HalfCrankRows {
 public:
  explicit HalfCrankRows(std::size_t precision) : offsets_(precision + 2) {
    for (std::size_t n = 0; n <= precision; ++n) offsets_[n + 1] = offsets_[n] + n + 3;
    data_.assign(offsets_.back(), 0);
  }

  std::uint64_t* row(std::size_t n) { return data_.data() + offsets_[n]; }
  const std::uint64_t* row(std::size_t n) const { return data_.data() + offsets_[n]; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint64_t> data_;
};

inline HalfCrankRows crank_half_rows_mod(std::size_t precision, std::uint64_t p) {
  const std::size_t N = precision;
  HalfCrankRows h(N);
  h.row(0)[0] = 1;
  const std::uint64_t two_p = 2 * p;
  for (std::size_t k = 1; k <= N; ++k) {
    // divide by 1 - (z + 1/z) q^k + q^{2k}
    for (std::size_t n = k; n <= N; ++n) {
      std::uint64_t* dst = h.row(n);
      const std::uint64_t* a = h.row(n - k);  // padded, so a[m + 1] is 0 past the end
      const std::size_t top = n - k + 1;      // highest m reached by the shift
      {
        std::uint64_t x = dst[0] + a[1] + a[1];
        if (n >= 2 * k) x += p - h.row(n - 2 * k)[0];
        x -= (x >= two_p) ? two_p : 0;
        x -= (x >= p) ? p : 0;
        dst[0] = x;
      }
      const std::size_t lower = n >= 2 * k ? n - 2 * k : 0;
      const std::uint64_t* b = n >= 2 * k ? h.row(n - 2 * k) : nullptr;
      const std::size_t with_b = b ? lower : 0;  // m in [1, lower] also subtracts row n - 2k
      std::size_t m = 1;
      for (; m <= with_b; ++m) {
        std::uint64_t x = dst[m] + a[m - 1] + a[m + 1] + (p - b[m]);
        x -= (x >= two_p) ? two_p : 0;
        x -= (x >= p) ? p : 0;
        dst[m] = x;
      }
      for (; m <= top; ++m) {
        std::uint64_t x = dst[m] + a[m - 1] + a[m + 1];
        x -= (x >= two_p) ? two_p : 0;
        x -= (x >= p) ? p : 0;
        dst[m] = x;
      }
    }
    // multiply by 1 - q^k
    for (std::size_t n = N; n >= k; --n) {
      std::uint64_t* dst = h.row(n);
      const std::uint64_t* a = h.row(n - k);
      for (std::size_t m = 0; m <= n - k; ++m) {
        std::uint64_t x = dst[m] + (p - a[m]);
        dst[m] = x >= p ? x - p : x;
      }
    }
  }
  return h;
}

}  // namespace detail

/// Same series as crank_generating_series<BigInt>(precision), computed by
/// multi-modular arithmetic. Throws std::runtime_error if a recovered row
/// fails its consistency check against p(n).
inline BivariateSeries<BigInt> crank_generating_series_crt(std::size_t precision) {
  const std::size_t N = precision;
  const auto p_values = partition_counts(N);
  const BigInt bound = N >= 2 ? p_values[N] : BigInt(1);

  // enough primes that [-bound, bound] maps injectively
  std::vector<std::uint64_t> primes;
  {
    BigInt product = 1;
    std::size_t count = 0;
    while (product <= 2 * bound + 1) {
      ++count;
      primes = detail::crt_primes(count);
      product *= BigInt(primes.back());
    }
  }

  std::vector<detail::HalfCrankRows> residues;
  residues.reserve(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) residues.emplace_back(0);
  {
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers > 1 && primes.size() > 1) {
      std::vector<std::jthread> pool;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        pool.emplace_back([&, i] { residues[i] = detail::crank_half_rows_mod(N, primes[i]); });
      }
    } else {
      for (std::size_t i = 0; i < primes.size(); ++i)
        residues[i] = detail::crank_half_rows_mod(N, primes[i]);
    }
  }

  // Garner: x = r_0 + p_0 (t_1 + p_1 (t_2 + ...)), every t_i in [0, p_i)
  const std::size_t r = primes.size();
  std::vector<std::vector<std::uint64_t>> inverse(r, std::vector<std::uint64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < i; ++j)
      inverse[j][i] = detail::powmod64(primes[j] % primes[i], primes[i] - 2, primes[i]);
  BigInt full_product = 1;
  for (auto p : primes) full_product *= BigInt(p);
  const BigInt half_product = full_product / 2;

  BivariateSeries<BigInt> out(N);
  std::vector<std::uint64_t> digits(r);
  for (std::size_t n = 0; n <= N; ++n) {
    auto& row = out.mutable_row(n);
    for (std::size_t m = 0; m <= n; ++m) {
      for (std::size_t i = 0; i < r; ++i) {
        std::uint64_t t = residues[i].row(n)[m];
        for (std::size_t j = 0; j < i; ++j) {
          const std::uint64_t diff = (t + primes[i] - digits[j] % primes[i]) % primes[i];
          t = detail::mulmod64(diff, inverse[j][i], primes[i]);
        }
        digits[i] = t;
      }
      BigInt value = 0;
      for (std::size_t i = r; i-- > 0;) value = value * primes[i] + digits[i];
      if (value > half_product) value -= full_product;
      row[n + m] = value;
      row[n - m] = value;
    }

    const BigInt sum = out.row_sum(n);
    if (sum != p_values[n])
      throw std::runtime_error("crank series row " + std::to_string(n) + " failed the p(n) check");
    if (n >= 2) {
      for (const BigInt& c : row) {
        if (c < 0 || c > p_values[n])
          throw std::runtime_error("crank series coefficient out of range in row " + std::to_string(n));
      }
    }
  }
  return out;
}

}  // namespace cranklab
