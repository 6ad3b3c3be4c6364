#pragma once

// Truncated formal power series in q, and two-variable series whose q^n
// coefficient is a Laurent polynomial in z of degree at most n.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cranklab/bigint.hpp"

namespace cranklab {

/// c_0 + c_1 q + ... + c_N q^N with exact coefficients.
template <class R = BigInt>
class TruncatedSeries {
 public:
  using value_type = R;

  explicit TruncatedSeries(std::size_t precision) : coeffs_(precision + 1, R(0)) {}

  /// Missing high coefficients are zero; extra ones are dropped.
  TruncatedSeries(std::size_t precision, std::vector<R> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(precision + 1, R(0));
  }

  static TruncatedSeries one(std::size_t precision) {
    TruncatedSeries s(precision);
    s.coeffs_[0] = R(1);
    return s;
  }

  std::size_t precision() const noexcept { return coeffs_.size() - 1; }
  const R& operator[](std::size_t i) const { return coeffs_.at(i); }
  R& operator[](std::size_t i) { return coeffs_.at(i); }
  std::span<const R> coefficients() const noexcept { return coeffs_; }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<R> coeffs_;
};

/// Cauchy product truncated at the common precision.
template <class R>
TruncatedSeries<R> series_multiply(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  if (a.precision() != b.precision())
    throw std::invalid_argument("series_multiply: precision mismatch");
  const std::size_t n = a.precision();
  TruncatedSeries<R> out(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

template <class R>
TruncatedSeries<R> operator*(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  return series_multiply(a, b);
}

/// Multiplicative inverse over the integers; the constant term must be +1 or -1.
template <class R>
TruncatedSeries<R> series_invert(const TruncatedSeries<R>& a) {
  const R& c0 = a[0];
  if (c0 != 1 && c0 != -1)
    throw std::invalid_argument("series_invert: constant term must be a unit (+1 or -1)");
  const std::size_t n = a.precision();
  TruncatedSeries<R> b(n);
  b[0] = c0;  // c0 is its own inverse
  for (std::size_t i = 1; i <= n; ++i) {
    R acc(0);
    for (std::size_t k = 1; k <= i; ++k) acc += a[k] * b[i - k];
    b[i] = c0 == 1 ? R(-acc) : acc;
  }
  return b;
}

/// Euler's function prod_{k>=1} (1 - q^k) truncated at q^N.
template <class R = BigInt>
TruncatedSeries<R> pentagonal_series(std::size_t precision) {
  auto s = TruncatedSeries<R>::one(precision);
  for (std::size_t k = 1; k <= precision; ++k) {
    for (std::size_t n = precision; n >= k; --n) s[n] -= s[n - k];
  }
  return s;
}

/// prod_{k=1..N} (1 - q^k)^{-1}: the coefficient of q^n is p(n).
template <class R = BigInt>
TruncatedSeries<R> euler_partition_series(std::size_t precision) {
  auto s = TruncatedSeries<R>::one(precision);
  for (std::size_t k = 1; k <= precision; ++k) {
    for (std::size_t n = k; n <= precision; ++n) s[n] += s[n - k];
  }
  return s;
}

/// Sum over n <= N of L_n(z) q^n where L_n is a Laurent polynomial supported on [-n, n].
template <class R = BigInt>
class BivariateSeries {
 public:
  using value_type = R;

  explicit BivariateSeries(std::size_t precision) : rows_(precision + 1) {
    for (std::size_t n = 0; n <= precision; ++n) rows_[n].assign(2 * n + 1, R(0));
  }

  std::size_t precision() const noexcept { return rows_.size() - 1; }

  /// Coefficient of z^m q^n; zero outside the support.
  R coefficient(std::size_t n, std::int64_t m) const {
    const auto& row = rows_.at(n);
    const auto bound = static_cast<std::int64_t>(n);
    if (m < -bound || m > bound) return R(0);
    return row[static_cast<std::size_t>(m + bound)];
  }

  R& at(std::size_t n, std::int64_t m) {
    const auto bound = static_cast<std::int64_t>(n);
    if (m < -bound || m > bound) throw std::out_of_range("z-exponent outside row support");
    return rows_.at(n)[static_cast<std::size_t>(m + bound)];
  }

  /// Dense row for q^n; index i holds the coefficient of z^(i - n).
  std::span<const R> row(std::size_t n) const { return rows_.at(n); }
  std::vector<R>& mutable_row(std::size_t n) { return rows_.at(n); }

  /// Value of row n at z = 1.
  R row_sum(std::size_t n) const {
    R acc(0);
    for (const R& c : rows_.at(n)) acc += c;
    return acc;
  }

  /// Non-zero entries of row n keyed by z-exponent.
  std::map<std::int64_t, R> row_map(std::size_t n) const {
    std::map<std::int64_t, R> out;
    const auto& row = rows_.at(n);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] != 0) out.emplace(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(n), row[i]);
    }
    return out;
  }

  friend bool operator==(const BivariateSeries&, const BivariateSeries&) = default;

 private:
  std::vector<std::vector<R>> rows_;
};

/// prod_{k=1..N} (1 - q^k) / ((1 - z q^k)(1 - z^{-1} q^k)) truncated at q^N,
/// one factor at a time. For n >= 2 the coefficient of z^m q^n counts the
/// partitions of n with crank m; row 1 is {-1: 1, 0: -1, 1: 1}.
template <class R = BigInt>
BivariateSeries<R> crank_generating_series(std::size_t precision) {
  const std::size_t N = precision;
  BivariateSeries<R> s(N);
  s.at(0, 0) = R(1);
  for (std::size_t k = 1; k <= N; ++k) {
    // 1 / (1 - z q^k): row n picks up row n-k shifted up by one power of z
    for (std::size_t n = k; n <= N; ++n) {
      const auto& src = s.row(n - k);
      auto& dst = s.mutable_row(n);
      const std::size_t shift = k + 1;  // (m + n) - (m - 1 + n - k)
      for (std::size_t i = 0; i < src.size(); ++i) dst[i + shift] += src[i];
    }
    // 1 / (1 - z^{-1} q^k)
    for (std::size_t n = k; n <= N; ++n) {
      const auto& src = s.row(n - k);
      auto& dst = s.mutable_row(n);
      const std::size_t shift = k - 1;
      for (std::size_t i = 0; i < src.size(); ++i) dst[i + shift] += src[i];
    }
    // (1 - q^k), highest rows first so row n-k is still the old value
    for (std::size_t n = N; n >= k; --n) {
      const auto& src = s.row(n - k);
      auto& dst = s.mutable_row(n);
      for (std::size_t i = 0; i < src.size(); ++i) dst[i + k] -= src[i];
    }
  }
  return s;
}

inline void require_reduction_modulus(const BigInt& modulus) {
  if (modulus < 2) throw std::invalid_argument("reduction modulus must be at least 2");
}

/// Every coefficient replaced by its least non-negative residue.
inline TruncatedSeries<BigInt> reduce_mod(const TruncatedSeries<BigInt>& s, const BigInt& modulus) {
  require_reduction_modulus(modulus);
  TruncatedSeries<BigInt> out(s.precision());
  for (std::size_t i = 0; i <= s.precision(); ++i) out[i] = floor_mod(s[i], modulus);
  return out;
}

inline BivariateSeries<BigInt> reduce_mod(const BivariateSeries<BigInt>& s, const BigInt& modulus) {
  require_reduction_modulus(modulus);
  BivariateSeries<BigInt> out(s.precision());
  for (std::size_t n = 0; n <= s.precision(); ++n) {
    const auto& src = s.row(n);
    auto& dst = out.mutable_row(n);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = floor_mod(src[i], modulus);
  }
  return out;
}

}  // namespace cranklab
