#pragma once

// Small integer helpers: primality, gcd, theta_l and the Legendre symbol.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cranklab {

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod64(result, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    std::uint64_t x = powmod64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// Trial division; inputs here are desk-scale.
inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

/// (l^2 - 1) / 24 for l coprime to 6.
inline std::int64_t theta(std::int64_t l) {
  if (l % 2 == 0 || l % 3 == 0)
    throw std::invalid_argument("theta requires l coprime to 6, got " + std::to_string(l));
  return (l * l - 1) / 24;
}

/// Legendre symbol (a / l) for an odd prime l, by Euler's criterion.
inline int legendre(std::int64_t a, std::int64_t l) {
  if (l < 3 || !is_prime(l))
    throw std::invalid_argument("legendre requires an odd prime modulus, got " + std::to_string(l));
  const auto ul = static_cast<std::uint64_t>(l);
  const auto r = static_cast<std::uint64_t>(((a % l) + l) % l);
  if (r == 0) return 0;
  return detail::powmod64(r, (ul - 1) / 2, ul) == 1 ? 1 : -1;
}

}  // namespace cranklab
