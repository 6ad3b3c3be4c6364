#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cranklab {

/// Arbitrary-precision signed integer used for every exact count.
using BigInt = boost::multiprecision::cpp_int;

/// A partition count or statistic count. Always exact; tables built from the
/// crank product may carry the signed n = 1 row, so the type stays signed.
using CountValue = BigInt;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline BigInt from_decimal(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty decimal string");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("malformed decimal string: " + s);
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("malformed decimal string: " + s);
  }
  return BigInt(s);
}

/// Least non-negative residue of v modulo m (m >= 1).
inline BigInt floor_mod(const BigInt& v, const BigInt& m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r;
}

inline std::int64_t floor_mod(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

inline BigInt pow_int(std::int64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

}  // namespace cranklab
