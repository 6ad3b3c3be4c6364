#pragma once

// Partitions of an integer, Dyson's rank, the Andrews-Garvan crank, the
// partition function p(n) and plain modular congruence.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cranklab/bigint.hpp"

namespace cranklab {

/// A non-increasing sequence of positive parts. The empty sequence is the
/// unique partition of 0.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts_[i - 1] < parts_[i])
        throw std::invalid_argument("partition parts must be non-increasing");
      n_ += parts_[i];
    }
  }

  std::span<const int> parts() const noexcept { return parts_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// Walks the partitions of n in reverse-lexicographic order:
/// [n], [n-1,1], ..., [1,...,1]. Algorithm ZS1 (Zoghbi & Stojmenovic),
/// constant amortized time per partition.
class PartitionGenerator {
 public:
  explicit PartitionGenerator(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("cannot enumerate partitions of a negative integer");
    x_.assign(static_cast<std::size_t>(n) + 1, 1);  // 1-based, x_[0] unused
    if (n > 0) {
      x_[1] = n;
      m_ = 1;
      h_ = 1;
    }
  }

  /// Parts of the current partition.
  std::span<const int> current() const noexcept {
    return {x_.data() + 1, static_cast<std::size_t>(m_)};
  }

  bool done() const noexcept { return done_; }

  /// Advances to the next partition; returns false once the sequence is exhausted.
  bool next() {
    if (done_) return false;
    if (n_ == 0 || x_[1] == 1) {
      done_ = true;
      return false;
    }
    if (x_[h_] == 2) {
      ++m_;
      x_[h_] = 1;
      --h_;
    } else {
      const int r = x_[h_] - 1;
      int t = m_ - h_ + 1;
      x_[h_] = r;
      while (t >= r) {
        ++h_;
        x_[h_] = r;
        t -= r;
      }
      if (t == 0) {
        m_ = h_;
      } else {
        m_ = h_ + 1;
        if (t > 1) {
          ++h_;
          x_[h_] = t;
        }
      }
    }
    return true;
  }

 private:
  int n_;
  std::vector<int> x_;
  int m_ = 0;  // number of parts
  int h_ = 0;  // index of the last part greater than 1
  bool done_ = false;
};

/// Input range over the partitions of n; dereferencing yields a span of parts
/// that stays valid until the iterator advances.
class PartitionRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::span<const int>;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(PartitionGenerator* gen) : gen_(gen) {}

    value_type operator*() const { return gen_->current(); }
    iterator& operator++() {
      if (!gen_->next()) gen_ = nullptr;
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.gen_ == b.gen_; }

   private:
    PartitionGenerator* gen_ = nullptr;
  };

  explicit PartitionRange(int n) : gen_(n) {}
  iterator begin() { return iterator(&gen_); }
  iterator end() { return iterator(); }

 private:
  PartitionGenerator gen_;
};

inline PartitionRange partitions_of(int n) { return PartitionRange(n); }

/// Calls f(span<const int>) once per partition of n, reverse-lexicographic.
template <class F>
void for_each_partition(int n, F&& f) {
  PartitionGenerator gen(n);
  do {
    f(gen.current());
  } while (gen.next());
}

inline std::vector<Partition> enumerate_partitions(int n) {
  std::vector<Partition> out;
  for_each_partition(n, [&](std::span<const int> parts) {
    out.emplace_back(std::vector<int>(parts.begin(), parts.end()));
  });
  return out;
}

namespace detail {

inline int rank_of(std::span<const int> parts) {
  return parts.front() - static_cast<int>(parts.size());
}

inline int crank_of(std::span<const int> parts) {
  // parts are non-increasing, so the ones sit at the tail
  auto first_one = std::find(parts.begin(), parts.end(), 1);
  const int ones = static_cast<int>(parts.end() - first_one);
  if (ones == 0) return parts.front();
  auto larger = std::partition_point(parts.begin(), parts.end(),
                                     [ones](int part) { return part > ones; });
  return static_cast<int>(larger - parts.begin()) - ones;
}

}  // namespace detail

/// Dyson's rank: largest part minus number of parts.
inline int rank(const Partition& p) {
  if (p.empty()) throw std::invalid_argument("rank is undefined for the empty partition");
  return detail::rank_of(p.parts());
}

/// Andrews-Garvan crank: the largest part when there are no ones, otherwise
/// (number of parts larger than the number of ones) minus (number of ones).
inline int crank(const Partition& p) {
  if (p.empty()) throw std::invalid_argument("crank is undefined for the empty partition");
  return detail::crank_of(p.parts());
}

/// k-th generalized pentagonal offset for k = 1, 2, 3, ...: 1, 2, 5, 7, 12, 15, ...
inline std::int64_t generalized_pentagonal(std::int64_t k) {
  const std::int64_t j = (k + 1) / 2;
  return (k % 2 == 1) ? j * (3 * j - 1) / 2 : j * (3 * j + 1) / 2;
}

/// Sign of the k-th generalized pentagonal term in Euler's recurrence: + + - - + + ...
inline int pentagonal_sign(std::int64_t k) { return ((k + 1) / 2) % 2 == 1 ? 1 : -1; }

/// Memoized p(0), p(1), ... via Euler's pentagonal recurrence. Shared by all
/// callers; growth is serialized so the table is computed once.
class PartitionCountTable {
 public:
  static PartitionCountTable& shared() {
    static PartitionCountTable table;
    return table;
  }

  BigInt at(std::size_t n) {
    std::lock_guard lock(mutex_);
    extend_to(n);
    return values_[n];
  }

  /// p(0..n) inclusive.
  std::vector<BigInt> prefix(std::size_t n) {
    std::lock_guard lock(mutex_);
    extend_to(n);
    return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n) + 1};
  }

 private:
  PartitionCountTable() { values_.emplace_back(1); }

  void extend_to(std::size_t n) {
    if (values_.size() > n) return;
    values_.reserve(n + 1);
    for (std::size_t i = values_.size(); i <= n; ++i) {
      BigInt acc = 0;
      const auto target = static_cast<std::int64_t>(i);
      for (std::int64_t k = 1;; ++k) {
        const std::int64_t g = generalized_pentagonal(k);
        if (g > target) break;
        if (pentagonal_sign(k) > 0)
          acc += values_[static_cast<std::size_t>(target - g)];
        else
          acc -= values_[static_cast<std::size_t>(target - g)];
      }
      values_.push_back(std::move(acc));
    }
  }

  std::mutex mutex_;
  std::vector<BigInt> values_;
};

inline CountValue partition_count(std::size_t n) { return PartitionCountTable::shared().at(n); }

inline std::vector<CountValue> partition_counts(std::size_t max_n) {
  return PartitionCountTable::shared().prefix(max_n);
}

/// True iff modulus divides a - b. The modulus must be positive.
template <std::integral Int>
bool congruent(Int a, Int b, Int modulus) {
  if (modulus < 1) throw std::invalid_argument("congruence modulus must be positive");
  const __int128 diff = static_cast<__int128>(a) - static_cast<__int128>(b);
  return diff % static_cast<__int128>(modulus) == 0;
}

inline bool congruent(const BigInt& a, const BigInt& b, const BigInt& modulus) {
  if (modulus < 1) throw std::invalid_argument("congruence modulus must be positive");
  return (a - b) % modulus == 0;
}

}  // namespace cranklab
