#pragma once

// Partially observed third-order tensors stored as coordinate lists.
//
// Only the known entries are stored. The missing set is the complement of
// the stored indices and is never materialized.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "tdwlft/error.hpp"

namespace tdwlft {

/// Zero-based (sensor, interval, day) coordinate.
struct EntryIndex {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  friend bool operator==(const EntryIndex&, const EntryIndex&) = default;
  friend auto operator<=>(const EntryIndex&, const EntryIndex&) = default;
};

inline std::string to_string(const EntryIndex& idx) {
  return "(" + std::to_string(idx.i) + "," + std::to_string(idx.j) + "," +
         std::to_string(idx.k) + ")";
}

struct Dims {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  std::uint64_t volume() const {
    return static_cast<std::uint64_t>(i) * j * k;
  }
  bool contains(const EntryIndex& idx) const {
    return idx.i < i && idx.j < j && idx.k < k;
  }
  /// Row-major linear offset of idx, sensor-major.
  std::uint64_t linear(const EntryIndex& idx) const {
    return (static_cast<std::uint64_t>(idx.i) * j + idx.j) * k + idx.k;
  }
  EntryIndex unlinear(std::uint64_t off) const {
    EntryIndex idx;
    idx.k = static_cast<std::size_t>(off % k);
    off /= k;
    idx.j = static_cast<std::size_t>(off % j);
    idx.i = static_cast<std::size_t>(off / j);
    return idx;
  }

  friend bool operator==(const Dims&, const Dims&) = default;
};

inline std::string to_string(const Dims& d) {
  return std::to_string(d.i) + "x" + std::to_string(d.j) + "x" +
         std::to_string(d.k);
}

struct Entry {
  EntryIndex index;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Immutable, validated sparse tensor. Entries keep their insertion order.
class SparseTensor {
 public:
  SparseTensor() = default;

  const Dims& dims() const noexcept { return dims_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const Entry& operator[](std::size_t n) const { return entries_[n]; }

  auto begin() const noexcept { return entries_.cbegin(); }
  auto end() const noexcept { return entries_.cend(); }

  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.value);
    return out;
  }

  friend SparseTensor build_tensor(Dims dims, std::vector<Entry> entries);

 private:
  SparseTensor(Dims dims, std::vector<Entry> entries)
      : dims_(dims), entries_(std::move(entries)) {}

  Dims dims_{};
  std::vector<Entry> entries_;
};

/// Validates and wraps a coordinate list. Rejects zero dimensions,
/// out-of-range or duplicate indices, and non-finite values.
inline SparseTensor build_tensor(Dims dims, std::vector<Entry> entries) {
  if (dims.i == 0 || dims.j == 0 || dims.k == 0) {
    throw InvalidArgument("tensor dimensions must be positive, got " +
                          to_string(dims));
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(entries.size());
  for (const auto& e : entries) {
    if (!dims.contains(e.index)) {
      throw InvalidArgument("index " + to_string(e.index) +
                            " out of range for dims " + to_string(dims));
    }
    if (!std::isfinite(e.value)) {
      throw InvalidArgument("non-finite value at index " + to_string(e.index));
    }
    if (!seen.insert(dims.linear(e.index)).second) {
      throw InvalidArgument("duplicate index " + to_string(e.index));
    }
  }
  return SparseTensor(dims, std::move(entries));
}

/// Fraction of the dense volume that is observed.
inline double density(const SparseTensor& t) {
  return static_cast<double>(t.size()) /
         static_cast<double>(t.dims().volume());
}

/// Median; even counts average the two middle order statistics.
inline double median_value(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty sequence");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid),
                   v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + (upper - lower) / 2.0;
}

}  // namespace tdwlft
