#pragma once

// Coordinate-list text I/O, the train/validation/test splitter, a synthetic
// low-rank generator and a controlled outlier injector.
//
// COO text grammar:
//
//   dims I J K          first non-comment line
//   i j k value         one observed entry per line, 0-based indices
//
// '#' starts a comment that runs to end of line; blank lines are ignored.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "tdwlft/error.hpp"
#include "tdwlft/format.hpp"
#include "tdwlft/model.hpp"
#include "tdwlft/random.hpp"
#include "tdwlft/tensor.hpp"

namespace tdwlft {

inline SparseTensor parse_coo_text(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_dims = false;
  Dims dims;
  std::vector<Entry> entries;
  std::unordered_set<std::uint64_t> seen;

  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (!have_dims) {
      if (toks[0].text != "dims") {
        throw ParseError(line_no, toks[0].column, "expected header 'dims I J K'");
      }
      if (toks.size() != 4) {
        throw ParseError(line_no, toks.back().column,
                         "header needs exactly three dimensions");
      }
      dims = {parse_count(toks[1], line_no), parse_count(toks[2], line_no),
              parse_count(toks[3], line_no)};
      for (std::size_t n = 1; n <= 3; ++n) {
        if (parse_count(toks[n], line_no) == 0) {
          throw ParseError(line_no, toks[n].column, "dimension must be positive");
        }
      }
      have_dims = true;
      continue;
    }

    if (toks.size() != 4) {
      const std::size_t col = toks.size() > 4 ? toks[4].column : toks.back().column;
      throw ParseError(line_no, col, "expected 'i j k value', got " +
                                         std::to_string(toks.size()) + " fields");
    }
    const std::array<std::size_t, 3> bound{dims.i, dims.j, dims.k};
    std::array<std::size_t, 3> ijk{};
    for (std::size_t n = 0; n < 3; ++n) {
      ijk[n] = parse_count(toks[n], line_no);
      if (ijk[n] >= bound[n]) {
        throw ParseError(line_no, toks[n].column,
                         "index " + std::to_string(ijk[n]) + " out of range (dimension " +
                             std::to_string(bound[n]) + ")");
      }
    }
    const double value = parse_real(toks[3], line_no);
    if (!std::isfinite(value)) {
      throw ParseError(line_no, toks[3].column, "value must be finite");
    }
    const EntryIndex idx{ijk[0], ijk[1], ijk[2]};
    if (!seen.insert(dims.linear(idx)).second) {
      throw ParseError(line_no, toks[0].column, "duplicate index " + to_string(idx));
    }
    entries.push_back({idx, value});
  }
  if (!have_dims) throw ParseError(line_no + 1, 1, "missing 'dims I J K' header");
  return build_tensor(dims, std::move(entries));
}

inline SparseTensor parse_coo_text(const std::string& text) {
  std::istringstream in(text);
  return parse_coo_text(in);
}

inline void write_coo_text(const SparseTensor& t, std::ostream& out) {
  const Dims& d = t.dims();
  out << "dims " << d.i << ' ' << d.j << ' ' << d.k << '\n';
  for (const auto& e : t) {
    out << e.index.i << ' ' << e.index.j << ' ' << e.index.k << ' '
        << format_real(e.value) << '\n';
  }
}

inline std::string write_coo_text(const SparseTensor& t) {
  std::ostringstream out;
  write_coo_text(t, out);
  return out.str();
}

struct SplitRatios {
  double train = 0.7;
  double val = 0.1;
  double test = 0.2;
};

struct SplitSets {
  SparseTensor train;
  SparseTensor val;
  SparseTensor test;
};

/// Sizes are floor(N * r_train), floor(N * r_val), remainder.
inline std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitRatios& r) {
  // The small nudge keeps products such as 0.7 * 10 from landing just
  // below an integer.
  auto take = [n](double ratio) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratio + 1e-9));
  };
  const std::size_t n_train = std::min(take(r.train), n);
  const std::size_t n_val = std::min(take(r.val), n - n_train);
  return {n_train, n_val, n - n_train - n_val};
}

/// Seeded random 3-way partition of the observed entries.
inline SplitSets split_dataset(const SparseTensor& t, const SplitRatios& ratios,
                               std::uint64_t seed) {
  if (!(ratios.train > 0.0 && ratios.val > 0.0 && ratios.test > 0.0)) {
    throw InvalidArgument("split ratios must be positive");
  }
  if (std::abs(ratios.train + ratios.val + ratios.test - 1.0) > 1e-9) {
    throw InvalidArgument("split ratios must sum to 1");
  }
  const auto [n_train, n_val, n_test] = split_sizes(t.size(), ratios);
  if (n_train == 0 || n_val == 0 || n_test == 0) {
    throw InvalidArgument("split of " + std::to_string(t.size()) +
                          " entries leaves an empty subset");
  }
  Rng rng = make_rng({seed, 0x73706c6974ULL});
  const auto perm = random_permutation(t.size(), rng);
  auto gather = [&](std::size_t from, std::size_t to) {
    std::vector<Entry> out;
    out.reserve(to - from);
    for (std::size_t q = from; q < to; ++q) out.push_back(t[perm[q]]);
    return build_tensor(t.dims(), std::move(out));
  };
  return {gather(0, n_train), gather(n_train, n_train + n_val),
          gather(n_train + n_val, t.size())};
}

struct SyntheticData {
  SparseTensor tensor;
  FactorModel truth;
};

/// Ground-truth factors uniform (0, 1); ceil(density * I * J * K) distinct
/// indices observed; y = model prediction + N(0, noise_sigma^2). Entries are
/// ordered by linear index.
inline SyntheticData generate_synthetic(Dims dims, std::size_t rank, double density_,
                                        double noise_sigma, std::uint64_t seed) {
  if (!(density_ > 0.0 && density_ <= 1.0)) {
    throw InvalidArgument("density must lie in (0, 1]");
  }
  if (!(noise_sigma >= 0.0)) throw InvalidArgument("noise sigma must be nonnegative");
  if (rank == 0) throw InvalidArgument("rank must be at least 1");
  if (dims.volume() == 0) throw InvalidArgument("dimensions must be positive");
  const double wanted = density_ * static_cast<double>(dims.volume());
  if (wanted < 1.0) throw InvalidArgument("density * volume is below one entry");
  // Nudge so exact products like 0.3 * 4000 are not rounded up by error.
  const auto count = std::min<std::uint64_t>(
      dims.volume(), static_cast<std::uint64_t>(std::ceil(wanted - 1e-9)));

  FactorModel truth = init_model(dims, rank, seed, 1.0);

  Rng rng = make_rng({seed, 0x73796e7468ULL});
  std::vector<std::uint64_t> offsets(dims.volume());
  std::iota(offsets.begin(), offsets.end(), std::uint64_t{0});
  for (std::uint64_t q = 0; q < count; ++q) {
    const auto pick = q + uniform_index(rng, dims.volume() - q);
    std::swap(offsets[q], offsets[pick]);
  }
  offsets.resize(count);
  std::sort(offsets.begin(), offsets.end());

  std::normal_distribution<double> noise(0.0, noise_sigma > 0.0 ? noise_sigma : 1.0);
  std::vector<Entry> entries;
  entries.reserve(count);
  for (std::uint64_t off : offsets) {
    const EntryIndex idx = dims.unlinear(off);
    double y = predict_unchecked(truth, idx);
    if (noise_sigma > 0.0) y += noise(rng);
    entries.push_back({idx, y});
  }
  return {build_tensor(dims, std::move(entries)), std::move(truth)};
}

struct OutlierPlan {
  double fraction = 0.0;
  /// Shift in units of the standard deviation of the tensor's values.
  double magnitude = 10.0;
  std::uint64_t seed = 0;
};

struct CorruptedTensor {
  SparseTensor tensor;
  /// Indices whose values were shifted, in selection order.
  std::vector<EntryIndex> corrupted;
};

/// Population standard deviation of the stored values.
inline double value_stddev(const SparseTensor& t) {
  if (t.empty()) return 0.0;
  double mean = 0.0;
  for (const auto& e : t) mean += e.value;
  mean /= static_cast<double>(t.size());
  double ss = 0.0;
  for (const auto& e : t) ss += (e.value - mean) * (e.value - mean);
  return std::sqrt(ss / static_cast<double>(t.size()));
}

/// Shifts floor(fraction * N) randomly chosen entries by
/// +/- magnitude * stddev(values), the sign chosen by a seeded coin.
inline CorruptedTensor inject_outliers(const SparseTensor& t, const OutlierPlan& plan) {
  if (!(plan.fraction >= 0.0 && plan.fraction <= 1.0)) {
    throw InvalidArgument("outlier fraction must lie in [0, 1]");
  }
  if (!(plan.magnitude > 0.0)) throw InvalidArgument("outlier magnitude must be positive");
  const auto n_bad = std::min<std::size_t>(
      t.size(),
      static_cast<std::size_t>(std::floor(plan.fraction * static_cast<double>(t.size()) + 1e-9)));
  const double shift = plan.magnitude * value_stddev(t);

  Rng rng = make_rng({plan.seed, 0x6f75746c6965ULL});
  std::vector<std::size_t> positions(t.size());
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  std::vector<Entry> entries(t.begin(), t.end());
  CorruptedTensor out;
  out.corrupted.reserve(n_bad);
  for (std::size_t q = 0; q < n_bad; ++q) {
    const auto pick = q + static_cast<std::size_t>(uniform_index(rng, t.size() - q));
    std::swap(positions[q], positions[pick]);
    Entry& e = entries[positions[q]];
    const bool up = (rng() >> 63) != 0;
    e.value += up ? shift : -shift;
    out.corrupted.push_back(e.index);
  }
  out.tensor = build_tensor(t.dims(), std::move(entries));
  return out;
}

/// Keeps only entries whose index is not in the exclusion list.
inline SparseTensor without_indices(const SparseTensor& t,
                                    const std::vector<EntryIndex>& excluded) {
  std::unordered_set<std::uint64_t> drop;
  drop.reserve(excluded.size());
  for (const auto& idx : excluded) drop.insert(t.dims().linear(idx));
  std::vector<Entry> kept;
  kept.reserve(t.size());
  for (const auto& e : t) {
    if (!drop.contains(t.dims().linear(e.index))) kept.push_back(e);
  }
  return build_tensor(t.dims(), std::move(kept));
}

}  // namespace tdwlft
