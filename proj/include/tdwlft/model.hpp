#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tdwlft/error.hpp"
#include "tdwlft/random.hpp"
#include "tdwlft/tensor.hpp"

namespace tdwlft {

/// Row-major rows x cols matrix of doubles. Row r is a contiguous span.
class FactorMatrix {
 public:
  FactorMatrix() = default;
  FactorMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const FactorMatrix&, const FactorMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Rank-R CP model: sensor factors U, interval factors S, day factors T.
struct FactorModel {
  FactorMatrix u;
  FactorMatrix s;
  FactorMatrix t;

  std::size_t rank() const noexcept { return u.cols(); }
  Dims dims() const noexcept { return {u.rows(), s.rows(), t.rows()}; }

  bool all_finite() const {
    for (const auto* m : {&u, &s, &t}) {
      for (double x : m->data()) {
        if (!std::isfinite(x)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const FactorModel&, const FactorModel&) = default;
};

/// Builds a model from three matrices after checking that the ranks agree
/// and every element is finite.
inline FactorModel make_model(FactorMatrix u, FactorMatrix s, FactorMatrix t) {
  if (u.cols() == 0 || u.cols() != s.cols() || u.cols() != t.cols()) {
    throw InvalidArgument("factor matrices must share a positive rank");
  }
  FactorModel m{std::move(u), std::move(s), std::move(t)};
  if (!m.all_finite()) throw InvalidArgument("factor matrix has non-finite element");
  return m;
}

/// Every element drawn independently from uniform (0, scale).
inline FactorModel init_model(Dims dims, std::size_t rank, std::uint64_t seed,
                              double scale = 0.05) {
  if (rank == 0) throw InvalidArgument("rank must be at least 1");
  if (dims.i == 0 || dims.j == 0 || dims.k == 0) {
    throw InvalidArgument("model dimensions must be positive, got " +
                          to_string(dims));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("initialization scale must be positive and finite");
  }
  Rng rng = make_rng({seed});
  FactorModel m{FactorMatrix(dims.i, rank), FactorMatrix(dims.j, rank),
                FactorMatrix(dims.k, rank)};
  for (auto* mat : {&m.u, &m.s, &m.t}) {
    for (double& x : mat->data()) x = scale * uniform_open01(rng);
  }
  return m;
}

inline void check_index(const FactorModel& m, const EntryIndex& idx) {
  if (!m.dims().contains(idx)) {
    throw InvalidArgument("index " + to_string(idx) +
                          " out of range for model dims " + to_string(m.dims()));
  }
}

/// Sum over r of u[i][r] * s[j][r] * t[k][r], without bounds checks.
inline double predict_unchecked(const FactorModel& m, const EntryIndex& idx) {
  const auto u = m.u.row(idx.i);
  const auto s = m.s.row(idx.j);
  const auto t = m.t.row(idx.k);
  double acc = 0.0;
  for (std::size_t r = 0; r < u.size(); ++r) acc += u[r] * s[r] * t[r];
  return acc;
}

inline double predict_entry(const FactorModel& m, const EntryIndex& idx) {
  check_index(m, idx);
  return predict_unchecked(m, idx);
}

inline std::vector<double> predict_many(const FactorModel& m,
                                        std::span<const EntryIndex> idxs) {
  std::vector<double> out;
  out.reserve(idxs.size());
  for (const auto& idx : idxs) out.push_back(predict_entry(m, idx));
  return out;
}

/// Throws unless every index of data lies inside the model.
inline void check_compatible(const FactorModel& m, const SparseTensor& data) {
  if (!(m.dims() == data.dims())) {
    throw InvalidArgument("model dims " + to_string(m.dims()) +
                          " do not match data dims " + to_string(data.dims()));
  }
}

}  // namespace tdwlft
