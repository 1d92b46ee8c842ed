#pragma once

#include <cmath>

#include "tdwlft/error.hpp"
#include "tdwlft/model.hpp"
#include "tdwlft/tensor.hpp"

namespace tdwlft {

struct Metrics {
  double rmse = 0.0;
  double mae = 0.0;
};

/// RMSE and MAE in one pass. Sum and divisor both range over eval_set.
inline Metrics evaluate(const FactorModel& m, const SparseTensor& eval_set) {
  if (eval_set.empty()) throw InvalidArgument("evaluation set is empty");
  check_compatible(m, eval_set);
  double sq = 0.0;
  double abs = 0.0;
  for (const auto& e : eval_set) {
    const double d = e.value - predict_unchecked(m, e.index);
    sq += d * d;
    abs += std::abs(d);
  }
  const auto n = static_cast<double>(eval_set.size());
  return {std::sqrt(sq / n), abs / n};
}

inline double rmse(const FactorModel& m, const SparseTensor& eval_set) {
  return evaluate(m, eval_set).rmse;
}

inline double mae(const FactorModel& m, const SparseTensor& eval_set) {
  return evaluate(m, eval_set).mae;
}

}  // namespace tdwlft
