#pragma once

// Per-entry stochastic gradient descent with validation-based stopping.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tdwlft/error.hpp"
#include "tdwlft/eval.hpp"
#include "tdwlft/loss.hpp"
#include "tdwlft/model.hpp"
#include "tdwlft/random.hpp"
#include "tdwlft/tensor.hpp"

namespace tdwlft {

enum class StopMetric { RMSE, MAE };
enum class StopReason { MaxEpochs, Converged };

inline const char* to_string(StopMetric m) {
  return m == StopMetric::RMSE ? "rmse" : "mae";
}
inline const char* to_string(StopReason r) {
  return r == StopReason::MaxEpochs ? "max_epochs" : "converged";
}

struct TrainConfig {
  double eta = 0.002;
  double lambda = 0.01;
  std::size_t max_epochs = 1000;
  double tol = 1e-5;
  std::uint64_t seed = 42;
  bool shuffle = true;
  StopMetric stop_metric = StopMetric::RMSE;
  /// Return the best-validation snapshot instead of the final-epoch model.
  bool keep_best = false;

  void validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("eta must be positive");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      throw InvalidArgument("lambda must be nonnegative");
    }
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    if (max_epochs == 0) throw InvalidArgument("max_epochs must be at least 1");
  }
};

struct TraceRecord {
  std::size_t epoch = 0;
  double val_rmse = 0.0;
  double val_mae = 0.0;
  /// Wall-clock seconds since training started, taken after this epoch's
  /// validation pass.
  double elapsed_seconds = 0.0;
};

struct TrainReport {
  std::size_t epochs_run = 0;
  std::vector<TraceRecord> val_trace;
  StopReason stop_reason = StopReason::MaxEpochs;
  double wall_time_seconds = 0.0;

  /// Trace record with the lowest validation value of the given metric.
  /// Ties go to the earliest epoch.
  const TraceRecord& best(StopMetric metric) const {
    if (val_trace.empty()) throw InvalidArgument("empty training trace");
    auto key = [metric](const TraceRecord& r) {
      return metric == StopMetric::RMSE ? r.val_rmse : r.val_mae;
    };
    return *std::min_element(
        val_trace.begin(), val_trace.end(),
        [&](const TraceRecord& a, const TraceRecord& b) { return key(a) < key(b); });
  }

  /// Wall-clock time until the best-validation epoch for the metric.
  double time_to_best(StopMetric metric) const { return best(metric).elapsed_seconds; }
};

struct TrainResult {
  FactorModel model;
  TrainReport report;
};

/// Order in which an epoch visits the n training entries: a permutation keyed
/// by (seed, epoch) when shuffling, otherwise insertion order.
inline std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed,
                                            std::size_t epoch, bool shuffle) {
  if (!shuffle) {
    std::vector<std::size_t> p(n);
    for (std::size_t q = 0; q < n; ++q) p[q] = q;
    return p;
  }
  Rng rng = make_rng({seed, static_cast<std::uint64_t>(epoch)});
  return random_permutation(n, rng);
}

/// One pass over the training entries. Each step computes the residual from
/// the current factors and updates the three touched rows simultaneously
/// from their pre-step values. Returns the number of entries visited.
inline std::size_t sgd_epoch(FactorModel& m, const SparseTensor& train,
                             const LossSpec& spec, const TrainConfig& cfg,
                             std::size_t epoch) {
  spec.validate();
  if (spec.lambda != cfg.lambda) {
    throw InvalidArgument("loss lambda and training lambda differ");
  }
  check_compatible(m, train);

  const double eta = cfg.eta;
  const double lambda = cfg.lambda;
  const auto order = epoch_order(train.size(), cfg.seed, epoch, cfg.shuffle);
  std::size_t visited = 0;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const Entry& e = train[order[pos]];
    const double g = entry_grad_coeff(spec, e.value, predict_unchecked(m, e.index));
    auto u = m.u.row(e.index.i);
    auto s = m.s.row(e.index.j);
    auto t = m.t.row(e.index.k);
    bool finite = true;
    for (std::size_t r = 0; r < u.size(); ++r) {
      const double ur = u[r];
      const double sr = s[r];
      const double tr = t[r];
      u[r] = ur - eta * (g * sr * tr + lambda * ur);
      s[r] = sr - eta * (g * ur * tr + lambda * sr);
      t[r] = tr - eta * (g * ur * sr + lambda * tr);
      finite = finite && std::isfinite(u[r]) && std::isfinite(s[r]) &&
               std::isfinite(t[r]);
    }
    if (!finite) {
      throw DivergenceError(epoch, pos,
                            "training diverged at epoch " + std::to_string(epoch) +
                                ", entry " + to_string(e.index) +
                                " (non-finite factor); try a smaller eta");
    }
    ++visited;
  }
  return visited;
}

/// Repeats sgd_epoch until max_epochs or until the signed drop in the
/// validation metric between successive epochs is below tol. An increase
/// therefore also stops training.
inline TrainResult train(FactorModel model, const SparseTensor& train_set,
                         const SparseTensor& val_set, const LossSpec& spec,
                         const TrainConfig& cfg) {
  cfg.validate();
  spec.validate();
  if (val_set.empty()) throw InvalidArgument("validation set is empty");
  check_compatible(model, train_set);
  check_compatible(model, val_set);

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto seconds_since_start = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  TrainReport report;
  report.val_trace.reserve(std::min<std::size_t>(cfg.max_epochs, 4096));
  std::optional<FactorModel> best_model;
  double best_err = std::numeric_limits<double>::infinity();
  double prev_err = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    sgd_epoch(model, train_set, spec, cfg, epoch);
    const Metrics metrics = evaluate(model, val_set);
    report.val_trace.push_back({epoch, metrics.rmse, metrics.mae, seconds_since_start()});
    report.epochs_run = epoch;

    const double err = cfg.stop_metric == StopMetric::RMSE ? metrics.rmse : metrics.mae;
    if (cfg.keep_best && err < best_err) {
      best_err = err;
      best_model = model;
    }
    if (epoch > 1 && prev_err - err < cfg.tol) {
      report.stop_reason = StopReason::Converged;
      break;
    }
    prev_err = err;
    report.stop_reason = StopReason::MaxEpochs;
  }
  report.wall_time_seconds = seconds_since_start();
  if (cfg.keep_best && best_model) model = std::move(*best_model);
  return {std::move(model), std::move(report)};
}

/// Compares analytic per-parameter gradients against central finite
/// differences of total_loss on random single-entry problems (rank <= 3,
/// dims <= 4, targets drawn around tau). Samples within 1e-4 of a branch
/// boundary or of a zero residual are redrawn. Returns the worst relative
/// error |a - n| / max(|a|, |n|, 1e-3) over all checked parameters.
inline double numeric_gradient_check(const LossSpec& base, std::size_t trials,
                                     std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  base.validate();
  const LossKind kind = base.kind;
  const double lambda = base.lambda;
  constexpr double kStep = 1e-6;
  constexpr double kMargin = 1e-4;
  constexpr double kFloor = 1e-3;

  Rng rng = make_rng({seed, 0x6772616463686bULL});
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * uniform_open01(rng); };
  auto dim = [&] { return static_cast<std::size_t>(1 + uniform_index(rng, 4)); };

  double worst = 0.0;
  std::size_t done = 0;
  while (done < trials) {
    const Dims dims{dim(), dim(), dim()};
    const auto rank = static_cast<std::size_t>(1 + uniform_index(rng, 3));
    FactorModel m{FactorMatrix(dims.i, rank), FactorMatrix(dims.j, rank),
                  FactorMatrix(dims.k, rank)};
    for (auto* mat : {&m.u, &m.s, &m.t}) {
      for (double& x : mat->data()) x = uniform(-1.5, 1.5);
    }
    const EntryIndex idx{static_cast<std::size_t>(uniform_index(rng, dims.i)),
                         static_cast<std::size_t>(uniform_index(rng, dims.j)),
                         static_cast<std::size_t>(uniform_index(rng, dims.k))};
    const double center = kind == LossKind::TDW ? base.tau : 0.0;
    const double y = center + uniform(-3.0, 3.0);
    const LossSpec& spec = base;

    const double d = y - predict_unchecked(m, idx);
    if (std::abs(d) < kMargin) continue;
    if (kind == LossKind::TDW && std::abs(std::abs(d) - std::abs(y - spec.tau)) < kMargin) {
      continue;
    }

    const SparseTensor single = build_tensor(dims, {{idx, y}});
    const double g = entry_grad_coeff(spec, y, predict_unchecked(m, idx));

    auto check_row = [&](FactorMatrix& mat, std::size_t row, const FactorMatrix& a,
                         std::size_t ra, const FactorMatrix& b, std::size_t rb) {
      for (std::size_t r = 0; r < rank; ++r) {
        const double analytic = g * a(ra, r) * b(rb, r) + lambda * mat(row, r);
        const double saved = mat(row, r);
        mat(row, r) = saved + kStep;
        const double up = total_loss(m, single, spec);
        mat(row, r) = saved - kStep;
        const double down = total_loss(m, single, spec);
        mat(row, r) = saved;
        const double numeric = (up - down) / (2.0 * kStep);
        const double denom = std::max({std::abs(analytic), std::abs(numeric), kFloor});
        worst = std::max(worst, std::abs(analytic - numeric) / denom);
      }
    };
    check_row(m.u, idx.i, m.s, idx.j, m.t, idx.k);
    check_row(m.s, idx.j, m.u, idx.i, m.t, idx.k);
    check_row(m.t, idx.k, m.u, idx.i, m.s, idx.j);
    ++done;
  }
  return worst;
}

}  // namespace tdwlft
