#pragma once

// Per-entry objectives for latent factorization of sparse tensors.
//
// With residual d = y - yhat:
//
//   L2   loss = d^2 / 2                       coefficient g = -d
//   TDW  loss = d^2          if |d| >= |y - tau|   g = -2 d
//        loss = |y - tau| |d| otherwise            g = -|y - tau| sign(d)
//
// g is the derivative of the loss with respect to yhat, so the data-term
// gradient for u[i][r] is g * s[j][r] * t[k][r] (symmetrically for s and t).
//
// Note the squared region of TDW carries no 1/2, so its effective step is
// twice that of L2 for the same learning rate. Also note that the absolute
// branch weights a sample by its distance from tau, so samples far from the
// median get a large (but residual-independent) pull.

#include <cmath>
#include <limits>
#include <string>

#include "tdwlft/error.hpp"
#include "tdwlft/model.hpp"
#include "tdwlft/tensor.hpp"

namespace tdwlft {

enum class LossKind { L2, TDW };

inline const char* to_string(LossKind kind) {
  return kind == LossKind::L2 ? "l2" : "tdw";
}

inline LossKind parse_loss_kind(const std::string& s) {
  if (s == "l2" || s == "L2") return LossKind::L2;
  if (s == "tdw" || s == "TDW") return LossKind::TDW;
  throw InvalidArgument("unknown loss '" + s + "' (expected l2 or tdw)");
}

struct LossSpec {
  LossKind kind = LossKind::L2;
  double lambda = 0.0;
  /// Threshold; only read for TDW.
  double tau = std::numeric_limits<double>::quiet_NaN();

  void validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      throw InvalidArgument("lambda must be finite and nonnegative");
    }
    if (kind == LossKind::TDW && !std::isfinite(tau)) {
      throw InvalidArgument("TDW loss requires a finite tau");
    }
  }

  static LossSpec l2(double lambda) { return {LossKind::L2, lambda}; }
  static LossSpec tdw(double lambda, double tau) {
    return {LossKind::TDW, lambda, tau};
  }
};

/// Median of the values in the training split.
inline double compute_tau(const SparseTensor& train) {
  if (train.empty()) throw InvalidArgument("cannot compute tau of an empty training set");
  const auto v = train.values();
  return median_value(v);
}

namespace detail {
inline double sign(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }
}  // namespace detail

/// True when the TDW squared branch applies.
inline bool tdw_squared_branch(double y, double yhat, double tau) {
  return std::abs(y - yhat) >= std::abs(y - tau);
}

/// Data term only; regularization is added by total_loss.
inline double entry_loss(const LossSpec& spec, double y, double yhat) {
  const double d = y - yhat;
  if (spec.kind == LossKind::L2) return 0.5 * d * d;
  const double dist = std::abs(y - spec.tau);
  return std::abs(d) >= dist ? d * d : dist * std::abs(d);
}

/// d(entry_loss)/d(yhat). sign(0) is 0.
inline double entry_grad_coeff(const LossSpec& spec, double y, double yhat) {
  const double d = y - yhat;
  if (spec.kind == LossKind::L2) return -d;
  const double dist = std::abs(y - spec.tau);
  return std::abs(d) >= dist ? -2.0 * d : -dist * detail::sign(d);
}

/// Sum of data terms plus lambda/2 times the squared norms of the three rows
/// touched by each observed entry (rows are counted once per observation).
inline double total_loss(const FactorModel& m, const SparseTensor& data,
                         const LossSpec& spec) {
  check_compatible(m, data);
  double data_term = 0.0;
  double reg_term = 0.0;
  for (const auto& e : data) {
    data_term += entry_loss(spec, e.value, predict_unchecked(m, e.index));
    if (spec.lambda != 0.0) {
      const auto u = m.u.row(e.index.i);
      const auto s = m.s.row(e.index.j);
      const auto t = m.t.row(e.index.k);
      for (std::size_t r = 0; r < u.size(); ++r) {
        reg_term += u[r] * u[r] + s[r] * s[r] + t[r] * t[r];
      }
    }
  }
  return data_term + 0.5 * spec.lambda * reg_term;
}

}  // namespace tdwlft
