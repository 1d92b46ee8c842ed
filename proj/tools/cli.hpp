#pragma once

// Command-line front end: train, repeat, compare, grid, impute, generate.
//
// Everything is reachable through run_cli() so the tests can drive the exact
// code path the binary uses.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "tdwlft/tdwlft.hpp"

namespace tdwlft::cli {

struct TrainOptions {
  std::string data_path;
  std::string loss = "tdw";
  std::size_t rank = 20;
  double eta = 0.002;
  double lambda = 0.01;
  std::uint64_t seed = 42;
  std::int64_t split_seed = -1;  // negative: reuse seed
  std::string split = "7:1:2";
  std::size_t max_epochs = 1000;
  double tol = 1e-5;
  double init_scale = 0.05;
  bool no_shuffle = false;
  std::string stop_metric = "rmse";
  bool keep_best = false;
  std::string out_model;
  std::string out_curve;
  std::string out_manifest;

  std::uint64_t effective_split_seed() const {
    return split_seed < 0 ? seed : static_cast<std::uint64_t>(split_seed);
  }
};

// ---------------------------------------------------------------------------
// helpers

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("write failed for '" + path + "'");
}

/// 64-bit FNV-1a, hex encoded.
inline std::string checksum(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline SplitRatios parse_split(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    const Token tok{item, 1};
    double v = 0.0;
    try {
      v = parse_real(tok, 1);
    } catch (const ParseError&) {
      throw InvalidArgument("bad --split '" + text + "' (expected e.g. 7:1:2)");
    }
    parts.push_back(v);
  }
  if (parts.size() != 3 || !(parts[0] > 0 && parts[1] > 0 && parts[2] > 0)) {
    throw InvalidArgument("bad --split '" + text + "' (expected three positive parts)");
  }
  const double sum = parts[0] + parts[1] + parts[2];
  return {parts[0] / sum, parts[1] / sum, parts[2] / sum};
}

inline StopMetric parse_stop_metric(const std::string& s) {
  if (s == "rmse") return StopMetric::RMSE;
  if (s == "mae") return StopMetric::MAE;
  throw InvalidArgument("unknown stop metric '" + s + "' (expected rmse or mae)");
}

inline SparseTensor parse_tensor_file(const std::string& text, const std::string& path) {
  try {
    return parse_coo_text(text);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

inline SparseTensor load_tensor(const std::string& path) {
  return parse_tensor_file(read_file(path), path);
}

/// Flat key=value manifest, written in insertion order.
class Manifest {
 public:
  template <class T>
  void set(const std::string& key, const T& value) {
    std::ostringstream ss;
    if constexpr (std::is_floating_point_v<T>) {
      ss << format_real(value);
    } else {
      ss << value;
    }
    items_.emplace_back(key, ss.str());
  }
  std::string str() const {
    std::string out;
    for (const auto& [k, v] : items_) out += k + "=" + v + "\n";
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

inline std::string curve_csv(const TrainReport& report) {
  std::string out = "epoch,val_rmse,val_mae\n";
  for (const auto& r : report.val_trace) {
    out += std::to_string(r.epoch) + "," + format_real(r.val_rmse) + "," +
           format_real(r.val_mae) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// one train/validate/test run

struct RunOutcome {
  LossSpec spec;
  TrainConfig config;
  FactorModel model;
  TrainReport report;
  Metrics test;
  std::size_t train_size = 0;
  std::size_t val_size = 0;
  std::size_t test_size = 0;
};

inline TrainConfig make_config(const TrainOptions& o) {
  TrainConfig cfg;
  cfg.eta = o.eta;
  cfg.lambda = o.lambda;
  cfg.max_epochs = o.max_epochs;
  cfg.tol = o.tol;
  cfg.seed = o.seed;
  cfg.shuffle = !o.no_shuffle;
  cfg.stop_metric = parse_stop_metric(o.stop_metric);
  cfg.keep_best = o.keep_best;
  cfg.validate();
  return cfg;
}

/// Trains on splits.train (or on train_override when given), stops on
/// splits.val and reports accuracy on splits.test.
inline RunOutcome run_once(const TrainOptions& o, const SplitSets& splits,
                           const SparseTensor* train_override = nullptr) {
  const SparseTensor& train_set = train_override ? *train_override : splits.train;
  RunOutcome out;
  out.config = make_config(o);
  const LossKind kind = parse_loss_kind(o.loss);
  out.spec = kind == LossKind::TDW ? LossSpec::tdw(o.lambda, compute_tau(train_set))
                                   : LossSpec::l2(o.lambda);
  FactorModel init = init_model(train_set.dims(), o.rank, o.seed, o.init_scale);
  auto result = train(std::move(init), train_set, splits.val, out.spec, out.config);
  out.model = std::move(result.model);
  out.report = std::move(result.report);
  out.test = evaluate(out.model, splits.test);
  out.train_size = train_set.size();
  out.val_size = splits.val.size();
  out.test_size = splits.test.size();
  return out;
}

inline Manifest make_manifest(const TrainOptions& o, const std::string& data_checksum,
                              const SparseTensor& data, const RunOutcome& r,
                              const std::string& started, const std::string& finished) {
  Manifest m;
  m.set("command", std::string("train"));
  m.set("data_path", o.data_path);
  m.set("data_checksum", data_checksum);
  m.set("dims", to_string(data.dims()));
  m.set("known_entries", data.size());
  m.set("loss", std::string(to_string(r.spec.kind)));
  m.set("rank", o.rank);
  m.set("eta", o.eta);
  m.set("lambda", o.lambda);
  if (r.spec.kind == LossKind::TDW) m.set("tau", r.spec.tau);
  m.set("init_scale", o.init_scale);
  m.set("max_epochs", o.max_epochs);
  m.set("tol", o.tol);
  m.set("shuffle", r.config.shuffle ? "true" : "false");
  m.set("stop_metric", o.stop_metric);
  m.set("keep_best", o.keep_best ? "true" : "false");
  m.set("seed", o.seed);
  m.set("split_seed", o.effective_split_seed());
  m.set("split", o.split);
  m.set("train_size", r.train_size);
  m.set("val_size", r.val_size);
  m.set("test_size", r.test_size);
  m.set("epochs_run", r.report.epochs_run);
  m.set("stop_reason", std::string(to_string(r.report.stop_reason)));
  m.set("test_rmse", r.test.rmse);
  m.set("test_mae", r.test.mae);
  m.set("timing_wall_s", r.report.wall_time_seconds);
  m.set("timing_best_rmse_s", r.report.time_to_best(StopMetric::RMSE));
  m.set("timing_best_mae_s", r.report.time_to_best(StopMetric::MAE));
  m.set("timestamp_start", started);
  m.set("timestamp_end", finished);
  return m;
}

inline bool finite(const Metrics& m) { return std::isfinite(m.rmse) && std::isfinite(m.mae); }

// ---------------------------------------------------------------------------
// commands

inline int cmd_train(const TrainOptions& o, std::ostream& out) {
  const std::string started = utc_timestamp();
  const std::string raw = read_file(o.data_path);
  const SparseTensor data = parse_tensor_file(raw, o.data_path);
  const SplitSets splits = split_dataset(data, parse_split(o.split), o.effective_split_seed());
  const RunOutcome r = run_once(o, splits);
  if (!finite(r.test)) throw Error("non-finite test metrics");

  if (!o.out_model.empty()) write_file(o.out_model, write_checkpoint(r.model));
  if (!o.out_curve.empty()) write_file(o.out_curve, curve_csv(r.report));
  if (!o.out_manifest.empty()) {
    write_file(o.out_manifest,
               make_manifest(o, checksum(raw), data, r, started, utc_timestamp()).str());
  }
  out << "rmse=" << format_real(r.test.rmse) << " mae=" << format_real(r.test.mae) << "\n";
  return 0;
}

struct RepeatOptions {
  std::size_t runs = 20;
  bool fixed_split = false;
  std::string out_csv;
  std::string manifest_dir;
};

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

/// Sample standard deviation (n - 1 denominator); 0 for a single run.
inline double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  // Shifted by the first sample so identical runs give exactly zero.
  const double shift = v.front();
  double sum = 0.0;
  double sq = 0.0;
  for (double x : v) {
    sum += x - shift;
    sq += (x - shift) * (x - shift);
  }
  const auto n = static_cast<double>(v.size());
  return std::sqrt(std::max(0.0, (sq - sum * sum / n) / (n - 1.0)));
}

inline int cmd_repeat(const TrainOptions& base, const RepeatOptions& ro, std::ostream& out) {
  if (ro.runs == 0) throw InvalidArgument("--runs must be at least 1");
  const std::string raw = read_file(base.data_path);
  const SparseTensor data = parse_tensor_file(raw, base.data_path);
  const std::string sum = checksum(raw);
  if (!ro.manifest_dir.empty()) std::filesystem::create_directories(ro.manifest_dir);

  std::string csv = "run,split_seed,test_rmse,test_mae,epochs\n";
  std::vector<double> rmses;
  std::vector<double> maes;
  for (std::size_t run = 0; run < ro.runs; ++run) {
    TrainOptions o = base;
    o.split_seed = static_cast<std::int64_t>(base.effective_split_seed() +
                                             (ro.fixed_split ? 0 : run));
    const std::string started = utc_timestamp();
    const SplitSets splits = split_dataset(data, parse_split(o.split), o.effective_split_seed());
    const RunOutcome r = run_once(o, splits);
    if (!finite(r.test)) throw Error("non-finite test metrics in run " + std::to_string(run));
    rmses.push_back(r.test.rmse);
    maes.push_back(r.test.mae);
    csv += std::to_string(run) + "," + std::to_string(o.effective_split_seed()) + "," +
           format_real(r.test.rmse) + "," + format_real(r.test.mae) + "," +
           std::to_string(r.report.epochs_run) + "\n";
    if (!ro.manifest_dir.empty()) {
      std::ostringstream name;
      name << "run_" << std::setw(3) << std::setfill('0') << run << ".manifest";
      Manifest m = make_manifest(o, sum, data, r, started, utc_timestamp());
      m.set("repeat_index", run);
      write_file((std::filesystem::path(ro.manifest_dir) / name.str()).string(), m.str());
    }
  }
  csv += "mean,," + format_real(mean_of(rmses)) + "," + format_real(mean_of(maes)) + ",\n";
  csv += "std,," + format_real(stddev_of(rmses)) + "," + format_real(stddev_of(maes)) + ",\n";
  if (!ro.out_csv.empty()) write_file(ro.out_csv, csv);
  out << csv;
  return 0;
}

struct CompareOptions {
  std::vector<std::string> losses{"l2", "tdw"};
  double eta_l2 = -1.0;   // negative: use --eta
  double eta_tdw = -1.0;  // negative: use --eta
  double outlier_fraction = 0.0;
  double outlier_magnitude = 10.0;
  std::uint64_t outlier_seed = 7;
  std::string out_csv;
};

struct CompareRow {
  std::string loss;
  Metrics test;
  double time_rmse_s = 0.0;
  double time_mae_s = 0.0;
};

/// Trains each loss on the same split and initialization. Outliers, when
/// requested, are injected into the training split only.
inline std::vector<CompareRow> compare_losses(const TrainOptions& base, const CompareOptions& co,
                                              const SparseTensor& data) {
  const SplitSets splits =
      split_dataset(data, parse_split(base.split), base.effective_split_seed());
  SparseTensor train_set = splits.train;
  if (co.outlier_fraction > 0.0) {
    train_set = inject_outliers(splits.train, {co.outlier_fraction, co.outlier_magnitude,
                                               co.outlier_seed})
                    .tensor;
  }
  std::vector<CompareRow> rows;
  for (const auto& loss : co.losses) {
    TrainOptions o = base;
    o.loss = loss;
    const LossKind kind = parse_loss_kind(loss);
    const double eta_override = kind == LossKind::L2 ? co.eta_l2 : co.eta_tdw;
    if (eta_override > 0.0) o.eta = eta_override;
    const RunOutcome r = run_once(o, splits, &train_set);
    if (!finite(r.test)) throw Error("non-finite test metrics for loss " + loss);
    rows.push_back({to_string(kind), r.test, r.report.time_to_best(StopMetric::RMSE),
                    r.report.time_to_best(StopMetric::MAE)});
  }
  return rows;
}

inline int cmd_compare(const TrainOptions& base, const CompareOptions& co, std::ostream& out) {
  const SparseTensor data = load_tensor(base.data_path);
  const auto rows = compare_losses(base, co, data);
  std::string csv = "loss,test_rmse,test_mae,time_rmse_s,time_mae_s\n";
  for (const auto& r : rows) {
    csv += r.loss + "," + format_real(r.test.rmse) + "," + format_real(r.test.mae) + "," +
           format_real(r.time_rmse_s) + "," + format_real(r.time_mae_s) + "\n";
  }
  if (!co.out_csv.empty()) write_file(co.out_csv, csv);
  out << csv;
  return 0;
}

struct GridOptions {
  std::vector<double> etas{1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
  std::vector<double> lambdas{1e-3, 1e-2, 1e-1};
  std::string out_csv;
};

/// Validation-set grid over (eta, lambda). Diverging cells are reported
/// with empty metrics instead of aborting the sweep.
inline int cmd_grid(const TrainOptions& base, const GridOptions& go, std::ostream& out) {
  const SparseTensor data = load_tensor(base.data_path);
  const SplitSets splits =
      split_dataset(data, parse_split(base.split), base.effective_split_seed());
  std::string csv = "eta,lambda,val_rmse,val_mae,epochs\n";
  double best = std::numeric_limits<double>::infinity();
  std::pair<double, double> best_cell{0.0, 0.0};
  for (double eta : go.etas) {
    for (double lambda : go.lambdas) {
      TrainOptions o = base;
      o.eta = eta;
      o.lambda = lambda;
      try {
        const RunOutcome r = run_once(o, splits);
        const Metrics val = evaluate(r.model, splits.val);
        csv += format_real(eta) + "," + format_real(lambda) + "," + format_real(val.rmse) +
               "," + format_real(val.mae) + "," + std::to_string(r.report.epochs_run) + "\n";
        if (val.rmse < best) {
          best = val.rmse;
          best_cell = {eta, lambda};
        }
      } catch (const DivergenceError&) {
        csv += format_real(eta) + "," + format_real(lambda) + ",,,diverged\n";
      }
    }
  }
  if (!go.out_csv.empty()) write_file(go.out_csv, csv);
  out << csv;
  if (!std::isfinite(best)) throw Error("every grid cell diverged");
  out << "best eta=" << format_real(best_cell.first) << " lambda=" << format_real(best_cell.second)
      << " val_rmse=" << format_real(best) << "\n";
  return 0;
}

struct ImputeOptions {
  std::string model_path;
  std::string queries_path;
  std::string data_path;
  bool all_missing = false;
  std::string out_path;
};

inline std::vector<EntryIndex> read_queries(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  std::vector<EntryIndex> out;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() != 3) {
      throw Error(path + ": " + ParseError(line_no, toks[0].column, "expected 'i j k'").what());
    }
    out.push_back({parse_count(toks[0], line_no), parse_count(toks[1], line_no),
                   parse_count(toks[2], line_no)});
  }
  return out;
}

/// Every index of the dense volume not stored in t, in linear order.
inline std::vector<EntryIndex> missing_indices(const SparseTensor& t) {
  const Dims& d = t.dims();
  std::vector<bool> known(d.volume(), false);
  for (const auto& e : t) known[d.linear(e.index)] = true;
  std::vector<EntryIndex> out;
  out.reserve(d.volume() - t.size());
  for (std::uint64_t off = 0; off < d.volume(); ++off) {
    if (!known[off]) out.push_back(d.unlinear(off));
  }
  return out;
}

inline int cmd_impute(const ImputeOptions& io, std::ostream& out) {
  const FactorModel model = [&] {
    std::istringstream in(read_file(io.model_path));
    try {
      return read_checkpoint(in);
    } catch (const ParseError& e) {
      throw Error(io.model_path + ": " + e.what());
    }
  }();
  std::vector<EntryIndex> queries;
  if (io.all_missing) {
    if (io.data_path.empty()) throw InvalidArgument("--all-missing requires --data");
    const SparseTensor data = load_tensor(io.data_path);
    check_compatible(model, data);
    queries = missing_indices(data);
  } else {
    if (io.queries_path.empty()) throw InvalidArgument("give --queries or --all-missing");
    queries = read_queries(io.queries_path);
  }
  const auto preds = predict_many(model, queries);
  std::vector<Entry> entries;
  entries.reserve(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    if (!std::isfinite(preds[q])) throw Error("non-finite prediction at " + to_string(queries[q]));
    entries.push_back({queries[q], preds[q]});
  }
  const std::string text = write_coo_text(build_tensor(model.dims(), std::move(entries)));
  if (io.out_path.empty()) {
    out << text;
  } else {
    write_file(io.out_path, text);
  }
  return 0;
}

struct GenerateOptions {
  std::vector<std::size_t> dims{30, 30, 15};
  std::size_t rank = 3;
  double density = 0.3;
  double noise = 0.0;
  std::uint64_t seed = 1;
  double outlier_fraction = 0.0;
  double outlier_magnitude = 10.0;
  std::string out_path;
  std::string out_truth;
};

inline int cmd_generate(const GenerateOptions& g, std::ostream& out) {
  if (g.dims.size() != 3) throw InvalidArgument("--dims needs three values");
  auto syn = generate_synthetic({g.dims[0], g.dims[1], g.dims[2]}, g.rank, g.density, g.noise,
                                g.seed);
  SparseTensor t = std::move(syn.tensor);
  if (g.outlier_fraction > 0.0) {
    t = inject_outliers(t, {g.outlier_fraction, g.outlier_magnitude, g.seed}).tensor;
  }
  const std::string text = write_coo_text(t);
  if (g.out_path.empty()) {
    out << text;
  } else {
    write_file(g.out_path, text);
  }
  if (!g.out_truth.empty()) write_file(g.out_truth, write_checkpoint(syn.truth));
  return 0;
}

// ---------------------------------------------------------------------------
// argument parsing

inline void add_train_flags(CLI::App& app, TrainOptions& o) {
  app.add_option("data", o.data_path, "COO text tensor")->required();
  app.add_option("--loss", o.loss, "l2 or tdw")->capture_default_str();
  app.add_option("--rank", o.rank, "latent rank R")->capture_default_str();
  app.add_option("--eta", o.eta, "learning rate")->capture_default_str();
  app.add_option("--lambda", o.lambda, "Tikhonov coefficient")->capture_default_str();
  app.add_option("--seed", o.seed, "initialization and shuffle seed")->capture_default_str();
  app.add_option("--split-seed", o.split_seed, "split seed (default: --seed)");
  app.add_option("--split", o.split, "train:val:test ratio")->capture_default_str();
  app.add_option("--max-epochs", o.max_epochs, "epoch cap")->capture_default_str();
  app.add_option("--tol", o.tol, "early-stopping tolerance")->capture_default_str();
  app.add_option("--init-scale", o.init_scale, "factors start uniform on (0, scale)")
      ->capture_default_str();
  app.add_flag("--no-shuffle", o.no_shuffle, "visit entries in file order");
  app.add_option("--stop-metric", o.stop_metric, "rmse or mae")->capture_default_str();
  app.add_flag("--keep-best", o.keep_best, "return the best-validation model");
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Sparse tensor completion with threshold-distance-weighted loss"};
  app.require_subcommand(1);

  TrainOptions train_opts;
  auto* train_cmd = app.add_subcommand("train", "train one model and report test accuracy");
  add_train_flags(*train_cmd, train_opts);
  train_cmd->add_option("--out-model", train_opts.out_model, "checkpoint path");
  train_cmd->add_option("--out-curve", train_opts.out_curve, "validation curve CSV path");
  train_cmd->add_option("--out-manifest", train_opts.out_manifest, "run manifest path");

  TrainOptions repeat_opts;
  RepeatOptions repeat_extra;
  auto* repeat_cmd = app.add_subcommand("repeat", "repeat training over fresh splits");
  add_train_flags(*repeat_cmd, repeat_opts);
  repeat_cmd->add_option("--runs", repeat_extra.runs, "number of repetitions")
      ->capture_default_str();
  repeat_cmd->add_flag("--fixed-split", repeat_extra.fixed_split, "reuse one split seed");
  repeat_cmd->add_option("--out-csv", repeat_extra.out_csv, "aggregate CSV path");
  repeat_cmd->add_option("--manifest-dir", repeat_extra.manifest_dir, "per-run manifests");

  TrainOptions compare_opts;
  CompareOptions compare_extra;
  auto* compare_cmd = app.add_subcommand("compare", "train each loss on identical splits");
  add_train_flags(*compare_cmd, compare_opts);
  compare_cmd->add_option("--losses", compare_extra.losses, "losses to compare")
      ->delimiter(',');
  compare_cmd->add_option("--eta-l2", compare_extra.eta_l2, "learning rate for l2");
  compare_cmd->add_option("--eta-tdw", compare_extra.eta_tdw, "learning rate for tdw");
  compare_cmd->add_option("--outliers", compare_extra.outlier_fraction,
                          "fraction of training entries to corrupt");
  compare_cmd->add_option("--outlier-magnitude", compare_extra.outlier_magnitude,
                          "shift in standard deviations")
      ->capture_default_str();
  compare_cmd->add_option("--outlier-seed", compare_extra.outlier_seed)->capture_default_str();
  compare_cmd->add_option("--out-csv", compare_extra.out_csv, "comparison CSV path");

  TrainOptions grid_opts;
  GridOptions grid_extra;
  auto* grid_cmd = app.add_subcommand("grid", "validation grid search over eta and lambda");
  add_train_flags(*grid_cmd, grid_opts);
  grid_cmd->add_option("--etas", grid_extra.etas, "learning rates")->delimiter(',');
  grid_cmd->add_option("--lambdas", grid_extra.lambdas, "regularization values")
      ->delimiter(',');
  grid_cmd->add_option("--out-csv", grid_extra.out_csv, "grid CSV path");

  ImputeOptions impute_opts;
  auto* impute_cmd = app.add_subcommand("impute", "predict entries from a checkpoint");
  impute_cmd->add_option("--model", impute_opts.model_path, "checkpoint")->required();
  impute_cmd->add_option("--queries", impute_opts.queries_path, "file of 'i j k' lines");
  impute_cmd->add_flag("--all-missing", impute_opts.all_missing,
                       "predict every index absent from --data");
  impute_cmd->add_option("--data", impute_opts.data_path, "observed tensor");
  impute_cmd->add_option("--out", impute_opts.out_path, "output COO path (default stdout)");

  GenerateOptions gen_opts;
  auto* gen_cmd = app.add_subcommand("generate", "write a synthetic low-rank tensor");
  gen_cmd->add_option("--dims", gen_opts.dims, "I J K")->expected(3);
  gen_cmd->add_option("--rank", gen_opts.rank)->capture_default_str();
  gen_cmd->add_option("--density", gen_opts.density)->capture_default_str();
  gen_cmd->add_option("--noise", gen_opts.noise, "Gaussian noise sigma")->capture_default_str();
  gen_cmd->add_option("--seed", gen_opts.seed)->capture_default_str();
  gen_cmd->add_option("--outliers", gen_opts.outlier_fraction, "fraction of entries to corrupt");
  gen_cmd->add_option("--outlier-magnitude", gen_opts.outlier_magnitude)->capture_default_str();
  gen_cmd->add_option("--out", gen_opts.out_path, "output COO path (default stdout)");
  gen_cmd->add_option("--out-truth", gen_opts.out_truth, "ground-truth checkpoint path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*train_cmd) return cmd_train(train_opts, out);
    if (*repeat_cmd) return cmd_repeat(repeat_opts, repeat_extra, out);
    if (*compare_cmd) return cmd_compare(compare_opts, compare_extra, out);
    if (*grid_cmd) return cmd_grid(grid_opts, grid_extra, out);
    if (*impute_cmd) return cmd_impute(impute_opts, out);
    if (*gen_cmd) return cmd_generate(gen_opts, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace tdwlft::cli
