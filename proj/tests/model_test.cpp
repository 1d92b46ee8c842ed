#include <gtest/gtest.h>

#include <vector>

#include "tdwlft/model.hpp"

namespace tdwlft {
namespace {

FactorModel filled(Dims d, std::size_t rank, double v) {
  return make_model(FactorMatrix(d.i, rank, v), FactorMatrix(d.j, rank, v),
                    FactorMatrix(d.k, rank, v));
}

TEST(InitModel, Deterministic) {
  const auto a = init_model({5, 4, 3}, 4, 42);
  const auto b = init_model({5, 4, 3}, 4, 42);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == init_model({5, 4, 3}, 4, 43));
}

TEST(InitModel, RangeIsOpenInterval) {
  const auto m = init_model({7, 6, 5}, 3, 1, 0.05);
  for (const auto* mat : {&m.u, &m.s, &m.t}) {
    for (double x : mat->data()) {
      EXPECT_GT(x, 0.0);
      EXPECT_LT(x, 0.05);
    }
  }
}

TEST(InitModel, GuangzhouShapes) {
  const auto m = init_model({214, 144, 61}, 20, 42);
  EXPECT_EQ(m.u.rows(), 214u);
  EXPECT_EQ(m.s.rows(), 144u);
  EXPECT_EQ(m.t.rows(), 61u);
  EXPECT_EQ(m.rank(), 20u);
  EXPECT_EQ(m.s.cols(), 20u);
  EXPECT_EQ(m.t.cols(), 20u);
}

TEST(InitModel, Errors) {
  EXPECT_THROW(init_model({2, 2, 2}, 0, 1), InvalidArgument);
  EXPECT_THROW(init_model({0, 2, 2}, 1, 1), InvalidArgument);
  EXPECT_THROW(init_model({2, 2, 2}, 1, 1, 0.0), InvalidArgument);
}

TEST(MakeModel, RejectsRankMismatch) {
  EXPECT_THROW(make_model(FactorMatrix(2, 2), FactorMatrix(2, 3), FactorMatrix(2, 2)),
               InvalidArgument);
}

TEST(Predict, SumOfOnes) {
  EXPECT_EQ(predict_entry(filled({3, 3, 3}, 5, 1.0), {1, 2, 0}), 5.0);
}

TEST(Predict, HandEvaluated) {
  auto m = filled({1, 1, 1}, 2, 0.0);
  m.u(0, 0) = 1;
  m.u(0, 1) = 2;
  m.s(0, 0) = 3;
  m.s(0, 1) = 4;
  m.t(0, 0) = 5;
  m.t(0, 1) = 6;
  EXPECT_EQ(predict_entry(m, {0, 0, 0}), 63.0);
}

TEST(Predict, ZeroRowAnnihilates) {
  auto m = init_model({3, 4, 5}, 3, 9);
  for (double& x : m.u.row(1)) x = 0.0;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(predict_entry(m, {1, j, k}), 0.0);
}

TEST(Predict, OutOfRange) {
  const auto m = init_model({2, 2, 2}, 1, 1);
  EXPECT_THROW(predict_entry(m, {2, 0, 0}), InvalidArgument);
  const std::vector<EntryIndex> bad{{0, 0, 0}, {0, 3, 0}};
  EXPECT_THROW(predict_many(m, bad), InvalidArgument);
}

TEST(PredictMany, MatchesSingleCalls) {
  const auto m = init_model({4, 4, 4}, 3, 5);
  EXPECT_TRUE(predict_many(m, {}).empty());
  const std::vector<EntryIndex> idxs{{0, 1, 2}, {3, 3, 3}, {2, 0, 1}};
  const auto out = predict_many(m, idxs);
  ASSERT_EQ(out.size(), 3u);
  for (std::size_t q = 0; q < idxs.size(); ++q) EXPECT_EQ(out[q], predict_entry(m, idxs[q]));
}

TEST(PredictProperty, ColumnRescalingInvariance) {
  const auto m = init_model({4, 3, 5}, 3, 17, 1.0);
  auto scaled = m;
  const double c = 3.7;
  for (std::size_t row = 0; row < scaled.u.rows(); ++row) scaled.u(row, 1) *= c;
  for (std::size_t row = 0; row < scaled.s.rows(); ++row) scaled.s(row, 1) /= c;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 5; ++k)
        EXPECT_NEAR(predict_entry(scaled, {i, j, k}), predict_entry(m, {i, j, k}), 1e-12);
}

TEST(PredictProperty, SumOfRankOneTerms) {
  const auto m = init_model({3, 3, 3}, 4, 23, 1.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        double sum = 0.0;
        for (std::size_t r = 0; r < 4; ++r) {
          const auto one = make_model(FactorMatrix(3, 1, 0.0), FactorMatrix(3, 1, 0.0),
                                      FactorMatrix(3, 1, 0.0));
          auto col = one;
          col.u(i, 0) = m.u(i, r);
          col.s(j, 0) = m.s(j, r);
          col.t(k, 0) = m.t(k, r);
          sum += predict_entry(col, {i, j, k});
        }
        EXPECT_NEAR(predict_entry(m, {i, j, k}), sum, 1e-14);
      }
}

}  // namespace
}  // namespace tdwlft
