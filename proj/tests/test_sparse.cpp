#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "tsw/sparse.hpp"

using namespace tsw;

namespace {

SparseOperator random_sparse(int r, int c, double density, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1), p(0, 1);
  TripletBuilder tb(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (p(rng) < density) tb.add(i, j, u(rng));
  return tb.build();
}

}  // namespace

TEST(Sparse, DuplicatesAreSummedAndSorted) {
  TripletBuilder tb(2, 3);
  tb.add(1, 2, 1.0);
  tb.add(0, 1, 2.0);
  tb.add(1, 2, 0.5);
  tb.add(1, 0, 3.0);
  tb.add(0, 0, 1e-20);
  const SparseOperator a = tb.build(false, 1e-18);
  EXPECT_EQ(a.nnz(), 3u);
  EXPECT_EQ(a.to_dense(), (std::vector<double>{0, 2, 0, 3, 0, 1.5}));
  EXPECT_EQ(a.find(1, 2), 2);
  EXPECT_EQ(a.find(0, 0), -1);
  EXPECT_THROW(tb.add(2, 0, 1.0), std::out_of_range);
}

TEST(Sparse, ApplyTransposeMultiplyMatchDense) {
  const SparseOperator a = random_sparse(7, 5, 0.4, 1), b = random_sparse(5, 6, 0.5, 2);
  const auto da = a.to_dense(), db = b.to_dense();
  std::vector<double> x(5);
  for (int i = 0; i < 5; ++i) x[i] = 0.3 * i - 1;
  const auto y = a.apply(x);
  for (int i = 0; i < 7; ++i) {
    double s = 0;
    for (int j = 0; j < 5; ++j) s += da[i * 5 + j] * x[j];
    EXPECT_NEAR(y[i], s, 1e-15);
  }
  const auto at = a.transpose().to_dense();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_EQ(at[j * 7 + i], da[i * 5 + j]);
  const auto dc = multiply(a, b).to_dense();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 6; ++j) {
      double s = 0;
      for (int k = 0; k < 5; ++k) s += da[i * 5 + k] * db[k * 6 + j];
      EXPECT_NEAR(dc[i * 6 + j], s, 1e-15);
    }
  EXPECT_THROW(multiply(b, b), std::invalid_argument);
  EXPECT_THROW(a.apply(std::vector<double>(4)), std::invalid_argument);
}

TEST(Sparse, CoordinateRoundTrip) {
  const SparseOperator a = random_sparse(6, 4, 0.5, 3);
  std::stringstream ss;
  write_coordinate(ss, a);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "6 4 " + std::to_string(a.nnz()));
  ss.seekg(0);
  const SparseOperator b = read_coordinate(ss);
  EXPECT_EQ(a.to_dense(), b.to_dense());
}

TEST(Sparse, DiagonalAndMaxAbs) {
  TripletBuilder tb(3, 3);
  tb.add(0, 0, 2.0);
  tb.add(2, 2, -5.0);
  tb.add(1, 2, 1.0);
  const SparseOperator a = tb.build();
  EXPECT_EQ(a.diagonal(), (std::vector<double>{2, 0, -5}));
  EXPECT_EQ(a.max_abs(), 5.0);
}
