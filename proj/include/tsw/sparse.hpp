#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tsw {

/// Compressed sparse row matrix.
class SparseOperator {
public:
  SparseOperator() = default;
  SparseOperator(int nrows, int ncols, std::vector<int> row_ptr, std::vector<int> cols,
                 std::vector<double> vals, bool symmetric = false);

  int rows() const noexcept { return nrows_; }
  int cols() const noexcept { return ncols_; }
  std::size_t nnz() const noexcept { return vals_.size(); }
  bool symmetric() const noexcept { return symmetric_; }

  const std::vector<int>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<int>& col_idx() const noexcept { return cols_; }
  const std::vector<double>& values() const noexcept { return vals_; }
  std::vector<double>& values() noexcept { return vals_; }

  /// y = A x
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  SparseOperator transpose() const;
  std::vector<double> diagonal() const;
  std::vector<double> to_dense() const;  // row-major rows()*cols()
  double max_abs() const;

  /// Position of (row, col) in values(), or -1 when structurally zero.
  long find(int row, int col) const;

private:
  int nrows_ = 0;
  int ncols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> cols_;
  std::vector<double> vals_;
  bool symmetric_ = false;
};

/// Accumulates (row, col, value) triplets; duplicates are summed.
class TripletBuilder {
public:
  TripletBuilder(int nrows, int ncols) : nrows_(nrows), ncols_(ncols) {}

  void add(int row, int col, double value);
  void reserve(std::size_t n) { entries_.reserve(n); }

  /// Entries with |value| <= drop_tol are removed after summation.
  SparseOperator build(bool symmetric = false, double drop_tol = -1.0) const;

private:
  struct Entry {
    int row;
    int col;
    double value;
  };
  int nrows_;
  int ncols_;
  std::vector<Entry> entries_;
};

/// C = A * B
SparseOperator multiply(const SparseOperator& a, const SparseOperator& b);

/// Plain-text coordinate dump: a header line "rows cols nnz" then "row col value" per entry, 0-based.
void write_coordinate(std::ostream& os, const SparseOperator& a);
void write_coordinate(const std::string& path, const SparseOperator& a);
SparseOperator read_coordinate(std::istream& is);

}  // namespace tsw
