#include "tsw/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "tsw/simd/kernels.hpp"

namespace tsw {

SparseOperator::SparseOperator(int nrows, int ncols, std::vector<int> row_ptr,
                               std::vector<int> cols, std::vector<double> vals, bool symmetric)
    : nrows_(nrows),
      ncols_(ncols),
      row_ptr_(std::move(row_ptr)),
      cols_(std::move(cols)),
      vals_(std::move(vals)),
      symmetric_(symmetric) {
  if (static_cast<int>(row_ptr_.size()) != nrows_ + 1 || cols_.size() != vals_.size() ||
      row_ptr_.back() != static_cast<int>(vals_.size()))
    throw std::invalid_argument("SparseOperator: inconsistent CSR arrays");
}

void SparseOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != ncols_ || static_cast<int>(y.size()) != nrows_)
    throw std::invalid_argument("SparseOperator::apply: size mismatch");
  simd::kernels().spmv(nrows_, row_ptr_.data(), cols_.data(), vals_.data(), x.data(), y.data());
}

std::vector<double> SparseOperator::apply(std::span<const double> x) const {
  std::vector<double> y(nrows_);
  apply(x, y);
  return y;
}

SparseOperator SparseOperator::transpose() const {
  std::vector<int> count(ncols_ + 1, 0);
  for (int c : cols_) ++count[c + 1];
  for (int i = 0; i < ncols_; ++i) count[i + 1] += count[i];
  std::vector<int> cols(vals_.size());
  std::vector<double> vals(vals_.size());
  std::vector<int> next(count.begin(), count.end() - 1);
  for (int r = 0; r < nrows_; ++r)
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const int dst = next[cols_[p]]++;
      cols[dst] = r;
      vals[dst] = vals_[p];
    }
  return SparseOperator(ncols_, nrows_, std::move(count), std::move(cols), std::move(vals),
                        symmetric_);
}

std::vector<double> SparseOperator::diagonal() const {
  std::vector<double> d(std::min(nrows_, ncols_), 0.0);
  for (int r = 0; r < static_cast<int>(d.size()); ++r)
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
      if (cols_[p] == r) d[r] += vals_[p];
  return d;
}

std::vector<double> SparseOperator::to_dense() const {
  std::vector<double> d(static_cast<std::size_t>(nrows_) * ncols_, 0.0);
  for (int r = 0; r < nrows_; ++r)
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
      d[static_cast<std::size_t>(r) * ncols_ + cols_[p]] += vals_[p];
  return d;
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (double v : vals_) m = std::max(m, std::abs(v));
  return m;
}

long SparseOperator::find(int row, int col) const {
  auto first = cols_.begin() + row_ptr_[row];
  auto last = cols_.begin() + row_ptr_[row + 1];
  auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return -1;
  return it - cols_.begin();
}

void TripletBuilder::add(int row, int col, double value) {
  if (row < 0 || row >= nrows_ || col < 0 || col >= ncols_)
    throw std::out_of_range("TripletBuilder::add: index out of range");
  entries_.push_back({row, col, value});
}

SparseOperator TripletBuilder::build(bool symmetric, double drop_tol) const {
  std::vector<Entry> e = entries_;
  std::stable_sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<int> row_ptr(nrows_ + 1, 0);
  std::vector<int> cols;
  std::vector<double> vals;
  cols.reserve(e.size());
  vals.reserve(e.size());
  std::size_t i = 0;
  while (i < e.size()) {
    const int r = e[i].row, c = e[i].col;
    double sum = 0.0;
    while (i < e.size() && e[i].row == r && e[i].col == c) sum += e[i++].value;
    if (drop_tol >= 0.0 && std::abs(sum) <= drop_tol) continue;
    cols.push_back(c);
    vals.push_back(sum);
    ++row_ptr[r + 1];
  }
  for (int r = 0; r < nrows_; ++r) row_ptr[r + 1] += row_ptr[r];
  return SparseOperator(nrows_, ncols_, std::move(row_ptr), std::move(cols), std::move(vals),
                        symmetric);
}

SparseOperator multiply(const SparseOperator& a, const SparseOperator& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
  std::vector<int> row_ptr(a.rows() + 1, 0);
  std::vector<int> cols;
  std::vector<double> vals;
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<int> marker(b.cols(), -1);
  std::vector<int> touched;
  for (int r = 0; r < a.rows(); ++r) {
    touched.clear();
    for (int p = a.row_ptr()[r]; p < a.row_ptr()[r + 1]; ++p) {
      const int k = a.col_idx()[p];
      const double av = a.values()[p];
      for (int q = b.row_ptr()[k]; q < b.row_ptr()[k + 1]; ++q) {
        const int c = b.col_idx()[q];
        if (marker[c] != r) {
          marker[c] = r;
          acc[c] = 0.0;
          touched.push_back(c);
        }
        acc[c] += av * b.values()[q];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int c : touched) {
      cols.push_back(c);
      vals.push_back(acc[c]);
    }
    row_ptr[r + 1] = static_cast<int>(cols.size());
  }
  return SparseOperator(a.rows(), b.cols(), std::move(row_ptr), std::move(cols), std::move(vals));
}

void write_coordinate(std::ostream& os, const SparseOperator& a) {
  os << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  os << std::setprecision(17);
  for (int r = 0; r < a.rows(); ++r)
    for (int p = a.row_ptr()[r]; p < a.row_ptr()[r + 1]; ++p)
      os << r << ' ' << a.col_idx()[p] << ' ' << a.values()[p] << '\n';
}

void write_coordinate(const std::string& path, const SparseOperator& a) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_coordinate(os, a);
}

SparseOperator read_coordinate(std::istream& is) {
  int nrows = 0, ncols = 0;
  std::size_t nnz = 0;
  if (!(is >> nrows >> ncols >> nnz)) throw std::runtime_error("read_coordinate: bad header");
  TripletBuilder tb(nrows, ncols);
  for (std::size_t i = 0; i < nnz; ++i) {
    int r, c;
    double v;
    if (!(is >> r >> c >> v)) throw std::runtime_error("read_coordinate: truncated entries");
    tb.add(r, c, v);
  }
  return tb.build();
}

}  // namespace tsw
