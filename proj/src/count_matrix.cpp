#include "semnet/count_matrix.hpp"

#include <algorithm>

#include "semnet/error.hpp"
#include "semnet/parallel.hpp"

namespace semnet {

CountMatrix CountMatrix::sparse(int n, std::vector<std::size_t> row_ptr, std::vector<int> cols,
                                std::vector<std::uint64_t> values) {
  if (row_ptr.size() != static_cast<std::size_t>(n) + 1 || cols.size() != values.size() ||
      row_ptr.back() != cols.size()) {
    throw Error("inconsistent CSR arrays");
  }
  CountMatrix m;
  m.n_ = n;
  m.row_ptr_ = std::move(row_ptr);
  m.cols_ = std::move(cols);
  m.values_ = std::move(values);
  return m;
}

CountMatrix CountMatrix::dense(int n, std::vector<std::uint64_t> values) {
  if (values.size() != static_cast<std::size_t>(n) * n) throw Error("dense matrix size mismatch");
  CountMatrix m;
  m.n_ = n;
  m.dense_ = true;
  m.values_ = std::move(values);
  return m;
}

CountMatrix CountMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::size_t> ptr(n + 1, 0);
  std::vector<int> cols;
  for (int i = 0; i < n; ++i) {
    cols.insert(cols.end(), rows[i].begin(), rows[i].end());
    ptr[i + 1] = cols.size();
  }
  std::vector<std::uint64_t> values(cols.size(), 1);
  return sparse(n, std::move(ptr), std::move(cols), std::move(values));
}

std::uint64_t CountMatrix::at(int i, int j) const {
  if (dense_) return values_[static_cast<std::size_t>(i) * n_ + j];
  const auto begin = cols_.begin() + row_ptr_[i];
  const auto end = cols_.begin() + row_ptr_[i + 1];
  auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0;
  return values_[it - cols_.begin()];
}

std::size_t CountMatrix::nonzeros() const {
  if (!dense_) return cols_.size();
  return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [](auto v) { return v != 0; }));
}

double CountMatrix::density() const {
  if (n_ == 0) return 0.0;
  return static_cast<double>(nonzeros()) / (static_cast<double>(n_) * n_);
}

std::uint64_t CountMatrix::max_off_diagonal() const {
  std::uint64_t best = 0;
  for (int i = 0; i < n_; ++i) {
    if (dense_) {
      const auto* row = values_.data() + static_cast<std::size_t>(i) * n_;
      for (int j = 0; j < n_; ++j) {
        if (j != i) best = std::max(best, row[j]);
      }
    } else {
      for (auto k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
        if (cols_[k] != i) best = std::max(best, values_[k]);
      }
    }
  }
  return best;
}

std::vector<std::uint64_t> CountMatrix::dense_row(int i) const {
  std::vector<std::uint64_t> row(n_, 0);
  if (dense_) {
    std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(i) * n_, n_, row.begin());
  } else {
    for (auto k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) row[cols_[k]] = values_[k];
  }
  return row;
}

namespace {

CountMatrix multiply_sparse(const CountMatrix& a, const CountMatrix& b, unsigned threads) {
  const int n = a.size();
  std::vector<std::vector<int>> row_cols(n);
  std::vector<std::vector<std::uint64_t>> row_vals(n);
  // Each worker owns a dense accumulator per row it touches.
  const auto a_ptr = a.row_ptr();
  const auto a_cols = a.cols();
  const auto a_vals = a.values();
  const auto b_ptr = b.row_ptr();
  const auto b_cols = b.cols();
  const auto b_vals = b.values();
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t ri) {
    const int i = static_cast<int>(ri);
    std::vector<std::uint64_t> acc(n, 0);
    std::vector<int> touched;
    for (auto p = a_ptr[i]; p < a_ptr[i + 1]; ++p) {
      const int k = a_cols[p];
      const auto aik = a_vals[p];
      for (auto q = b_ptr[k]; q < b_ptr[k + 1]; ++q) {
        const int j = b_cols[q];
        if (acc[j] == 0) touched.push_back(j);
        acc[j] += aik * b_vals[q];
      }
    }
    std::sort(touched.begin(), touched.end());
    row_cols[i] = touched;
    row_vals[i].reserve(touched.size());
    for (int j : touched) row_vals[i].push_back(acc[j]);
  });
  std::vector<std::size_t> ptr(n + 1, 0);
  for (int i = 0; i < n; ++i) ptr[i + 1] = ptr[i] + row_cols[i].size();
  std::vector<int> cols;
  std::vector<std::uint64_t> vals;
  cols.reserve(ptr[n]);
  vals.reserve(ptr[n]);
  for (int i = 0; i < n; ++i) {
    cols.insert(cols.end(), row_cols[i].begin(), row_cols[i].end());
    vals.insert(vals.end(), row_vals[i].begin(), row_vals[i].end());
  }
  return CountMatrix::sparse(n, std::move(ptr), std::move(cols), std::move(vals));
}

CountMatrix multiply_dense(const CountMatrix& a, const CountMatrix& b, unsigned threads) {
  const int n = a.size();
  std::vector<std::uint64_t> lhs(static_cast<std::size_t>(n) * n);
  std::vector<std::uint64_t> rhs(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    auto ra = a.dense_row(i);
    auto rb = b.dense_row(i);
    std::copy(ra.begin(), ra.end(), lhs.begin() + static_cast<std::ptrdiff_t>(i) * n);
    std::copy(rb.begin(), rb.end(), rhs.begin() + static_cast<std::ptrdiff_t>(i) * n);
  }
  std::vector<std::uint64_t> out(static_cast<std::size_t>(n) * n, 0);
  constexpr int kBlock = 64;
  const int row_blocks = (n + kBlock - 1) / kBlock;
  parallel_for(static_cast<std::size_t>(row_blocks), threads, [&](std::size_t rb) {
    const int i0 = static_cast<int>(rb) * kBlock;
    const int i1 = std::min(n, i0 + kBlock);
    for (int k0 = 0; k0 < n; k0 += kBlock) {
      const int k1 = std::min(n, k0 + kBlock);
      for (int j0 = 0; j0 < n; j0 += kBlock) {
        const int j1 = std::min(n, j0 + kBlock);
        for (int i = i0; i < i1; ++i) {
          auto* crow = out.data() + static_cast<std::size_t>(i) * n;
          const auto* arow = lhs.data() + static_cast<std::size_t>(i) * n;
          for (int k = k0; k < k1; ++k) {
            const auto aik = arow[k];
            if (aik == 0) continue;
            const auto* brow = rhs.data() + static_cast<std::size_t>(k) * n;
            for (int j = j0; j < j1; ++j) crow[j] += aik * brow[j];
          }
        }
      }
    }
  });
  return CountMatrix::dense(n, std::move(out));
}

}  // namespace

CountMatrix multiply(const CountMatrix& a, const CountMatrix& b, unsigned threads, double dense_fraction) {
  if (a.size() != b.size()) throw Error("matrix size mismatch");
  if (a.is_dense() || b.is_dense() || a.density() > dense_fraction || b.density() > dense_fraction) {
    return multiply_dense(a, b, threads);
  }
  return multiply_sparse(a, b, threads);
}

}  // namespace semnet
