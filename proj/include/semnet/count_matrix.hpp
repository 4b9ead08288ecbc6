#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace semnet {

// Square matrix of nonnegative integer counts, stored either as CSR (sorted
// columns per row) or densely row-major. Products pick the dense path once an
// operand's support passes `dense_fraction` of n*n.
class CountMatrix {
 public:
  CountMatrix() = default;

  static CountMatrix sparse(int n, std::vector<std::size_t> row_ptr, std::vector<int> cols,
                            std::vector<std::uint64_t> values);
  static CountMatrix dense(int n, std::vector<std::uint64_t> values);
  // Binarized adjacency from sorted neighbor lists.
  static CountMatrix from_rows(const std::vector<std::vector<int>>& rows);

  int size() const { return n_; }
  bool is_dense() const { return dense_; }
  std::uint64_t at(int i, int j) const;
  std::size_t nonzeros() const;
  double density() const;
  // Largest entry with i != j; 0 for an empty matrix.
  std::uint64_t max_off_diagonal() const;

  // Row i as dense values (length n).
  std::vector<std::uint64_t> dense_row(int i) const;

  // CSR views; empty for dense storage.
  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const int> cols() const { return cols_; }
  std::span<const std::uint64_t> values() const { return values_; }

 private:

  int n_ = 0;
  bool dense_ = false;
  std::vector<std::size_t> row_ptr_;
  std::vector<int> cols_;
  std::vector<std::uint64_t> values_;
};

struct MatrixOptions {
  unsigned threads = 1;
  double dense_fraction = 0.25;
};

// Row-parallel product. Sparse x sparse uses Gustavson's algorithm with a
// dense accumulator; if either operand is denser than `dense_fraction` the
// result is computed by blocked dense multiplication.
CountMatrix multiply(const CountMatrix& a, const CountMatrix& b, unsigned threads = 1,
                     double dense_fraction = 0.25);

}  // namespace semnet
