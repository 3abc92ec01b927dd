#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "kproj/ring.hpp"

namespace kproj {

/// Dense matrix over a supported ring, row-major, entries always canonical.
/// Zero-row and zero-column shapes are legal and stand for zero modules.
class Matrix {
 public:
  explicit Matrix(Ring ring, std::size_t rows = 0, std::size_t cols = 0)
      : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(Ring ring, std::size_t n);
  static Matrix from_rows(Ring ring, std::initializer_list<std::initializer_list<long long>> rows);
  /// Every row must have `cols` entries; `cols` matters when rows is empty.
  static Matrix from_rows(Ring ring, const std::vector<std::vector<Integer>>& rows, std::size_t cols);
  static Matrix column(Ring ring, const std::vector<Integer>& entries);
  static Matrix row(Ring ring, const std::vector<Integer>& entries);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Integer& v) { data_[i * cols_ + j] = ring_.normalize(v); }
  const std::vector<Integer>& data() const { return data_; }

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const;
  Matrix col(std::size_t j) const;
  Matrix cols_range(std::size_t begin, std::size_t end) const;
  Matrix rows_range(std::size_t begin, std::size_t end) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix scaled(const Integer& c) const;

  /// Row-major flattening into a single column.
  Matrix vec() const;
  /// Inverse of vec(): reshape a column of length rows*cols.
  static Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols);

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  Ring ring_;
  std::size_t rows_, cols_;
  std::vector<Integer> data_;
};

Matrix hconcat(const Matrix& a, const Matrix& b);
Matrix vconcat(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);
/// Kronecker product; vec(A X B) = kron(A, B^T) vec(X) for row-major vec.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace kproj
