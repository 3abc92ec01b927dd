#include "kproj/matrix.hpp"

#include <sstream>

namespace kproj {

namespace {
void require_shape(bool ok, const char* what) {
  if (!ok) throw DimensionError(what);
}
}  // namespace

Matrix Matrix::identity(Ring ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(Ring ring, std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  Matrix m(ring, rows.size(), cols);
  std::size_t i = 0;
  for (const auto& r : rows) {
    require_shape(r.size() == cols, "from_rows: ragged rows");
    std::size_t j = 0;
    for (long long v : r) m.set(i, j++, Integer(v));
    ++i;
  }
  return m;
}

Matrix Matrix::from_rows(Ring ring, const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  Matrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_shape(rows[i].size() == cols, "from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::column(Ring ring, const std::vector<Integer>& entries) {
  Matrix m(ring, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, 0, entries[i]);
  return m;
}

Matrix Matrix::row(Ring ring, const std::vector<Integer>& entries) {
  Matrix m(ring, 1, entries.size());
  for (std::size_t j = 0; j < entries.size(); ++j) m.set(0, j, entries[j]);
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
  return t;
}

Matrix Matrix::col(std::size_t j) const { return cols_range(j, j + 1); }

Matrix Matrix::cols_range(std::size_t begin, std::size_t end) const {
  require_shape(begin <= end && end <= cols_, "cols_range out of bounds");
  return block(0, begin, rows_, end - begin);
}

Matrix Matrix::rows_range(std::size_t begin, std::size_t end) const {
  require_shape(begin <= end && end <= rows_, "rows_range out of bounds");
  return block(begin, 0, end - begin, cols_);
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require_shape(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of bounds");
  Matrix b(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.data_[i * nc + j] = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require_same_ring(ring_, b.ring_, "set_block");
  require_shape(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "set_block out of bounds");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = b(i, j);
}

Matrix Matrix::scaled(const Integer& c) const {
  Matrix m(*this);
  for (auto& v : m.data_) v = ring_.mul(v, c);
  return m;
}

Matrix Matrix::vec() const {
  Matrix v(ring_, rows_ * cols_, 1);
  v.data_ = data_;
  return v;
}

Matrix Matrix::unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
  require_shape(v.cols_ == 1 && v.rows_ == rows * cols, "unvec: wrong length");
  Matrix m(v.ring_, rows, cols);
  m.data_ = v.data_;
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring_, b.ring_, "matrix +");
  require_shape(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix +: shape mismatch");
  Matrix c(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.ring_.add(a.data_[k], b.data_[k]);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring_, b.ring_, "matrix -");
  require_shape(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix -: shape mismatch");
  Matrix c(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.ring_.sub(a.data_[k], b.data_[k]);
  return c;
}

Matrix operator-(const Matrix& a) {
  Matrix c(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.ring_.neg(a.data_[k]);
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring_, b.ring_, "matrix *");
  if (a.cols_ != b.rows_)
    throw DimensionError("matrix *: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " times " +
                         std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  Matrix c(a.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c.data_[i * b.cols_ + j] += aik * b(k, j);
    }
  for (auto& v : c.data_) v = a.ring_.normalize(v);
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  os << "] (" << rows_ << "x" << cols_ << " over " << ring_.name() << ")";
  return os.str();
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring(), "hconcat");
  require_shape(a.rows() == b.rows(), "hconcat: row mismatch");
  Matrix c(a.ring(), a.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(0, a.cols(), b);
  return c;
}

Matrix vconcat(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring(), "vconcat");
  require_shape(a.cols() == b.cols(), "vconcat: column mismatch");
  Matrix c(a.ring(), a.rows() + b.rows(), a.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), 0, b);
  return c;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring(), "direct_sum");
  Matrix c(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), a.cols(), b);
  return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring(), "kron");
  Matrix c(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Integer& aij = a(i, j);
      if (aij == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (b(k, l) != 0) c.set(i * b.rows() + k, j * b.cols() + l, aij * b(k, l));
    }
  return c;
}

}  // namespace kproj
