#include "finstar/cmat.hpp"

#include <algorithm>
#include <cmath>

namespace finstar {

CMat::CMat(std::initializer_list<std::initializer_list<cxd>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : init) {
    if (row.size() != cols_)
      throw InvalidShape("ragged initializer list");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

CMat CMat::identity(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::col_vector(const std::vector<cxd>& entries) {
  CMat m(entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

CMat CMat::diag(const std::vector<cxd>& entries) {
  CMat m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

CMat CMat::adjoint() const {
  CMat out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(j, i) = std::conj((*this)(i, j));
  return out;
}

CMat CMat::transpose() const {
  CMat out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

CMat CMat::conj() const {
  CMat out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k)
    out.data_[k] = std::conj(data_[k]);
  return out;
}

CMat CMat::operator+(const CMat& other) const {
  CMat out = *this;
  out += other;
  return out;
}

CMat CMat::operator-(const CMat& other) const {
  CMat out = *this;
  out -= other;
  return out;
}

CMat CMat::operator-() const {
  CMat out = *this;
  for (auto& z : out.data_) z = -z;
  return out;
}

CMat& CMat::operator+=(const CMat& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InvalidShape("matrix addition shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

CMat& CMat::operator-=(const CMat& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InvalidShape("matrix subtraction shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

CMat CMat::operator*(const CMat& other) const {
  if (cols_ != other.rows_)
    throw InvalidShape("matrix product shape mismatch");
  CMat out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cxd aik = (*this)(i, k);
      if (aik == cxd(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        out(i, j) += aik * other(k, j);
    }
  }
  return out;
}

CMat CMat::operator*(cxd scalar) const {
  CMat out = *this;
  out *= scalar;
  return out;
}

CMat& CMat::operator*=(cxd scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

cxd CMat::trace() const {
  cxd t = 0.0;
  const std::size_t n = std::min(rows_, cols_);
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double CMat::frobenius() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

CMat CMat::column(std::size_t j) const {
  CMat out(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) out(i, 0) = (*this)(i, j);
  return out;
}

void CMat::set_column(std::size_t j, const CMat& col) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = col(i, 0);
}

CMat CMat::hcat(const CMat& other) const {
  if (empty()) return other;
  if (other.empty()) return *this;
  if (rows_ != other.rows_) throw InvalidShape("hcat row mismatch");
  CMat out(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j)
      out(i, cols_ + j) = other(i, j);
  }
  return out;
}

CMat CMat::submatrix(std::size_t row0, std::size_t col0, std::size_t nrows,
                     std::size_t ncols) const {
  CMat out(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j)
      out(i, j) = (*this)(row0 + i, col0 + j);
  return out;
}

CMat operator*(cxd scalar, const CMat& m) { return m * scalar; }

cxd frobenius_inner(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidShape("inner product shape mismatch");
  cxd s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    s += a.data()[k] * std::conj(b.data()[k]);
  return s;
}

double vec_norm(const CMat& v) { return v.frobenius(); }

}  // namespace finstar
