#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "finstar/errors.hpp"

namespace finstar {

using cxd = std::complex<double>;

/// Dense complex matrix, row-major, double precision. The model of B(H)
/// for H = C^n and the workhorse value type of the whole library.
class CMat {
 public:
  CMat() : rows_(0), cols_(0) {}
  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cxd(0.0, 0.0)) {}

  /// Construct from nested initializer lists, e.g. CMat({{1,0},{0,1}}).
  CMat(std::initializer_list<std::initializer_list<cxd>> init);

  static CMat identity(std::size_t n);
  static CMat zero(std::size_t rows, std::size_t cols) {
    return CMat(rows, cols);
  }
  /// Column vector from entries.
  static CMat col_vector(const std::vector<cxd>& entries);
  static CMat diag(const std::vector<cxd>& entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }
  bool square() const noexcept { return rows_ == cols_; }

  cxd& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const cxd& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<cxd>& data() const noexcept { return data_; }
  std::vector<cxd>& data() noexcept { return data_; }

  CMat adjoint() const;
  CMat transpose() const;
  CMat conj() const;

  CMat operator+(const CMat& other) const;
  CMat operator-(const CMat& other) const;
  CMat operator-() const;
  CMat operator*(const CMat& other) const;
  CMat operator*(cxd scalar) const;
  CMat& operator+=(const CMat& other);
  CMat& operator-=(const CMat& other);
  CMat& operator*=(cxd scalar);

  cxd trace() const;
  double frobenius() const;
  /// Largest entry magnitude; cheap sanity scale.
  double max_abs() const;

  CMat column(std::size_t j) const;
  void set_column(std::size_t j, const CMat& col);
  /// Horizontal concatenation of columns of `other` onto this matrix.
  CMat hcat(const CMat& other) const;
  CMat submatrix(std::size_t row0, std::size_t col0, std::size_t nrows,
                 std::size_t ncols) const;

  bool operator==(const CMat& other) const = default;

 private:
  std::size_t rows_, cols_;
  std::vector<cxd> data_;
};

CMat operator*(cxd scalar, const CMat& m);

/// Frobenius inner product <a, b> = tr(b* a); linear in the first slot.
cxd frobenius_inner(const CMat& a, const CMat& b);

/// Euclidean norm of a column vector (or Frobenius norm of any matrix).
double vec_norm(const CMat& v);

}  // namespace finstar
