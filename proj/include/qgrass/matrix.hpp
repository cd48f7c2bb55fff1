#pragma once

// Dense exact matrices, elimination, and spectral projections.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgrass/parallel.hpp"
#include "qgrass/rat.hpp"

namespace qgrass {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("Matrix: data size does not match shape");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix constant(std::size_t rows, std::size_t cols, const T& v) {
    return Matrix(rows, cols, std::vector<T>(rows * cols, v));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& c) { return a *= c; }
  friend Matrix operator*(const T& c, Matrix a) { return a *= c; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!(x == T(0))) return false;
    return true;
  }

  T entry_sum() const {
    T s(0);
    for (const auto& x : data_) s += x;
    return s;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Mat = Matrix<Rat>;

template <typename T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("mat_mul: dimension mismatch " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  Matrix<T> c(a.rows(), b.cols());
  parallel_for(a.rows(), [&](std::size_t i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == T(0)) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!(brow[j] == T(0))) out[j] += aik * brow[j];
    }
  });
  return c;
}

/// Specialization avoiding temporaries in the GMP inner loop.
inline Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("mat_mul: dimension mismatch " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  const std::size_t n = a.rows(), m = b.cols();
  std::vector<mpq_class> out(n * m);
  parallel_for(n, [&](std::size_t i) {
    mpq_class tmp;
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const mpq_class& aik = a(i, k).raw();
      if (sgn(aik) == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < m; ++j) {
        const mpq_class& bkj = brow[j].raw();
        if (sgn(bkj) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), aik.get_mpq_t(), bkj.get_mpq_t());
        mpq_add(out[i * m + j].get_mpq_t(), out[i * m + j].get_mpq_t(), tmp.get_mpq_t());
      }
    }
  });
  std::vector<Rat> data;
  data.reserve(out.size());
  for (auto& v : out) data.emplace_back(v);
  return Mat(n, m, std::move(data));
}

template <typename T>
T trace(const Matrix<T>& a) {
  if (!a.square()) throw std::invalid_argument("trace: matrix is not square");
  T s(0);
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

/// Reduced row echelon form in place; returns pivot columns.  Pivot choice is
/// the first nonzero entry in the column, so the result is deterministic.
inline std::vector<std::size_t> rref_in_place(Mat& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    const Rat inv = a(row, col).inverse();
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const Rat f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Mat a) { return rref_in_place(a).size(); }

/// Exact basis of {v : A v = 0}; one vector per free column.
inline std::vector<std::vector<Rat>> mat_nullspace(const Mat& a) {
  Mat r = a;
  const auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(a.cols(), Rat(0));
    v[free] = Rat(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t nullity(const Mat& a) { return a.cols() - rank(a); }

/// Spectral projection onto the eigenvalue eigenvalues[target] of a
/// diagonalizable M whose full spectrum is `eigenvalues`:
///   P = prod_{j != target} (M - mu_j I) / (mu_target - mu_j).
/// Throws if eigenvalues repeat or if prod_j (M - mu_j I) != 0.
inline Mat lagrange_projection(const Mat& m, std::span<const Rat> eigenvalues, std::size_t target) {
  if (!m.square()) throw std::invalid_argument("lagrange_projection: matrix is not square");
  if (target >= eigenvalues.size()) throw std::out_of_range("lagrange_projection: target index out of range");
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
      if (eigenvalues[i] == eigenvalues[j])
        throw std::invalid_argument("lagrange_projection: duplicate eigenvalue " + eigenvalues[i].str());

  const std::size_t n = m.rows();
  auto shifted = [&](const Rat& mu) {
    Mat s = m;
    for (std::size_t i = 0; i < n; ++i) s(i, i) -= mu;
    return s;
  };

  Mat p;
  bool started = false;
  Rat scale(1);
  for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
    if (j == target) continue;
    p = started ? mat_mul(p, shifted(eigenvalues[j])) : shifted(eigenvalues[j]);
    started = true;
    scale *= eigenvalues[target] - eigenvalues[j];
  }
  if (!started) p = Mat::identity(n);
  // Completeness: (M - mu_target I) annihilates the unscaled product.
  if (!mat_mul(p, shifted(eigenvalues[target])).is_zero())
    throw std::invalid_argument("lagrange_projection: eigenvalue list is incomplete");
  return p * scale.inverse();
}

}  // namespace qgrass
