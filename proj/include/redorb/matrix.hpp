#ifndef REDORB_MATRIX_HPP
#define REDORB_MATRIX_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "redorb/scalar.hpp"

namespace redorb {

/// Dense row-major matrix over an exact or floating scalar. All subspace
/// computations vectorize matrices row-major, so one storage convention is
/// fixed here once and for all.
template <typename T>
class Mat {
public:
  Mat() : m_rows(0), m_cols(0) {}
  Mat(int rows, int cols)
      : m_rows(rows), m_cols(cols),
        m_data(static_cast<size_t>(rows) * cols, scalar_traits<T>::zero()) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative shape");
  }
  Mat(int rows, int cols, std::initializer_list<T> entries) : Mat(rows, cols) {
    if (entries.size() != m_data.size())
      throw std::invalid_argument("Mat: initializer size mismatch");
    std::copy(entries.begin(), entries.end(), m_data.begin());
  }

  static Mat zero(int rows, int cols) { return Mat(rows, cols); }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<T>::one();
    return m;
  }
  /// Elementary matrix with a single 1 at (i,j); indices are 0-based.
  static Mat unit(int rows, int cols, int i, int j) {
    Mat m(rows, cols);
    m(i, j) = scalar_traits<T>::one();
    return m;
  }

  int rows() const { return m_rows; }
  int cols() const { return m_cols; }
  bool is_square() const { return m_rows == m_cols; }

  T& operator()(int i, int j) { return m_data[static_cast<size_t>(i) * m_cols + j]; }
  const T& operator()(int i, int j) const {
    return m_data[static_cast<size_t>(i) * m_cols + j];
  }

  const std::vector<T>& data() const { return m_data; }

  Mat& operator+=(const Mat& o) {
    require_same_shape(o, "operator+");
    for (size_t k = 0; k < m_data.size(); ++k) m_data[k] += o.m_data[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    require_same_shape(o, "operator-");
    for (size_t k = 0; k < m_data.size(); ++k) m_data[k] -= o.m_data[k];
    return *this;
  }
  Mat& operator*=(const T& s) {
    for (auto& x : m_data) x *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const T& s, Mat a) { return a *= s; }
  friend Mat operator-(const Mat& a) {
    Mat r = a;
    for (auto& x : r.m_data) x = -x;
    return r;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.m_cols != b.m_rows) throw std::invalid_argument("Mat: product shape mismatch");
    Mat r(a.m_rows, b.m_cols);
    for (int i = 0; i < a.m_rows; ++i)
      for (int k = 0; k < a.m_cols; ++k) {
        const T& aik = a(i, k);
        if (scalar_traits<T>::is_zero(aik)) continue;
        for (int j = 0; j < b.m_cols; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.m_rows == b.m_rows && a.m_cols == b.m_cols && a.m_data == b.m_data;
  }

  Mat transpose() const {
    Mat r(m_cols, m_rows);
    for (int i = 0; i < m_rows; ++i)
      for (int j = 0; j < m_cols; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  T trace() const {
    if (!is_square()) throw std::invalid_argument("Mat::trace: not square");
    T t = scalar_traits<T>::zero();
    for (int i = 0; i < m_rows; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest entry magnitude (exact entries measured through double).
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : m_data) m = std::max(m, scalar_traits<T>::magnitude(x));
    return m;
  }

  bool is_zero(double tol = 0.0) const {
    for (const auto& x : m_data)
      if (!scalar_traits<T>::is_zero(x, tol)) return false;
    return true;
  }

  /// Row-major flattening, the single vectorization convention of the project.
  std::vector<T> vectorized() const { return m_data; }

  Mat<double> to_double() const {
    Mat<double> r(m_rows, m_cols);
    for (int i = 0; i < m_rows; ++i)
      for (int j = 0; j < m_cols; ++j) r(i, j) = scalar_traits<T>::to_double((*this)(i, j));
    return r;
  }

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd r(m_rows, m_cols);
    for (int i = 0; i < m_rows; ++i)
      for (int j = 0; j < m_cols; ++j) r(i, j) = scalar_traits<T>::to_double((*this)(i, j));
    return r;
  }

  static Mat<double> from_eigen(const Eigen::MatrixXd& e) {
    Mat<double> r(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
    for (int i = 0; i < e.rows(); ++i)
      for (int j = 0; j < e.cols(); ++j) r(i, j) = e(i, j);
    return r;
  }

private:
  void require_same_shape(const Mat& o, const char* op) const {
    if (m_rows != o.m_rows || m_cols != o.m_cols)
      throw std::invalid_argument(std::string("Mat: shape mismatch in ") + op);
  }

  int m_rows, m_cols;
  std::vector<T> m_data;
};

/// Commutator XY - YX, the bracket of the matrix Lie algebra layer.
template <typename T>
Mat<T> bracket(const Mat<T>& x, const Mat<T>& y) {
  if (!x.is_square() || x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("bracket: operands must be square of equal size");
  return x * y - y * x;
}

template <typename T>
T trace_product(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw std::invalid_argument("trace_product: shape mismatch");
  T t = scalar_traits<T>::zero();
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

using MatQ = Mat<Rational>;
using MatD = Mat<double>;

}  // namespace redorb

#endif
