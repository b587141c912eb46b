#ifndef REDORB_LINSOLVE_HPP
#define REDORB_LINSOLVE_HPP

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "redorb/matrix.hpp"

namespace redorb {

/// Relative singular-value cutoff for floating rank decisions. Exact mode
/// ignores it and uses true rank.
inline constexpr double kDefaultRankTol = 1e-10;

namespace detail {

/// In-place reduced row echelon form over exact scalars. Returns pivot
/// column indices.
inline std::vector<int> rref_exact(Mat<Rational>& a) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int p = -1;
    for (int i = row; i < a.rows(); ++i)
      if (!a(i, col).is_zero()) { p = i; break; }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(p, j));
    Rational inv = Rational(1) / a(row, col);
    for (int j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      Rational f = a(i, col);
      for (int j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

template <typename T> struct LinSolve;

template <> struct LinSolve<Rational> {
  static int rank(const Mat<Rational>& a, double /*rel_tol*/ = kDefaultRankTol) {
    Mat<Rational> w = a;
    return static_cast<int>(detail::rref_exact(w).size());
  }

  /// Reduced row echelon form; pivot columns reported through `pivots`.
  static Mat<Rational> rref(const Mat<Rational>& a, std::vector<int>* pivots = nullptr) {
    Mat<Rational> w = a;
    auto p = detail::rref_exact(w);
    if (pivots) *pivots = p;
    return w;
  }

  /// Basis of the kernel of a (as rows of the returned matrix).
  static Mat<Rational> nullspace(const Mat<Rational>& a, double /*rel_tol*/ = kDefaultRankTol) {
    std::vector<int> pivots;
    Mat<Rational> r = rref(a, &pivots);
    std::vector<int> free_cols;
    {
      size_t pi = 0;
      for (int c = 0; c < a.cols(); ++c) {
        if (pi < pivots.size() && pivots[pi] == c) { ++pi; continue; }
        free_cols.push_back(c);
      }
    }
    Mat<Rational> ns(static_cast<int>(free_cols.size()), a.cols());
    for (size_t k = 0; k < free_cols.size(); ++k) {
      int fc = free_cols[k];
      ns(static_cast<int>(k), fc) = Rational(1);
      for (size_t pi = 0; pi < pivots.size(); ++pi)
        ns(static_cast<int>(k), pivots[pi]) = -r(static_cast<int>(pi), fc);
    }
    return ns;
  }

  /// Solves A x = b exactly. Empty result if inconsistent.
  static std::optional<std::vector<Rational>> solve(const Mat<Rational>& a,
                                                    const std::vector<Rational>& b,
                                                    double /*tol*/ = kDefaultRankTol) {
    if (static_cast<int>(b.size()) != a.rows())
      throw std::invalid_argument("LinSolve::solve: rhs size mismatch");
    Mat<Rational> aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
      aug(i, a.cols()) = b[i];
    }
    std::vector<int> pivots;
    Mat<Rational> r = rref(aug, &pivots);
    for (int c : pivots)
      if (c == a.cols()) return std::nullopt;  // inconsistent system
    std::vector<Rational> x(a.cols(), Rational(0));
    for (size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = r(static_cast<int>(pi), a.cols());
    return x;
  }
};

/// Exact inverse through row reduction of [a | I].
inline Mat<Rational> invert(const Mat<Rational>& a) {
  if (!a.is_square()) throw std::invalid_argument("invert: matrix must be square");
  const int n = a.rows();
  Mat<Rational> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Rational(1);
  }
  std::vector<int> pivots;
  Mat<Rational> r = LinSolve<Rational>::rref(aug, &pivots);
  if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1)
    throw std::domain_error("invert: singular matrix");
  Mat<Rational> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

inline Mat<double> invert(const Mat<double>& a) {
  if (!a.is_square()) throw std::invalid_argument("invert: matrix must be square");
  Eigen::MatrixXd m = a.to_eigen();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) throw std::domain_error("invert: singular matrix");
  return Mat<double>::from_eigen(lu.inverse());
}

template <> struct LinSolve<double> {
  static int rank(const Mat<double>& a, double rel_tol = kDefaultRankTol) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.to_eigen());
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > rel_tol * sv(0)) ++r;
    return r;
  }

  static Mat<double> rref(const Mat<double>& a, std::vector<int>* pivots = nullptr,
                          double rel_tol = kDefaultRankTol) {
    // Partial-pivot elimination; adequate for presentation purposes, rank
    // decisions go through the SVD.
    Mat<double> w = a;
    double scale = std::max(w.max_abs(), 1.0);
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < w.cols() && row < w.rows(); ++col) {
      int p = row;
      for (int i = row + 1; i < w.rows(); ++i)
        if (std::fabs(w(i, col)) > std::fabs(w(p, col))) p = i;
      if (std::fabs(w(p, col)) <= rel_tol * scale) continue;
      if (p != row)
        for (int j = 0; j < w.cols(); ++j) std::swap(w(row, j), w(p, j));
      double inv = 1.0 / w(row, col);
      for (int j = col; j < w.cols(); ++j) w(row, j) *= inv;
      for (int i = 0; i < w.rows(); ++i) {
        if (i == row) continue;
        double f = w(i, col);
        if (f == 0.0) continue;
        for (int j = col; j < w.cols(); ++j) w(i, j) -= f * w(row, j);
      }
      piv.push_back(col);
      ++row;
    }
    if (pivots) *pivots = piv;
    return w;
  }

  static Mat<double> nullspace(const Mat<double>& a, double rel_tol = kDefaultRankTol) {
    if (a.rows() == 0) return Mat<double>::identity(a.cols());
    Eigen::MatrixXd m = a.to_eigen();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cutoff = (sv.size() > 0 ? sv(0) : 0.0) * rel_tol;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > cutoff) ++r;
    int dim = a.cols() - r;
    Mat<double> ns(dim, a.cols());
    for (int k = 0; k < dim; ++k)
      for (int j = 0; j < a.cols(); ++j) ns(k, j) = svd.matrixV()(j, r + k);
    return ns;
  }

  /// Least-squares solve; empty if the residual is not negligible.
  static std::optional<std::vector<double>> solve(const Mat<double>& a,
                                                  const std::vector<double>& b,
                                                  double tol = 1e-8) {
    if (static_cast<int>(b.size()) != a.rows())
      throw std::invalid_argument("LinSolve::solve: rhs size mismatch");
    Eigen::MatrixXd m = a.to_eigen();
    Eigen::VectorXd rhs(a.rows());
    for (int i = 0; i < a.rows(); ++i) rhs(i) = b[i];
    Eigen::VectorXd x = m.colPivHouseholderQr().solve(rhs);
    double scale = std::max({rhs.norm(), m.norm(), 1.0});
    if ((m * x - rhs).norm() > tol * scale) return std::nullopt;
    std::vector<double> out(a.cols());
    for (int j = 0; j < a.cols(); ++j) out[j] = x(j);
    return out;
  }
};

}  // namespace redorb

#endif
