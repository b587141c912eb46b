#ifndef REDORB_LIE_ALGEBRA_HPP
#define REDORB_LIE_ALGEBRA_HPP

#include <string>
#include <vector>

#include "redorb/expm.hpp"
#include "redorb/matrix.hpp"
#include "redorb/subspace.hpp"

namespace redorb {

/// Relative distance from x to the span of s (0 when contained). Exact mode
/// returns 0 or 1.
template <typename T>
double span_distance(const Subspace<T>& s, const Mat<T>& x, double tol = 1e-8);

template <>
inline double span_distance<Rational>(const Subspace<Rational>& s, const Mat<Rational>& x,
                                      double tol) {
  return s.contains(x, tol) ? 0.0 : 1.0;
}

template <>
inline double span_distance<double>(const Subspace<double>& s, const Mat<double>& x,
                                    double /*tol*/) {
  if (x.is_zero()) return 0.0;
  Eigen::VectorXd v(x.rows() * x.cols());
  {
    auto vec = x.vectorized();
    for (size_t i = 0; i < vec.size(); ++i) v(static_cast<int>(i)) = vec[i];
  }
  if (s.dim() == 0) return 1.0;
  Eigen::MatrixXd a(s.ambient_dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    auto vec = s[i].vectorized();
    for (int j = 0; j < s.ambient_dim(); ++j) a(j, i) = vec[j];
  }
  Eigen::VectorXd c = a.colPivHouseholderQr().solve(v);
  return (a * c - v).norm() / std::max(1.0, v.norm());
}

/// Bracket-closed span of square matrices with cached structure constants
/// c[i][j][k]: [B_i, B_j] = sum_k c[i][j][k] B_k. Immutable after
/// construction.
template <typename T>
class MatrixLieAlgebra {
public:
  MatrixLieAlgebra(Subspace<T> basis, std::string name = "", double tol = 1e-8)
      : m_name(std::move(name)), m_basis(std::move(basis)) {
    if (m_basis.ambient_rows() != m_basis.ambient_cols())
      throw std::invalid_argument("MatrixLieAlgebra: ambient matrices must be square");
    compute_structure_constants(tol);
  }

  const std::string& name() const { return m_name; }
  int ambient_size() const { return m_basis.ambient_rows(); }
  int dim() const { return m_basis.dim(); }
  const Subspace<T>& span() const { return m_basis; }
  const std::vector<Mat<T>>& basis() const { return m_basis.basis(); }
  const Mat<T>& operator[](int i) const { return m_basis[i]; }
  double closure_residual() const { return m_closure_residual; }

  /// c[i][j][k]
  const T& structure_constant(int i, int j, int k) const {
    return m_struct[static_cast<size_t>(k)](i, j);
  }

  std::vector<T> bracket_coords(const std::vector<T>& x, const std::vector<T>& y) const {
    std::vector<T> out(dim(), scalar_traits<T>::zero());
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) {
        T f = x[i] * y[j];
        if (scalar_traits<T>::is_zero(f)) continue;
        for (int k = 0; k < dim(); ++k) out[k] += f * m_struct[static_cast<size_t>(k)](i, j);
      }
    return out;
  }

  /// Worst Jacobi residual over the basis triples (measured through doubles).
  double jacobi_residual() const {
    double worst = 0.0;
    for (int i = 0; i < dim(); ++i)
      for (int j = i + 1; j < dim(); ++j)
        for (int k = j + 1; k < dim(); ++k) {
          Mat<T> s = bracket(bracket(m_basis[i], m_basis[j]), m_basis[k]) +
                     bracket(bracket(m_basis[j], m_basis[k]), m_basis[i]) +
                     bracket(bracket(m_basis[k], m_basis[i]), m_basis[j]);
          worst = std::max(worst, s.max_abs());
        }
    return worst;
  }

private:
  void compute_structure_constants(double tol) {
    m_struct.assign(static_cast<size_t>(dim()), Mat<T>(dim(), dim()));
    m_closure_residual = 0.0;
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < i; ++j) {
        Mat<T> br = bracket(m_basis[i], m_basis[j]);
        m_closure_residual = std::max(m_closure_residual, span_distance(m_basis, br, tol));
        auto c = m_basis.coordinates(br, tol);
        if (!c)
          throw std::invalid_argument("MatrixLieAlgebra '" + m_name +
                                      "': basis is not bracket closed");
        for (int k = 0; k < dim(); ++k) {
          m_struct[static_cast<size_t>(k)](i, j) = (*c)[k];
          m_struct[static_cast<size_t>(k)](j, i) = -(*c)[k];
        }
      }
  }

  std::string m_name;
  Subspace<T> m_basis;
  std::vector<Mat<T>> m_struct;
  double m_closure_residual = 0.0;
};

struct SubalgebraCheck {
  bool is_subalgebra = false;
  double residual = 0.0;
};

/// True iff [x, y] stays in sub for all basis pairs; also reports the worst
/// relative distance of a bracket to the span.
template <typename T>
SubalgebraCheck is_subalgebra(const Subspace<T>& sub, const MatrixLieAlgebra<T>& ambient,
                              double tol = 1e-8) {
  for (const auto& b : sub.basis())
    if (span_distance(ambient.span(), b, tol) > tol)
      throw std::invalid_argument("is_subalgebra: sub is not inside the ambient algebra");
  SubalgebraCheck out{true, 0.0};
  for (int i = 0; i < sub.dim(); ++i)
    for (int j = 0; j < i; ++j) {
      double d = span_distance(sub, bracket(sub[i], sub[j]), tol);
      out.residual = std::max(out.residual, d);
      if (d > tol) out.is_subalgebra = false;
    }
  return out;
}

struct AdInvarianceReport {
  /// max over basis pairs of dist([h_i, m_j], m)
  double bracket_residual = 0.0;
  /// max over sampled group elements of dist(Ad_g m_j, m)
  double conjugation_residual = 0.0;
  /// truncation bound of the exact-series exponential (0 in float mode)
  double exp_remainder_bound = 0.0;
  bool invariant(double tol = 1e-8) const {
    return bracket_residual <= tol && conjugation_residual <= tol + exp_remainder_bound;
  }
};

namespace detail {

inline Mat<double> ad_conjugate(const Mat<double>& g, const Mat<double>& x) {
  Eigen::MatrixXd ge = g.to_eigen();
  return Mat<double>::from_eigen(ge * x.to_eigen() * ge.partialPivLu().inverse());
}

inline Mat<Rational> ad_conjugate(const Mat<Rational>& g, const Mat<Rational>& x) {
  // exact inverse via [g | I] elimination
  int n = g.rows();
  Mat<Rational> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = g(i, j);
    aug(i, n + i) = Rational(1);
  }
  Mat<Rational> r = LinSolve<Rational>::rref(aug);
  Mat<Rational> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j && r(i, i) != Rational(1))
        throw std::domain_error("ad_conjugate: exact inverse failed (singular)");
      inv(i, j) = r(i, n + j);
    }
  return g * x * inv;
}

template <typename T> struct GroupExp;
template <> struct GroupExp<double> {
  static Mat<double> exp(const Mat<double>& x, double* /*bound*/) { return expm(x); }
};
template <> struct GroupExp<Rational> {
  static Mat<Rational> exp(const Mat<Rational>& x, double* bound) {
    ExactExp e = expm_series(x);
    if (bound) *bound = std::max(*bound, e.remainder_bound);
    return e.value;
  }
};

}  // namespace detail

/// Tests the two halves of Ad-invariance of m under the connected group of h:
/// [h, m] inside m, and Ad(exp(t X)) m inside m for t in {+-1, +-1/2} and X
/// running through the h basis (group_samples caps how many are used).
template <typename T>
AdInvarianceReport ad_invariance_check(const Subspace<T>& h_sub, const Subspace<T>& m_sub,
                                       const MatrixLieAlgebra<T>& alg, int group_samples = 8,
                                       double tol = 1e-8) {
  for (const auto& b : h_sub.basis())
    if (span_distance(alg.span(), b, tol) > tol)
      throw std::invalid_argument("ad_invariance_check: h is not inside the algebra");
  for (const auto& b : m_sub.basis())
    if (span_distance(alg.span(), b, tol) > tol)
      throw std::invalid_argument("ad_invariance_check: m is not inside the algebra");

  AdInvarianceReport rep;
  for (int i = 0; i < h_sub.dim(); ++i)
    for (int j = 0; j < m_sub.dim(); ++j)
      rep.bracket_residual = std::max(
          rep.bracket_residual, span_distance(m_sub, bracket(h_sub[i], m_sub[j]), tol));

  const double ts[4] = {1.0, -1.0, 0.5, -0.5};
  int used = 0;
  for (int i = 0; i < h_sub.dim() && used < group_samples; ++i, ++used) {
    for (double t : ts) {
      Mat<T> scaled = h_sub[i];
      if constexpr (scalar_traits<T>::exact)
        scaled *= (t == 1.0 ? Rational(1) : t == -1.0 ? Rational(-1)
                   : t == 0.5 ? Rational(1, 2) : Rational(-1, 2));
      else
        scaled *= t;
      Mat<T> g = detail::GroupExp<T>::exp(scaled, &rep.exp_remainder_bound);
      for (int j = 0; j < m_sub.dim(); ++j) {
        Mat<T> conj = detail::ad_conjugate(g, m_sub[j]);
        rep.conjugation_residual =
            std::max(rep.conjugation_residual, span_distance(m_sub, conj, tol));
      }
    }
  }
  return rep;
}

}  // namespace redorb

#endif
