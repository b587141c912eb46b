#ifndef REDORB_SUBSPACE_HPP
#define REDORB_SUBSPACE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "redorb/linsolve.hpp"
#include "redorb/matrix.hpp"

namespace redorb {

template <typename T> class Subspace;

template <typename T>
Subspace<T> span_reduce(const std::vector<Mat<T>>& vectors, int rows, int cols,
                        double rank_tol = kDefaultRankTol);

/// Span of matrices of a fixed shape inside the ambient space of all such
/// matrices. The stored basis is linearly independent by construction.
template <typename T>
class Subspace {
public:
  Subspace(int rows, int cols) : m_rows(rows), m_cols(cols) {}

  static Subspace empty(int rows, int cols) { return Subspace(rows, cols); }

  static Subspace from_basis(std::vector<Mat<T>> basis, int rows, int cols,
                             double rank_tol = kDefaultRankTol) {
    Subspace s(rows, cols);
    for (const auto& m : basis)
      if (m.rows() != rows || m.cols() != cols)
        throw std::invalid_argument("Subspace: basis shape mismatch");
    s.m_basis = std::move(basis);
    if (LinSolve<T>::rank(s.stacked(), rank_tol) != s.dim())
      throw std::invalid_argument("Subspace: basis is linearly dependent");
    return s;
  }

  int ambient_rows() const { return m_rows; }
  int ambient_cols() const { return m_cols; }
  int ambient_dim() const { return m_rows * m_cols; }
  int dim() const { return static_cast<int>(m_basis.size()); }
  const std::vector<Mat<T>>& basis() const { return m_basis; }
  const Mat<T>& operator[](int i) const { return m_basis.at(i); }

  /// Basis vectorizations stacked as rows (row-major convention).
  Mat<T> stacked() const {
    Mat<T> a(dim(), ambient_dim());
    for (int i = 0; i < dim(); ++i) {
      auto v = m_basis[i].vectorized();
      for (int j = 0; j < ambient_dim(); ++j) a(i, j) = v[j];
    }
    return a;
  }

  /// Coordinates of x in this basis; empty if x is outside the span.
  std::optional<std::vector<T>> coordinates(const Mat<T>& x, double tol = 1e-8) const {
    if (x.rows() != m_rows || x.cols() != m_cols)
      throw std::invalid_argument("Subspace::coordinates: shape mismatch");
    Mat<T> a(ambient_dim(), dim());
    for (int i = 0; i < dim(); ++i) {
      auto v = m_basis[i].vectorized();
      for (int j = 0; j < ambient_dim(); ++j) a(j, i) = v[j];
    }
    return LinSolve<T>::solve(a, x.vectorized(), tol);
  }

  bool contains(const Mat<T>& x, double tol = 1e-8) const {
    return coordinates(x, tol).has_value();
  }

  bool contains(const Subspace& other, double tol = 1e-8) const {
    for (const auto& b : other.m_basis)
      if (!contains(b, tol)) return false;
    return true;
  }

  bool same_span(const Subspace& other, double tol = 1e-8) const {
    return dim() == other.dim() && contains(other, tol);
  }

  Mat<T> from_coordinates(const std::vector<T>& c) const {
    if (static_cast<int>(c.size()) != dim())
      throw std::invalid_argument("Subspace::from_coordinates: size mismatch");
    Mat<T> x(m_rows, m_cols);
    for (int i = 0; i < dim(); ++i) {
      Mat<T> term = m_basis[i];
      term *= c[i];
      x += term;
    }
    return x;
  }

  Subspace sum(const Subspace& other, double rank_tol = kDefaultRankTol) const {
    require_same_ambient(other, "sum");
    std::vector<Mat<T>> all = m_basis;
    all.insert(all.end(), other.m_basis.begin(), other.m_basis.end());
    return span_reduce(all, m_rows, m_cols, rank_tol);
  }

  /// Canonical reduced-echelon presentation of the same span. In exact mode
  /// two subspaces are equal iff their echelon bases are literally equal.
  Subspace echelon(double rank_tol = kDefaultRankTol) const {
    std::vector<int> pivots;
    Mat<T> r = LinSolve<T>::rref(stacked(), &pivots);
    std::vector<Mat<T>> rows;
    for (size_t i = 0; i < pivots.size(); ++i) {
      Mat<T> m(m_rows, m_cols);
      for (int rr = 0; rr < m_rows; ++rr)
        for (int cc = 0; cc < m_cols; ++cc) m(rr, cc) = r(static_cast<int>(i), rr * m_cols + cc);
      rows.push_back(m);
    }
    Subspace s(m_rows, m_cols);
    s.m_basis = std::move(rows);
    (void)rank_tol;
    return s;
  }

private:
  template <typename U>
  friend Subspace<U> span_reduce(const std::vector<Mat<U>>&, int, int, double);

  void require_same_ambient(const Subspace& o, const char* op) const {
    if (m_rows != o.m_rows || m_cols != o.m_cols)
      throw std::invalid_argument(std::string("Subspace: ambient mismatch in ") + op);
  }

  int m_rows, m_cols;
  std::vector<Mat<T>> m_basis;
};

/// Extracts a linearly independent spanning set. Exact mode eliminates over
/// the rationals; floating mode decides rank through the SVD cutoff and keeps
/// a subset of the original vectors.
template <typename T>
Subspace<T> span_reduce(const std::vector<Mat<T>>& vectors, int rows, int cols,
                        double rank_tol) {
  for (const auto& m : vectors)
    if (m.rows() != rows || m.cols() != cols)
      throw std::invalid_argument("span_reduce: shape mismatch");
  Subspace<T> s(rows, cols);
  for (const auto& m : vectors) {
    if (m.is_zero()) continue;
    std::vector<Mat<T>> trial = s.m_basis;
    trial.push_back(m);
    Mat<T> a(static_cast<int>(trial.size()), rows * cols);
    for (size_t i = 0; i < trial.size(); ++i) {
      auto v = trial[i].vectorized();
      for (int j = 0; j < rows * cols; ++j) a(static_cast<int>(i), j) = v[j];
    }
    if (LinSolve<T>::rank(a, rank_tol) == static_cast<int>(trial.size()))
      s.m_basis.push_back(m);
  }
  return s;
}

/// Intersection a ∩ b through the nullspace of the stacked coefficient system
/// (Zassenhaus-style: combinations of a-basis equal to combinations of b-basis).
template <typename T>
Subspace<T> intersect(const Subspace<T>& a, const Subspace<T>& b,
                      double rank_tol = kDefaultRankTol) {
  if (a.ambient_rows() != b.ambient_rows() || a.ambient_cols() != b.ambient_cols())
    throw std::invalid_argument("intersect: ambient mismatch");
  if (a.dim() == 0 || b.dim() == 0) return Subspace<T>::empty(a.ambient_rows(), a.ambient_cols());
  // Columns are the basis vectors of a followed by -basis of b.
  Mat<T> sys(a.ambient_dim(), a.dim() + b.dim());
  for (int i = 0; i < a.dim(); ++i) {
    auto v = a[i].vectorized();
    for (int j = 0; j < a.ambient_dim(); ++j) sys(j, i) = v[j];
  }
  for (int i = 0; i < b.dim(); ++i) {
    auto v = b[i].vectorized();
    for (int j = 0; j < a.ambient_dim(); ++j) sys(j, a.dim() + i) = -v[j];
  }
  Mat<T> ns = LinSolve<T>::nullspace(sys, rank_tol);
  std::vector<Mat<T>> gens;
  for (int k = 0; k < ns.rows(); ++k) {
    std::vector<T> ca(a.dim());
    for (int i = 0; i < a.dim(); ++i) ca[i] = ns(k, i);
    gens.push_back(a.from_coordinates(ca));
  }
  return span_reduce(gens, a.ambient_rows(), a.ambient_cols(), rank_tol);
}

/// Symmetric bilinear form given by its Gram matrix on a basis of some
/// subspace. Evaluation works on coordinate vectors in that basis.
template <typename T>
class GramForm {
public:
  GramForm(Subspace<T> basis_space, Mat<T> gram, double sym_tol = 1e-9)
      : m_space(std::move(basis_space)), m_gram(std::move(gram)) {
    if (m_gram.rows() != m_space.dim() || m_gram.cols() != m_space.dim())
      throw std::invalid_argument("GramForm: gram size does not match basis");
    if ((m_gram - m_gram.transpose()).max_abs() > sym_tol)
      throw std::invalid_argument("GramForm: gram matrix is not symmetric");
  }

  const Subspace<T>& space() const { return m_space; }
  const Mat<T>& gram() const { return m_gram; }

  T evaluate_coords(const std::vector<T>& x, const std::vector<T>& y) const {
    T acc = scalar_traits<T>::zero();
    for (int i = 0; i < m_gram.rows(); ++i)
      for (int j = 0; j < m_gram.cols(); ++j) acc += x[i] * m_gram(i, j) * y[j];
    return acc;
  }

  T evaluate(const Mat<T>& x, const Mat<T>& y, double tol = 1e-8) const {
    auto cx = m_space.coordinates(x, tol);
    auto cy = m_space.coordinates(y, tol);
    if (!cx || !cy)
      throw std::invalid_argument("GramForm::evaluate: argument outside the form's space");
    return evaluate_coords(*cx, *cy);
  }

  /// Gram matrix of the restriction to a subspace of the form's space.
  Mat<T> restricted_gram(const Subspace<T>& sub, double tol = 1e-8) const {
    std::vector<std::vector<T>> coords;
    for (const auto& b : sub.basis()) {
      auto c = m_space.coordinates(b, tol);
      if (!c) throw std::invalid_argument("GramForm::restricted_gram: not a subspace");
      coords.push_back(*c);
    }
    Mat<T> g(sub.dim(), sub.dim());
    for (int i = 0; i < sub.dim(); ++i)
      for (int j = 0; j < sub.dim(); ++j) g(i, j) = evaluate_coords(coords[i], coords[j]);
    return g;
  }

private:
  Subspace<T> m_space;
  Mat<T> m_gram;
};

template <typename T>
struct ComplementResult {
  Subspace<T> complement;
  /// True when the form restricted to `sub` is nondegenerate, in which case
  /// the complement is a direct complement of sub inside within.
  bool nondegenerate_on_sub = false;
};

/// Form-orthogonal complement of sub inside within:
/// { x in within : form(x, s) = 0 for all s in sub }.
/// A degenerate restriction is reported through the flag, not an error.
template <typename T>
ComplementResult<T> orth_complement(const Subspace<T>& sub, const Subspace<T>& within,
                                    const GramForm<T>& form, double tol = 1e-8,
                                    double rank_tol = kDefaultRankTol) {
  std::vector<std::vector<T>> w_coords;  // within basis in form coordinates
  for (const auto& b : within.basis()) {
    auto c = form.space().coordinates(b, tol);
    if (!c)
      throw std::invalid_argument("orth_complement: within is not inside the form's space");
    w_coords.push_back(*c);
  }
  std::vector<std::vector<T>> s_coords;
  for (const auto& b : sub.basis()) {
    if (!within.contains(b, tol))
      throw std::invalid_argument("orth_complement: sub is not contained in within");
    auto c = form.space().coordinates(b, tol);
    s_coords.push_back(*c);
  }
  // Row j of the constraint matrix: form(w_i, s_j) as i varies.
  Mat<T> constraints(sub.dim(), within.dim());
  for (int j = 0; j < sub.dim(); ++j)
    for (int i = 0; i < within.dim(); ++i)
      constraints(j, i) = form.evaluate_coords(w_coords[i], s_coords[j]);
  Mat<T> ns = LinSolve<T>::nullspace(constraints, rank_tol);
  std::vector<Mat<T>> gens;
  for (int k = 0; k < ns.rows(); ++k) {
    std::vector<T> c(within.dim());
    for (int i = 0; i < within.dim(); ++i) c[i] = ns(k, i);
    gens.push_back(within.from_coordinates(c));
  }
  ComplementResult<T> out{span_reduce(gens, within.ambient_rows(), within.ambient_cols(), rank_tol),
                          false};
  Mat<T> sub_gram(sub.dim(), sub.dim());
  for (int i = 0; i < sub.dim(); ++i)
    for (int j = 0; j < sub.dim(); ++j)
      sub_gram(i, j) = form.evaluate_coords(s_coords[i], s_coords[j]);
  out.nondegenerate_on_sub = (LinSolve<T>::rank(sub_gram, rank_tol) == sub.dim());
  return out;
}

/// Component of x in `onto` along the direct sum onto ⊕ along.
template <typename T>
Mat<T> project(const Mat<T>& x, const Subspace<T>& onto, const Subspace<T>& along,
               double tol = 1e-8, double rank_tol = kDefaultRankTol) {
  if (intersect(onto, along, rank_tol).dim() != 0)
    throw std::invalid_argument("project: onto and along intersect nontrivially");
  Mat<T> sys(onto.ambient_dim(), onto.dim() + along.dim());
  for (int i = 0; i < onto.dim(); ++i) {
    auto v = onto[i].vectorized();
    for (int j = 0; j < onto.ambient_dim(); ++j) sys(j, i) = v[j];
  }
  for (int i = 0; i < along.dim(); ++i) {
    auto v = along[i].vectorized();
    for (int j = 0; j < onto.ambient_dim(); ++j) sys(j, onto.dim() + i) = v[j];
  }
  auto c = LinSolve<T>::solve(sys, x.vectorized(), tol);
  if (!c) throw std::invalid_argument("project: x is outside onto + along");
  std::vector<T> c_onto(c->begin(), c->begin() + onto.dim());
  return onto.from_coordinates(c_onto);
}

using SubspaceQ = Subspace<Rational>;
using SubspaceD = Subspace<double>;

}  // namespace redorb

#endif
