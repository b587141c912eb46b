#ifndef REDORB_KILLING_HPP
#define REDORB_KILLING_HPP

#include "redorb/matrix.hpp"

namespace redorb {

/// Normalization constant of the Cartan-Killing form of so(k): (k-2) tr(XY).
/// For k <= 2 the genuine Killing form vanishes, so the trace form (still
/// invariant and negative definite on skew matrices) stands in with
/// coefficient 1; callers can detect that through `degenerate_fallback`.
inline long so_killing_scale(int k, bool* degenerate_fallback = nullptr) {
  if (k <= 2) {
    if (degenerate_fallback) *degenerate_fallback = true;
    return 1;
  }
  if (degenerate_fallback) *degenerate_fallback = false;
  return k - 2;
}

/// Cartan-Killing form of so(k) evaluated on two skew k x k matrices.
/// Throws when an input fails skewness beyond `skew_tol`.
template <typename T>
T killing_form_so(int k, const Mat<T>& a, const Mat<T>& b, double skew_tol = 1e-9,
                  bool* degenerate_fallback = nullptr) {
  if (a.rows() != k || a.cols() != k || b.rows() != k || b.cols() != k)
    throw std::invalid_argument("killing_form_so: shape mismatch");
  if ((a + a.transpose()).max_abs() > skew_tol || (b + b.transpose()).max_abs() > skew_tol)
    throw std::invalid_argument("killing_form_so: input is not skew-symmetric");
  long scale = so_killing_scale(k, degenerate_fallback);
  T t = trace_product(a, b);
  if constexpr (scalar_traits<T>::exact)
    return Rational(scale) * t;
  else
    return static_cast<double>(scale) * t;
}

}  // namespace redorb

#endif
