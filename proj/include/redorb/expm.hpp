#ifndef REDORB_EXPM_HPP
#define REDORB_EXPM_HPP

#include <Eigen/Dense>

#include <cmath>

#include "redorb/matrix.hpp"

namespace redorb {

/// Matrix exponential by scaling and squaring with a (6,6) Pade approximant.
inline Mat<double> expm(const Mat<double>& a) {
  if (!a.is_square()) throw std::invalid_argument("expm: matrix must be square");
  const int n = a.rows();
  Eigen::MatrixXd m = a.to_eigen();

  double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.0) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm))) + 1);
  Eigen::MatrixXd a2 = m / std::pow(2.0, s);

  const int q = 6;
  Eigen::MatrixXd x = a2;
  double c = 0.5;
  Eigen::MatrixXd e = Eigen::MatrixXd::Identity(n, n) + c * a2;
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(n, n) - c * a2;
  bool plus = false;
  for (int k = 2; k <= q; ++k) {
    c = c * static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
    x = a2 * x;
    e += c * x;
    d += (plus ? c : -c) * x;
    plus = !plus;
  }
  Eigen::MatrixXd r = d.partialPivLu().solve(e);
  for (int k = 0; k < s; ++k) r = r * r;
  return Mat<double>::from_eigen(r);
}

struct ExactExp {
  Mat<Rational> value;
  /// Upper bound on the truncation error (0 when the series terminated,
  /// e.g. for nilpotent arguments).
  double remainder_bound = 0.0;
  bool terminated = false;
};

/// Truncated exponential series over the rationals. Terminates early for
/// nilpotent input; otherwise sums `terms` terms and reports the standard
/// tail bound ||X||^(N+1)/(N+1)! * e^||X||.
inline ExactExp expm_series(const Mat<Rational>& a, int terms = 20) {
  if (!a.is_square()) throw std::invalid_argument("expm_series: matrix must be square");
  ExactExp out{Mat<Rational>::identity(a.rows()), 0.0, false};
  Mat<Rational> power = Mat<Rational>::identity(a.rows());
  Rational fact(1);
  for (int k = 1; k <= terms; ++k) {
    power = power * a;
    if (power.is_zero()) {
      out.terminated = true;
      return out;
    }
    fact *= Rational(k);
    Mat<Rational> term = power;
    term *= Rational(1) / fact;
    out.value += term;
  }
  double nrm = 0.0;  // infinity norm via doubles, only used for the bound
  for (int i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < a.cols(); ++j) row += scalar_traits<Rational>::magnitude(a(i, j));
    nrm = std::max(nrm, row);
  }
  double tail = 1.0;
  for (int k = 1; k <= terms + 1; ++k) tail *= nrm / k;
  out.remainder_bound = tail * std::exp(nrm);
  return out;
}

}  // namespace redorb

#endif
