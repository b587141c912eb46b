#include "redorb/model.hpp"

#include <stdexcept>

namespace redorb {

std::vector<EMat> ChartedHomSpace::christoffel_from_metric(const Vec& p) const {
  require_in_chart(p);
  const int d = dim();
  EMat g = metric_at(p);
  Eigen::LDLT<EMat> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw std::domain_error(name() + ": metric not positive definite at evaluation point");
  std::vector<EMat> dg = metric_deriv_at(p);
  EMat ginv = g.inverse();
  std::vector<EMat> gamma(d, EMat::Zero(d, d));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double acc = 0.0;
        for (int l = 0; l < d; ++l)
          acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = 0.5 * acc;
      }
  return gamma;
}

CurvatureBlocks ChartedHomSpace::curvature_at(const Vec& p) const {
  // Finite-difference fallback: R^l_{ijk} from first differences of the
  // Christoffel symbols plus the quadratic terms.
  const int d = dim();
  const double h = 1e-6;
  std::vector<std::vector<EMat>> dgamma(d);  // dgamma[i][k] = d_i Gamma^k
  for (int i = 0; i < d; ++i) {
    Vec pp = p, pm = p;
    pp(i) += h;
    pm(i) -= h;
    auto gp = christoffel_at(pp);
    auto gm = christoffel_at(pm);
    dgamma[i].resize(d);
    for (int k = 0; k < d; ++k) dgamma[i][k] = (gp[k] - gm[k]) / (2.0 * h);
  }
  auto gamma = christoffel_at(p);
  CurvatureBlocks r(d, std::vector<EMat>(d, EMat::Zero(d, d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double v = dgamma[i][l](j, k) - dgamma[j][l](i, k);
          for (int m = 0; m < d; ++m)
            v += gamma[l](i, m) * gamma[m](j, k) - gamma[l](j, m) * gamma[m](i, k);
          r[i][j](l, k) = v;
        }
  return r;
}

EMat gram_schmidt(const EMat& candidates, const EMat& metric, double drop_tol) {
  const int d = static_cast<int>(candidates.rows());
  EMat frame(d, 0);
  for (int c = 0; c < candidates.cols(); ++c) {
    Vec v = candidates.col(c);
    for (int j = 0; j < frame.cols(); ++j)
      v -= (frame.col(j).transpose() * metric * v)(0) * frame.col(j);
    double nrm2 = (v.transpose() * metric * v)(0);
    if (nrm2 <= drop_tol) continue;
    frame.conservativeResize(Eigen::NoChange, frame.cols() + 1);
    frame.col(frame.cols() - 1) = v / std::sqrt(nrm2);
  }
  return frame;
}

OrbitData make_orbit(const ChartedHomSpace& model, const MatrixLieAlgebra<double>& subalgebra,
                     std::function<EMat(const Vec&)> orbit_lift, double rank_tol) {
  OrbitData orbit;
  orbit.model = &model;
  orbit.subalgebra = &subalgebra;
  orbit.orbit_lift = std::move(orbit_lift);

  const Vec& o = model.base_point();
  const int d = model.dim();
  EMat g0 = model.metric_at(o);

  EMat values(d, subalgebra.dim());
  for (int i = 0; i < subalgebra.dim(); ++i)
    values.col(i) = model.realize(subalgebra[i], o).value;

  // Tangent dimension by SVD rank, then a metric-orthonormal frame built from
  // the field values first and the chart frame as filler.
  Eigen::JacobiSVD<EMat> svd(values);
  int tdim = 0;
  if (svd.singularValues().size() > 0 && svd.singularValues()(0) > 0)
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > rank_tol * svd.singularValues()(0)) ++tdim;
  orbit.tangent_dim = tdim;

  EMat candidates(d, subalgebra.dim() + d);
  candidates.leftCols(subalgebra.dim()) = values;
  candidates.rightCols(d) = EMat::Identity(d, d);
  EMat frame = gram_schmidt(candidates, g0);
  if (frame.cols() != d)
    throw std::domain_error("make_orbit: adapted frame construction failed");
  orbit.adapted_frame = frame;
  for (int j = 0; j < tdim; ++j) orbit.tangent_basis.push_back(frame.col(j));
  for (int j = tdim; j < d; ++j) orbit.normal_basis.push_back(frame.col(j));
  return orbit;
}

TangentIdentification identify_with_tangent(const ChartedHomSpace& model,
                                            const std::vector<MatD>& span_basis) {
  const Vec& o = model.base_point();
  const int d = model.dim();
  TangentIdentification id;
  id.map = EMat(d, static_cast<int>(span_basis.size()));
  for (size_t i = 0; i < span_basis.size(); ++i)
    id.map.col(static_cast<int>(i)) = model.realize(span_basis[i], o).value;
  if (id.map.cols() != d)
    throw std::invalid_argument("identify_with_tangent: span dimension must equal dim M");
  Eigen::FullPivLU<EMat> lu(id.map);
  if (!lu.isInvertible())
    throw std::invalid_argument(
        "identify_with_tangent: evaluation map is singular (not a complement of the isotropy)");
  id.inverse = lu.inverse();
  id.pullback = id.map.transpose() * model.metric_at(o) * id.map;
  return id;
}

MatD preimage_in(const ChartedHomSpace& model, const Vec& u, const std::vector<MatD>& span_basis,
                 double tol) {
  const Vec& o = model.base_point();
  const int d = model.dim();
  EMat values(d, static_cast<int>(span_basis.size()));
  for (size_t i = 0; i < span_basis.size(); ++i)
    values.col(static_cast<int>(i)) = model.realize(span_basis[i], o).value;
  Eigen::JacobiSVD<EMat> svd(values, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  double smin = svd.singularValues().size()
                    ? svd.singularValues()(svd.singularValues().size() - 1)
                    : 0.0;
  if (values.cols() > 0 && (smax == 0.0 || smin < 1e-12 * smax))
    throw std::invalid_argument("preimage_in: evaluation map is not injective on the span");
  Vec c = svd.solve(u);
  if ((values * c - u).norm() > tol * std::max(1.0, u.norm()))
    throw std::invalid_argument("preimage_in: vector is outside the image of the span");
  MatD x(span_basis.empty() ? 0 : span_basis[0].rows(),
         span_basis.empty() ? 0 : span_basis[0].cols());
  for (size_t i = 0; i < span_basis.size(); ++i) {
    MatD term = span_basis[i];
    term *= c(static_cast<int>(i));
    x += term;
  }
  return x;
}

}  // namespace redorb
