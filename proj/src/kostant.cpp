#include "redorb/kostant.hpp"

#include "redorb/killing.hpp"

namespace redorb {

namespace {

void require_killing_tagged(const ChartedHomSpace& model, const MatD& X, double tol = 1e-10) {
  MatD xd = X;
  auto coords = model.algebra().span().coordinates(xd, 1e-8);
  if (!coords)
    throw std::invalid_argument("kostant: element is not in the model algebra");
  for (int i = 0; i < model.algebra().dim(); ++i)
    if (model.field_tag(i).kind == FieldKind::conformal_killing &&
        std::fabs((*coords)[i]) > tol)
      throw std::invalid_argument(
          "kostant: conformally tagged elements have no Kostant operator");
}

}  // namespace

KostantOperator kostant(const ChartedHomSpace& model, const MatD& X, const EMat* frame) {
  require_killing_tagged(model, X);
  const Vec& o = model.base_point();
  const int d = model.dim();
  RealizedField f = model.realize(X, o);
  auto gamma = model.christoffel_at(o);
  EMat k = f.jacobian;
  for (int kk = 0; kk < d; ++kk)
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) k(kk, j) += gamma[kk](j, i) * f.value(i);

  KostantOperator op;
  op.chart_matrix = k;
  EMat g0 = model.metric_at(o);
  op.skew_residual = (k.transpose() * g0 + g0 * k).cwiseAbs().maxCoeff();
  EMat fr;
  if (frame) {
    fr = *frame;
  } else {
    fr = gram_schmidt(EMat::Identity(d, d), g0);
  }
  op.frame_matrix = fr.inverse() * k * fr;
  return op;
}

KostantBlocks kostant_blocks(const OrbitData& orbit, const MatD& X) {
  const ChartedHomSpace& model = *orbit.model;
  const int d = model.dim();
  const int m = orbit.tangent_dim;
  if (orbit.adapted_frame.cols() != d)
    throw std::invalid_argument("kostant_blocks: degenerate adapted frame");
  KostantOperator op = kostant(model, X, &orbit.adapted_frame);
  KostantBlocks b;
  b.full = op.frame_matrix;
  b.tangent = b.full.topLeftCorner(m, m);
  b.second_fundamental = b.full.bottomLeftCorner(d - m, m);
  b.mixed = b.full.topRightCorner(m, d - m);
  b.normal = b.full.bottomRightCorner(d - m, d - m);
  return b;
}

double phi_bar(const ChartedHomSpace& model, const MatD& X, const MatD& Y) {
  KostantOperator kx = kostant(model, X);
  KostantOperator ky = kostant(model, Y);
  long scale = so_killing_scale(model.dim());
  return -static_cast<double>(scale) * (kx.frame_matrix * ky.frame_matrix).trace();
}

double phi_orbit(const OrbitData& orbit, const MatD& X, const MatD& Y) {
  KostantBlocks bx = kostant_blocks(orbit, X);
  KostantBlocks by = kostant_blocks(orbit, Y);
  long scale = so_killing_scale(orbit.model->dim());
  return -static_cast<double>(scale) * (bx.tangent * by.tangent).trace();
}

}  // namespace redorb
