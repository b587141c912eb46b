#include "redorb/connection.hpp"

namespace redorb {

EMat CanonicalConnection::coefficients(const Vec& q, const Vec& u) const {
  const ChartedHomSpace& model = *m_model;
  const int d = model.dim();
  const int nd = model.algebra().dim();
  MatD xq = transported_generator(q, u);

  // Recover the endomorphism against the algebra field values:
  // Lambda(q,u) B*_q = -[Ad X^u, B]*_q - Jac(B*) u.
  EMat values(d, nd), targets(d, nd);
  for (int j = 0; j < nd; ++j) {
    RealizedField fj = model.realize(model.algebra()[j], q);
    values.col(j) = fj.value;
    targets.col(j) =
        -model.realize(bracket(xq, model.algebra()[j]), q).value - fj.jacobian * u;
  }
  // Lambda values = targets, least squares on the transpose (consistent by
  // construction, values has full row rank for a transitive action).
  EMat lam_t = values.transpose()
                   .colPivHouseholderQr()
                   .solve(targets.transpose());
  return lam_t.transpose();
}

MatD CanonicalConnection::transported_generator(const Vec& q, const Vec& u) const {
  const ChartedHomSpace& model = *m_model;
  EMat g = m_lift(q);
  EMat ginv = g.inverse();
  Vec u0 = model.act_diff(ginv, q) * u;
  MatD x = preimage_in(model, u0, m_complement);
  MatD gm = Mat<double>::from_eigen(g);
  MatD gminv = Mat<double>::from_eigen(ginv);
  return gm * x * gminv;
}

Vec nabla_tilde_at_o(const ChartedHomSpace& model, const std::vector<MatD>& m_bar,
                     const Vec& u, const MatD& B) {
  MatD x = preimage_in(model, u, m_bar);
  return -model.realize(bracket(x, B), model.base_point()).value;
}

Vec connection_d_at_o(const ChartedHomSpace& model, const OrbitData& orbit,
                      const std::vector<MatD>& m, const Vec& u, const MatD& B) {
  // u must be tangent to the orbit at o.
  EMat t(model.dim(), static_cast<int>(orbit.tangent_basis.size()));
  for (size_t i = 0; i < orbit.tangent_basis.size(); ++i)
    t.col(static_cast<int>(i)) = orbit.tangent_basis[i];
  Vec c = t.colPivHouseholderQr().solve(u);
  if ((t * c - u).norm() > 1e-8 * std::max(1.0, u.norm()))
    throw std::invalid_argument("connection_d_at_o: direction is not tangent to the orbit");
  MatD x = preimage_in(model, u, m);
  return -model.realize(bracket(x, B), model.base_point()).value;
}

GammaSlice gamma_tensor_at_o(const ChartedHomSpace& model, const std::vector<MatD>& m,
                             const std::vector<MatD>& m_bar, const Vec& u) {
  const Vec& o = model.base_point();
  const int d = model.dim();
  const int nd = model.algebra().dim();
  GammaSlice out;
  MatD xm = preimage_in(model, u, m);
  MatD xmbar = preimage_in(model, u, m_bar);
  out.generator = xm - xmbar;
  out.endo_via_difference = EMat(d, nd);
  out.endo_via_adjoint = EMat(d, nd);
  for (int j = 0; j < nd; ++j) {
    const MatD& b = model.algebra()[j];
    Vec tilde = -model.realize(bracket(xmbar, b), o).value;
    Vec dconn = -model.realize(bracket(xm, b), o).value;
    out.endo_via_difference.col(j) = tilde - dconn;
    out.endo_via_adjoint.col(j) = model.realize(bracket(out.generator, b), o).value;
  }
  out.route_deviation =
      (out.endo_via_difference - out.endo_via_adjoint).cwiseAbs().maxCoeff();
  return out;
}

STensorsAtO s_tensors_at_o(const ChartedHomSpace& model, const OrbitData& orbit,
                           const std::vector<MatD>& m, const std::vector<MatD>& m_bar,
                           const Vec& u, const MatD& B) {
  const Vec& o = model.base_point();
  // Levi-Civita value on the fundamental field: d_u B* + Gamma(u, B*_o).
  RealizedField f = model.realize(B, o);
  auto gamma = model.christoffel_at(o);
  Vec lc = f.jacobian * u;
  for (int k = 0; k < model.dim(); ++k)
    for (int i = 0; i < model.dim(); ++i)
      for (int j = 0; j < model.dim(); ++j) lc(k) += gamma[k](i, j) * u(i) * f.value(j);
  STensorsAtO out;
  out.s = lc - connection_d_at_o(model, orbit, m, u, B);
  out.s_bar = lc - nabla_tilde_at_o(model, m_bar, u, B);
  return out;
}

double metricity_residual(const ChartedHomSpace& model, const ConnectionCoefficients& conn,
                          const Vec& q, const Vec& u) {
  EMat g = model.metric_at(q);
  auto dg = model.metric_deriv_at(q);
  const int d = model.dim();
  EMat dug = EMat::Zero(d, d);
  for (int k = 0; k < d; ++k) dug += u(k) * dg[k];
  EMat lam = conn.coefficients(q, u);
  return (dug - lam.transpose() * g - g * lam).cwiseAbs().maxCoeff();
}

}  // namespace redorb
