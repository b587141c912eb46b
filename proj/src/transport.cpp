#include "redorb/transport.hpp"

#include <cmath>

#include "redorb/expm.hpp"

namespace redorb {

Curve exp_arc(const ChartedHomSpace& model, const MatD& X, const Vec& p0, double t1) {
  Curve c;
  c.t0 = 0.0;
  c.t1 = t1;
  const ChartedHomSpace* m = &model;
  c.point = [m, X, p0](double t) {
    MatD tx = X;
    tx *= t;
    return m->act(expm(tx).to_eigen(), p0);
  };
  c.velocity = [m, X, p0](double t) {
    MatD tx = X;
    tx *= t;
    Vec p = m->act(expm(tx).to_eigen(), p0);
    return m->realize(X, p).value;
  };
  return c;
}

std::vector<Curve> piecewise_arcs(const ChartedHomSpace& model, const std::vector<MatD>& gens,
                                  const std::vector<double>& durations, const Vec& p0) {
  if (gens.size() != durations.size())
    throw std::invalid_argument("piecewise_arcs: generator/duration count mismatch");
  std::vector<Curve> out;
  Vec p = p0;
  for (size_t k = 0; k < gens.size(); ++k) {
    out.push_back(exp_arc(model, gens[k], p, durations[k]));
    p = out.back().point(durations[k]);
  }
  return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

}  // namespace

Vec integrate_rk45(const std::function<Vec(double, const Vec&)>& f, Vec y, double t0,
                   double t1, double abs_tol, double rel_tol) {
  if (t1 == t0) return y;
  const double dir = (t1 > t0) ? 1.0 : -1.0;
  double t = t0;
  double h = dir * std::min(0.1, std::fabs(t1 - t0));
  Vec k1 = f(t, y);
  int rejected_in_a_row = 0;
  while (dir * (t1 - t) > 1e-15 * std::max(1.0, std::fabs(t1))) {
    if (dir * (t + h - t1) > 0) h = t1 - t;
    Vec k2 = f(t + h / 5, y + h * (A21 * k1));
    Vec k3 = f(t + 3 * h / 10, y + h * (A31 * k1 + A32 * k2));
    Vec k4 = f(t + 4 * h / 5, y + h * (A41 * k1 + A42 * k2 + A43 * k3));
    Vec k5 = f(t + 8 * h / 9, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
    Vec k6 = f(t + h, y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
    Vec ynew = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
    Vec k7 = f(t + h, ynew);
    Vec err = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
    double sc = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      double tol = abs_tol + rel_tol * std::max(std::fabs(y(i)), std::fabs(ynew(i)));
      sc = std::max(sc, std::fabs(err(i)) / tol);
    }
    if (sc <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // first-same-as-last
      rejected_in_a_row = 0;
    } else if (++rejected_in_a_row > 60) {
      throw std::runtime_error("integrate_rk45: step size control failed");
    }
    double factor = 0.9 * std::pow(std::max(sc, 1e-10), -0.2);
    h *= std::clamp(factor, 0.2, 5.0);
    if (std::fabs(h) < 1e-14)
      throw std::runtime_error("integrate_rk45: step underflow");
  }
  return y;
}

Vec parallel_transport(const ChartedHomSpace& model, const ConnectionCoefficients& conn,
                       const Curve& curve, const Vec& v0, double abs_tol, double rel_tol) {
  auto rhs = [&](double t, const Vec& v) -> Vec {
    Vec q = curve.point(t);
    model.require_in_chart(q);
    return -conn.coefficients(q, curve.velocity(t)) * v;
  };
  return integrate_rk45(rhs, v0, curve.t0, curve.t1, abs_tol, rel_tol);
}

EMat parallel_transport_frame(const ChartedHomSpace& model, const ConnectionCoefficients& conn,
                              const Curve& curve, const EMat& frame0, double t_end,
                              double abs_tol, double rel_tol) {
  const int d = static_cast<int>(frame0.rows());
  const int k = static_cast<int>(frame0.cols());
  Vec y0(d * k);
  for (int j = 0; j < k; ++j) y0.segment(j * d, d) = frame0.col(j);
  auto rhs = [&](double t, const Vec& y) -> Vec {
    Vec q = curve.point(t);
    EMat lam = conn.coefficients(q, curve.velocity(t));
    Vec dy(d * k);
    for (int j = 0; j < k; ++j) dy.segment(j * d, d) = -lam * y.segment(j * d, d);
    return dy;
  };
  Vec y = integrate_rk45(rhs, y0, curve.t0, t_end, abs_tol, rel_tol);
  EMat out(d, k);
  for (int j = 0; j < k; ++j) out.col(j) = y.segment(j * d, d);
  return out;
}

Vec parallel_transport_piecewise(const ChartedHomSpace& model,
                                 const ConnectionCoefficients& conn,
                                 const std::vector<Curve>& curve, const Vec& v0,
                                 double abs_tol, double rel_tol) {
  Vec v = v0;
  for (const auto& seg : curve) v = parallel_transport(model, conn, seg, v, abs_tol, rel_tol);
  return v;
}

EMat pushforward_along_exp(const ChartedHomSpace& model, const MatD& X, const Vec& p0,
                           double t) {
  MatD tx = X;
  tx *= t;
  return model.act_diff(expm(tx).to_eigen(), p0);
}

}  // namespace redorb
