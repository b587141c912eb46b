#ifndef REDORB_TRANSPORT_HPP
#define REDORB_TRANSPORT_HPP

#include <functional>
#include <vector>

#include "redorb/connection.hpp"
#include "redorb/model.hpp"

namespace redorb {

/// Smooth curve segment with its velocity field.
struct Curve {
  std::function<Vec(double)> point;
  std::function<Vec(double)> velocity;
  double t0 = 0.0;
  double t1 = 1.0;
};

/// c(t) = exp(tX) . p0, with velocity X*(c(t)).
Curve exp_arc(const ChartedHomSpace& model, const MatD& X, const Vec& p0, double t1 = 1.0);

/// Piecewise-smooth concatenation of exponential arcs.
std::vector<Curve> piecewise_arcs(const ChartedHomSpace& model, const std::vector<MatD>& gens,
                                  const std::vector<double>& durations, const Vec& p0);

/// Embedded adaptive Runge-Kutta (Dormand-Prince 5(4)) for vector-valued
/// initial value problems.
Vec integrate_rk45(const std::function<Vec(double, const Vec&)>& f, Vec y0, double t0,
                   double t1, double abs_tol = 1e-10, double rel_tol = 1e-9);

/// Parallel transport of v0 along the curve under the given connection.
Vec parallel_transport(const ChartedHomSpace& model, const ConnectionCoefficients& conn,
                       const Curve& curve, const Vec& v0, double abs_tol = 1e-10,
                       double rel_tol = 1e-9);

/// Transport of a whole frame (columns); used for tensor parallelism checks.
EMat parallel_transport_frame(const ChartedHomSpace& model, const ConnectionCoefficients& conn,
                              const Curve& curve, const EMat& frame0, double t_end,
                              double abs_tol = 1e-10, double rel_tol = 1e-9);

/// Transport over a piecewise curve, restarting at segment joins.
Vec parallel_transport_piecewise(const ChartedHomSpace& model,
                                 const ConnectionCoefficients& conn,
                                 const std::vector<Curve>& curve, const Vec& v0,
                                 double abs_tol = 1e-10, double rel_tol = 1e-9);

/// Differential of the group flow: (L_exp(tX))_* at p0.
EMat pushforward_along_exp(const ChartedHomSpace& model, const MatD& X, const Vec& p0,
                           double t);

}  // namespace redorb

#endif
