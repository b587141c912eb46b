#ifndef REDORB_CONNECTION_HPP
#define REDORB_CONNECTION_HPP

#include <functional>
#include <memory>
#include <vector>

#include "redorb/model.hpp"

namespace redorb {

/// Coefficient field of a linear connection in the chart: Lambda(q, u) is
/// the endomorphism with (nabla_u W)_q = (d_u W)_q + Lambda(q, u) W(q).
class ConnectionCoefficients {
public:
  virtual ~ConnectionCoefficients() = default;
  virtual EMat coefficients(const Vec& q, const Vec& u) const = 0;
};

/// Levi-Civita connection of the model metric.
class LeviCivitaConnection final : public ConnectionCoefficients {
public:
  explicit LeviCivitaConnection(const ChartedHomSpace& model) : m_model(&model) {}
  EMat coefficients(const Vec& q, const Vec& u) const override {
    auto gamma = m_model->christoffel_at(q);
    const int d = m_model->dim();
    EMat lam = EMat::Zero(d, d);
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        double acc = 0.0;
        for (int i = 0; i < d; ++i) acc += gamma[k](i, j) * u(i);
        lam(k, j) = acc;
      }
    return lam;
  }

private:
  const ChartedHomSpace* m_model;
};

/// Canonical connection attached to a reductive complement (m or m-bar) and
/// a lift section of the group action. At a point q = lift(q) . o the
/// derivative rule is (nabla_u B*)_q = -[Ad_lift X^u, B]*_q for the unique
/// X^u in the complement whose field at o matches the pulled-back direction;
/// the coefficient matrix is recovered against the algebra's field values.
class CanonicalConnection final : public ConnectionCoefficients {
public:
  CanonicalConnection(const ChartedHomSpace& model, std::vector<MatD> complement,
                      std::function<EMat(const Vec&)> lift)
      : m_model(&model), m_complement(std::move(complement)), m_lift(std::move(lift)) {}

  EMat coefficients(const Vec& q, const Vec& u) const override;

  /// The algebra element Ad_lift(q) X^u entering the derivative rule.
  MatD transported_generator(const Vec& q, const Vec& u) const;

private:
  const ChartedHomSpace* m_model;
  std::vector<MatD> m_complement;
  std::function<EMat(const Vec&)> m_lift;
};

/// Connection with an explicit difference tensor: nabla = Levi-Civita - S.
class DifferenceConnection final : public ConnectionCoefficients {
public:
  using TensorField = std::function<EMat(const Vec& q, const Vec& u)>;
  DifferenceConnection(const ChartedHomSpace& model, TensorField s)
      : m_lc(model), m_s(std::move(s)) {}
  EMat coefficients(const Vec& q, const Vec& u) const override {
    return m_lc.coefficients(q, u) - m_s(q, u);
  }

private:
  LeviCivitaConnection m_lc;
  TensorField m_s;
};

/// (nabla-tilde_u B*)_o = -[X^u_mbar, B]*_o.
Vec nabla_tilde_at_o(const ChartedHomSpace& model, const std::vector<MatD>& m_bar,
                     const Vec& u, const MatD& B);

/// (D_u B*)_o = -[X^u_m, B]*_o for u tangent to the orbit.
Vec connection_d_at_o(const ChartedHomSpace& model, const OrbitData& orbit,
                      const std::vector<MatD>& m, const Vec& u, const MatD& B);

/// Difference tensor Gamma_u = (nabla-tilde - D)_u at the base point,
/// computed both as a difference of connection values and through the
/// adjoint generator W(u) = X^u_m - X^u_mbar.
struct GammaSlice {
  MatD generator;            // W(u), an element of the ambient isotropy
  EMat endo_via_difference;  // columns: Gamma_u(B_j*)_o over the algebra basis
  EMat endo_via_adjoint;     // columns: [W(u), B_j]*_o
  double route_deviation;    // max entry difference of the two routes
};

GammaSlice gamma_tensor_at_o(const ChartedHomSpace& model, const std::vector<MatD>& m,
                             const std::vector<MatD>& m_bar, const Vec& u);

/// S_u(B*_o) = (LC - D) and S-bar_u(B*_o) = (LC - nabla-tilde) at o applied
/// to a fundamental field.
struct STensorsAtO {
  Vec s;
  Vec s_bar;
};
STensorsAtO s_tensors_at_o(const ChartedHomSpace& model, const OrbitData& orbit,
                           const std::vector<MatD>& m, const std::vector<MatD>& m_bar,
                           const Vec& u, const MatD& B);

/// Residual of metric compatibility d_u G = Lambda^T G + G Lambda at q.
double metricity_residual(const ChartedHomSpace& model, const ConnectionCoefficients& conn,
                          const Vec& q, const Vec& u);

}  // namespace redorb

#endif
