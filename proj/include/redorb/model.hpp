#ifndef REDORB_MODEL_HPP
#define REDORB_MODEL_HPP

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "redorb/lie_algebra.hpp"
#include "redorb/matrix.hpp"

namespace redorb {

using Vec = Eigen::VectorXd;
using EMat = Eigen::MatrixXd;

enum class FieldKind { killing, conformal_killing };

struct FieldTag {
  FieldKind kind = FieldKind::killing;
  double conformal_factor = 0.0;  // lambda in L_X g = 2 lambda g
};

/// Value and spatial Jacobian of a fundamental vector field at a chart point.
struct RealizedField {
  Vec value;
  EMat jacobian;
};

struct ChartBox {
  Vec lo, hi;
  bool contains(const Vec& p) const {
    for (int i = 0; i < p.size(); ++i)
      if (p(i) < lo(i) || p(i) > hi(i)) return false;
    return true;
  }
};

/// Curvature tensor at a point: block[i][j] is the endomorphism w -> R(e_i, e_j) w,
/// i.e. block[i][j](l, k) = R^l_{ijk}.
using CurvatureBlocks = std::vector<std::vector<EMat>>;

/// Exact-mode seed data in a fixture-chosen rational frame F at the base
/// point: the evaluation map X -> X*_o, the metric Gram of F and the Kostant
/// operator matrices of the isometric basis elements. Cross-validated against
/// the floating chart machinery by the test suite.
struct ExactSeed {
  MatQ eval;                  // dim x alg_dim, column i = coords of (B_i)*_o in F
  MatQ metric;                // dim x dim Gram of F
  std::vector<MatQ> kostant;  // per basis element; empty Mat for conformal ones
};

/// Chart model of the ambient homogeneous (or conformally homogeneous)
/// Riemannian manifold: closed-form metric, Christoffel symbols, fundamental
/// vector fields of a matrix group action, and the group action itself.
/// Immutable after construction; all evaluation methods are const and pure.
class ChartedHomSpace {
public:
  virtual ~ChartedHomSpace() = default;

  const std::string& name() const { return m_name; }
  int dim() const { return static_cast<int>(m_base_point.size()); }
  const Vec& base_point() const { return m_base_point; }
  const ChartBox& chart_domain() const { return m_domain; }
  const MatrixLieAlgebra<double>& algebra() const { return *m_algebra; }
  const FieldTag& field_tag(int basis_index) const { return m_tags.at(basis_index); }
  const std::vector<FieldTag>& field_tags() const { return m_tags; }
  bool all_isometric() const {
    for (const auto& t : m_tags)
      if (t.kind != FieldKind::killing) return false;
    return true;
  }
  const ExactSeed& exact_seed() const { return m_exact_seed; }

  void require_in_chart(const Vec& p) const {
    if (p.size() != m_base_point.size())
      throw std::invalid_argument(m_name + ": point dimension mismatch");
    if (!m_domain.contains(p)) throw std::invalid_argument(m_name + ": point outside chart");
  }

  virtual EMat metric_at(const Vec& p) const = 0;
  /// Closed-form partial derivatives of the metric, one matrix per coordinate.
  virtual std::vector<EMat> metric_deriv_at(const Vec& p) const = 0;

  /// Christoffel symbols Gamma^k_{ij}, one matrix per upper index k. The base
  /// implementation contracts the closed-form metric derivatives; fixtures may
  /// override with their warped-product formulas.
  virtual std::vector<EMat> christoffel_at(const Vec& p) const {
    return christoffel_from_metric(p);
  }
  std::vector<EMat> christoffel_from_metric(const Vec& p) const;

  /// Riemann tensor R^l_{ijk}. The base implementation differentiates the
  /// Christoffel symbols by central finite differences.
  virtual CurvatureBlocks curvature_at(const Vec& p) const;

  /// Fundamental vector field of the algebra element X at p, with its spatial
  /// Jacobian (closed form).
  virtual RealizedField realize(const MatD& X, const Vec& p) const = 0;

  /// Embedding of the chart into the linear space the group matrices act on.
  virtual Vec embed(const Vec& p) const = 0;
  virtual Vec chart_from_embedding(const Vec& q) const = 0;
  /// Action of a group element on a chart point and its differential.
  virtual Vec act(const EMat& g, const Vec& p) const = 0;
  virtual EMat act_diff(const EMat& g, const Vec& p) const = 0;
  /// Some group element with g . o = p (any smooth section of the action).
  virtual EMat ambient_lift(const Vec& p) const = 0;

  RealizedField realize_basis(int i, const Vec& p) const {
    return realize(algebra()[i], p);
  }

protected:
  ChartedHomSpace(std::string name, Vec base_point, ChartBox domain,
                  std::shared_ptr<const MatrixLieAlgebra<double>> algebra,
                  std::vector<FieldTag> tags, ExactSeed seed)
      : m_name(std::move(name)), m_base_point(std::move(base_point)),
        m_domain(std::move(domain)), m_algebra(std::move(algebra)),
        m_tags(std::move(tags)), m_exact_seed(std::move(seed)) {}

private:
  std::string m_name;
  Vec m_base_point;
  ChartBox m_domain;
  std::shared_ptr<const MatrixLieAlgebra<double>> m_algebra;
  std::vector<FieldTag> m_tags;
  ExactSeed m_exact_seed;
};

/// Orbit of a subgroup through the base point: tangent/normal splitting of
/// the ambient tangent space at o and an adapted orthonormal frame
/// (tangent-first, then normal; deterministic Gram-Schmidt).
struct OrbitData {
  const ChartedHomSpace* model = nullptr;
  const MatrixLieAlgebra<double>* subalgebra = nullptr;  // g
  int tangent_dim = 0;
  EMat adapted_frame;  // columns orthonormal w.r.t. g_o, tangent-first
  std::vector<Vec> tangent_basis;
  std::vector<Vec> normal_basis;
  /// Group element of G with g . o = p, defined for p on the orbit.
  std::function<EMat(const Vec&)> orbit_lift;
};

OrbitData make_orbit(const ChartedHomSpace& model, const MatrixLieAlgebra<double>& subalgebra,
                     std::function<EMat(const Vec&)> orbit_lift, double rank_tol = 1e-10);

/// Metric Gram-Schmidt on the given candidate vectors (columns), keeping the
/// independent ones in input order.
EMat gram_schmidt(const EMat& candidates, const EMat& metric, double drop_tol = 1e-10);

/// The linear isomorphism m -> T_o M induced by X -> X*_o, together with its
/// inverse and the pull-back of the metric at o.
struct TangentIdentification {
  EMat map;       // dim x k, column i = (m_i)*_o
  EMat inverse;   // k x dim
  EMat pullback;  // k x k, map^T g_o map
};

TangentIdentification identify_with_tangent(const ChartedHomSpace& model,
                                            const std::vector<MatD>& span_basis);

/// Value of the fundamental field with a chart-domain precondition.
inline Vec fundamental_field(const ChartedHomSpace& model, const MatD& X, const Vec& p) {
  model.require_in_chart(p);
  return model.realize(X, p).value;
}

/// Unique element of the span with field value u at o; throws if u is outside
/// the image or the evaluation map is not injective on the span.
MatD preimage_in(const ChartedHomSpace& model, const Vec& u, const std::vector<MatD>& span_basis,
                 double tol = 1e-8);

}  // namespace redorb

#endif
