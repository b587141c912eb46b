// Horosphere fixture.
//
// Model of real hyperbolic space: the quadric <p, p> = -1 in R^{n+1} with the
// bilinear form <p, q> = sum_{i<n-1} p_i q_i + p_{n-1} q_n + p_n q_{n-1}
// (light-cone pairing in the last two coordinates). The isometry algebra is
// so(Q) = { X : QX + (QX)^T = 0 }, whose elements are parametrized by
// (B in so(n-1), v1, v2 in R^{n-1}, a in R) as
//
//           [  B    v1   v2 ]
//       X = [ -v2^t  a    0 ]
//           [ -v1^t  0   -a ].
//
// The warped chart (t, x) with metric dt^2 + e^{-2t} |dx|^2 embeds as
//
//   Psi(t, x) = ( e^{-t} x,  (e^t + e^{-t} |x|^2) / sqrt(2),  -e^{-t}/sqrt(2) ),
//
// a direct computation shows |dPsi|^2 = dt^2 + e^{-2t} |dx|^2 and the base
// point Psi(0,0) = (0, 1/sqrt2, -1/sqrt2) has isotropy { v1 = v2, a = 0 },
// matching the block pattern above. Solving dPsi(X*) = X . Psi for the
// fundamental field gives the closed forms
//
//   X*^t (t, x) = a - sqrt2 (v1 . x)
//   X*^x (t, x) = B x + X*^t x + (v1/sqrt2)(e^{2t} + |x|^2) - v2/sqrt2 ,
//
// used below together with their exact spatial Jacobians. At the base point
// X*_o = (a, (v1 - v2)/sqrt2) and the covariant derivative of X* reduces to
//
//   grad X*|_o = [ 0, -u^t ; u, B ]   with  u = (v1 + v2)/sqrt2
//
// in the (t, x) chart frame, which is the seed of the exact-mode tables: in
// the rescaled rational frame F = { d/dt, sqrt2 d/dx_i } every entry becomes
// rational and the trace pairings are unchanged.

#include <cmath>

#include "redorb/gallery.hpp"

namespace redorb {

namespace {

struct BlockCoords {
  EMat b;   // (n-1) x (n-1)
  Vec v1, v2;
  double a;
};

BlockCoords decode(const MatD& x, int n) {
  BlockCoords c;
  c.b = EMat::Zero(n - 1, n - 1);
  c.v1 = Vec::Zero(n - 1);
  c.v2 = Vec::Zero(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < n - 1; ++j) c.b(i, j) = x(i, j);
    c.v1(i) = x(i, n - 1);
    c.v2(i) = x(i, n);
  }
  c.a = x(n - 1, n - 1);
  return c;
}

class HorosphereModel final : public ChartedHomSpace {
public:
  HorosphereModel(int n, std::shared_ptr<const MatrixLieAlgebra<double>> alg,
                  std::vector<FieldTag> tags, ExactSeed seed)
      : ChartedHomSpace("horosphere", Vec::Zero(n), make_box(n), std::move(alg),
                        std::move(tags), std::move(seed)),
        m_n(n) {}

  EMat metric_at(const Vec& p) const override {
    require_in_chart(p);
    EMat g = EMat::Identity(m_n, m_n);
    double f2 = std::exp(-2.0 * p(0));
    for (int i = 1; i < m_n; ++i) g(i, i) = f2;
    return g;
  }

  std::vector<EMat> metric_deriv_at(const Vec& p) const override {
    require_in_chart(p);
    std::vector<EMat> dg(m_n, EMat::Zero(m_n, m_n));
    double f2 = std::exp(-2.0 * p(0));
    for (int i = 1; i < m_n; ++i) dg[0](i, i) = -2.0 * f2;
    return dg;
  }

  // Warped-product closed form: Gamma^t_{ij} = e^{-2t} delta_ij,
  // Gamma^i_{tj} = -delta_ij, everything else zero.
  std::vector<EMat> christoffel_at(const Vec& p) const override {
    require_in_chart(p);
    std::vector<EMat> gamma(m_n, EMat::Zero(m_n, m_n));
    double f2 = std::exp(-2.0 * p(0));
    for (int i = 1; i < m_n; ++i) gamma[0](i, i) = f2;
    for (int k = 1; k < m_n; ++k) {
      gamma[k](0, k) = -1.0;
      gamma[k](k, 0) = -1.0;
    }
    return gamma;
  }

  // Constant sectional curvature -1: R(u,v)w = -(<v,w> u - <u,w> v).
  CurvatureBlocks curvature_at(const Vec& p) const override {
    EMat g = metric_at(p);
    CurvatureBlocks r(m_n, std::vector<EMat>(m_n, EMat::Zero(m_n, m_n)));
    for (int i = 0; i < m_n; ++i)
      for (int j = 0; j < m_n; ++j)
        for (int l = 0; l < m_n; ++l)
          for (int k = 0; k < m_n; ++k) {
            double v = 0.0;
            if (l == i) v += g(j, k);
            if (l == j) v -= g(i, k);
            r[i][j](l, k) = -v;
          }
    return r;
  }

  RealizedField realize(const MatD& x, const Vec& p) const override {
    require_in_chart(p);
    BlockCoords c = decode(x, m_n);
    const double s2 = std::sqrt(2.0);
    double t = p(0);
    Vec xx = p.tail(m_n - 1);
    double tau = c.a - s2 * c.v1.dot(xx);
    double e2t = std::exp(2.0 * t);
    Vec w = c.b * xx + tau * xx + (c.v1 / s2) * (e2t + xx.squaredNorm()) - c.v2 / s2;

    RealizedField f;
    f.value = Vec(m_n);
    f.value(0) = tau;
    f.value.tail(m_n - 1) = w;
    f.jacobian = EMat::Zero(m_n, m_n);
    for (int j = 0; j < m_n - 1; ++j) f.jacobian(0, 1 + j) = -s2 * c.v1(j);
    f.jacobian.block(1, 0, m_n - 1, 1) = s2 * e2t * c.v1;
    EMat dw = c.b + tau * EMat::Identity(m_n - 1, m_n - 1) - s2 * xx * c.v1.transpose() +
              s2 * c.v1 * xx.transpose();
    f.jacobian.block(1, 1, m_n - 1, m_n - 1) = dw;
    return f;
  }

  Vec embed(const Vec& p) const override {
    double t = p(0);
    Vec xx = p.tail(m_n - 1);
    const double s2 = std::sqrt(2.0);
    Vec q(m_n + 1);
    q.head(m_n - 1) = std::exp(-t) * xx;
    q(m_n - 1) = (std::exp(t) + std::exp(-t) * xx.squaredNorm()) / s2;
    q(m_n) = -std::exp(-t) / s2;
    return q;
  }

  Vec chart_from_embedding(const Vec& q) const override {
    const double s2 = std::sqrt(2.0);
    double emt = -s2 * q(m_n);  // e^{-t}
    if (!(emt > 0.0))
      throw std::domain_error("horosphere: embedded point outside the chart sheet");
    Vec p(m_n);
    p(0) = -std::log(emt);
    p.tail(m_n - 1) = q.head(m_n - 1) / emt;
    return p;
  }

  Vec act(const EMat& g, const Vec& p) const override {
    return chart_from_embedding(g * embed(p));
  }

  EMat act_diff(const EMat& g, const Vec& p) const override {
    Vec p2 = act(g, p);
    return chart_left_inverse(p2) * g * embed_jacobian(p);
  }

  EMat ambient_lift(const Vec& p) const override {
    const double s2 = std::sqrt(2.0);
    Vec xx = p.tail(m_n - 1);
    EMat boost = EMat::Identity(m_n + 1, m_n + 1);
    boost(m_n - 1, m_n - 1) = std::exp(p(0));
    boost(m_n, m_n) = std::exp(-p(0));
    return translation(s2 * xx) * boost;
  }

  /// exp of the translation generator (nilpotent of order 3, so the series
  /// is exact): maps (0, x0) to (0, x0 + v/sqrt2).
  EMat translation(const Vec& v) const {
    EMat x = EMat::Zero(m_n + 1, m_n + 1);
    for (int i = 0; i < m_n - 1; ++i) {
      x(m_n - 1, i) = v(i);
      x(i, m_n) = -v(i);
    }
    return EMat::Identity(m_n + 1, m_n + 1) + x + 0.5 * (x * x);
  }

  EMat embed_jacobian(const Vec& p) const {
    const double s2 = std::sqrt(2.0);
    double t = p(0);
    Vec xx = p.tail(m_n - 1);
    EMat j = EMat::Zero(m_n + 1, m_n);
    j.block(0, 0, m_n - 1, 1) = -std::exp(-t) * xx;
    j(m_n - 1, 0) = (std::exp(t) - std::exp(-t) * xx.squaredNorm()) / s2;
    j(m_n, 0) = std::exp(-t) / s2;
    for (int c = 0; c < m_n - 1; ++c) {
      j(c, 1 + c) = std::exp(-t);
      j(m_n - 1, 1 + c) = s2 * std::exp(-t) * xx(c);
    }
    return j;
  }

private:
  static ChartBox make_box(int n) {
    ChartBox box;
    box.lo = Vec::Constant(n, -8.0);
    box.hi = Vec::Constant(n, 8.0);
    box.lo(0) = -3.0;
    box.hi(0) = 3.0;
    return box;
  }

  /// Left inverse of the embedding Jacobian, G^{-1} J^T Q.
  EMat chart_left_inverse(const Vec& p) const {
    EMat q = EMat::Identity(m_n + 1, m_n + 1);
    q(m_n - 1, m_n - 1) = 0.0;
    q(m_n, m_n) = 0.0;
    q(m_n - 1, m_n) = 1.0;
    q(m_n, m_n - 1) = 1.0;
    EMat j = embed_jacobian(p);
    return metric_at(p).inverse() * j.transpose() * q;
  }

  int m_n;
};

}  // namespace

Fixture build_horosphere(int n) {
  if (n < 3) throw std::invalid_argument("build_horosphere: requires n >= 3");
  const int nn = n + 1;  // matrix size

  // Basis order: B_{ij} (i<j), then v1_i, then v2_i, then a.
  std::vector<MatQ> basis;
  std::vector<FieldTag> tags;
  for (int i = 0; i < n - 1; ++i)
    for (int j = i + 1; j < n - 1; ++j)
      basis.push_back(MatQ::unit(nn, nn, i, j) - MatQ::unit(nn, nn, j, i));
  for (int i = 0; i < n - 1; ++i)
    basis.push_back(MatQ::unit(nn, nn, i, n - 1) - MatQ::unit(nn, nn, n, i));
  for (int i = 0; i < n - 1; ++i)
    basis.push_back(MatQ::unit(nn, nn, i, n) - MatQ::unit(nn, nn, n - 1, i));
  basis.push_back(MatQ::unit(nn, nn, n - 1, n - 1) - MatQ::unit(nn, nn, n, n));
  tags.assign(basis.size(), FieldTag{FieldKind::killing, 0.0});

  const int nb = (n - 1) * (n - 2) / 2;  // number of B elements
  const int dim_alg = static_cast<int>(basis.size());

  // Exact seed in the frame F = { d/dt, sqrt2 d/dx_i }.
  ExactSeed seed;
  seed.eval = MatQ(n, dim_alg);
  seed.metric = MatQ::identity(n);
  for (int i = 1; i < n; ++i) seed.metric(i, i) = Rational(2);
  auto kostant_of = [&](int bi) {
    // Blocks of the basis element bi: (B, v1, v2, a).
    MatQ k(n, n);
    if (bi < nb) {
      int count = 0;
      for (int i = 0; i < n - 1; ++i)
        for (int j = i + 1; j < n - 1; ++j, ++count)
          if (count == bi) {
            k(1 + i, 1 + j) = Rational(1);
            k(1 + j, 1 + i) = Rational(-1);
          }
    } else if (bi < nb + 2 * (n - 1)) {
      int i = (bi - nb) % (n - 1);  // v1 and v2 give the same operator
      k(0, 1 + i) = Rational(-1);
      k(1 + i, 0) = Rational(1, 2);
    }
    return k;  // the a element has a parallel field: zero operator
  };
  for (int bi = 0; bi < dim_alg; ++bi) {
    seed.kostant.push_back(kostant_of(bi));
    if (bi >= nb && bi < nb + (n - 1)) {  // v1_i
      seed.eval(1 + (bi - nb), bi) = Rational(1, 2);
    } else if (bi >= nb + (n - 1) && bi < nb + 2 * (n - 1)) {  // v2_i
      seed.eval(1 + (bi - nb - (n - 1)), bi) = Rational(-1, 2);
    } else if (bi == dim_alg - 1) {  // a
      seed.eval(0, bi) = Rational(1);
    }
  }

  auto to_double_basis = [](const std::vector<MatQ>& bs) {
    std::vector<MatD> out;
    out.reserve(bs.size());
    for (const auto& b : bs) out.push_back(b.to_double());
    return out;
  };

  Fixture fx;
  fx.name = "horosphere";
  fx.n = n;
  fx.symmetric = true;
  fx.conformal = false;
  fx.principal = true;

  fx.ambient_exact = std::make_shared<MatrixLieAlgebra<Rational>>(
      SubspaceQ::from_basis(basis, nn, nn), "so(n,1)");
  auto alg_d = std::make_shared<MatrixLieAlgebra<double>>(
      SubspaceD::from_basis(to_double_basis(basis), nn, nn), "so(n,1)");
  auto model = std::make_shared<HorosphereModel>(n, alg_d, tags, seed);
  fx.model = model;

  // g = so(n-1) x R^{n-1}: B blocks plus the translation generators
  // [[0,0,-v],[v^t,0,0],[0,0,0]].
  std::vector<MatQ> g_basis(basis.begin(), basis.begin() + nb);
  std::vector<MatQ> m_pattern;
  for (int i = 0; i < n - 1; ++i) {
    MatQ m = MatQ::unit(nn, nn, n - 1, i) - MatQ::unit(nn, nn, i, n);
    g_basis.push_back(m);
    m_pattern.push_back(m);
  }
  fx.subgroup_exact = std::make_shared<MatrixLieAlgebra<Rational>>(
      SubspaceQ::from_basis(g_basis, nn, nn), "so(n-1)+R^(n-1)");
  fx.subgroup = std::make_shared<MatrixLieAlgebra<double>>(
      SubspaceD::from_basis(to_double_basis(g_basis), nn, nn), "so(n-1)+R^(n-1)");

  // Paper block patterns for regression.
  std::vector<MatQ> mbar_pattern;
  for (int i = 0; i < n - 1; ++i)
    mbar_pattern.push_back(basis[nb + i] - basis[nb + (n - 1) + i]);  // (0, v, -v, 0)
  MatQ a_elt = basis.back();
  mbar_pattern.push_back(a_elt);
  fx.expected_m_bar = SubspaceQ::from_basis(mbar_pattern, nn, nn);
  fx.expected_m = SubspaceQ::from_basis(m_pattern, nn, nn);
  fx.expected_n = SubspaceQ::from_basis({a_elt}, nn, nn);

  std::weak_ptr<const HorosphereModel> wm = model;
  fx.orbit_lift = [wm](const Vec& p) {
    auto m = wm.lock();
    if (!m) throw std::runtime_error("horosphere: model expired");
    if (std::fabs(p(0)) > 1e-9)
      throw std::invalid_argument("horosphere orbit_lift: point is not on the base leaf");
    return m->translation(std::sqrt(2.0) * p.tail(p.size() - 1));
  };
  return fx;
}

}  // namespace redorb
