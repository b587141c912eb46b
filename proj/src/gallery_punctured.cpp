// Concentric-spheres fixture.
//
// Punctured Euclidean space as the warped chart (r, theta_1..theta_{n-1})
// with metric dr^2 + r^2 g_sphere. The spherical embedding puts the polar
// axis on the LAST Cartesian coordinate,
//
//   sigma_{n-1} = cos t_0,  sigma_{n-1-k} = sin t_0 ... sin t_{k-1} cos t_k,
//   sigma_0     = sin t_0 ... sin t_{n-2},
//
// so the base point theta = (pi/2, ..., pi/2) maps to the first Cartesian
// axis e_0 and sits as far from the coordinate poles as possible. The group
// is R+ x SO(n) acting by p -> s A p; the scaling generator diag(0,..,0,1)
// realizes as the conformal field r d/dr (L_X g = 2 g), the so(n) part as the
// linear fields p -> W p. In chart coordinates
//
//   X*(r, theta) = ( a r,  <W sigma, d_j sigma> / |d_j sigma|^2 ),
//
// with closed-form derivatives from the product structure of sigma.

#include <cmath>

#include "redorb/gallery.hpp"

namespace redorb {

namespace {

/// Closed-form products of sines/cosines: each component of sigma is a
/// product containing every angle at most once, so first and second partial
/// derivatives are plain product-rule sums.
class Spherical {
public:
  explicit Spherical(int n) : m_n(n) {}

  // factor list of component c: sin(t_0..t_{k-1}) cos(t_k) for c = n-1-k,
  // all sines for c = 0.
  Vec sigma(const Vec& t) const {
    Vec s(m_n);
    for (int c = 0; c < m_n; ++c) s(c) = component(c, t, -1, -1);
    return s;
  }

  /// dsigma(c, j) = d sigma_c / d t_j, columns indexed by angle.
  EMat dsigma(const Vec& t) const {
    EMat d(m_n, m_n - 1);
    for (int c = 0; c < m_n; ++c)
      for (int j = 0; j < m_n - 1; ++j) d(c, j) = component(c, t, j, -1);
    return d;
  }

  /// Second partials of one component.
  double d2sigma(int c, int j, int k, const Vec& t) const { return component(c, t, j, k); }

  /// |d_j sigma|^2 = prod_{i<j} sin^2 t_i, angular chart index j = 1..n-1.
  double q(int j, const Vec& t) const {
    double v = 1.0;
    for (int i = 0; i <= j - 2; ++i) v *= std::sin(t(i)) * std::sin(t(i));
    return v;
  }

  double dq(int j, int k, const Vec& t) const {
    if (k > j - 2) return 0.0;
    double v = 2.0 * std::sin(t(k)) * std::cos(t(k));
    for (int i = 0; i <= j - 2; ++i)
      if (i != k) v *= std::sin(t(i)) * std::sin(t(i));
    return v;
  }

private:
  // Product over the factor list with optional first/second differentiation
  // (d1, d2 are angle indices or -1). Equal indices use f'' = -f.
  double component(int c, const Vec& t, int d1, int d2) const {
    int k = (c == 0) ? (m_n - 1) : (m_n - 1 - c);  // number of leading sines
    bool has_cos = (c != 0);
    auto in_factors = [&](int j) { return j < k || (has_cos && j == k); };
    if (d1 >= 0 && !in_factors(d1)) return 0.0;
    if (d2 >= 0 && !in_factors(d2)) return 0.0;
    if (d1 >= 0 && d1 == d2) return -component(c, t, -1, -1);
    double v = 1.0;
    for (int j = 0; j < k; ++j)
      v *= (j == d1 || j == d2) ? std::cos(t(j)) : std::sin(t(j));
    if (has_cos) v *= (k == d1 || k == d2) ? -std::sin(t(k)) : std::cos(t(k));
    return v;
  }

  int m_n;
};

class PuncturedModel final : public ChartedHomSpace {
public:
  PuncturedModel(int n, std::shared_ptr<const MatrixLieAlgebra<double>> alg,
                 std::vector<FieldTag> tags, ExactSeed seed)
      : ChartedHomSpace("punctured_euclidean", base(n), make_box(n), std::move(alg),
                        std::move(tags), std::move(seed)),
        m_n(n), m_sph(n) {}

  EMat metric_at(const Vec& p) const override {
    require_in_chart(p);
    EMat g = EMat::Identity(m_n, m_n);
    Vec t = p.tail(m_n - 1);
    double r2 = p(0) * p(0);
    for (int j = 1; j < m_n; ++j) g(j, j) = r2 * m_sph.q(j, t);
    return g;
  }

  std::vector<EMat> metric_deriv_at(const Vec& p) const override {
    require_in_chart(p);
    std::vector<EMat> dg(m_n, EMat::Zero(m_n, m_n));
    Vec t = p.tail(m_n - 1);
    double r = p(0);
    for (int j = 1; j < m_n; ++j) {
      dg[0](j, j) = 2.0 * r * m_sph.q(j, t);
      for (int k = 1; k < m_n; ++k) dg[k](j, j) = r * r * m_sph.dq(j, k - 1, t);
    }
    return dg;
  }

  CurvatureBlocks curvature_at(const Vec& /*p*/) const override {
    // Flat: the chart is Euclidean space in polar form.
    return CurvatureBlocks(m_n, std::vector<EMat>(m_n, EMat::Zero(m_n, m_n)));
  }

  RealizedField realize(const MatD& x, const Vec& p) const override {
    require_in_chart(p);
    EMat w(m_n, m_n);
    for (int i = 0; i < m_n; ++i)
      for (int j = 0; j < m_n; ++j) w(i, j) = x(i, j);
    double a = x(m_n, m_n);
    Vec t = p.tail(m_n - 1);
    Vec sig = m_sph.sigma(t);
    EMat dsig = m_sph.dsigma(t);
    Vec wsig = w * sig;

    RealizedField f;
    f.value = Vec::Zero(m_n);
    f.value(0) = a * p(0);
    for (int j = 1; j < m_n; ++j)
      f.value(j) = wsig.dot(dsig.col(j - 1)) / m_sph.q(j, t);

    f.jacobian = EMat::Zero(m_n, m_n);
    f.jacobian(0, 0) = a;
    for (int j = 1; j < m_n; ++j) {
      double qj = m_sph.q(j, t);
      for (int k = 1; k < m_n; ++k) {
        double num = (w * dsig.col(k - 1)).dot(dsig.col(j - 1));
        for (int c = 0; c < m_n; ++c)
          num += wsig(c) * m_sph.d2sigma(c, j - 1, k - 1, t);
        f.jacobian(j, k) = num / qj - f.value(j) * m_sph.dq(j, k - 1, t) / qj;
      }
    }
    return f;
  }

  Vec embed(const Vec& p) const override {
    Vec q(m_n + 1);
    q.head(m_n) = p(0) * m_sph.sigma(p.tail(m_n - 1));
    q(m_n) = 1.0;
    return q;
  }

  Vec chart_from_embedding(const Vec& q) const override {
    Vec cart = q(m_n) * q.head(m_n);
    double r = cart.norm();
    if (!(r > 0.0)) throw std::domain_error("punctured: embedded point at the origin");
    Vec sig = cart / r;
    Vec p(m_n);
    p(0) = r;
    double prefix = 1.0;
    for (int k = 0; k < m_n - 2; ++k) {
      double c = std::clamp(sig(m_n - 1 - k) / prefix, -1.0, 1.0);
      double tk = std::acos(c);
      p(1 + k) = tk;
      prefix *= std::sin(tk);
    }
    p(m_n - 1) = std::atan2(sig(0), sig(1));
    return p;
  }

  Vec act(const EMat& g, const Vec& p) const override {
    return chart_from_embedding(g * embed(p));
  }

  EMat act_diff(const EMat& g, const Vec& p) const override {
    Vec p2 = act(g, p);
    EMat lin = g(m_n, m_n) * g.topLeftCorner(m_n, m_n);  // Cartesian differential
    return cart_jacobian(p2).inverse() * lin * cart_jacobian(p);
  }

  EMat ambient_lift(const Vec& p) const override {
    EMat g = EMat::Zero(m_n + 1, m_n + 1);
    g.topLeftCorner(m_n, m_n) = axis_rotation(p.tail(m_n - 1));
    g(m_n, m_n) = p(0);
    return g;
  }

  /// SO(n) element rotating the first Cartesian axis onto sigma(theta).
  EMat axis_rotation(const Vec& t) const {
    Vec u = Vec::Unit(m_n, 0);
    Vec v = m_sph.sigma(t);
    double c = u.dot(v);
    if (c > 1.0 - 1e-14) return EMat::Identity(m_n, m_n);
    Vec w = (v - c * u).normalized();
    double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    EMat rot = EMat::Identity(m_n, m_n);
    rot += s * (w * u.transpose() - u * w.transpose());
    rot += (c - 1.0) * (u * u.transpose() + w * w.transpose());
    return rot;
  }

  /// d(Cartesian)/d(chart), square and invertible inside the chart box.
  EMat cart_jacobian(const Vec& p) const {
    EMat j(m_n, m_n);
    Vec t = p.tail(m_n - 1);
    j.col(0) = m_sph.sigma(t);
    EMat dsig = m_sph.dsigma(t);
    for (int k = 1; k < m_n; ++k) j.col(k) = p(0) * dsig.col(k - 1);
    return j;
  }

private:
  static Vec base(int n) {
    Vec o(n);
    o(0) = 1.0;
    for (int i = 1; i < n; ++i) o(i) = M_PI / 2.0;
    return o;
  }
  static ChartBox make_box(int n) {
    ChartBox box;
    box.lo = Vec::Constant(n, 0.1);
    box.hi = Vec::Constant(n, M_PI - 0.1);
    box.lo(0) = 0.1;
    box.hi(0) = 10.0;
    return box;
  }

  int m_n;
  Spherical m_sph;
};

}  // namespace

Fixture build_punctured_euclidean(int n, const std::string& subgroup) {
  if (n < 3) throw std::invalid_argument("build_punctured_euclidean: requires n >= 3");
  if (subgroup != "SO(n)")
    throw std::invalid_argument(
        "build_punctured_euclidean: only the SO(n) subgroup is built in");
  const int nn = n + 1;

  // Basis order: v_i (i = 1..n-1), then B_{ij} (1 <= i < j <= n-1), then the
  // scaling generator a.
  std::vector<MatQ> basis;
  std::vector<FieldTag> tags;
  for (int i = 1; i < n; ++i)
    basis.push_back(MatQ::unit(nn, nn, 0, i) - MatQ::unit(nn, nn, i, 0));
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      basis.push_back(MatQ::unit(nn, nn, i, j) - MatQ::unit(nn, nn, j, i));
  basis.push_back(MatQ::unit(nn, nn, n, n));
  tags.assign(basis.size(), FieldTag{FieldKind::killing, 0.0});
  tags.back() = FieldTag{FieldKind::conformal_killing, 1.0};

  const int dim_alg = static_cast<int>(basis.size());

  // Exact seed in the chart frame at o: the frame maps to Cartesian vectors
  // (e_0, -e_{n-1}, -e_{n-2}, ..., -e_1), an orthogonal matrix with +-1
  // entries, so Kostant matrices stay rational.
  MatQ frame(n, n);
  frame(0, 0) = Rational(1);
  for (int j = 1; j < n; ++j) frame(n - j, j) = Rational(-1);
  ExactSeed seed;
  seed.eval = MatQ(n, dim_alg);
  seed.metric = MatQ::identity(n);
  for (int bi = 0; bi < dim_alg; ++bi) {
    if (bi == dim_alg - 1) {
      seed.kostant.push_back(MatQ(0, 0));  // conformal: no Kostant operator
      seed.eval(0, bi) = Rational(1);
      continue;
    }
    MatQ w(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w(i, j) = basis[bi](i, j);
    seed.kostant.push_back(frame.transpose() * w * frame);
    if (bi < n - 1) {
      // v_i field value at o: W e_0 = -e_{i+1} Cartesian = +d/dtheta_{n-i-1}.
      seed.eval(n - 1 - bi, bi) = Rational(1);
    }
  }

  auto to_double_basis = [](const std::vector<MatQ>& bs) {
    std::vector<MatD> out;
    out.reserve(bs.size());
    for (const auto& b : bs) out.push_back(b.to_double());
    return out;
  };

  Fixture fx;
  fx.name = "punctured_euclidean";
  fx.n = n;
  fx.symmetric = false;
  fx.conformal = true;
  fx.principal = true;

  fx.ambient_exact = std::make_shared<MatrixLieAlgebra<Rational>>(
      SubspaceQ::from_basis(basis, nn, nn), "R+ x so(n)");
  auto alg_d = std::make_shared<MatrixLieAlgebra<double>>(
      SubspaceD::from_basis(to_double_basis(basis), nn, nn), "R+ x so(n)");
  auto model = std::make_shared<PuncturedModel>(n, alg_d, tags, seed);
  fx.model = model;

  // g = so(n): everything except the scaling generator.
  std::vector<MatQ> g_basis(basis.begin(), basis.end() - 1);
  fx.subgroup_exact = std::make_shared<MatrixLieAlgebra<Rational>>(
      SubspaceQ::from_basis(g_basis, nn, nn), "so(n)");
  fx.subgroup = std::make_shared<MatrixLieAlgebra<double>>(
      SubspaceD::from_basis(to_double_basis(g_basis), nn, nn), "so(n)");

  std::vector<MatQ> v_pattern(basis.begin(), basis.begin() + (n - 1));
  std::vector<MatQ> mbar_pattern = v_pattern;
  mbar_pattern.push_back(basis.back());
  fx.expected_m_bar = SubspaceQ::from_basis(mbar_pattern, nn, nn);
  fx.expected_m = SubspaceQ::from_basis(v_pattern, nn, nn);
  fx.expected_n = SubspaceQ::from_basis({basis.back()}, nn, nn);

  std::weak_ptr<const PuncturedModel> wm = model;
  fx.orbit_lift = [wm, nn, n](const Vec& p) {
    auto m = wm.lock();
    if (!m) throw std::runtime_error("punctured: model expired");
    if (std::fabs(p(0) - 1.0) > 1e-9)
      throw std::invalid_argument("punctured orbit_lift: point is not on the unit sphere");
    EMat g = EMat::Identity(nn, nn);
    g.topLeftCorner(n, n) = m->axis_rotation(p.tail(n - 1));
    return g;
  };
  return fx;
}

Fixture build_fixture(const std::string& name, int n) {
  if (name == "horosphere") return build_horosphere(n);
  if (name == "punctured_euclidean") return build_punctured_euclidean(n);
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace redorb
