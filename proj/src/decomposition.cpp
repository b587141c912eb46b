#include "redorb/decomposition.hpp"

#include <Eigen/Eigenvalues>

#include "redorb/gallery.hpp"
#include "redorb/kostant.hpp"

namespace redorb {

namespace {

template <typename T>
Mat<T> coords_in(const Subspace<T>& space, const Subspace<T>& sub, double tol) {
  Mat<T> c(space.dim(), sub.dim());
  for (int j = 0; j < sub.dim(); ++j) {
    auto cc = space.coordinates(sub[j], tol);
    if (!cc) throw std::invalid_argument("decomposition: subspace escapes the ambient algebra");
    for (int i = 0; i < space.dim(); ++i) c(i, j) = (*cc)[i];
  }
  return c;
}

template <typename T>
double min_symmetric_eigenvalue(const Mat<T>& g) {
  if (g.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<EMat> es(g.to_eigen());
  return es.eigenvalues().minCoeff();
}

template <typename T>
Mat<T> independent_columns(const Mat<T>& a, double rank_tol) {
  Mat<T> out(a.rows(), 0);
  std::vector<int> keep;
  for (int c = 0; c < a.cols(); ++c) {
    std::vector<int> trial = keep;
    trial.push_back(c);
    Mat<T> sub(a.rows(), static_cast<int>(trial.size()));
    for (size_t k = 0; k < trial.size(); ++k)
      for (int i = 0; i < a.rows(); ++i) sub(i, static_cast<int>(k)) = a(i, trial[k]);
    if (LinSolve<T>::rank(sub, rank_tol) == static_cast<int>(trial.size())) keep = trial;
  }
  Mat<T> sub(a.rows(), static_cast<int>(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k)
    for (int i = 0; i < a.rows(); ++i) sub(i, static_cast<int>(k)) = a(i, keep[k]);
  return sub;
}

template <typename T>
struct PhiBarData {
  Subspace<T> iso_span;
  Subspace<T> conformal_span;
  Mat<T> gram;  // on the iso_span basis order
  GramForm<T> form;
};

template <typename T>
PhiBarData<T> phi_bar_data(const PipelineInputs<T>& in) {
  const auto& alg = *in.ambient;
  std::vector<Mat<T>> iso, conf;
  std::vector<int> iso_idx;
  for (int i = 0; i < alg.dim(); ++i) {
    if (in.isometric.at(i)) {
      iso.push_back(alg[i]);
      iso_idx.push_back(i);
    } else {
      conf.push_back(alg[i]);
    }
  }
  Subspace<T> iso_span =
      iso.empty() ? Subspace<T>::empty(alg.ambient_size(), alg.ambient_size())
                  : Subspace<T>::from_basis(iso, alg.ambient_size(), alg.ambient_size(),
                                            in.rank_tol);
  Subspace<T> conf_span =
      conf.empty() ? Subspace<T>::empty(alg.ambient_size(), alg.ambient_size())
                   : Subspace<T>::from_basis(conf, alg.ambient_size(), alg.ambient_size(),
                                             in.rank_tol);
  long scale = so_killing_scale(in.eval.rows());
  Mat<T> gram(static_cast<int>(iso_idx.size()), static_cast<int>(iso_idx.size()));
  for (size_t a = 0; a < iso_idx.size(); ++a)
    for (size_t b = 0; b <= a; ++b) {
      T v = trace_product(in.kostant.at(iso_idx[a]), in.kostant.at(iso_idx[b]));
      if constexpr (scalar_traits<T>::exact)
        v = Rational(-scale) * v;
      else
        v = -static_cast<double>(scale) * v;
      gram(static_cast<int>(a), static_cast<int>(b)) = v;
      gram(static_cast<int>(b), static_cast<int>(a)) = v;
    }
  GramForm<T> form(iso_span, gram);
  return PhiBarData<T>{std::move(iso_span), std::move(conf_span), std::move(gram),
                       std::move(form)};
}

/// Value of a field at o given ambient-basis coordinates.
template <typename T>
std::vector<T> eval_coords(const PipelineInputs<T>& in, const std::vector<T>& c) {
  std::vector<T> v(in.eval.rows(), scalar_traits<T>::zero());
  for (int i = 0; i < in.eval.rows(); ++i)
    for (int j = 0; j < in.eval.cols(); ++j) v[i] += in.eval(i, j) * c[j];
  return v;
}

template <typename T>
Mat<T> eval_of_subspace(const PipelineInputs<T>& in, const Subspace<T>& sub) {
  Mat<T> c = coords_in(in.ambient->span(), sub, in.span_tol);
  Mat<T> out(in.eval.rows(), sub.dim());
  for (int j = 0; j < sub.dim(); ++j) {
    std::vector<T> col(c.rows());
    for (int i = 0; i < c.rows(); ++i) col[i] = c(i, j);
    auto v = eval_coords(in, col);
    for (int i = 0; i < out.rows(); ++i) out(i, j) = v[i];
  }
  return out;
}

/// Residual of the geometric identity span{X*_o : X in n} = (T_o M)^perp.
template <typename T>
double normal_match_residual(const PipelineInputs<T>& in, const Subspace<T>& n_space,
                             const Subspace<T>& g_span) {
  EMat nv = eval_of_subspace(in, n_space).to_eigen();
  EMat tv = eval_of_subspace(in, g_span).to_eigen();
  EMat g = in.metric.to_eigen();
  const int d = static_cast<int>(g.rows());
  Eigen::JacobiSVD<EMat> svd_t(tv);
  int trank = 0;
  for (int i = 0; i < svd_t.singularValues().size(); ++i)
    if (svd_t.singularValues()(i) > 1e-10 * svd_t.singularValues()(0)) ++trank;
  Eigen::JacobiSVD<EMat> svd_n(nv);
  int nrank = 0;
  if (nv.cols() > 0 && svd_n.singularValues()(0) > 0)
    for (int i = 0; i < svd_n.singularValues().size(); ++i)
      if (svd_n.singularValues()(i) > 1e-10 * svd_n.singularValues()(0)) ++nrank;
  if (nrank != n_space.dim() || trank + nrank != d) return 1.0;
  if (nv.cols() == 0) return 0.0;
  double scale = std::max(1.0, nv.norm() * tv.norm());
  return (nv.transpose() * g * tv).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

template <typename T>
Subspace<T> isotropy_subspace(const PipelineInputs<T>& in, const Subspace<T>& sub) {
  const auto& alg = *in.ambient;
  Mat<T> c = coords_in(alg.span(), sub, in.span_tol);
  Mat<T> ev(in.eval.rows(), sub.dim());
  for (int j = 0; j < sub.dim(); ++j)
    for (int i = 0; i < in.eval.rows(); ++i) {
      T acc = scalar_traits<T>::zero();
      for (int k = 0; k < alg.dim(); ++k) acc += in.eval(i, k) * c(k, j);
      ev(i, j) = acc;
    }
  Mat<T> ns = LinSolve<T>::nullspace(ev, in.rank_tol);
  std::vector<Mat<T>> gens;
  for (int r = 0; r < ns.rows(); ++r) {
    std::vector<T> coord(sub.dim());
    for (int j = 0; j < sub.dim(); ++j) coord[j] = ns(r, j);
    gens.push_back(sub.from_coordinates(coord));
  }
  return span_reduce(gens, sub.ambient_rows(), sub.ambient_cols(), in.rank_tol);
}

template <typename T>
Subspace<T> ambient_reductive_complement(const PipelineInputs<T>& in) {
  if (in.m_bar_override) return *in.m_bar_override;
  auto phi = phi_bar_data(in);
  Subspace<T> hbar = isotropy_subspace(in, in.ambient->span());
  for (const auto& b : hbar.basis())
    if (!phi.iso_span.contains(b, in.span_tol))
      throw std::invalid_argument(
          "ambient_reductive_complement: isotropy has conformally tagged directions");
  auto comp = orth_complement(hbar, phi.iso_span, phi.form, in.span_tol, in.rank_tol);
  if (!comp.nondegenerate_on_sub)
    throw std::domain_error("ambient_reductive_complement: phi-bar degenerate on the isotropy");
  return phi.conformal_span.dim() == 0 ? comp.complement
                                       : comp.complement.sum(phi.conformal_span, in.rank_tol);
}

template <typename T>
DecompositionResult<T> induced_orbit_decomposition(const PipelineInputs<T>& in) {
  const auto& alg = *in.ambient;
  const auto& g_span = in.subgroup->span();
  const double tol = in.span_tol;

  for (const auto& b : g_span.basis())
    if (span_distance(alg.span(), b, tol) > tol)
      throw std::invalid_argument("induced_orbit_decomposition: g is not inside the ambient");

  auto phi = phi_bar_data(in);
  DecompositionResult<T> out;
  out.isometric_span = phi.iso_span;
  out.phi_bar_gram = phi.gram;
  out.certs.conformal_directions_excluded = phi.conformal_span.dim() > 0;

  out.ambient_isotropy = isotropy_subspace(in, alg.span());
  for (const auto& b : out.ambient_isotropy.basis())
    if (!phi.iso_span.contains(b, tol))
      throw std::invalid_argument(
          "induced_orbit_decomposition: isotropy has conformally tagged directions");

  out.ambient_complement = ambient_reductive_complement(in);
  out.certs.m_bar_supplied = in.m_bar_override.has_value();
  {
    auto canonical_certificate = orth_complement(out.ambient_isotropy, phi.iso_span, phi.form,
                                                 tol, in.rank_tol);
    Subspace<T> canonical = phi.conformal_span.dim() == 0
                                ? canonical_certificate.complement
                                : canonical_certificate.complement.sum(phi.conformal_span,
                                                                       in.rank_tol);
    out.certs.m_bar_is_canonical = canonical.same_span(out.ambient_complement, tol);
  }

  // Gate: m-bar must be an Ad(H-bar)-invariant complement.
  bool mbar_complement =
      out.ambient_isotropy.dim() + out.ambient_complement.dim() == alg.dim() &&
      intersect(out.ambient_isotropy, out.ambient_complement, in.rank_tol).dim() == 0;
  out.certs.hbar_mbar =
      ad_invariance_check(out.ambient_isotropy, out.ambient_complement, alg, 8, tol);
  if (!mbar_complement)
    throw std::invalid_argument("induced_orbit_decomposition: m-bar is not a complement");
  if (in.m_bar_override && !out.certs.hbar_mbar.invariant(std::max(tol, 1e-7)))
    throw std::invalid_argument(
        "induced_orbit_decomposition: supplied m-bar is not Ad(H-bar)-invariant "
        "(certificate hbar_mbar failed)");

  out.orbit_isotropy = intersect(out.ambient_isotropy, g_span, in.rank_tol);
  for (const auto& b : g_span.basis())
    if (!phi.iso_span.contains(b, tol))
      throw std::invalid_argument(
          "induced_orbit_decomposition: the subgroup has conformally tagged directions");

  auto h_perp = orth_complement(out.orbit_isotropy, phi.iso_span, phi.form, tol, in.rank_tol);
  if (!h_perp.nondegenerate_on_sub)
    throw std::domain_error("induced_orbit_decomposition: phi-bar degenerate on h");
  out.orbit_complement = intersect(h_perp.complement, g_span, in.rank_tol);

  bool g_direct = out.orbit_isotropy.dim() + out.orbit_complement.dim() == g_span.dim() &&
                  intersect(out.orbit_isotropy, out.orbit_complement, in.rank_tol).dim() == 0;
  if (!g_direct)
    throw std::domain_error(
        "induced_orbit_decomposition: m is not a complement of h in g (theorem violation)");
  out.certs.h_m = ad_invariance_check(out.orbit_isotropy, out.orbit_complement, alg, 8, tol);

  // Proof identity: h-perp equals (h-perp inside h-bar) + m-bar, compared on
  // the isometric span.
  {
    auto h_perp_hbar =
        orth_complement(out.orbit_isotropy, out.ambient_isotropy, phi.form, tol, in.rank_tol);
    Subspace<T> mbar_iso = intersect(out.ambient_complement, phi.iso_span, in.rank_tol);
    Subspace<T> rhs = h_perp_hbar.complement.sum(mbar_iso, in.rank_tol);
    out.certs.proof_identity = rhs.same_span(h_perp.complement, tol);
  }

  out.certs.phi_bar_isotropy_min_eig =
      min_symmetric_eigenvalue(phi.form.restricted_gram(out.ambient_isotropy, tol));

  // psi: phi-bar on the isotropy block, pulled-back metric on the m-bar
  // block, zero across.
  {
    Mat<T> psi(alg.dim(), alg.dim());
    std::vector<Mat<T>> h_parts, m_parts;
    for (int i = 0; i < alg.dim(); ++i) {
      Mat<T> hp = out.ambient_isotropy.dim() == 0
                      ? Mat<T>(alg.ambient_size(), alg.ambient_size())
                      : project(alg[i], out.ambient_isotropy, out.ambient_complement, tol,
                                in.rank_tol);
      h_parts.push_back(hp);
      m_parts.push_back(alg[i] - hp);
    }
    for (int i = 0; i < alg.dim(); ++i)
      for (int j = 0; j <= i; ++j) {
        T v = scalar_traits<T>::zero();
        if (out.ambient_isotropy.dim() > 0 && !h_parts[i].is_zero() && !h_parts[j].is_zero())
          v += phi.form.evaluate(h_parts[i], h_parts[j], tol);
        auto ci = alg.span().coordinates(m_parts[i], tol);
        auto cj = alg.span().coordinates(m_parts[j], tol);
        auto vi = eval_coords(in, *ci);
        auto vj = eval_coords(in, *cj);
        for (int a = 0; a < in.metric.rows(); ++a)
          for (int b = 0; b < in.metric.cols(); ++b) v += vi[a] * in.metric(a, b) * vj[b];
        psi(i, j) = v;
        psi(j, i) = v;
      }
    out.psi_gram = psi;
    out.certs.psi_min_eig = min_symmetric_eigenvalue(psi);
  }

  {
    GramForm<T> psi_form(alg.span(), out.psi_gram);
    Subspace<T> hbar_plus_m = out.ambient_isotropy.sum(out.orbit_complement, in.rank_tol);
    auto n_comp = orth_complement(hbar_plus_m, alg.span(), psi_form, tol, in.rank_tol);
    out.normal_space = n_comp.complement;
  }

  out.certs.h_n = ad_invariance_check(out.orbit_isotropy, out.normal_space, alg, 8, tol);
  out.certs.normal_match_residual = normal_match_residual(in, out.normal_space, g_span);

  {
    bool direct3 = out.ambient_isotropy.dim() + out.orbit_complement.dim() +
                           out.normal_space.dim() == alg.dim() &&
                   intersect(out.ambient_isotropy, out.orbit_complement, in.rank_tol).dim() == 0 &&
                   intersect(out.ambient_isotropy, out.normal_space, in.rank_tol).dim() == 0 &&
                   intersect(out.orbit_complement, out.normal_space, in.rank_tol).dim() == 0;
    out.certs.sums_direct = mbar_complement && g_direct && direct3;
  }

  // Rmk-style negative diagnostic: does (m + n) stay bracket-invariant under
  // the full ambient isotropy? (Expected to fail on the horosphere fixture.)
  {
    Subspace<T> m_plus_n = out.orbit_complement.sum(out.normal_space, in.rank_tol);
    double worst = 0.0;
    for (const auto& x : out.ambient_isotropy.basis())
      for (const auto& y : m_plus_n.basis())
        worst = std::max(worst, span_distance(m_plus_n, bracket(x, y), tol));
    out.certs.m_plus_n_invariance_residual = worst;
  }
  return out;
}

template <typename T>
PrincipalOrbitReport<T> principal_orbit_report(const PipelineInputs<T>& in,
                                               const DecompositionResult<T>& dec) {
  const auto& alg = *in.ambient;
  const auto& g_span = in.subgroup->span();
  const double tol = in.span_tol;
  PrincipalOrbitReport<T> rep;
  rep.applicable = dec.orbit_isotropy.dim() > 0;

  // Tangent projector at o (frame coordinates, metric-orthogonal).
  Mat<T> tv = eval_of_subspace(in, g_span);
  Mat<T> tb = independent_columns(tv, in.rank_tol);
  Mat<T> p(in.eval.rows(), in.eval.rows());
  if (tb.cols() > 0) {
    Mat<T> gt = in.metric * tb;
    Mat<T> gram = tb.transpose() * gt;
    p = tb * invert(gram) * gt.transpose();
  }

  auto kostant_of = [&](const Mat<T>& x) {
    auto c = alg.span().coordinates(x, tol);
    if (!c) throw std::invalid_argument("principal_orbit_report: element outside the algebra");
    Mat<T> k(in.eval.rows(), in.eval.rows());
    for (int i = 0; i < alg.dim(); ++i) {
      if (scalar_traits<T>::is_zero((*c)[i], 0.0)) continue;
      if (!in.isometric.at(i))
        throw std::invalid_argument("principal_orbit_report: conformal direction in g");
      Mat<T> term = in.kostant.at(i);
      term *= (*c)[i];
      k += term;
    }
    return k;
  };

  long scale = so_killing_scale(in.eval.rows());
  auto phi_tan = [&](const Mat<T>& kx, const Mat<T>& ky) {
    Mat<T> px = p * kx * p;
    Mat<T> py = p * ky * p;
    T v = trace_product(px, py);
    if constexpr (scalar_traits<T>::exact)
      return Rational(-scale) * v;
    else
      return -static_cast<double>(scale) * v;
  };

  // Slice triviality: K-bar of isotropy elements must equal its tangent
  // compression.
  for (const auto& x : dec.orbit_isotropy.basis()) {
    Mat<T> k = kostant_of(x);
    Mat<T> diff = k - p * k * p;
    rep.slice_residual = std::max(rep.slice_residual, diff.max_abs());
  }
  rep.slice_trivial = rep.slice_residual <= 1e-7;

  // phi Gram on the subgroup basis and the comparison with phi-bar on h x g.
  std::vector<Mat<T>> kg;
  for (int j = 0; j < g_span.dim(); ++j) kg.push_back(kostant_of(g_span[j]));
  rep.phi_orbit_gram = Mat<T>(g_span.dim(), g_span.dim());
  for (int i = 0; i < g_span.dim(); ++i)
    for (int j = 0; j <= i; ++j) {
      T v = phi_tan(kg[i], kg[j]);
      rep.phi_orbit_gram(i, j) = v;
      rep.phi_orbit_gram(j, i) = v;
    }

  GramForm<T> phi_bar_form(dec.isometric_span, dec.phi_bar_gram);
  for (const auto& x : dec.orbit_isotropy.basis()) {
    Mat<T> kx = kostant_of(x);
    for (int j = 0; j < g_span.dim(); ++j) {
      T a = phi_tan(kx, kg[j]);
      T b = phi_bar_form.evaluate(x, g_span[j], tol);
      rep.eq_prin_max_dev = std::max(rep.eq_prin_max_dev,
                                     scalar_traits<T>::magnitude(a - b));
    }
  }

  // h-perp under phi inside g coincides with m.
  {
    GramForm<T> phi_g(g_span, rep.phi_orbit_gram);
    auto perp = orth_complement(dec.orbit_isotropy, g_span, phi_g, tol, in.rank_tol);
    rep.h_perp_phi_equals_m = perp.complement.same_span(dec.orbit_complement, tol);
  }
  return rep;
}

PipelineInputs<Rational> make_exact_inputs(const Fixture& fx) {
  PipelineInputs<Rational> in;
  in.ambient = fx.ambient_exact.get();
  in.subgroup = fx.subgroup_exact.get();
  const ExactSeed& seed = fx.model->exact_seed();
  in.eval = seed.eval;
  in.metric = seed.metric;
  in.kostant = seed.kostant;
  for (int i = 0; i < fx.ambient_exact->dim(); ++i)
    in.isometric.push_back(fx.model->field_tag(i).kind == FieldKind::killing);
  return in;
}

PipelineInputs<double> make_float_inputs(const ChartedHomSpace& model,
                                         const MatrixLieAlgebra<double>& subgroup,
                                         double span_tol, double rank_tol) {
  PipelineInputs<double> in;
  in.ambient = &model.algebra();
  in.subgroup = &subgroup;
  in.span_tol = span_tol;
  in.rank_tol = rank_tol;
  const int d = model.dim();
  const int nd = model.algebra().dim();
  in.eval = Mat<double>(d, nd);
  in.metric = Mat<double>::from_eigen(model.metric_at(model.base_point()));
  for (int i = 0; i < nd; ++i) {
    RealizedField f = model.realize(model.algebra()[i], model.base_point());
    for (int r = 0; r < d; ++r) in.eval(r, i) = f.value(r);
    if (model.field_tag(i).kind == FieldKind::killing) {
      in.isometric.push_back(true);
      KostantOperator op = kostant(model, model.algebra()[i]);
      in.kostant.push_back(Mat<double>::from_eigen(op.chart_matrix));
    } else {
      in.isometric.push_back(false);
      in.kostant.push_back(Mat<double>(0, 0));
    }
  }
  return in;
}

template Subspace<double> isotropy_subspace<double>(const PipelineInputs<double>&,
                                                    const Subspace<double>&);
template Subspace<Rational> isotropy_subspace<Rational>(const PipelineInputs<Rational>&,
                                                        const Subspace<Rational>&);
template Subspace<double> ambient_reductive_complement<double>(const PipelineInputs<double>&);
template Subspace<Rational> ambient_reductive_complement<Rational>(
    const PipelineInputs<Rational>&);
template DecompositionResult<double> induced_orbit_decomposition<double>(
    const PipelineInputs<double>&);
template DecompositionResult<Rational> induced_orbit_decomposition<Rational>(
    const PipelineInputs<Rational>&);
template PrincipalOrbitReport<double> principal_orbit_report<double>(
    const PipelineInputs<double>&, const DecompositionResult<double>&);
template PrincipalOrbitReport<Rational> principal_orbit_report<Rational>(
    const PipelineInputs<Rational>&, const DecompositionResult<Rational>&);

}  // namespace redorb
