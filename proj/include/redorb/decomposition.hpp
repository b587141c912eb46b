#ifndef REDORB_DECOMPOSITION_HPP
#define REDORB_DECOMPOSITION_HPP

#include <optional>
#include <vector>

#include "redorb/killing.hpp"
#include "redorb/lie_algebra.hpp"
#include "redorb/matrix.hpp"
#include "redorb/model.hpp"
#include "redorb/subspace.hpp"

namespace redorb {

/// Everything the decomposition pipeline needs, in either scalar mode: the
/// ambient algebra, the orbit subalgebra, and the evaluation/metric/Kostant
/// tables of the fixture frame at the base point.
template <typename T>
struct PipelineInputs {
  const MatrixLieAlgebra<T>* ambient = nullptr;
  const MatrixLieAlgebra<T>* subgroup = nullptr;
  Mat<T> eval{0, 0};    // dim x alg_dim, column i = (B_i)*_o in frame coords
  Mat<T> metric{0, 0};  // Gram of the frame
  std::vector<Mat<T>> kostant;  // per ambient basis element; 0x0 when conformal
  std::vector<bool> isometric;
  std::optional<Subspace<T>> m_bar_override;
  double span_tol = 1e-8;
  double rank_tol = 1e-10;
};

struct DecompositionCertificates {
  // Ad-invariance residuals (bracket test, sampled conjugation test)
  AdInvarianceReport hbar_mbar;
  AdInvarianceReport h_m;
  AdInvarianceReport h_n;
  /// smallest eigenvalue of the phi-bar Gram block on the ambient isotropy
  double phi_bar_isotropy_min_eig = 0.0;
  /// smallest eigenvalue of the psi Gram matrix
  double psi_min_eig = 0.0;
  bool sums_direct = false;
  bool proof_identity = false;   // h-perp = h-perp-in-hbar + m-bar (isometric part)
  bool m_bar_is_canonical = false;
  bool m_bar_supplied = false;
  double normal_match_residual = 1.0;
  /// bracket residual of the non-theorem (m+n) space under the ambient
  /// isotropy; Rmk-style decompositions are expected to FAIL this
  double m_plus_n_invariance_residual = 0.0;
  bool conformal_directions_excluded = false;
};

template <typename T>
struct DecompositionResult {
  Subspace<T> ambient_isotropy;    // h-bar
  Subspace<T> ambient_complement;  // m-bar
  Subspace<T> orbit_isotropy;      // h
  Subspace<T> orbit_complement;    // m
  Subspace<T> normal_space;        // n
  Subspace<T> isometric_span;
  Mat<T> phi_bar_gram{0, 0};  // indexed by the isometric-span basis
  Mat<T> psi_gram{0, 0};      // indexed by the full ambient basis
  DecompositionCertificates certs;
};

template <typename T>
struct PrincipalOrbitReport {
  bool applicable = false;   // false when h = 0 (conditions hold vacuously)
  double slice_residual = 0.0;
  bool slice_trivial = true;
  double eq_prin_max_dev = 0.0;   // max |phi - phi_bar| over h x g basis pairs
  bool h_perp_phi_equals_m = true;
  Mat<T> phi_orbit_gram{0, 0};    // on the subgroup basis
};

/// Kernel of the evaluation map restricted to a subspace of the algebra.
template <typename T>
Subspace<T> isotropy_subspace(const PipelineInputs<T>& in, const Subspace<T>& sub);

/// m-bar = (phi-bar-orthogonal complement of the isotropy inside the
/// isometric span) + the conformal directions; or the user-supplied override.
template <typename T>
Subspace<T> ambient_reductive_complement(const PipelineInputs<T>& in);

/// Full run of the induced-decomposition pipeline with certificates.
template <typename T>
DecompositionResult<T> induced_orbit_decomposition(const PipelineInputs<T>& in);

/// Slice-representation triviality and the principal-orbit form comparison.
template <typename T>
PrincipalOrbitReport<T> principal_orbit_report(const PipelineInputs<T>& in,
                                               const DecompositionResult<T>& dec);

/// Floating inputs straight from a chart model (evaluation in the chart
/// frame, Kostant operators from the closed-form Christoffels).
PipelineInputs<double> make_float_inputs(const ChartedHomSpace& model,
                                         const MatrixLieAlgebra<double>& subgroup,
                                         double span_tol = 1e-8, double rank_tol = 1e-10);

struct Fixture;

/// Exact pipeline inputs from a fixture's rational seed tables.
PipelineInputs<Rational> make_exact_inputs(const Fixture& fx);

}  // namespace redorb

#endif
