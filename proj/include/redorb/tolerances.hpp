#ifndef REDORB_TOLERANCES_HPP
#define REDORB_TOLERANCES_HPP

namespace redorb {

/// All gates and numerical knobs in one place. Defaults are the contract;
/// the CLI can tighten or relax individual entries.
struct Tolerances {
  double rank_tol = 1e-10;        // relative SVD cutoff for float rank decisions
  double span_tol = 1e-8;         // membership / span-equality residual gate
  double gate_skew = 1e-7;        // Kostant skewness
  double gate_frame_indep = 1e-8; // phi entries across frames
  double gate_isotropy = 1e-7;    // isotropy-representation identity
  double gate_definite = 1e-6;    // smallest eigenvalue margin of phi|h
  double gate_invariance = 1e-8;  // Ad-invariance residuals (float)
  double gate_eq_prin = 1e-8;     // principal-orbit form comparison
  double gate_transport = 1e-7;   // ODE transport vs group pushforward
  double gate_tm_parallel = 1e-6; // tangent bundle parallelism
  double gate_dgamma = 1e-6;      // D Gamma residual
  double gate_lemma41 = 1e-8;     // |DGamma - DS|
  double gate_ambrose = 1e-6;     // canonical-connection parallelism triple
  double gate_oracle = 1e-6;      // closed form vs finite differences
  double gate_negative = 1e-2;    // corrupted decompositions must exceed this
  double ode_abs = 1e-10;
  double ode_rel = 1e-9;
  double fd_step = 1e-5;          // pointwise finite differences
  double curve_fd_step = 1e-4;    // tensor parallelism along curves
};

}  // namespace redorb

#endif
