#ifndef REDORB_KOSTANT_HPP
#define REDORB_KOSTANT_HPP

#include "redorb/model.hpp"

namespace redorb {

/// Covariant derivative of a fundamental field at the base point, as an
/// endomorphism of T_o in the chart frame and in an orthonormal frame.
struct KostantOperator {
  EMat chart_matrix;   // K(u) = Jac(X*) u + Gamma(u, X*_o), chart frame
  EMat frame_matrix;   // same operator in the orthonormal frame
  double skew_residual = 0.0;  // |K^T G + G K| in the chart frame
};

/// Kostant operator of a Killing-tagged element. Throws when X has a
/// component along a conformally tagged basis direction. The orthonormal
/// frame defaults to metric Gram-Schmidt of the chart frame at o; pass a
/// frame (columns, g_o-orthonormal) to override.
KostantOperator kostant(const ChartedHomSpace& model, const MatD& X,
                        const EMat* frame = nullptr);

/// Block structure of the Kostant operator in the adapted (tangent-first)
/// orthonormal frame of an orbit.
struct KostantBlocks {
  EMat full;                // operator in the adapted frame
  EMat tangent;             // K_X: tangent rows x tangent cols
  EMat second_fundamental;  // II(X*, .): normal rows x tangent cols
  EMat mixed;               // tangent rows x normal cols
  EMat normal;              // normal rows x normal cols
};

KostantBlocks kostant_blocks(const OrbitData& orbit, const MatD& X);

/// phi-bar of two Killing-tagged elements: minus the so(dim) Killing pairing
/// of their Kostant operators.
double phi_bar(const ChartedHomSpace& model, const MatD& X, const MatD& Y);

/// phi of the orbit: the same pairing restricted to the tangent blocks. Both
/// forms share one normalization constant (the ambient so scale) so that the
/// principal-orbit identity phi = phi-bar holds as stated.
double phi_orbit(const OrbitData& orbit, const MatD& X, const MatD& Y);

}  // namespace redorb

#endif
