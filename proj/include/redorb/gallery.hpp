#ifndef REDORB_GALLERY_HPP
#define REDORB_GALLERY_HPP

#include <functional>
#include <memory>
#include <string>

#include "redorb/model.hpp"

namespace redorb {

/// Built-in model with expected decomposition output for regression. The
/// exact algebras share the basis order of the floating model, so the exact
/// seed tables line up index by index.
struct Fixture {
  std::string name;
  int n = 0;
  std::shared_ptr<const ChartedHomSpace> model;
  std::shared_ptr<const MatrixLieAlgebra<double>> subgroup;          // g
  std::shared_ptr<const MatrixLieAlgebra<Rational>> ambient_exact;   // gbar
  std::shared_ptr<const MatrixLieAlgebra<Rational>> subgroup_exact;  // g
  SubspaceQ expected_m_bar{0, 0};
  SubspaceQ expected_m{0, 0};
  SubspaceQ expected_n{0, 0};
  bool symmetric = false;
  bool conformal = false;
  bool principal = true;
  std::function<EMat(const Vec&)> orbit_lift;

  OrbitData orbit() const { return make_orbit(*model, *subgroup, orbit_lift); }
};

/// Horosphere foliation of real hyperbolic space: ambient SO(n,1) on the
/// warped chart (t, x) with metric dt^2 + e^{-2t} |dx|^2, orbit group
/// SO(n-1) x R^{n-1} acting on the x factor. Requires n >= 3.
Fixture build_horosphere(int n);

/// Concentric spheres in punctured Euclidean space: chart (r, theta) with
/// metric dr^2 + r^2 g_sphere, conformal group R+ x SO(n), orbit group SO(n).
/// Requires n >= 3; only the SO(n) subgroup is built in.
Fixture build_punctured_euclidean(int n, const std::string& subgroup = "SO(n)");

/// Dispatch by name ("horosphere" | "punctured_euclidean").
Fixture build_fixture(const std::string& name, int n);

}  // namespace redorb

#endif
