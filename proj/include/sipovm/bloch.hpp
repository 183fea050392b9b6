#pragma once

#include <vector>

#include "sipovm/rng.hpp"
#include "sipovm/wh_group.hpp"

namespace sipovm {

// Geometry of su(d) under the rescaled Hilbert-Schmidt inner product
// <B1,B2> = Tr(B1 B2) / (d(d-1)).  Density matrices correspond to Bloch
// vectors via rho = (1 + B)/d; pure states are exactly the unit-norm Bloch
// vectors.

struct BlochElement {
  Matrix matrix;  // traceless Hermitian d x d
  GroupContext ctx;
};

struct EigenExtremes {
  double m_minus;  // negated smallest eigenvalue
  double m_plus;   // largest eigenvalue
};

enum class PurityVerdict { PurePlus, PureMinus, Interior };

struct TraceCubeReport {
  double value;
  PurityVerdict verdict;
  // For d=2 both bounds collapse to 0 and +/-B are both pure; the verdict is
  // PurePlus with this flag set.
  bool pure_minus_also = false;
};

BlochElement make_bloch(const Matrix& m, const GroupContext& ctx);

double bloch_inner(const BlochElement& a, const BlochElement& b);
double bloch_norm(const BlochElement& b);

EigenExtremes eigen_extremes(const BlochElement& b);

// Scaling membership: x B lies in the Bloch body iff -1/m+ <= x <= 1/m-.
// Requires norm(B) = 1.
bool scaling_membership(const BlochElement& b, double x);

// Tr(B^3) purity classification on the outer sphere.
TraceCubeReport classify_by_trace_cube(const BlochElement& b);

Matrix density_from_bloch(const BlochElement& b);
BlochElement bloch_from_density(const Matrix& rho, const GroupContext& ctx);

// kappa = min_r 1/m_{r-} over the list; lies in [1/(d-1), 1] for unit-norm
// inputs.
double shrink_factor(const std::vector<BlochElement>& elements);

// Generalized Gell-Mann basis of su(d), scaled so that the elements are
// orthonormal under the rescaled inner product: off-diagonal symmetric and
// antisymmetric pairs followed by the diagonal ladder, d^2-1 matrices in a
// fixed order.
std::vector<Matrix> gell_mann_basis(const GroupContext& ctx);

// Unit-norm element with rotation-invariant direction: standard normal
// coordinates in the Gell-Mann basis, normalized.
BlochElement random_unit_bloch(const GroupContext& ctx, Rng& rng);

// Random density matrix (Hilbert-Schmidt measure via a Ginibre factor).
Matrix random_density(const GroupContext& ctx, Rng& rng);

}  // namespace sipovm
