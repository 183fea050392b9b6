#pragma once

#include <vector>

#include "sipovm/povm.hpp"
#include "sipovm/wh_group.hpp"

namespace sipovm {

// Parity operator, Wigner POVM, and the discrete Wigner function for odd d.
// Even d is rejected throughout: U^2 = 1 relies on the odd-d delta sum.

// U = (1/d) sum_q D_q; Hermitian involution with Tr(U) = 1 acting as
// U|r> = |-r mod d>.
Matrix parity_operator(const GroupContext& ctx);

// The WH-covariant SI-POVM E_p = (1/d^2)(1 + (1/sqrt(d+1)) B_p) of rank
// (d+1)/2 and efficiency 1/sqrt(d+1); equals the zero-phase covariant POVM.
Povm wigner_povm(const GroupContext& ctx);

struct WignerFunction {
  GroupContext ctx;
  Eigen::VectorXd values;  // W_p indexed p1*d + p2; sums to 1

  double at(const GroupIndex& p) const { return values(p.p1 * ctx.d + p.p2); }
};

// W_p = (1/d) Tr(U_p rho) with U_p = D_p U D_p^dag.
WignerFunction wigner_from_state(const Matrix& rho, const GroupContext& ctx);

// Rescaling of Wigner-POVM outcome probabilities: W_p = (d+1) p_p - 1/d.
WignerFunction wigner_from_probabilities(const std::vector<double>& probs,
                                         const GroupContext& ctx);

// Symplectic Fourier inversion: rho_q = (1/d) sum_p tau^{2<p,q>} W_p, then
// rho = sum_q rho_q D_q.  Hermitian and trace 1 by construction; PSD is not
// enforced.
Matrix state_from_wigner(const WignerFunction& w);

}  // namespace sipovm
