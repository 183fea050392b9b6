#pragma once

#include <vector>

#include "sipovm/bloch.hpp"
#include "sipovm/povm.hpp"
#include "sipovm/wh_group.hpp"

namespace sipovm {

// Phase angles theta_q on the nonzero indices of Z_d^2, subject to the
// Hermiticity pairing exp(i theta_{qbar}) = s_{-q} exp(-i theta_q).  The free
// chart is one angle per unordered pair {q, qbar} (representative: the
// lexicographically smaller index) plus a discrete choice for each
// self-paired q, where the angle is pinned to the two solutions of
// exp(2 i theta) = s_{-q}.
struct PhaseVector {
  GroupContext ctx;
  std::vector<double> theta;  // indexed q1*d + q2; entry 0 unused

  double at(const GroupIndex& q) const { return theta[q.p1 * ctx.d + q.p2]; }
};

struct PhaseAssignment {
  GroupIndex q;
  double theta;
};

// Representatives of the non-self-paired pairs (the continuous chart).
std::vector<GroupIndex> free_representatives(const GroupContext& ctx);
// Indices with 2q = 0 mod d, q != 0 (discrete chart; empty for odd d).
std::vector<GroupIndex> self_paired_indices(const GroupContext& ctx);

// Completes a partial assignment on the chart into a full constraint-
// satisfying PhaseVector.  Throws on missing representatives or on a
// self-paired angle violating exp(2 i theta) = s_{-q}.
PhaseVector make_phase_vector(const std::vector<PhaseAssignment>& assignment,
                              const GroupContext& ctx);

// theta_q = angle for every nonzero q.  Valid whenever all s_{-q} = +1
// (odd d, and d = 2); throws otherwise.
PhaseVector constant_phase_vector(double angle, const GroupContext& ctx);

// Largest violation of the pairing constraint.
double pairing_residual(const PhaseVector& phi);

// Seeded random point of the chart (uniform angles; random branch for the
// self-paired entries).
PhaseVector random_phase_vector(const GroupContext& ctx, Rng& rng);

// B = (1/sqrt(d+1)) sum_{q != 0} e^{i theta_q} D_q; Hermitian, traceless,
// unit norm.
BlochElement generating_vector(const PhaseVector& phi);

struct OrbitCheck {
  std::vector<Matrix> members;  // B_p = D_p B D_p^dag, indexed p1*d + p2
  bool is_generating_simplex = false;
  double max_deviation = 0.0;   // worst |<B,B_p> + 1/(d^2-1)| over p != 0
};

OrbitCheck orbit_and_check(const BlochElement& generator);

struct CovariantPovm {
  Povm povm;
  double kappa;  // -1/lambda_min of the generator
};

// E_p = (1/d^2)(1 + kappa B_p) over the full orbit.
CovariantPovm covariant_si_povm(const PhaseVector& phi);

}  // namespace sipovm
