#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sipovm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Phase-space arithmetic and operator algebra of the Weyl-Heisenberg group
// on C^d.  Displacement operators are D_p = tau^{p1 p2} S^{p1} T^{p2} with
// clock T|r> = tau^{2r}|r>, shift S|r> = |r+1 mod d>, and tau = -exp(i pi/d).

struct GroupContext {
  int d;
  Complex tau;

  explicit GroupContext(int dim);

  bool odd() const { return d % 2 != 0; }

  // tau^n for arbitrary (possibly negative) n; exact mod-2d reduction.
  Complex tau_pow(long long n) const;

 private:
  std::vector<Complex> tau_table_;  // tau^0 .. tau^{2d-1}
};

// A point of Z_d^2, stored reduced to [0, d-1]^2.
struct GroupIndex {
  int p1 = 0;
  int p2 = 0;

  bool operator==(const GroupIndex&) const = default;
  bool is_zero() const { return p1 == 0 && p2 == 0; }
};

// Reduction [p] of an arbitrary integer pair.
GroupIndex reduce_index(long long p1, long long p2, const GroupContext& ctx);

GroupIndex index_add(const GroupIndex& p, const GroupIndex& q, const GroupContext& ctx);
GroupIndex index_sub(const GroupIndex& p, const GroupIndex& q, const GroupContext& ctx);
GroupIndex index_neg(const GroupIndex& p, const GroupContext& ctx);

// Symplectic form <p,q> = p2 q1 - p1 q2, evaluated on the unreduced inputs.
long long symplectic(long long p1, long long p2, long long q1, long long q2);
long long symplectic(const GroupIndex& p, const GroupIndex& q);

// Sign factor s_p relating D at an unreduced index to D at its reduction:
// +1 for odd d, (-1)^{<p,[p]>/d} for even d.  Accepts unreduced input.
int sign_factor(long long p1, long long p2, const GroupContext& ctx);
int sign_factor(const GroupIndex& p, const GroupContext& ctx);

// Dense d x d displacement operator at reduced index p.
Matrix displacement(const GroupIndex& p, const GroupContext& ctx);

// Expansion coefficients A_p = (1/d) Tr(D_p^dag A) of an arbitrary d x d
// matrix in the displacement-operator basis.  Entries are stored row-major
// in p1 then p2 (index p1*d + p2).
struct CoefficientTable {
  GroupContext ctx;
  Vector values;  // length d^2

  Complex& at(const GroupIndex& p) { return values(p.p1 * ctx.d + p.p2); }
  Complex at(const GroupIndex& p) const { return values(p.p1 * ctx.d + p.p2); }
};

CoefficientTable expand(const Matrix& a, const GroupContext& ctx);
Matrix reconstruct(const CoefficientTable& table);

// Hermiticity in coefficient space: A_{pbar} = s_{-p} conj(A_p) for all p.
// Returns the largest violation.
double hermiticity_residual(const CoefficientTable& table);

// Coefficient table of the product of 2 or 3 operators, computed entirely in
// coefficient space via the convolution sums with sign and tau factors.
CoefficientTable convolve_coefficients(std::span<const CoefficientTable> tables);

// Tr of a product of 2 or 3 operators from coefficient tables alone.  When
// every input satisfies the Hermiticity criterion the Hermitian-form sums
// are used instead of the generic ones.
Complex trace_product(std::span<const CoefficientTable> tables);

}  // namespace sipovm
