#include "sipovm/wh_covariant.hpp"

#include <cmath>
#include <stdexcept>

namespace sipovm {

namespace {

bool lex_less(const GroupIndex& a, const GroupIndex& b) {
  return a.p1 != b.p1 ? a.p1 < b.p1 : a.p2 < b.p2;
}

double wrap_angle(double theta) {
  theta = std::fmod(theta, 2.0 * M_PI);
  if (theta < 0) theta += 2.0 * M_PI;
  return theta;
}

}  // namespace

std::vector<GroupIndex> free_representatives(const GroupContext& ctx) {
  std::vector<GroupIndex> reps;
  for (int q1 = 0; q1 < ctx.d; ++q1)
    for (int q2 = 0; q2 < ctx.d; ++q2) {
      const GroupIndex q{q1, q2};
      if (q.is_zero()) continue;
      const GroupIndex qbar = index_neg(q, ctx);
      if (q == qbar) continue;
      if (lex_less(q, qbar)) reps.push_back(q);
    }
  return reps;
}

std::vector<GroupIndex> self_paired_indices(const GroupContext& ctx) {
  std::vector<GroupIndex> out;
  for (int q1 = 0; q1 < ctx.d; ++q1)
    for (int q2 = 0; q2 < ctx.d; ++q2) {
      const GroupIndex q{q1, q2};
      if (!q.is_zero() && index_neg(q, ctx) == q) out.push_back(q);
    }
  return out;
}

PhaseVector make_phase_vector(const std::vector<PhaseAssignment>& assignment,
                              const GroupContext& ctx) {
  const int d = ctx.d;
  std::vector<bool> given(d * d, false);
  PhaseVector phi{ctx, std::vector<double>(d * d, 0.0)};
  for (const auto& entry : assignment) {
    const int idx = entry.q.p1 * d + entry.q.p2;
    if (entry.q.is_zero() || given[idx])
      throw std::invalid_argument("make_phase_vector: invalid or duplicate index");
    given[idx] = true;
    phi.theta[idx] = entry.theta;
  }

  for (const GroupIndex& q : self_paired_indices(ctx)) {
    const int idx = q.p1 * d + q.p2;
    if (!given[idx])
      throw std::invalid_argument("make_phase_vector: missing self-paired angle");
    const double s = sign_factor(-q.p1, -q.p2, ctx);
    const Complex lhs = std::exp(Complex(0.0, 2.0 * phi.theta[idx]));
    if (std::abs(lhs - Complex(s)) > 1e-9)
      throw std::invalid_argument(
          "make_phase_vector: self-paired angle violates exp(2i theta) = s_{-q}");
  }

  for (const GroupIndex& q : free_representatives(ctx)) {
    const int idx = q.p1 * d + q.p2;
    if (!given[idx])
      throw std::invalid_argument("make_phase_vector: missing representative angle");
    const GroupIndex qbar = index_neg(q, ctx);
    const int idx_bar = qbar.p1 * d + qbar.p2;
    if (given[idx_bar])
      throw std::invalid_argument("make_phase_vector: both members of a pair assigned");
    const double s = sign_factor(-q.p1, -q.p2, ctx);
    // exp(i theta_qbar) = s_{-q} exp(-i theta_q)
    phi.theta[idx_bar] = wrap_angle(s > 0 ? -phi.theta[idx] : M_PI - phi.theta[idx]);
  }
  return phi;
}

PhaseVector constant_phase_vector(double angle, const GroupContext& ctx) {
  const int d = ctx.d;
  PhaseVector phi{ctx, std::vector<double>(d * d, 0.0)};
  for (int i = 1; i < d * d; ++i) phi.theta[i] = angle;
  phi.theta[0] = 0.0;
  if (pairing_residual(phi) > 1e-9)
    throw std::invalid_argument(
        "constant_phase_vector: uniform angle violates the pairing constraint");
  return phi;
}

double pairing_residual(const PhaseVector& phi) {
  const GroupContext& ctx = phi.ctx;
  double worst = 0.0;
  for (int q1 = 0; q1 < ctx.d; ++q1)
    for (int q2 = 0; q2 < ctx.d; ++q2) {
      const GroupIndex q{q1, q2};
      if (q.is_zero()) continue;
      const GroupIndex qbar = index_neg(q, ctx);
      const double s = sign_factor(-q1, -q2, ctx);
      const Complex lhs = std::exp(Complex(0.0, phi.at(qbar)));
      const Complex rhs = s * std::exp(Complex(0.0, -phi.at(q)));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

PhaseVector random_phase_vector(const GroupContext& ctx, Rng& rng) {
  std::vector<PhaseAssignment> assignment;
  for (const GroupIndex& q : free_representatives(ctx))
    assignment.push_back({q, 2.0 * M_PI * rng.uniform()});
  for (const GroupIndex& q : self_paired_indices(ctx)) {
    const double s = sign_factor(-q.p1, -q.p2, ctx);
    const double base = s > 0 ? 0.0 : M_PI / 2.0;
    const double branch = (rng.next_u64() & 1) ? M_PI : 0.0;
    assignment.push_back({q, base + branch});
  }
  return make_phase_vector(assignment, ctx);
}

BlochElement generating_vector(const PhaseVector& phi) {
  const GroupContext& ctx = phi.ctx;
  const int d = ctx.d;
  if (pairing_residual(phi) > 1e-8)
    throw std::invalid_argument("generating_vector: phases violate the pairing constraint");
  Matrix b = Matrix::Zero(d, d);
  for (int q1 = 0; q1 < d; ++q1)
    for (int q2 = 0; q2 < d; ++q2) {
      const GroupIndex q{q1, q2};
      if (q.is_zero()) continue;
      b += std::exp(Complex(0.0, phi.at(q))) * displacement(q, ctx);
    }
  b /= std::sqrt(d + 1.0);
  // enforce exact Hermiticity against phase roundoff
  b = 0.5 * (b + b.adjoint());
  return {b, ctx};
}

OrbitCheck orbit_and_check(const BlochElement& generator) {
  const GroupContext& ctx = generator.ctx;
  const int d = ctx.d;
  OrbitCheck result;
  result.members.reserve(d * d);
  const double target = -1.0 / (d * d - 1.0);
  bool ok = true;
  for (int p1 = 0; p1 < d; ++p1)
    for (int p2 = 0; p2 < d; ++p2) {
      const Matrix dp = displacement({p1, p2}, ctx);
      result.members.push_back(dp * generator.matrix * dp.adjoint());
      if (p1 == 0 && p2 == 0) continue;
      const double inner = bloch_inner(generator, {result.members.back(), ctx});
      const double dev = std::abs(inner - target);
      result.max_deviation = std::max(result.max_deviation, dev);
      if (dev > 1e-10) ok = false;
    }
  result.is_generating_simplex = ok;
  return result;
}

CovariantPovm covariant_si_povm(const PhaseVector& phi) {
  const BlochElement b = generating_vector(phi);
  const GroupContext& ctx = b.ctx;
  const int d = ctx.d;
  // The spectrum is conjugation-invariant, so one eigensolve covers the
  // whole orbit.
  const double kappa = 1.0 / eigen_extremes(b).m_minus;
  const OrbitCheck orbit = orbit_and_check(b);
  Povm povm{{}, ctx};
  povm.elements.reserve(d * d);
  for (const Matrix& member : orbit.members)
    povm.elements.push_back((Matrix::Identity(d, d) + kappa * member) /
                            static_cast<double>(d * d));
  return {std::move(povm), kappa};
}

}  // namespace sipovm
