#include "sipovm/wigner.hpp"

#include <cmath>
#include <stdexcept>

namespace sipovm {

namespace {

void require_odd(const GroupContext& ctx, const char* op) {
  if (!ctx.odd())
    throw std::invalid_argument(std::string(op) + ": defined only for odd d");
}

Matrix translated_parity(const GroupIndex& p, const Matrix& u, const GroupContext& ctx) {
  const Matrix dp = displacement(p, ctx);
  return dp * u * dp.adjoint();
}

}  // namespace

Matrix parity_operator(const GroupContext& ctx) {
  require_odd(ctx, "parity_operator");
  const int d = ctx.d;
  Matrix u = Matrix::Zero(d, d);
  for (int q1 = 0; q1 < d; ++q1)
    for (int q2 = 0; q2 < d; ++q2) u += displacement({q1, q2}, ctx);
  u /= static_cast<double>(d);
  return 0.5 * (u + u.adjoint());
}

Povm wigner_povm(const GroupContext& ctx) {
  require_odd(ctx, "wigner_povm");
  const int d = ctx.d;
  const Matrix u = parity_operator(ctx);
  const double root = std::sqrt(d + 1.0);
  // U = (1/d)(1 + sqrt(d+1) B), so E_p = (1/d^2)(1 + (1/sqrt(d+1)) B_p)
  // rearranges to (1/d^2)((1 - 1/(d+1)) + (d/(d+1)) U_p).
  Povm povm{{}, ctx};
  povm.elements.reserve(d * d);
  for (int p1 = 0; p1 < d; ++p1)
    for (int p2 = 0; p2 < d; ++p2) {
      const Matrix b_p = (static_cast<double>(d) * translated_parity({p1, p2}, u, ctx) -
                          Matrix::Identity(d, d)) /
                         root;
      povm.elements.push_back((Matrix::Identity(d, d) + b_p / root) /
                              static_cast<double>(d * d));
    }
  return povm;
}

WignerFunction wigner_from_state(const Matrix& rho, const GroupContext& ctx) {
  require_odd(ctx, "wigner_from_state");
  const int d = ctx.d;
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("wigner_from_state: dimension mismatch");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-9)
    throw std::invalid_argument("wigner_from_state: trace is not 1");

  const Matrix u = parity_operator(ctx);
  WignerFunction w{ctx, Eigen::VectorXd(d * d)};
  for (int p1 = 0; p1 < d; ++p1)
    for (int p2 = 0; p2 < d; ++p2) {
      const Complex value =
          (translated_parity({p1, p2}, u, ctx) * rho).trace() / static_cast<double>(d);
      if (std::abs(value.imag()) > 1e-11)
        throw std::runtime_error("wigner_from_state: non-real Wigner value");
      w.values(p1 * d + p2) = value.real();
    }
  return w;
}

WignerFunction wigner_from_probabilities(const std::vector<double>& probs,
                                         const GroupContext& ctx) {
  require_odd(ctx, "wigner_from_probabilities");
  const int d = ctx.d;
  if (static_cast<int>(probs.size()) != d * d)
    throw std::invalid_argument("wigner_from_probabilities: need d^2 probabilities");
  double sum = 0.0;
  for (double p : probs) sum += p;
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("wigner_from_probabilities: probabilities do not sum to 1");
  WignerFunction w{ctx, Eigen::VectorXd(d * d)};
  for (int i = 0; i < d * d; ++i) w.values(i) = (d + 1.0) * probs[i] - 1.0 / d;
  return w;
}

Matrix state_from_wigner(const WignerFunction& w) {
  const GroupContext& ctx = w.ctx;
  require_odd(ctx, "state_from_wigner");
  const int d = ctx.d;
  Matrix rho = Matrix::Zero(d, d);
  for (int q1 = 0; q1 < d; ++q1)
    for (int q2 = 0; q2 < d; ++q2) {
      Complex coeff = 0.0;
      for (int p1 = 0; p1 < d; ++p1)
        for (int p2 = 0; p2 < d; ++p2)
          coeff += ctx.tau_pow(2 * symplectic(GroupIndex{p1, p2}, GroupIndex{q1, q2})) *
                   w.values(p1 * d + p2);
      rho += (coeff / static_cast<double>(d)) * displacement({q1, q2}, ctx);
    }
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace sipovm
