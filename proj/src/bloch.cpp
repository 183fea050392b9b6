#include "sipovm/bloch.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace sipovm {

namespace {

constexpr double kHermTol = 1e-9;

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  // Symmetrize first so accumulated asymmetry noise cannot leak into the
  // solver.
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void require_unit_norm(const BlochElement& b, const char* op) {
  const double n = bloch_norm(b);
  if (std::abs(n - 1.0) > 1e-6)
    throw std::invalid_argument(std::string(op) + ": element is not on the outer sphere");
}

}  // namespace

BlochElement make_bloch(const Matrix& m, const GroupContext& ctx) {
  if (m.rows() != ctx.d || m.cols() != ctx.d)
    throw std::invalid_argument("make_bloch: dimension mismatch");
  if (std::abs(m.trace()) > kHermTol * ctx.d)
    throw std::invalid_argument("make_bloch: matrix is not traceless");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("make_bloch: matrix is not Hermitian");
  return {m, ctx};
}

double bloch_inner(const BlochElement& a, const BlochElement& b) {
  if (a.ctx.d != b.ctx.d)
    throw std::invalid_argument("bloch_inner: dimension mismatch");
  const int d = a.ctx.d;
  const Complex tr = (a.matrix * b.matrix).trace();
  return tr.real() / (d * (d - 1.0));
}

double bloch_norm(const BlochElement& b) {
  return std::sqrt(std::max(0.0, bloch_inner(b, b)));
}

EigenExtremes eigen_extremes(const BlochElement& b) {
  if (b.matrix.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("eigen_extremes: zero matrix");
  const Eigen::VectorXd ev = hermitian_eigenvalues(b.matrix);
  return {-ev(0), ev(ev.size() - 1)};
}

bool scaling_membership(const BlochElement& b, double x) {
  require_unit_norm(b, "scaling_membership");
  const EigenExtremes ex = eigen_extremes(b);
  const double tol = 1e-9;
  return x >= -1.0 / ex.m_plus - tol && x <= 1.0 / ex.m_minus + tol;
}

TraceCubeReport classify_by_trace_cube(const BlochElement& b) {
  require_unit_norm(b, "classify_by_trace_cube");
  const int d = b.ctx.d;
  const Complex tr = (b.matrix * b.matrix * b.matrix).trace();
  const double value = tr.real();
  const double bound = d * (d - 1.0) * (d - 2.0);
  const double tol = 1e-8 * d * d * d;

  TraceCubeReport report{value, PurityVerdict::Interior, false};
  if (d == 2) {
    // Both bounds are 0 and every unit-norm element is a pure-state Bloch
    // vector together with its negation.
    report.verdict = PurityVerdict::PurePlus;
    report.pure_minus_also = true;
  } else if (std::abs(value - bound) <= tol) {
    report.verdict = PurityVerdict::PurePlus;
  } else if (std::abs(value + bound) <= tol) {
    report.verdict = PurityVerdict::PureMinus;
  }
  return report;
}

Matrix density_from_bloch(const BlochElement& b) {
  const int d = b.ctx.d;
  const Eigen::VectorXd ev = hermitian_eigenvalues(b.matrix);
  if (ev(0) < -1.0 - 1e-9)
    throw std::invalid_argument("density_from_bloch: element is outside the Bloch body");
  return (Matrix::Identity(d, d) + b.matrix) / static_cast<double>(d);
}

BlochElement bloch_from_density(const Matrix& rho, const GroupContext& ctx) {
  const int d = ctx.d;
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("bloch_from_density: dimension mismatch");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-9)
    throw std::invalid_argument("bloch_from_density: trace is not 1");
  const Eigen::VectorXd ev = hermitian_eigenvalues(rho);
  if (ev(0) < -1e-9)
    throw std::invalid_argument("bloch_from_density: matrix is not positive semidefinite");
  return {static_cast<double>(d) * rho - Matrix::Identity(d, d), ctx};
}

double shrink_factor(const std::vector<BlochElement>& elements) {
  if (elements.empty())
    throw std::invalid_argument("shrink_factor: empty list");
  double kappa = std::numeric_limits<double>::infinity();
  for (const auto& b : elements) {
    require_unit_norm(b, "shrink_factor");
    kappa = std::min(kappa, 1.0 / eigen_extremes(b).m_minus);
  }
  return kappa;
}

std::vector<Matrix> gell_mann_basis(const GroupContext& ctx) {
  const int d = ctx.d;
  // <G,G> = 1 in the rescaled inner product means Tr(G^2) = d(d-1); the
  // conventional matrices have Tr = 2.
  const double scale = std::sqrt(d * (d - 1.0) / 2.0);
  std::vector<Matrix> basis;
  basis.reserve(d * d - 1);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.push_back(scale * sym);
      Matrix asym = Matrix::Zero(d, d);
      asym(j, k) = Complex(0.0, -1.0);
      asym(k, j) = Complex(0.0, 1.0);
      basis.push_back(scale * asym);
    }
  }
  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    for (int j = 0; j < l; ++j) diag(j, j) = 1.0;
    diag(l, l) = -static_cast<double>(l);
    basis.push_back(scale * std::sqrt(2.0 / (l * (l + 1.0))) * diag);
  }
  return basis;
}

BlochElement random_unit_bloch(const GroupContext& ctx, Rng& rng) {
  const auto basis = gell_mann_basis(ctx);
  Matrix m = Matrix::Zero(ctx.d, ctx.d);
  for (const auto& g : basis) m += rng.normal() * g;
  BlochElement b{m, ctx};
  const double n = bloch_norm(b);
  if (n == 0.0) return random_unit_bloch(ctx, rng);
  b.matrix /= n;
  return b;
}

Matrix random_density(const GroupContext& ctx, Rng& rng) {
  const int d = ctx.d;
  Matrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace sipovm
