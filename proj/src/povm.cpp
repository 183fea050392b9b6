#include "sipovm/povm.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sipovm {

namespace {

constexpr double kPsdTol = 1e-10;

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace

SiReport verify_si(const Povm& povm) {
  const int d = povm.ctx.d;
  const int n = static_cast<int>(povm.elements.size());
  SiReport report;
  report.n = n;
  if (n == 0) return report;

  Matrix sum = Matrix::Zero(d, d);
  bool well_formed = true;
  for (const auto& e : povm.elements) {
    if (e.rows() != d || e.cols() != d) return report;
    if (e.cwiseAbs().maxCoeff() < 1e-12) well_formed = false;
    if (min_eigenvalue(e) < -kPsdTol) well_formed = false;
    sum += e;
  }
  const double sum_residual = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  report.is_povm = well_formed && sum_residual <= 1e-9 * d;

  // Pairwise trace table and the fitted alpha + beta delta model.
  Eigen::MatrixXd traces(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = r; s < n; ++s) {
      const double t = (povm.elements[r] * povm.elements[s]).trace().real();
      traces(r, s) = t;
      traces(s, r) = t;
    }
  double diag_mean = 0.0, off_mean = 0.0;
  for (int r = 0; r < n; ++r) diag_mean += traces(r, r);
  diag_mean /= n;
  if (n > 1) {
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s)
        if (r != s) off_mean += traces(r, s);
    off_mean /= static_cast<double>(n) * (n - 1);
  }
  report.alpha = off_mean;
  report.beta = diag_mean - off_mean;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      const double model = report.alpha + (r == s ? report.beta : 0.0);
      report.max_residual = std::max(report.max_residual, std::abs(traces(r, s) - model));
    }
  report.is_symmetric = report.is_povm && report.max_residual <= 1e-9 * d;

  // Bloch Gram matrix: B_r = (d/t_r) E_r - 1.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  std::vector<Matrix> bloch;
  bloch.reserve(n);
  for (const auto& e : povm.elements) {
    const double t = e.trace().real();
    if (std::abs(t) < 1e-12) {
      bloch.push_back(Matrix::Zero(d, d));
      continue;
    }
    bloch.push_back((d / t) * e - Matrix::Identity(d, d));
  }
  for (int r = 0; r < n; ++r)
    for (int s = r; s < n; ++s) {
      const double g = (bloch[r] * bloch[s]).trace().real() / (d * (d - 1.0));
      gram(r, s) = g;
      gram(s, r) = g;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram_solver(gram, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd gram_ev = gram_solver.eigenvalues();
  const double rank_tol = 1e-8 * std::max(1.0, gram_ev.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i)
    if (gram_ev(i) > rank_tol) ++report.gram_rank;

  double kappa_sq = 0.0;
  for (int r = 0; r < n; ++r) kappa_sq += gram(r, r);
  kappa_sq /= n;
  report.kappa = std::sqrt(std::max(0.0, kappa_sq));

  report.is_informationally_complete =
      report.is_povm && n == d * d && report.gram_rank == d * d - 1;

  if (report.is_symmetric && report.is_informationally_complete &&
      std::abs(report.kappa - 1.0) <= 1e-6) {
    // Rank-one SIC: the rescaled elements d E_r must be projectors with the
    // equiangular overlaps 1/(d+1).
    bool sic = true;
    for (int r = 0; r < n && sic; ++r)
      for (int s = 0; s < n && sic; ++s) {
        const double overlap = d * d * traces(r, s);
        const double target = (r == s) ? 1.0 : 1.0 / (d + 1.0);
        if (std::abs(overlap - target) > 1e-6) sic = false;
      }
    report.is_rank_one_sic = sic;
  }
  return report;
}

Povm random_si_povm(int d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random_si_povm: dimension must be >= 2");
  GroupContext ctx(d);
  const int n = d * d;
  const int dim = n - 1;

  // Canonical regular simplex in R^{n-1}: project the standard basis of R^n
  // onto the complement of the all-ones direction using the Helmert rows.
  Eigen::MatrixXd vertices(n, dim);
  for (int i = 1; i < n; ++i) {
    const double norm = 1.0 / std::sqrt(i * (i + 1.0));
    for (int r = 0; r < n; ++r) {
      double h = 0.0;
      if (r < i) h = norm;
      else if (r == i) h = -i * norm;
      vertices(r, i - 1) = h * std::sqrt(n / (n - 1.0));
    }
  }

  // Haar-random rotation: QR of a seeded Gaussian matrix with the sign of
  // the R diagonal fixed.
  Rng rng(seed);
  Eigen::MatrixXd gauss(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) gauss(r, c) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r_factor = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c)
    if (r_factor(c, c) < 0) q.col(c) *= -1.0;

  const auto basis = gell_mann_basis(ctx);
  std::vector<BlochElement> simplex;
  simplex.reserve(n);
  for (int r = 0; r < n; ++r) {
    const Eigen::VectorXd coords = q * vertices.row(r).transpose();
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < dim; ++i) m += coords(i) * basis[i];
    simplex.push_back({m, ctx});
  }

  const double kappa = shrink_factor(simplex);
  Povm povm{{}, ctx};
  povm.elements.reserve(n);
  for (const auto& b : simplex)
    povm.elements.push_back((Matrix::Identity(d, d) + kappa * b.matrix) /
                            static_cast<double>(n));
  return povm;
}

std::vector<double> probabilities(const Povm& povm, const Matrix& rho) {
  const int d = povm.ctx.d;
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("probabilities: dimension mismatch");
  std::vector<double> probs;
  probs.reserve(povm.elements.size());
  for (const auto& e : povm.elements)
    probs.push_back((e * rho).trace().real());
  return probs;
}

Reconstruction reconstruct_state(const Povm& povm, const std::vector<double>& probs) {
  const int d = povm.ctx.d;
  const int n = static_cast<int>(povm.elements.size());
  if (static_cast<int>(probs.size()) != n)
    throw std::invalid_argument("reconstruct_state: probability count mismatch");

  // rho = 1/d + sum_k x_k G_k over the Gell-Mann chart; the constraints
  // Tr(E_r rho) = p_r are linear in x.
  const auto basis = gell_mann_basis(povm.ctx);
  const int dim = d * d - 1;
  Eigen::MatrixXd design(n, dim);
  Eigen::VectorXd rhs(n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < dim; ++k)
      design(r, k) = (povm.elements[r] * basis[k]).trace().real();
    rhs(r) = probs[r] - povm.elements[r].trace().real() / d;
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8 * sv(0)) ++rank;
  if (rank < dim)
    throw std::invalid_argument("reconstruct_state: POVM is not informationally complete");

  const Eigen::VectorXd x = svd.solve(rhs);
  Matrix rho = Matrix::Identity(d, d) / static_cast<double>(d);
  for (int k = 0; k < dim; ++k) rho += x(k) * basis[k];

  Reconstruction result{rho, min_eigenvalue(rho), false};
  result.psd_warning = result.min_eigenvalue < -1e-8;
  return result;
}

MubReport verify_mub(const BasisFamily& family) {
  if (family.bases.size() < 2)
    throw std::invalid_argument("verify_mub: need at least two bases");
  const int d = static_cast<int>(family.bases[0].size());
  for (const auto& basis : family.bases) {
    if (static_cast<int>(basis.size()) != d)
      throw std::invalid_argument("verify_mub: bases have mismatched sizes");
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const Complex ov = basis[a].adjoint() * basis[b];
        const double target = (a == b) ? 1.0 : 0.0;
        if (std::abs(std::abs(ov) - target) > 1e-9)
          throw std::invalid_argument("verify_mub: basis is not orthonormal");
      }
  }

  const double target = 1.0 / std::sqrt(static_cast<double>(d));
  MubReport report;
  report.is_mub = true;
  for (std::size_t r = 0; r < family.bases.size(); ++r)
    for (std::size_t s = r + 1; s < family.bases.size(); ++s)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          const double ov = std::abs(Complex(family.bases[r][a].adjoint() *
                                             family.bases[s][b]));
          const double dev = std::abs(ov - target);
          // Equivalent Bloch-simplex form: <B^r_a, B^s_b> = 0 with
          // B = d P - 1, i.e. d^2 |ov|^2 - d = 0.
          const double bloch_dev =
              std::abs(d * d * ov * ov - d) / (d * (d - 1.0));
          report.max_deviation = std::max({report.max_deviation, dev, bloch_dev});
          if (dev > 1e-8) report.is_mub = false;
        }
  return report;
}

}  // namespace sipovm
