#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "sipovm/povm.hpp"
#include "sipovm/wh_covariant.hpp"
#include "sipovm/wigner.hpp"
#include "test_util.hpp"

using namespace sipovm;
using test::max_abs;

namespace {

Povm d2_wh_sic() {
  GroupContext ctx(2);
  return covariant_si_povm(constant_phase_vector(0.0, ctx)).povm;
}

}  // namespace

TEST_CASE("verify_si certifies the d=3 Wigner POVM") {
  const GroupContext ctx(3);
  const SiReport report = verify_si(wigner_povm(ctx));
  CHECK(report.n == 9);
  CHECK(report.is_povm);
  CHECK(report.is_symmetric);
  CHECK(report.is_informationally_complete);
  CHECK(report.kappa == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.gram_rank == 8);
  CHECK_FALSE(report.is_rank_one_sic);
}

TEST_CASE("verify_si on the d=2 WH SIC recovers alpha, beta, kappa") {
  const Povm sic = d2_wh_sic();
  const SiReport report = verify_si(sic);
  CHECK(report.is_povm);
  CHECK(report.is_symmetric);
  CHECK(report.is_rank_one_sic);
  CHECK(report.kappa == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report.alpha == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(report.beta == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  // oracle: direct pairwise traces; projector overlaps are 1/(d+1) off the
  // diagonal and 1 on it, so Tr(E_r E_s) is 1/12 resp. 1/4 at d=2
  for (std::size_t r = 0; r < sic.elements.size(); ++r)
    for (std::size_t s = 0; s < sic.elements.size(); ++s) {
      const double tr = (sic.elements[r] * sic.elements[s]).trace().real();
      const double expected = (r == s) ? 0.25 : 1.0 / 12.0;
      CHECK(std::abs(tr - expected) < 1e-12);
    }
}

TEST_CASE("uniform POVM is symmetric but not informationally complete") {
  const GroupContext ctx(3);
  Povm uniform{{}, ctx};
  for (int k = 0; k < 9; ++k)
    uniform.elements.push_back(Matrix::Identity(3, 3) / 9.0);
  const SiReport report = verify_si(uniform);
  CHECK(report.is_povm);
  CHECK(report.is_symmetric);
  CHECK_FALSE(report.is_informationally_complete);
  CHECK(report.kappa == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("random SI-POVMs certify") {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL}) {
    const Povm povm2 = random_si_povm(2, seed);
    const SiReport report2 = verify_si(povm2);
    CHECK(report2.is_povm);
    CHECK(report2.is_symmetric);
    CHECK(report2.is_informationally_complete);
    CHECK(report2.kappa == doctest::Approx(1.0).epsilon(1e-9));
  }

  const SiReport report3 = verify_si(random_si_povm(3, 42));
  CHECK(report3.n == 9);
  CHECK(report3.is_symmetric);
  CHECK(report3.is_informationally_complete);
  CHECK(report3.kappa >= 0.5 - 1e-12);

  // determinism contract
  const Povm a = random_si_povm(4, 7);
  const Povm b = random_si_povm(4, 7);
  for (std::size_t k = 0; k < a.elements.size(); ++k)
    CHECK(max_abs(a.elements[k] - b.elements[k]) == 0.0);
}

TEST_CASE("accepted SI-POVMs have vanishing Bloch sum and flat Gram spectrum") {
  for (int d : {2, 3, 4}) {
    const Povm povm = random_si_povm(d, 3);
    const SiReport report = verify_si(povm);
    REQUIRE(report.is_symmetric);

    Matrix bloch_sum = Matrix::Zero(d, d);
    Eigen::MatrixXd gram(d * d, d * d);
    std::vector<Matrix> blochs;
    for (const Matrix& e : povm.elements) {
      const Matrix b = static_cast<double>(d) * d * d * e / d - Matrix::Identity(d, d);
      blochs.push_back(b);
      bloch_sum += b;
    }
    CHECK(max_abs(bloch_sum) < 1e-9);

    const double denom = d * (d - 1.0);
    for (int r = 0; r < d * d; ++r)
      for (int s = 0; s < d * d; ++s)
        gram(r, s) = (blochs[r] * blochs[s]).trace().real() / denom;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    const auto evals = solver.eigenvalues();
    const double kappa_sq = report.kappa * report.kappa;
    const double expected = kappa_sq * d * d / (d * d - 1.0);
    CHECK(std::abs(evals(0)) < 1e-9);
    for (int k = 1; k < d * d; ++k) CHECK(std::abs(evals(k) - expected) < 1e-9);

    for (const Matrix& e : povm.elements)
      CHECK(std::abs(e.trace().real() - 1.0 / d) < 1e-12);
  }
}

TEST_CASE("rank-one SIC flag matches the element spectra") {
  const Povm sic = d2_wh_sic();
  REQUIRE(verify_si(sic).is_rank_one_sic);
  for (const Matrix& e : sic.elements) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(e);
    const auto evals = solver.eigenvalues();
    CHECK(std::abs(evals(1) - 0.5) < 1e-9);
    for (int k = 0; k + 1 < 2; ++k) CHECK(std::abs(evals(k)) < 1e-9);
  }
  CHECK_FALSE(verify_si(wigner_povm(GroupContext(3))).is_rank_one_sic);
}

TEST_CASE("probabilities") {
  const Povm sic = d2_wh_sic();
  const auto uniform = probabilities(sic, Matrix::Identity(2, 2) / 2.0);
  for (double p : uniform) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));

  // rho = the element-0 projector: p_0 = 1/2, others 1/6
  const Matrix p0 = 2.0 * sic.elements[0];
  const auto probs = probabilities(sic, p0);
  CHECK(probs[0] == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t k = 1; k < probs.size(); ++k)
    CHECK(probs[k] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  // Wigner cross-check at d=3
  const GroupContext d3(3);
  Matrix rho0 = Matrix::Zero(3, 3);
  rho0(0, 0) = 1.0;
  const auto wp = probabilities(wigner_povm(d3), rho0);
  const WignerFunction w = wigner_from_state(rho0, d3);
  for (int k = 0; k < 9; ++k)
    CHECK(std::abs(4.0 * wp[static_cast<std::size_t>(k)] - 1.0 / 3.0 - w.values(k)) <
          1e-12);
}

TEST_CASE("state reconstruction") {
  const GroupContext d3(3);
  const Povm wig = wigner_povm(d3);
  Rng rng(31);
  const Matrix rho = random_density(d3, rng);
  const Reconstruction rec = reconstruct_state(wig, probabilities(wig, rho));
  CHECK(max_abs(rec.rho - rho) < 1e-10);
  CHECK_FALSE(rec.psd_warning);

  const Povm rand_povm = random_si_povm(3, 12);
  const std::vector<double> flat(9, 1.0 / 9.0);
  const Reconstruction max_mixed = reconstruct_state(rand_povm, flat);
  CHECK(max_abs(max_mixed.rho - Matrix::Identity(3, 3) / 3.0) < 1e-10);

  Povm non_ic{{}, d3};
  for (int k = 0; k < 9; ++k)
    non_ic.elements.push_back(Matrix::Identity(3, 3) / 9.0);
  CHECK_THROWS_AS(reconstruct_state(non_ic, flat), std::invalid_argument);
}

TEST_CASE("MUB verification") {
  {
    // eigenbases of the three Pauli matrices
    const double s = 1.0 / std::sqrt(2.0);
    BasisFamily family;
    family.bases.push_back({Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}});
    family.bases.push_back({Vector{{s, s}}, Vector{{s, -s}}});
    family.bases.push_back(
        {Vector{{s, Complex(0.0, 1.0) * s}}, Vector{{s, Complex(0.0, -1.0) * s}}});
    const MubReport report = verify_mub(family);
    CHECK(report.is_mub);
    CHECK(report.max_deviation < 1e-12);
  }

  {
    BasisFamily family;
    family.bases.push_back({Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}});
    family.bases.push_back({Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}});
    CHECK_FALSE(verify_mub(family).is_mub);
  }

  {
    // standard basis and Fourier basis at d = 3
    BasisFamily family;
    std::vector<Vector> standard, fourier;
    const Complex omega = std::exp(Complex(0.0, 2.0 * M_PI / 3.0));
    for (int a = 0; a < 3; ++a) {
      Vector e = Vector::Zero(3);
      e(a) = 1.0;
      standard.push_back(e);
      Vector f(3);
      for (int r = 0; r < 3; ++r) f(r) = std::pow(omega, r * a) / std::sqrt(3.0);
      fourier.push_back(f);
    }
    family.bases = {standard, fourier};
    CHECK(verify_mub(family).is_mub);
  }

  {
    // non-orthonormal input is rejected
    BasisFamily family;
    family.bases.push_back({Vector{{1.0, 0.0}}, Vector{{1.0, 0.0}}});
    CHECK_THROWS_AS(verify_mub(family), std::invalid_argument);
  }
}
