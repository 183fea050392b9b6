// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "sipovm/io.hpp"
#include "sipovm/sic_search.hpp"
#include "sipovm/wigner.hpp"

using namespace sipovm;

namespace {

int g_failures = 0;

void report(int criterion, const char* label, bool pass, const std::string& note = "") {
  std::printf("%s criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, label,
              note.empty() ? "" : " -- ", note.c_str());
  if (!pass) ++g_failures;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. WH algebra: composition, adjoint, order-d, orthogonality at 1e-12.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int d = 2; d <= 8; ++d) {
    const GroupContext ctx(d);
    Rng rng(1000 + static_cast<std::uint64_t>(d));
    const Matrix id = Matrix::Identity(d, d);
    for (int trial = 0; trial < 100; ++trial) {
      const GroupIndex p{static_cast<int>(rng.next_u64() % d),
                         static_cast<int>(rng.next_u64() % d)};
      const GroupIndex q{static_cast<int>(rng.next_u64() % d),
                         static_cast<int>(rng.next_u64() % d)};
      const Matrix dp = displacement(p, ctx);
      const Matrix dq = displacement(q, ctx);
      const double s = sign_factor(static_cast<long long>(p.p1) + q.p1,
                                   static_cast<long long>(p.p2) + q.p2, ctx);
      worst = std::max(worst, max_abs(dp * dq - s * ctx.tau_pow(symplectic(p, q)) *
                                                    displacement(index_add(p, q, ctx), ctx)));
      worst = std::max(worst, max_abs(dp.adjoint() - sign_factor(-p.p1, -p.p2, ctx) *
                                                         displacement(index_neg(p, ctx), ctx)));
      Matrix power = id;
      for (int k = 0; k < d; ++k) power = power * dp;
      worst = std::max(worst, max_abs(power - id));
      worst = std::max(worst,
                       std::abs((dp.adjoint() * dq).trace() - Complex(p == q ? d : 0)));
    }
  }
  const double elapsed = seconds_since(start);
  char note[128];
  std::snprintf(note, sizeof(note), "max residual %.2e, %.1f s", worst, elapsed);
  report(1, "WH algebra suite", worst <= 1e-12 && elapsed < 5.0, note);
}

// 2. Coefficient-space products and traces vs dense oracles, 1e-10 relative.
void criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int d = 2; d <= 5; ++d) {
    const GroupContext ctx(d);
    Rng rng(2000 + static_cast<std::uint64_t>(d));
    auto hermitian = [&] {
      Matrix g(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
      return Matrix(0.5 * (g + g.adjoint()));
    };
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix a = hermitian(), b = hermitian(), c = hermitian();
      const std::vector tables{expand(a, ctx), expand(b, ctx), expand(c, ctx)};
      const std::vector pair{tables[0], tables[1]};

      const auto prod2 = convolve_coefficients(pair);
      const auto oracle2 = expand(a * b, ctx);
      const double scale2 = std::max(1.0, oracle2.values.cwiseAbs().maxCoeff());
      worst = std::max(worst,
                       (prod2.values - oracle2.values).cwiseAbs().maxCoeff() / scale2);

      const auto prod3 = convolve_coefficients(tables);
      const auto oracle3 = expand(a * b * c, ctx);
      const double scale3 = std::max(1.0, oracle3.values.cwiseAbs().maxCoeff());
      worst = std::max(worst,
                       (prod3.values - oracle3.values).cwiseAbs().maxCoeff() / scale3);

      const Complex tr2 = (a * b).trace();
      worst = std::max(worst,
                       std::abs(trace_product(pair) - tr2) / std::max(1.0, std::abs(tr2)));
      const Complex tr3 = (a * b * c).trace();
      worst = std::max(
          worst, std::abs(trace_product(tables) - tr3) / std::max(1.0, std::abs(tr3)));
    }
  }
  const double elapsed = seconds_since(start);
  char note[128];
  std::snprintf(note, sizeof(note), "max relative residual %.2e, %.1f s", worst, elapsed);
  report(2, "coefficient products and traces vs dense oracles",
         worst <= 1e-10 && elapsed < 30.0, note);
}

// 3. Trace-cube classification agrees with the eigenvalue criterion.
void criterion_3() {
  bool pass = true;
  double worst_excess = 0.0;
  for (int d = 2; d <= 6; ++d) {
    const GroupContext ctx(d);
    Rng rng(3000 + static_cast<std::uint64_t>(d));
    const double bound = d * (d - 1.0) * (d - 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
      const BlochElement b = random_unit_bloch(ctx, rng);
      const auto cube = classify_by_trace_cube(b);
      worst_excess = std::max(worst_excess, std::abs(cube.value) - bound);
      const auto extremes = eigen_extremes(b);
      const bool eig_pure = std::abs(extremes.m_minus - 1.0) <= 1e-9;
      if (d == 2) {
        if (cube.verdict != PurityVerdict::PurePlus || !cube.pure_minus_also) pass = false;
      } else if (eig_pure != (cube.verdict == PurityVerdict::PurePlus)) {
        pass = false;
      }
    }
  }
  char note[128];
  std::snprintf(note, sizeof(note), "worst bound excess %.2e", worst_excess);
  report(3, "trace-cube vs eigenvalue purity criterion",
         pass && worst_excess <= 1e-9, note);
}

// 4. Wigner POVM reproduction for d in {3,5,7,9}.
void criterion_4() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string note;
  for (int d : {3, 5, 7, 9}) {
    const GroupContext ctx(d);
    const Povm povm = wigner_povm(ctx);
    const SiReport cert = verify_si(povm);
    if (std::abs(cert.kappa - 1.0 / std::sqrt(d + 1.0)) > 1e-12) {
      pass = false;
      note += "kappa mismatch at d=" + std::to_string(d) + "; ";
    }
    for (const Matrix& e : povm.elements) {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(e);
      // spectrum splits into zeros and values >= 1e-6; rank = (d+1)/2
      int rank = 0;
      bool gap_ok = true;
      for (int k = 0; k < d; ++k) {
        const double ev = solver.eigenvalues()(k);
        if (ev >= 1e-6) ++rank;
        else if (std::abs(ev) > 1e-9) gap_ok = false;
      }
      if (rank != (d + 1) / 2 || !gap_ok) {
        pass = false;
        note += "rank failure at d=" + std::to_string(d) + "; ";
        break;
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> parity(parity_operator(ctx));
    int plus = 0, minus = 0;
    for (int k = 0; k < d; ++k) {
      if (std::abs(parity.eigenvalues()(k) - 1.0) < 1e-9) ++plus;
      if (std::abs(parity.eigenvalues()(k) + 1.0) < 1e-9) ++minus;
    }
    if (plus != (d + 1) / 2 || minus != (d - 1) / 2) {
      pass = false;
      note += "parity multiplicities at d=" + std::to_string(d) + "; ";
    }
    Rng rng(4000 + static_cast<std::uint64_t>(d));
    const Matrix rho = random_density(ctx, rng);
    const auto probs = probabilities(povm, rho);
    const WignerFunction direct = wigner_from_state(rho, ctx);
    const WignerFunction rescaled = wigner_from_probabilities(probs, ctx);
    if ((rescaled.values - direct.values).cwiseAbs().maxCoeff() > 1e-12) {
      pass = false;
      note += "rescale identity at d=" + std::to_string(d) + "; ";
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) {
    pass = false;
    note += "over time budget; ";
  }
  char timing[64];
  std::snprintf(timing, sizeof(timing), "%.1f s", elapsed);
  report(4, "Wigner POVM reproduction", pass, note + timing);
}

// 5. Frame-potential SIC search for d in {2..6}.
void criterion_5() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string note;
  for (int d = 2; d <= 6; ++d) {
    SearchConfig config;
    config.dimension = d;
    config.method = SearchMethod::FramePotential;
    config.restarts = 50;
    config.seed = 5;
    config.tolerance = 1e-9;
    const SearchResult result = search(config);
    bool ok = result.fiducial.has_value() && result.residual <= 1e-9 && result.certified;
    if (ok) {
      const Povm sic = sic_from_fiducial(*result.fiducial, GroupContext(d));
      double overlap_dev = 0.0;
      for (std::size_t r = 0; r < sic.elements.size(); ++r)
        for (std::size_t s = 0; s < sic.elements.size(); ++s) {
          // projector overlaps: 1 on the diagonal, 1/(d+1) off it
          const double tr =
              d * d * (sic.elements[r] * sic.elements[s]).trace().real();
          const double expected = (r == s) ? 1.0 : 1.0 / (d + 1.0);
          overlap_dev = std::max(overlap_dev, std::abs(tr - expected));
        }
      if (overlap_dev >= 1e-6) ok = false;
    }
    if (!ok) {
      pass = false;
      note += "d=" + std::to_string(d) + " failed; ";
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 600.0) {
    pass = false;
    note += "over time budget; ";
  }
  char timing[64];
  std::snprintf(timing, sizeof(timing), "%.1f s", elapsed);
  report(5, "frame-potential SIC search d=2..6", pass, note + timing);
}

// 6. Phase-objective fixtures and bound.
void criterion_6() {
  bool pass = true;
  std::string note;

  {
    const GroupContext ctx(2);
    Rng rng(6000);
    for (int trial = 0; trial < 20; ++trial)
      if (std::abs(phase_objective(random_phase_vector(ctx, rng))) > 1e-10) {
        pass = false;
        note += "d=2 objective nonzero; ";
        break;
      }
  }

  {
    const GroupContext ctx(3);
    const PhaseVector pi_phases = constant_phase_vector(M_PI, ctx);
    if (std::abs(phase_objective(pi_phases) - 16.0) > 1e-10) {
      pass = false;
      note += "d=3 all-pi fixture off; ";
    }
    if (!verify_si(covariant_si_povm(pi_phases).povm).is_rank_one_sic) {
      pass = false;
      note += "d=3 all-pi not a SIC; ";
    }
  }

  double worst_excess = -1.0, worst_identity = 0.0;
  for (int d = 3; d <= 6; ++d) {
    const GroupContext ctx(d);
    Rng rng(6000 + static_cast<std::uint64_t>(d));
    const double bound = phase_objective_bound(d);
    const double scale = std::pow(d + 1.0, 1.5) / d;
    for (int trial = 0; trial < 1000; ++trial) {
      const PhaseVector phi = random_phase_vector(ctx, rng);
      const double value = phase_objective(phi);
      worst_excess = std::max(worst_excess, value - bound);
      const BlochElement b = generating_vector(phi);
      const double tr_cube = (b.matrix * b.matrix * b.matrix).trace().real();
      worst_identity = std::max(worst_identity, std::abs(value - scale * tr_cube));
    }
  }
  if (worst_excess > 1e-9) {
    pass = false;
    note += "bound exceeded; ";
  }
  if (worst_identity > 1e-10) {
    pass = false;
    note += "trace-cube identity violated; ";
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail), "worst excess %.2e, identity residual %.2e",
                worst_excess, worst_identity);
  report(6, "phase-objective fixtures and bound", pass, note + detail);
}

// 7. Random SI-POVM certification and Gram spectrum.
void criterion_7() {
  bool pass = true;
  std::string note;
  double worst_gram = 0.0;
  for (int d = 2; d <= 8; ++d) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Povm povm = random_si_povm(d, seed);
      const SiReport cert = verify_si(povm);
      if (!(cert.is_povm && cert.is_symmetric && cert.is_informationally_complete) ||
          cert.kappa < 1.0 / (d - 1.0) - 1e-12) {
        pass = false;
        note += "certify failure d=" + std::to_string(d) + " seed=" +
                std::to_string(seed) + "; ";
        continue;
      }
      const int n = d * d;
      std::vector<Matrix> blochs;
      for (const Matrix& e : povm.elements)
        blochs.push_back(static_cast<double>(n) * e - Matrix::Identity(d, d));
      Eigen::MatrixXd gram(n, n);
      const double denom = d * (d - 1.0);
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          gram(r, s) = (blochs[static_cast<std::size_t>(r)] *
                        blochs[static_cast<std::size_t>(s)])
                           .trace()
                           .real() /
                       denom;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
      const double expected = cert.kappa * cert.kappa * n / (n - 1.0);
      worst_gram = std::max(worst_gram, std::abs(solver.eigenvalues()(0)));
      for (int k = 1; k < n; ++k)
        worst_gram = std::max(worst_gram, std::abs(solver.eigenvalues()(k) - expected));
    }
  }
  if (worst_gram > 1e-9) {
    pass = false;
    note += "Gram spectrum off; ";
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "worst Gram deviation %.2e", worst_gram);
  report(7, "random SI-POVM certification", pass, note + detail);
}

// 8. Reconstruction and Wigner round trips.
void criterion_8() {
  bool pass = true;
  std::string note;
  double worst_rec = 0.0, worst_wigner = 0.0;

  for (int d : {3, 5}) {
    const GroupContext ctx(d);
    Rng rng(8000 + static_cast<std::uint64_t>(d));
    const Povm wig = wigner_povm(ctx);
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix rho = random_density(ctx, rng);
      worst_rec = std::max(
          worst_rec, max_abs(reconstruct_state(wig, probabilities(wig, rho)).rho - rho));
      worst_wigner = std::max(
          worst_wigner, max_abs(state_from_wigner(wigner_from_state(rho, ctx)) - rho));
    }
  }

  for (int d = 2; d <= 5; ++d) {
    const GroupContext ctx(d);
    Rng rng(8100 + static_cast<std::uint64_t>(d));
    const Povm povm = random_si_povm(d, 8);
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix rho = random_density(ctx, rng);
      worst_rec = std::max(
          worst_rec,
          max_abs(reconstruct_state(povm, probabilities(povm, rho)).rho - rho));
    }
  }

  if (worst_rec > 1e-10) {
    pass = false;
    note += "reconstruction residual too large; ";
  }
  if (worst_wigner > 1e-12) {
    pass = false;
    note += "Wigner round trip too large; ";
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "reconstruction %.2e, Wigner %.2e", worst_rec,
                worst_wigner);
  report(8, "reconstruction round trips", pass, note + detail);
}

// 9. CLI determinism: byte-identical JSON apart from created_at.
std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string normalized(const std::filesystem::path& path) {
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  if (j.contains("metadata")) j["metadata"].erase("created_at");
  return j.dump();
}

void criterion_9() {
  bool pass = true;
  std::string note;
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "sipovm_acceptance";
  std::filesystem::create_directories(dir);
  const std::string cli = SIPOVM_CLI_PATH;

  const std::vector<std::pair<std::string, std::string>> cases = {
      {"random-si --dim 3 --seed 42", "r"},
      {"wigner --dim 5", "w"},
      {"covariant --dim 3 --phases pi", "c"},
      {"search --dim 2 --method frame --restarts 10 --seed 7", "s"},
  };
  for (const auto& [args, tag] : cases) {
    const auto out1 = dir / (tag + "1.json");
    const auto out2 = dir / (tag + "2.json");
    const std::string base = "\"" + cli + "\" " + args + " --out ";
    const int rc1 =
        std::system((base + "\"" + out1.string() + "\" > /dev/null").c_str());
    const int rc2 =
        std::system((base + "\"" + out2.string() + "\" > /dev/null").c_str());
    if (rc1 != 0 || rc2 != 0) {
      pass = false;
      note += tag + ": nonzero exit; ";
      continue;
    }
    if (normalized(out1) != normalized(out2)) {
      pass = false;
      note += tag + ": outputs differ; ";
    }
  }
  report(9, "CLI determinism", pass, note);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
