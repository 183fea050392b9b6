#pragma once

#include <cstdint>
#include <vector>

#include "sipovm/bloch.hpp"
#include "sipovm/wh_group.hpp"

namespace sipovm {

struct Povm {
  std::vector<Matrix> elements;
  GroupContext ctx;
};

// Certificate for the symmetric informationally complete structure theorem:
// a POVM is SI iff n = d^2 and its Bloch vectors form a regular simplex of
// common norm kappa in (0,1].  alpha/beta are fitted from the pairwise trace
// table Tr(E_r E_s) = alpha + beta delta_rs rather than assumed.
struct SiReport {
  int n = 0;
  bool is_povm = false;
  bool is_symmetric = false;
  double alpha = 0.0;
  double beta = 0.0;
  double kappa = 0.0;
  int gram_rank = 0;
  bool is_informationally_complete = false;
  bool is_rank_one_sic = false;
  double max_residual = 0.0;  // worst deviation from the fitted alpha + beta delta
};

SiReport verify_si(const Povm& povm);

// d^2-element SI-POVM from a seeded random regular simplex on the outer
// sphere, shrunk into the Bloch body.  Deterministic in (d, seed).
Povm random_si_povm(int d, std::uint64_t seed);

std::vector<double> probabilities(const Povm& povm, const Matrix& rho);

struct Reconstruction {
  Matrix rho;              // raw linear inversion; Hermitian, trace 1
  double min_eigenvalue;   // smallest eigenvalue of rho
  bool psd_warning;        // true if rho leaves the state space
};

// Least-squares inversion of Tr(E_r rho) = p_r over trace-1 Hermitian
// matrices.  Throws if the POVM is not informationally complete.
Reconstruction reconstruct_state(const Povm& povm, const std::vector<double>& probs);

struct BasisFamily {
  std::vector<std::vector<Vector>> bases;
};

struct MubReport {
  bool is_mub = false;
  double max_deviation = 0.0;
};

// Checks |<psi^r_a | psi^s_b>| = 1/sqrt(d) across bases, cross-checked
// against the Bloch-orthogonality form; reports the larger deviation.
MubReport verify_mub(const BasisFamily& family);

}  // namespace sipovm
