#pragma once

#include <cstdint>
#include <optional>

#include "sipovm/povm.hpp"
#include "sipovm/wh_covariant.hpp"
#include "sipovm/wh_group.hpp"

namespace sipovm {

// Numerical search for SI(1)-POVM fiducials via either the frame potential
// sum_p (Tr(P_p P))^2 >= 2d/(d+1) (minimized) or the phase extremal sum
// sum s_{p+q} tau^{<p,q>} e^{i(theta_p + theta_q - theta_{p (+) q})}
// <= (d-1)(d-2)(d+1)^{3/2} (maximized).

struct Fiducial {
  Vector psi;  // unit norm, global phase canonicalized
};

// Normalizes and rotates the global phase so the first nonzero component is
// real positive.
Fiducial canonicalize_fiducial(const Vector& psi);

enum class SearchMethod { FramePotential, PhaseObjective };

struct SearchConfig {
  int dimension = 2;
  SearchMethod method = SearchMethod::FramePotential;
  int restarts = 10;
  int max_iterations = 2000;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
};

struct SearchResult {
  std::optional<Fiducial> fiducial;      // FramePotential mode
  std::optional<PhaseVector> phases;     // PhaseObjective mode
  double objective_value = 0.0;
  double residual = 0.0;                 // |objective - theoretical bound|
  bool certified = false;                // verify_si with the rank-one check
  int iterations_used = 0;
  std::uint64_t seed_used = 0;
  int best_restart = -1;
};

// sum_p |<psi| D_p |psi>|^4 over all d^2 indices.
double frame_potential(const Fiducial& psi, const GroupContext& ctx);
double frame_potential_bound(int d);  // 2d/(d+1)

// Real part of the triple phase sum; equals (d+1)^{3/2} Tr(B^3)/d for the
// generating vector of phi.
double phase_objective(const PhaseVector& phi);
double phase_objective_bound(int d);  // (d-1)(d-2)(d+1)^{3/2}

// Seeded multi-restart local optimization; deterministic in config.seed.
SearchResult search(const SearchConfig& config);

namespace detail {

// Objective/gradient pairs behind both search modes, exposed so tests can
// validate the analytic gradients against finite differences.
struct ObjectiveEval {
  double f;
  Eigen::VectorXd grad;
};

// Frame potential over the unnormalized chart z = (Re psi, Im psi).
ObjectiveEval frame_objective_eval(const Eigen::VectorXd& z, const GroupContext& ctx);

// Negated, rescaled Tr(B^3) over the continuous phase chart; self-paired
// angles are held fixed.
ObjectiveEval phase_objective_eval(const Eigen::VectorXd& angles,
                                   const std::vector<double>& self_paired_angles,
                                   const GroupContext& ctx);

}  // namespace detail

// Orbit POVM {(1/d) D_p |psi><psi| D_p^dag}.  The set sums to the identity
// only when psi is a SIC fiducial; callers inspect the attached verify_si
// report rather than receiving an exception.
Povm sic_from_fiducial(const Fiducial& psi, const GroupContext& ctx);

}  // namespace sipovm
