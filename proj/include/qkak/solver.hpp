#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "qkak/cartan.hpp"
#include "qkak/gates.hpp"

namespace qkak {

struct NoFeasiblePointFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  /// A parameter set counts as a solution when the phase-sensitive residual
  /// falls below this threshold.
  double residual_tol = 1e-8;
  /// Random restarts per fixed-times angle solve.
  int n_restarts = 12;
  /// Seed for the deterministic restart streams.
  std::uint64_t rng_seed = 12345;
  /// Grid spacing of the coarse (t1, t2) scan.
  double t_grid_step = 0.05235987755982988;  // pi / 60
  /// Requested accuracy of the refined minimum time.
  double refine_tol = 1e-4;
};

/// Outcome of the inner subproblem: minimize the residual over the six Euler
/// angles with (t1, t2) frozen.
struct AngleSolveResult {
  std::array<double, 6> angles{};
  double residual = 0.0;
  int restarts_used = 0;
};

/// Multistart local minimization over the wing angles at fixed durations.
/// Deterministic: restart r always starts from the same point for a given
/// rng_seed, and the best result is selected by (residual, restart index).
AngleSolveResult solve_at_fixed_times(const Operator3& gate, double phi, double t1,
                                      double t2, EulerConvention convention,
                                      CartanPair pair, const SolverConfig& config);

struct SolveResult {
  SequenceParams params;
  double residual_value = 0.0;
  double total_time = 0.0;  ///< t1 + t2
  bool feasible = false;
  int restarts_used = 0;
};

/// Searches for the minimum total evolution time T = t1 + t2 at which
/// e^{i phi} gate is reachable. Stage one scans (t1, t2) over [0, 2pi]^2
/// in steps of t_grid_step, running the angle solve for both Euler
/// conventions and both Cartan pairs in every cell; stage two locally
/// refines near-solutions over all eight parameters, with durations kept
/// nonnegative, sliding them onto the exact feasible point. Candidates are
/// reduced deterministically in scan order (diagonal, cell, combination,
/// restart), so a fixed config always returns the identical result.
/// Throws NoFeasiblePointFound when the scan finds nothing, which usually
/// means the grid is too coarse or residual_tol is too tight.
SolveResult find_tmin(const Operator3& gate, double phi,
                      const SolverConfig& config = {});

/// Per-phase outcomes of the admissible-phase sweep.
struct PhaseSearchReport {
  GlobalPhaseSet phase_set;
  std::array<std::optional<SolveResult>, 3> results;  ///< empty where infeasible
  int best_index = -1;
};

PhaseSearchReport min_over_phases_report(const GateTarget& gate,
                                         const SolverConfig& config = {});

/// Runs find_tmin at each admissible global phase and returns the phase with
/// the smallest T (ties within refine_tol resolved toward the lower phase
/// index). Throws NoFeasiblePointFound only if every phase fails.
std::pair<double, SolveResult> min_over_phases(const GateTarget& gate,
                                               const SolverConfig& config = {});

}  // namespace qkak
