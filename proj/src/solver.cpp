#include "qkak/solver.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

namespace qkak {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Scan cells whose best angle-solve residual falls below this are handed to
// the eight-parameter refinement. The residual of the angle subproblem grows
// roughly like 0.8 times the distance of (t1, t2) from the nearest feasible
// point, so with the default grid step pi/60 a cell adjacent to a solution
// sits near 0.03; the threshold leaves an order of magnitude of margin
// while still rejecting cells that cannot refine to a nearby solution.
constexpr double kPromisingResidual = 0.25;

double wrap_pi(double a) {
  double r = std::fmod(a + kPi, kTwoPi);
  if (r <= 0.0) r += kTwoPi;
  return r - kPi;
}

std::uint64_t splitmix_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix_next(state) >> 11) * 0x1.0p-53;
}

// Deterministic start point of a restart: the stream depends only on the
// seed and the restart index, so any execution order reproduces it.
std::array<double, 6> restart_angles(std::uint64_t seed, int restart) {
  std::uint64_t state =
      seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(restart + 1);
  std::array<double, 6> a;
  for (double& v : a) v = kTwoPi * uniform01(state);
  return a;
}

// Fixed matrices of one convention/pair combination.
struct ComboOps {
  bool wing_a_is_x;   // XYX has x as the outer wing axis
  Operator3 gen_a;    // wing generators, for derivative factors
  Operator3 gen_b;
  Operator3 hq;
  Operator3 central_gen;    // L7 or L8
  Operator3 frame;          // central factor = frame exp(-i t Hq) frame^dag
  Operator3 frame_adj;
};

ComboOps make_combo(EulerConvention convention, CartanPair pair) {
  const auto& ops = spin1_operators();
  const auto& basis = generator_basis();
  ComboOps c;
  c.wing_a_is_x = (convention == EulerConvention::XYX);
  c.gen_a = c.wing_a_is_x ? ops.Ix : ops.Iy;
  c.gen_b = c.wing_a_is_x ? ops.Iy : ops.Ix;
  c.hq = ops.Hq;
  c.central_gen = basis.L[pair == CartanPair::L4_L7 ? 6 : 7];
  c.frame = (pair == CartanPair::L4_L7)
                ? rotation_y(kPi / 2.0)
                : Operator3(rotation_y(-kPi / 2.0) * rotation_x(kPi / 4.0));
  c.frame_adj = c.frame.adjoint();
  return c;
}

Operator3 wing_rotation(bool about_x, double angle) {
  return about_x ? rotation_x(angle) : rotation_y(angle);
}

// The eight factors of the sequence, their running products from the left
// and from the right, and the generator that differentiates each factor.
struct SequenceFactors {
  Operator3 factor[8];
  Operator3 prefix[9];  // prefix[k] = factor[0] ... factor[k-1]
  Operator3 suffix[9];  // suffix[k] = factor[k] ... factor[7]
  const Operator3* gen[8];

  void build(const ComboOps& ops, const double* angles, double t1, double t2) {
    factor[0] = wing_rotation(ops.wing_a_is_x, angles[0]);
    factor[1] = wing_rotation(!ops.wing_a_is_x, angles[1]);
    factor[2] = wing_rotation(ops.wing_a_is_x, angles[2]);
    factor[3] = free_evolution(t1);
    factor[4] = ops.frame * free_evolution(t2) * ops.frame_adj;
    factor[5] = wing_rotation(ops.wing_a_is_x, angles[3]);
    factor[6] = wing_rotation(!ops.wing_a_is_x, angles[4]);
    factor[7] = wing_rotation(ops.wing_a_is_x, angles[5]);
    gen[0] = gen[2] = gen[5] = gen[7] = &ops.gen_a;
    gen[1] = gen[6] = &ops.gen_b;
    gen[3] = &ops.hq;
    gen[4] = &ops.central_gen;

    prefix[0] = Operator3::Identity();
    for (int k = 0; k < 8; ++k) prefix[k + 1] = prefix[k] * factor[k];
    suffix[8] = Operator3::Identity();
    for (int k = 7; k >= 0; --k) suffix[k] = factor[k] * suffix[k + 1];
  }

  const Operator3& total() const { return prefix[8]; }
};

void stack_real(const Operator3& M, Eigen::Matrix<double, 18, 1>& out) {
  for (int c = 0, k = 0; c < 3; ++c) {
    for (int r = 0; r < 3; ++r, k += 2) {
      out(k) = M(r, c).real();
      out(k + 1) = M(r, c).imag();
    }
  }
}

// Levenberg-Marquardt on the stacked real residual of sequence(x) - V.
// Parameters are the six wing angles, optionally followed by t1 and t2;
// durations are clamped at zero after every trial step. Returns the final
// residual norm. Stops at stop_residual, on stalls, or at max_iters.
template <int N>
double lm_minimize(const Operator3& V, const ComboOps& ops, double* angles,
                   double* t1, double* t2, double stop_residual, int max_iters) {
  static_assert(N == 6 || N == 8);
  Eigen::Matrix<double, N, 1> x;
  for (int k = 0; k < 6; ++k) x(k) = angles[k];
  if constexpr (N == 8) {
    x(6) = *t1;
    x(7) = *t2;
  }

  SequenceFactors seq;
  Eigen::Matrix<double, 18, 1> r;
  const auto eval = [&](const Eigen::Matrix<double, N, 1>& p,
                        Eigen::Matrix<double, 18, 1>& out) {
    const double u1 = (N == 8) ? p(6) : *t1;
    const double u2 = (N == 8) ? p(7) : *t2;
    seq.build(ops, p.data(), u1, u2);
    stack_real(seq.total() - V, out);
    return out.squaredNorm();
  };

  double ssq = eval(x, r);
  double lambda = 1e-3;

  Eigen::Matrix<double, 18, N> J;
  Eigen::Matrix<double, 18, 1> r_try;
  for (int iter = 0; iter < max_iters; ++iter) {
    if (std::sqrt(ssq) < stop_residual) break;

    // The factor list must match the accepted point; eval() left it there.
    for (int k = 0; k < N; ++k) {
      const int f = (k < 3) ? k : (k < 6 ? k + 2 : (k == 6 ? 3 : 4));
      const Operator3 dS =
          seq.prefix[f] * (-kI * (*seq.gen[f]) * seq.factor[f]) * seq.suffix[f + 1];
      Eigen::Matrix<double, 18, 1> col;
      stack_real(dS, col);
      J.col(k) = col;
    }
    const Eigen::Matrix<double, N, 1> g = J.transpose() * r;
    if (g.template lpNorm<Eigen::Infinity>() < 1e-14) break;
    const Eigen::Matrix<double, N, N> H = J.transpose() * J;

    bool accepted = false;
    double step_norm = 0.0;
    for (int tries = 0; tries < 16; ++tries) {
      Eigen::Matrix<double, N, N> Hd = H;
      for (int k = 0; k < N; ++k) {
        Hd(k, k) += lambda * std::max(H(k, k), 1e-12);
      }
      Eigen::Matrix<double, N, 1> delta = Hd.ldlt().solve(-g);
      Eigen::Matrix<double, N, 1> x_try = x + delta;
      if constexpr (N == 8) {
        x_try(6) = std::max(x_try(6), 0.0);
        x_try(7) = std::max(x_try(7), 0.0);
      }
      const double ssq_try = eval(x_try, r_try);
      if (ssq_try < ssq) {
        step_norm = (x_try - x).norm();
        x = x_try;
        ssq = ssq_try;
        r = r_try;
        lambda = std::max(lambda * 0.3, 1e-14);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;
    if (step_norm < 1e-14) break;
  }

  // Leave the factor state consistent with the final x for the caller.
  for (int k = 0; k < 6; ++k) angles[k] = x(k);
  if constexpr (N == 8) {
    *t1 = x(6);
    *t2 = x(7);
  }
  return std::sqrt(ssq);
}

struct ScanOptions {
  double stop_below;      // residual at which further restarts add nothing
  bool consensus_break;   // stop once repeated restarts agree on the minimum
  int max_iters;
};

// One multistart angle solve. Restart results are independent of each other;
// only how many get run depends on the earlier ones, so the outcome is
// deterministic for a fixed seed.
AngleSolveResult multistart_angles(const Operator3& V, const ComboOps& ops,
                                   double t1, double t2,
                                   const SolverConfig& config,
                                   const ScanOptions& opt) {
  AngleSolveResult best;
  best.residual = std::numeric_limits<double>::infinity();
  int agreeing = 0;
  for (int restart = 0; restart < config.n_restarts; ++restart) {
    std::array<double, 6> a = restart_angles(config.rng_seed, restart);
    const double res =
        lm_minimize<6>(V, ops, a.data(), &t1, &t2,
                       config.residual_tol * 0.1, opt.max_iters);
    if (std::abs(res - best.residual) < 1e-3) {
      ++agreeing;
    } else if (res < best.residual) {
      agreeing = 0;
    }
    if (res < best.residual) {
      best.residual = res;
      best.angles = a;
    }
    best.restarts_used = restart + 1;
    if (best.residual < opt.stop_below) break;
    // Far from any solution the angle landscape has one dominant basin, so
    // once several restarts land on the same floor the cell is settled.
    if (opt.consensus_break && agreeing >= 2 &&
        best.residual > 2.5 * kPromisingResidual) {
      break;
    }
  }
  return best;
}

struct Candidate {
  SequenceParams params;
  double residual = 0.0;
  double total_time = 0.0;
  int restarts_used = 0;
};

constexpr EulerConvention kConventionOrder[4] = {
    EulerConvention::XYX, EulerConvention::YXY, EulerConvention::XYX,
    EulerConvention::YXY};
constexpr CartanPair kPairOrder[4] = {CartanPair::L4_L7, CartanPair::L4_L7,
                                      CartanPair::L4_L8, CartanPair::L4_L8};

}  // namespace

AngleSolveResult solve_at_fixed_times(const Operator3& gate, double phi,
                                      double t1, double t2,
                                      EulerConvention convention,
                                      CartanPair pair,
                                      const SolverConfig& config) {
  if (t1 < 0.0 || t2 < 0.0) {
    throw NegativeTimeError("solve_at_fixed_times: durations must be nonnegative");
  }
  const Operator3 V = std::exp(kI * phi) * gate;
  const ComboOps ops = make_combo(convention, pair);
  // All restarts run so the reported minimum is the best of the full
  // multistart, selected by (residual, restart index).
  ScanOptions opt{0.0, false, 120};
  return multistart_angles(V, ops, t1, t2, config, opt);
}

SolveResult find_tmin(const Operator3& gate, double phi,
                      const SolverConfig& config) {
  if (!is_unitary(gate)) {
    throw NotUnitaryError("find_tmin: target must be unitary");
  }
  if (!(config.t_grid_step > 0.0)) {
    throw std::invalid_argument("find_tmin: t_grid_step must be positive");
  }
  const Operator3 V = std::exp(kI * phi) * gate;
  const ComboOps combos[4] = {
      make_combo(kConventionOrder[0], kPairOrder[0]),
      make_combo(kConventionOrder[1], kPairOrder[1]),
      make_combo(kConventionOrder[2], kPairOrder[2]),
      make_combo(kConventionOrder[3], kPairOrder[3]),
  };

  const double step = config.t_grid_step;
  const int nsteps = static_cast<int>(std::floor(kTwoPi / step + 1e-9));
  std::optional<Candidate> best;

  // Antidiagonals of the (t1, t2) grid are visited in order of increasing
  // nominal T = (i + j) step, so the first solutions found are already near
  // the optimum and the scan can stop a few diagonals past it. Refinement
  // moves a candidate by at most about a cell, hence the stop margin.
  for (int d = 0; d <= 2 * nsteps; ++d) {
    if (best && d * step > best->total_time + 4.0 * step + config.refine_tol) {
      break;
    }
    for (int i = std::max(0, d - nsteps); i <= std::min(d, nsteps); ++i) {
      const int j = d - i;
      const double t1 = i * step;
      const double t2 = j * step;
      for (int c = 0; c < 4; ++c) {
        ScanOptions opt{kPromisingResidual, true, 40};
        const AngleSolveResult scan =
            multistart_angles(V, combos[c], t1, t2, config, opt);
        if (scan.residual >= kPromisingResidual) continue;

        // Refine all eight parameters; the durations slide off the grid
        // onto the exact feasible point.
        std::array<double, 6> a = scan.angles;
        double u1 = t1;
        double u2 = t2;
        const double res = lm_minimize<8>(V, combos[c], a.data(), &u1, &u2,
                                          config.residual_tol * 1e-3, 200);
        if (res >= config.residual_tol) continue;

        const double T = u1 + u2;
        // Strict improvement keeps the earliest candidate on ties, making
        // the reduction order (diagonal, cell, combination, restart).
        if (!best || T < best->total_time) {
          Candidate cand;
          cand.params.alpha1 = wrap_pi(a[0]);
          cand.params.beta1 = wrap_pi(a[1]);
          cand.params.gamma1 = wrap_pi(a[2]);
          cand.params.alpha2 = wrap_pi(a[3]);
          cand.params.beta2 = wrap_pi(a[4]);
          cand.params.gamma2 = wrap_pi(a[5]);
          cand.params.t1 = u1;
          cand.params.t2 = u2;
          cand.params.convention = kConventionOrder[c];
          cand.params.pair = kPairOrder[c];
          cand.total_time = T;
          cand.restarts_used = scan.restarts_used;
          // Report the residual of the normalized parameters as they will
          // be re-evaluated by consumers.
          cand.residual = residual(cand.params, gate, phi);
          best = cand;
        }
      }
    }
  }

  if (!best) {
    throw NoFeasiblePointFound(
        "find_tmin: no feasible point on the time grid; the grid may be too "
        "coarse or residual_tol too tight");
  }
  SolveResult result;
  result.params = best->params;
  result.residual_value = best->residual;
  result.total_time = best->total_time;
  result.feasible = best->residual < config.residual_tol;
  result.restarts_used = best->restarts_used;
  return result;
}

PhaseSearchReport min_over_phases_report(const GateTarget& gate,
                                         const SolverConfig& config) {
  PhaseSearchReport report;
  report.phase_set = global_phases(gate);
  for (int p = 0; p < 3; ++p) {
    try {
      report.results[p] = find_tmin(gate.unitary, report.phase_set.phases[p], config);
    } catch (const NoFeasiblePointFound&) {
      report.results[p] = std::nullopt;
    }
    if (!report.results[p]) continue;
    if (report.best_index < 0 ||
        report.results[p]->total_time <
            report.results[report.best_index]->total_time - config.refine_tol) {
      report.best_index = p;
    }
  }
  return report;
}

std::pair<double, SolveResult> min_over_phases(const GateTarget& gate,
                                               const SolverConfig& config) {
  const PhaseSearchReport report = min_over_phases_report(gate, config);
  if (report.best_index < 0) {
    throw NoFeasiblePointFound("min_over_phases: every admissible phase failed");
  }
  return {report.phase_set.phases[report.best_index],
          *report.results[report.best_index]};
}

}  // namespace qkak
