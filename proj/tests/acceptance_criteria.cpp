// Acceptance gate: one line per criterion, PASS only when every quantitative
// bound below holds. Tolerances are pinned here, next to the checks that use
// them, so a regression cannot be hidden by editing a shared constant.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "qkak/analytic.hpp"
#include "qkak/cartan.hpp"
#include "qkak/pulse.hpp"
#include "qkak/solver.hpp"

using namespace qkak;

namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int g_failures = 0;

void report(int criterion, bool pass, const std::string& details) {
  std::printf("CRITERION %d: %s (%s)\n", criterion, pass ? "PASS" : "FAIL",
              details.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

// 1. Every tabulated row reproduces e^{i phi} U_G on the theta grid with
//    Frobenius residual < 1e-9 and t1 + t2 equal to the closed-form minimum
//    within 1e-12, all inside one second.
void criterion_1() {
  constexpr double kResidualTol = 1e-9;
  constexpr double kTimeSumTol = 1e-12;
  constexpr double kRuntimeBudget = 1.0;

  const auto t0 = Clock::now();
  const std::vector<double> grid = validation_theta_grid();
  double worst_residual = 0.0;
  double worst_dt = 0.0;
  int programs = 0;
  for (const TableRowSpec& row : table_rows()) {
    const bool rotation = is_rotation_gate(row.gate);
    for (double theta : rotation ? grid : std::vector<double>{0.0}) {
      const AnalyticSolution sol = evaluate_row(row, theta);
      const GateTarget target = make_gate(row.gate, rotation ? theta : 0.0);
      worst_residual =
          std::max(worst_residual, residual(sol.params, target, sol.phi));
      worst_dt = std::max(
          worst_dt, std::fabs(sol.params.t1 + sol.params.t2 - sol.tmin));
      ++programs;
    }
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst_residual < kResidualTol && worst_dt < kTimeSumTol &&
                    elapsed < kRuntimeBudget;
  report(1, pass,
         fmt("%d programs, worst residual %.2e < 1e-9, worst |t1+t2-Tmin| "
             "%.2e < 1e-12, %.2f s",
             programs, worst_residual, worst_dt, elapsed));
}

// 2. The three QFT minimum times are pi, 3 arccos(sqrt(2/3)) and
//    2 pi - 3 arccos(sqrt(2/3)), each reproduced to 1e-6.
void criterion_2() {
  constexpr double kTol = 1e-6;
  const double tq = std::acos(std::sqrt(2.0 / 3.0));
  const double expected[3] = {2.0 * kPi - 3.0 * tq, 3.0 * tq, kPi};

  bool pass = true;
  double worst = 0.0;
  for (const TableRowSpec& row : table_rows()) {
    if (row.gate != GateName::QFT) continue;
    const AnalyticSolution sol = evaluate_row(row, 0.0);
    const double err = std::fabs(sol.tmin - expected[row.phase_index]);
    worst = std::max(worst, err);
    pass = pass && err < kTol;
  }
  report(2, pass,
         fmt("Tmin at phi = pi/6, 5pi/6, 9pi/6 -> %.6f, %.6f, %.6f; worst "
             "|err| %.2e < 1e-6",
             expected[0], expected[1], expected[2], worst));
}

// 3. The numerical minimum-time search agrees with the closed forms at
//    theta in {pi/4, pi/2, 3pi/4, pi} for all six rotation gates and all
//    three admissible phases, within 1e-3 and at most five minutes a triple.
void criterion_3() {
  constexpr double kAgreementTol = 1e-3;
  constexpr double kPerTripleBudget = 300.0;

  const GateName gates[6] = {GateName::Rx12, GateName::Ry12, GateName::Rx23,
                             GateName::Ry23, GateName::Rx13, GateName::Ry13};
  const SolverConfig cfg;

  bool pass = true;
  double worst_err = 0.0;
  double worst_time = 0.0;
  int done = 0;
  for (GateName gate : gates) {
    const bool is13 = gate == GateName::Rx13 || gate == GateName::Ry13;
    for (int phase = 0; phase < 3; ++phase) {
      const double phi = 2.0 * kPi * phase / 3.0;
      for (int n = 1; n <= 4; ++n) {
        const double theta = n * kPi / 4.0;
        const double ramp = is13 ? 1.5 * theta : 3.0 * rotation_tau(theta);
        const double expect =
            phase == 0 ? ramp : (phase == 1 ? kPi : 2.0 * kPi - ramp);

        const auto t0 = Clock::now();
        double err = 1e9;
        try {
          const SolveResult s =
              find_tmin(make_gate(gate, theta).unitary, phi, cfg);
          err = std::fabs(s.total_time - expect);
        } catch (const NoFeasiblePointFound&) {
        }
        const double elapsed = seconds_since(t0);
        worst_err = std::max(worst_err, err);
        worst_time = std::max(worst_time, elapsed);
        pass = pass && err < kAgreementTol && elapsed < kPerTripleBudget;
        ++done;
        std::fprintf(stderr,
                     "  [criterion 3] %2d/72 %s phase %d theta %.2f: |dT| = "
                     "%.2e in %.1f s\n",
                     done, to_string(gate), phase, theta, err, elapsed);
      }
    }
  }
  report(3, pass,
         fmt("72 triples, worst |T - formula| %.2e < 1e-3, slowest triple "
             "%.1f s < 300 s",
             worst_err, worst_time));
}

// 4. Phase-dependence phenomena: the middle phase is flat at pi, the zero
//    phase is nondecreasing, the last phase nonincreasing, and the two
//    nonzero-phase curves of the 1-3 family cross at theta = 2 pi / 3.
void criterion_4() {
  constexpr double kFlatTol = 1e-9;
  constexpr double kCrossTol = 1e-9;
  constexpr double kMonotoneSlack = 1e-12;

  std::vector<double> grid;
  for (int k = 1; k <= 96; ++k) grid.push_back(k * kPi / 96.0);

  bool pass = true;
  std::string detail;
  for (GateFamily family : {GateFamily::R12, GateFamily::R23, GateFamily::R13}) {
    const auto flat = tmin_curve(family, 2.0 * kPi / 3.0, grid);
    const auto rising = tmin_curve(family, 0.0, grid);
    const auto falling = tmin_curve(family, 4.0 * kPi / 3.0, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
      pass = pass && std::fabs(flat[i].second - kPi) < kFlatTol;
      if (i > 0) {
        pass = pass &&
               rising[i].second >= rising[i - 1].second - kMonotoneSlack &&
               falling[i].second <= falling[i - 1].second + kMonotoneSlack;
      }
    }
  }
  const double cross1 =
      tmin_curve(GateFamily::R13, 2.0 * kPi / 3.0, {2.0 * kPi / 3.0})[0].second;
  const double cross2 =
      tmin_curve(GateFamily::R13, 4.0 * kPi / 3.0, {2.0 * kPi / 3.0})[0].second;
  pass = pass && std::fabs(cross1 - kPi) < kCrossTol &&
         std::fabs(cross2 - kPi) < kCrossTol;
  report(4, pass,
         fmt("flat at pi within 1e-9, monotone on (0, pi], 1-3 curves cross "
             "at 2pi/3: %.9f and %.9f",
             cross1, cross2));
}

// 5. Small-angle asymptotics at theta = 0.1.
void criterion_5() {
  constexpr double kTol = 1e-3;
  const double theta = 0.1;
  const double exact = 3.0 * std::acos(std::pow(std::cos(theta / 4.0), 2.0));
  const double approx = 3.0 * theta / (2.0 * std::sqrt(2.0));
  const double gap = std::fabs(exact - approx) / theta;
  report(5, gap < kTol,
         fmt("exact %.12f vs asymptotic %.12f, |gap|/theta = %.2e < 1e-3",
             exact, approx, gap));
}

// 6. The generator basis satisfies the symmetric-space commutation relations
//    and the two central generators commute.
void criterion_6() {
  constexpr double kClosureTol = 1e-10;
  constexpr double kCentralTol = 1e-12;

  const GeneratorBasis& basis = generator_basis();
  const CartanStructureReport rep = check_cartan_structure(basis);
  const double c47 = commutator(basis.L[3], basis.L[6]).cwiseAbs().maxCoeff();
  const double c48 = commutator(basis.L[3], basis.L[7]).cwiseAbs().maxCoeff();
  const bool pass = rep.all_pass() && rep.worst_residual < kClosureTol &&
                    c47 < kCentralTol && c48 < kCentralTol;
  report(6, pass,
         fmt("closure residual %.2e < 1e-10, ||[L4,L7]|| %.2e and ||[L4,L8]|| "
             "%.2e < 1e-12",
             rep.worst_residual, c47, c48));
}

// 7. Compile/simulate round-trip for every tabulated program on the full
//    theta grid, within the pulse and delay budget.
void criterion_7() {
  constexpr double kRoundTripTol = 1e-12;
  constexpr int kMaxPulses = 8;
  constexpr int kMaxDelays = 2;

  double worst = 0.0;
  int max_pulses = 0;
  int max_delays = 0;
  bool pass = true;
  for (const TableRowSpec& row : table_rows()) {
    const bool rotation = is_rotation_gate(row.gate);
    for (double theta :
         rotation ? validation_theta_grid() : std::vector<double>{0.0}) {
      const AnalyticSolution sol = evaluate_row(row, theta);
      const PulseProgram prog = compile_sequence(sol.params);
      const double dist =
          (simulate_ideal(prog) - sequence_unitary(sol.params)).norm();
      worst = std::max(worst, dist);
      max_pulses = std::max(max_pulses, prog.pulse_count());
      max_delays = std::max(max_delays, prog.delay_count());
      pass = pass && dist < kRoundTripTol &&
             prog.pulse_count() <= kMaxPulses &&
             prog.delay_count() <= kMaxDelays;
    }
  }
  report(7, pass,
         fmt("worst round-trip %.2e < 1e-12, max %d pulses <= 8, max %d "
             "delays <= 2",
             worst, max_pulses, max_delays));
}

// 8. Finite-amplitude error decreases with rf amplitude for every tabulated
//    program, is below 1e-4 at omega = 1e4, and scales like a power of
//    1/omega with log-log slope in [0.8, 2.2].
void criterion_8() {
  constexpr double kFinalInfidelityTol = 1e-4;
  constexpr double kSlopeLo = 0.8;
  constexpr double kSlopeHi = 2.2;
  const std::vector<double> omegas = {10.0, 100.0, 1000.0, 10000.0};

  bool pass = true;
  double worst_final = 0.0;
  double slope_lo_seen = 1e9;
  double slope_hi_seen = -1e9;
  for (const TableRowSpec& row : table_rows()) {
    const bool rotation = is_rotation_gate(row.gate);
    for (double theta :
         rotation ? validation_theta_grid() : std::vector<double>{0.0}) {
      const AnalyticSolution sol = evaluate_row(row, theta);
      const PulseProgram prog = compile_sequence(sol.params);
      if (prog.pulse_count() == 0) continue;  // nothing to converge
      const Operator3 target =
          make_gate(row.gate, rotation ? theta : 0.0).unitary;
      const auto sweep = error_vs_amplitude(prog, target, omegas);

      for (size_t i = 1; i < sweep.size(); ++i) {
        pass = pass && sweep[i].second < sweep[i - 1].second;
      }
      worst_final = std::max(worst_final, sweep.back().second);
      pass = pass && sweep.back().second < kFinalInfidelityTol;

      // Least-squares slope of log(infidelity) against log(1/omega).
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      for (const auto& [omega, infidelity] : sweep) {
        const double x = std::log(1.0 / omega);
        const double y = std::log(infidelity);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const double n = static_cast<double>(sweep.size());
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      slope_lo_seen = std::min(slope_lo_seen, slope);
      slope_hi_seen = std::max(slope_hi_seen, slope);
      pass = pass && slope > kSlopeLo && slope < kSlopeHi;
    }
  }
  report(8, pass,
         fmt("monotone in omega, worst infidelity at 1e4 = %.2e < 1e-4, "
             "slopes in [%.2f, %.2f] within [0.8, 2.2]",
             worst_final, slope_lo_seen, slope_hi_seen));
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
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 8 criteria passed\n");
  return 0;
}
