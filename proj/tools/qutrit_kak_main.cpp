// qutrit-kak: synthesize time-optimal pulse sequences for single-qutrit
// gates on a spin-1 quadrupole nucleus.
//
// Subcommands: tables (validate and export the closed-form solution table),
// curve (minimum-time curves per rotation family and phase), solve (numerical
// minimum-time search), compile (pulse program plus finite-amplitude sweep).
// All command-line angles are in units of pi. Output files depend only on
// flags and seed; timing goes to stdout.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qkak/analytic.hpp"
#include "qkak/pulse.hpp"
#include "qkak/pulse_json.hpp"
#include "qkak/solver.hpp"

namespace {

using nlohmann::json;
using namespace qkak;

constexpr double kPi = 3.14159265358979323846;

constexpr int kExitFailure = 1;      // validation or infeasibility
constexpr int kExitIo = 2;           // unwritable or unreadable file
constexpr int kExitBadRange = 3;     // invalid curve range
constexpr int kExitNonUnitary = 4;   // solve/compile target fails unitarity

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Target given on the command line: either a named gate (with --theta for
// rotations, in units of pi) or a path to a JSON file holding a 3x3 complex
// matrix as [re, im] pairs (bare numbers are taken as real entries).
struct TargetSpec {
  std::optional<GateTarget> named;
  Operator3 unitary;
  json descriptor;
};

int parse_target(const std::string& spec, double theta_pi, TargetSpec& out,
                 bool require_unitary) {
  if (auto name = parse_gate_name(spec)) {
    const double theta = is_rotation_gate(*name) ? theta_pi * kPi : 0.0;
    try {
      out.named = make_gate(*name, theta);
    } catch (const AngleOutOfRangeError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitBadRange;
    }
    out.unitary = out.named->unitary;
    out.descriptor = json{{"name", to_string(*name)}, {"theta", theta}};
    return 0;
  }

  std::ifstream in(spec);
  if (!in) {
    std::cerr << "error: '" << spec
              << "' is neither a gate name nor a readable file\n";
    return kExitIo;
  }
  json j;
  try {
    in >> j;
    const json& m = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
    if (!m.is_array() || m.size() != 3) throw std::invalid_argument("not 3x3");
    for (int r = 0; r < 3; ++r) {
      if (!m[r].is_array() || m[r].size() != 3) {
        throw std::invalid_argument("not 3x3");
      }
      for (int c = 0; c < 3; ++c) {
        const json& e = m[r][c];
        if (e.is_array()) {
          out.unitary(r, c) =
              Complex(e.at(0).get<double>(), e.at(1).get<double>());
        } else {
          out.unitary(r, c) = Complex(e.get<double>(), 0.0);
        }
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: failed to parse matrix file '" << spec
              << "': " << e.what() << "\n";
    return kExitIo;
  }
  if (require_unitary && !is_unitary(out.unitary, 1e-8)) {
    std::cerr << "error: supplied matrix is not unitary (Frobenius residual > 1e-8)\n";
    return kExitNonUnitary;
  }
  out.descriptor = json{{"file", spec}};
  return 0;
}

json solve_result_to_json(const SolveResult& s, double phi) {
  return json{{"phi", phi},
              {"params", params_to_json(s.params)},
              {"total_time", s.total_time},
              {"residual", s.residual_value},
              {"feasible", s.feasible},
              {"restarts_used", s.restarts_used}};
}

json config_to_json(const SolverConfig& cfg) {
  return json{{"residual_tol", cfg.residual_tol},
              {"n_restarts", cfg.n_restarts},
              {"rng_seed", cfg.rng_seed},
              {"t_grid_step", cfg.t_grid_step},
              {"refine_tol", cfg.refine_tol}};
}

int write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return kExitIo;
  }
  out << text;
  out.flush();
  if (!out) {
    std::cerr << "error: write to '" << path << "' failed\n";
    return kExitIo;
  }
  return 0;
}

int cmd_tables(const std::string& out_path, int corrupt_row) {
  Timer timer;
  const auto grid = validation_theta_grid();
  const auto& rows = table_rows();

  int rotation_rows = 0;
  int qft_rows = 0;
  bool all_pass = true;
  for (size_t idx = 0; idx < rows.size(); ++idx) {
    const TableRowSpec& row = rows[idx];
    const bool rotation = is_rotation_gate(row.gate);
    (rotation ? rotation_rows : qft_rows) += 1;
    double worst = 0.0;
    for (double theta : rotation ? grid : std::vector<double>{0.0}) {
      AnalyticSolution sol = evaluate_row(row, theta);
      if (static_cast<int>(idx) == corrupt_row) {
        sol.params.t1 += 0.05;  // negative-control fixture
      }
      const GateTarget target = make_gate(row.gate, rotation ? theta : 0.0);
      worst = std::max(worst, residual(sol.params, target, sol.phi));
    }
    const bool pass = worst < kTableResidualTol;
    all_pass = all_pass && pass;
    std::printf("row %2zu  %-4s phase %d  worst residual %.3e  %s\n", idx,
                to_string(row.gate), row.phase_index, worst,
                pass ? "pass" : "FAIL");
  }
  std::printf("%d rotation rows + %d QFT rows, %s\n", rotation_rows, qft_rows,
              all_pass ? "all pass" : "FAILURES present");

  std::ostringstream csv;
  write_table_csv(csv, grid);
  if (int rc = write_text_file(out_path, csv.str()); rc != 0) return rc;
  std::printf("wrote %s\nwall_time_s=%.3f\n", out_path.c_str(), timer.seconds());
  return all_pass ? 0 : kExitFailure;
}

int cmd_curve(const std::string& family_text, double phi_pi, double min_pi,
              double max_pi, int n_points, const std::string& out_path) {
  Timer timer;
  const auto family = parse_gate_family(family_text);
  if (!family) {
    std::cerr << "error: unknown rotation family '" << family_text
              << "' (expected R12, R23 or R13)\n";
    return kExitBadRange;
  }
  if (!(min_pi >= 0.0 && min_pi < max_pi && max_pi <= 1.0 + 1e-12) ||
      n_points < 2) {
    std::cerr << "error: need 0 <= theta-min < theta-max <= 1 (units of pi) "
                 "and at least 2 points\n";
    return kExitBadRange;
  }

  std::vector<double> thetas(n_points);
  for (int i = 0; i < n_points; ++i) {
    thetas[i] = (min_pi + (max_pi - min_pi) * i / (n_points - 1)) * kPi;
  }
  std::vector<std::pair<double, double>> curve;
  try {
    curve = tmin_curve(*family, phi_pi * kPi, thetas);
  } catch (const UnknownCombinationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadRange;
  }

  std::ostringstream csv;
  csv << "theta,Tmin\n";
  for (const auto& [theta, tmin] : curve) {
    csv << format_double(theta) << ',' << format_double(tmin) << '\n';
  }
  if (int rc = write_text_file(out_path, csv.str()); rc != 0) return rc;
  std::printf("%s phi=%spi: %d points, Tmin in [%s, %s]\nwrote %s\nwall_time_s=%.3f\n",
              to_string(*family), format_double(phi_pi).c_str(), n_points,
              format_double(std::min(curve.front().second, curve.back().second)).c_str(),
              format_double(std::max(curve.front().second, curve.back().second)).c_str(),
              out_path.c_str(), timer.seconds());
  return 0;
}

int cmd_solve(const std::string& gate_spec, double theta_pi,
              std::optional<double> phi_pi, bool all_phases,
              const SolverConfig& cfg, const std::string& out_path) {
  Timer timer;
  TargetSpec target;
  if (int rc = parse_target(gate_spec, theta_pi, target, true); rc != 0) {
    return rc;
  }

  json report{{"command", "solve"},
              {"config", config_to_json(cfg)},
              {"target_gate", target.descriptor}};
  try {
    if (all_phases) {
      GateTarget gt;
      if (target.named) {
        gt = *target.named;
      } else {
        gt.name = GateName::QFT;  // name unused for raw matrices
        gt.theta = 0.0;
        gt.unitary = target.unitary;
      }
      const PhaseSearchReport phases = min_over_phases_report(gt, cfg);
      json per_phase = json::array();
      for (int p = 0; p < 3; ++p) {
        json entry{{"phi", phases.phase_set.phases[p]}};
        if (phases.results[p]) {
          entry["result"] = solve_result_to_json(*phases.results[p],
                                                 phases.phase_set.phases[p]);
        } else {
          entry["result"] = nullptr;
        }
        per_phase.push_back(std::move(entry));
      }
      report["phases"] = std::move(per_phase);
      if (phases.best_index < 0) {
        throw NoFeasiblePointFound("no phase produced a feasible sequence");
      }
      report["best_phase_index"] = phases.best_index;
      report["result"] = solve_result_to_json(
          *phases.results[phases.best_index],
          phases.phase_set.phases[phases.best_index]);
    } else {
      const double phi = phi_pi.value_or(0.0) * kPi;
      const SolveResult s = find_tmin(target.unitary, phi, cfg);
      report["result"] = solve_result_to_json(s, phi);
    }
  } catch (const NoFeasiblePointFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const NotUnitaryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonUnitary;
  }

  if (int rc = write_text_file(out_path, report.dump(2) + "\n"); rc != 0) {
    return rc;
  }
  const auto& r = report["result"];
  std::printf("T=%.12f residual=%.3e phi=%.12f\nwrote %s\nwall_time_s=%.3f\n",
              r["total_time"].get<double>(), r["residual"].get<double>(),
              r["phi"].get<double>(), out_path.c_str(), timer.seconds());
  return 0;
}

std::string sweep_path_for(const std::string& out_path) {
  const size_t dot = out_path.find_last_of('.');
  const size_t slash = out_path.find_last_of("/\\");
  const bool has_ext = dot != std::string::npos &&
                       (slash == std::string::npos || dot > slash);
  return (has_ext ? out_path.substr(0, dot) : out_path) + "_sweep.csv";
}

int cmd_compile(const std::string& gate_spec, double theta_pi,
                double phi_pi, std::vector<double> omegas,
                const SolverConfig& cfg, const std::string& out_path) {
  Timer timer;
  TargetSpec target;
  if (int rc = parse_target(gate_spec, theta_pi, target, true); rc != 0) {
    return rc;
  }
  if (omegas.empty()) omegas = {10.0, 100.0, 1000.0, 10000.0};
  for (double w : omegas) {
    if (!(w > 0.0)) {
      std::cerr << "error: rf amplitudes must be positive\n";
      return kExitBadRange;
    }
  }
  const double phi = phi_pi * kPi;

  SequenceParams params;
  bool from_table = false;
  if (target.named) {
    try {
      const AnalyticSolution sol =
          lookup_solution(target.named->name, target.named->theta, phi);
      if (sol.theta_validated) {
        params = sol.params;
        from_table = true;
      }
    } catch (const UnknownCombinationError&) {
      // fall through to the solver
    }
  }
  if (!from_table) {
    try {
      params = find_tmin(target.unitary, phi, cfg).params;
    } catch (const NoFeasiblePointFound& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitFailure;
    }
  }

  const PulseProgram prog = compile_sequence(params);
  json prog_json = program_to_json(prog, params, target.descriptor, phi);
  prog_json["parameter_source"] = from_table ? "table" : "solver";
  if (int rc = write_text_file(out_path, prog_json.dump(2) + "\n"); rc != 0) {
    return rc;
  }

  const auto sweep = error_vs_amplitude(prog, target.unitary, omegas);
  std::ostringstream csv;
  csv << "omega,infidelity\n";
  for (const auto& [omega, infidelity] : sweep) {
    csv << format_double(omega) << ',' << format_double(infidelity) << '\n';
  }
  const std::string sweep_path = sweep_path_for(out_path);
  if (int rc = write_text_file(sweep_path, csv.str()); rc != 0) return rc;

  std::printf("%d pulses, %d delays, total free time %.12f (source: %s)\n",
              prog.pulse_count(), prog.delay_count(), prog.total_free_time,
              from_table ? "table" : "solver");
  for (const auto& [omega, infidelity] : sweep) {
    std::printf("  omega=%-8g infidelity=%.3e\n", omega, infidelity);
  }
  std::printf("wrote %s and %s\nwall_time_s=%.3f\n", out_path.c_str(),
              sweep_path.c_str(), timer.seconds());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Time-optimal single-qutrit gate synthesis for a spin-1 quadrupole "
      "nucleus: hard pulses interleaved with free evolution.\n"
      "Angles on the command line are in units of pi (0.5 means pi/2)."};
  app.require_subcommand(1);

  SolverConfig cfg;
  std::string out_path;
  std::string gate_spec;
  double theta_pi = 0.5;
  double phi_pi = 0.0;
  bool all_phases = false;

  const auto add_solver_flags = [&cfg](CLI::App* cmd) {
    cmd->add_option("--grid-step", cfg.t_grid_step,
                    "time grid step of the coarse scan, radians");
    cmd->add_option("--restarts", cfg.n_restarts, "multistart count per cell");
    cmd->add_option("--seed", cfg.rng_seed, "RNG seed for restart angles")
        ->envname("QUTRIT_KAK_SEED");
  };

  auto* tables = app.add_subcommand(
      "tables", "validate the closed-form solution table and export it as CSV");
  int corrupt_row = -1;
  tables->add_option("--out", out_path, "output CSV path")->required();
  tables
      ->add_option("--corrupt-row", corrupt_row,
                   "perturb this row before validation (negative control)")
      ->group("");  // hidden from help

  auto* curve = app.add_subcommand(
      "curve", "minimum gate time versus rotation angle for one family and phase");
  std::string family_text;
  double theta_min_pi = 0.0;
  double theta_max_pi = 1.0;
  int n_points = 25;
  curve->add_option("family", family_text, "rotation family: R12, R23 or R13")
      ->required();
  curve->add_option("--phi", phi_pi, "global phase, units of pi (0, 2/3 or 4/3)");
  curve->add_option("--theta-min", theta_min_pi, "lower rotation angle, units of pi");
  curve->add_option("--theta-max", theta_max_pi, "upper rotation angle, units of pi");
  curve->add_option("--n-points", n_points, "number of grid points");
  curve->add_option("--out", out_path, "output CSV path")->required();

  auto* solve = app.add_subcommand(
      "solve", "search for the minimum-time sequence realizing a gate");
  solve
      ->add_option("gate", gate_spec,
                   "gate name (Rx12, Ry12, Rx23, Ry23, Rx13, Ry13, QFT) or "
                   "path to a JSON 3x3 matrix")
      ->required();
  solve->add_option("--theta", theta_pi, "rotation angle, units of pi");
  auto* solve_phi = solve->add_option("--phi", phi_pi, "global phase, units of pi");
  solve->add_flag("--all-phases", all_phases,
                  "search all three admissible global phases");
  solve->add_option("--out", out_path, "output JSON path")->required();
  add_solver_flags(solve);

  auto* compile = app.add_subcommand(
      "compile", "compile a gate into pulses and delays and sweep rf amplitudes");
  std::vector<double> omegas;
  compile
      ->add_option("gate", gate_spec,
                   "gate name or path to a JSON 3x3 matrix")
      ->required();
  compile->add_option("--theta", theta_pi, "rotation angle, units of pi");
  compile->add_option("--phi", phi_pi, "global phase, units of pi");
  compile->add_option("--omega", omegas,
                      "rf amplitudes for the sweep (default 10 100 1000 10000)");
  compile->add_option("--out", out_path, "output JSON path")->required();
  add_solver_flags(compile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (tables->parsed()) return cmd_tables(out_path, corrupt_row);
    if (curve->parsed()) {
      return cmd_curve(family_text, phi_pi, theta_min_pi, theta_max_pi,
                       n_points, out_path);
    }
    if (solve->parsed()) {
      std::optional<double> phi;
      if (*solve_phi) phi = phi_pi;
      return cmd_solve(gate_spec, theta_pi, phi, all_phases, cfg, out_path);
    }
    if (compile->parsed()) {
      return cmd_compile(gate_spec, theta_pi, phi_pi, omegas, cfg, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
