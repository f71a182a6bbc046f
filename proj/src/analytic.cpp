#include "qkak/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace qkak {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_2pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

// Circular distance between two angles.
double phase_distance(double a, double b) {
  double d = std::fabs(wrap_2pi(a) - wrap_2pi(b));
  return std::min(d, kTwoPi - d);
}

constexpr AngleSpec kZero{0.0, 0.0};
constexpr AngleSpec kXi{0.0, 1.0};

constexpr AngleSpec ang(double c_pi) { return {c_pi, 0.0}; }
constexpr TimeSpec tau(double c) { return {0.0, c, 0.0, 0.0}; }
constexpr TimeSpec th(double c) { return {0.0, 0.0, c, 0.0}; }

const std::vector<TableRowSpec>& rows_storage() {
  using EC = EulerConvention;
  using CP = CartanPair;
  static const std::vector<TableRowSpec> rows = {
      // phase index 0 of the rotations (phi = 0)
      {GateName::Rx12, 0, EC::XYX, CP::L4_L7, kXi, ang(-0.25), ang(0.5),
       ang(-0.5), ang(0.25), kXi, tau(1), tau(2), tau(3)},
      {GateName::Ry12, 0, EC::XYX, CP::L4_L7, kZero, kXi, ang(-0.25),
       ang(0.25), kXi, kZero, tau(2), tau(1), tau(3)},
      {GateName::Rx23, 0, EC::XYX, CP::L4_L7, kXi, ang(0.25), ang(0.5),
       ang(-0.5), ang(-0.25), kXi, tau(1), tau(2), tau(3)},
      {GateName::Ry23, 0, EC::XYX, CP::L4_L7, kZero, kXi, ang(0.25),
       ang(-0.25), kXi, kZero, tau(2), tau(1), tau(3)},
      {GateName::Rx13, 0, EC::XYX, CP::L4_L7, kZero, kZero, kZero, kZero,
       kZero, kZero, th(0.5), th(1.0), th(1.5)},
      // the one tabulated row that uses the second Cartan pair
      {GateName::Ry13, 0, EC::XYX, CP::L4_L8, kZero, kZero, kZero, kZero,
       kZero, kZero, th(0.5), th(1.0), th(1.5)},

      // phase index 1 (phi = 2 pi / 3)
      {GateName::Rx12, 1, EC::XYX, CP::L4_L7, kXi, ang(0.25), ang(1.0), kZero,
       ang(-0.25), kXi, tau(1), {1.0, -1.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}},
      {GateName::Ry12, 1, EC::YXY, CP::L4_L7, {0.5, 1.0}, ang(-0.5), ang(0.25),
       ang(0.25), ang(0.5), {0.5, 1.0}, {1.0, -1.0, 0.0, 0.0}, tau(1),
       {1.0, 0.0, 0.0, 0.0}},
      {GateName::Rx23, 1, EC::XYX, CP::L4_L7, kXi, ang(-0.25), ang(1.0), kZero,
       ang(0.25), kXi, tau(1), {1.0, -1.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}},
      {GateName::Ry23, 1, EC::YXY, CP::L4_L7, {0.5, 1.0}, ang(0.5), ang(0.25),
       ang(0.25), ang(-0.5), {0.5, 1.0}, {1.0, -1.0, 0.0, 0.0}, tau(1),
       {1.0, 0.0, 0.0, 0.0}},
      {GateName::Rx13, 1, EC::XYX, CP::L4_L7, ang(0.5), ang(-0.5), kZero,
       kZero, ang(-0.5), ang(0.5), th(0.5), {1.0, 0.0, -0.5, 0.0},
       {1.0, 0.0, 0.0, 0.0}},
      {GateName::Ry13, 1, EC::XYX, CP::L4_L7, ang(-0.5), ang(0.25), kZero,
       kZero, ang(0.25), ang(-0.5), th(0.5), {1.0, 0.0, -0.5, 0.0},
       {1.0, 0.0, 0.0, 0.0}},

      // phase index 2 (phi = 4 pi / 3)
      {GateName::Rx12, 2, EC::XYX, CP::L4_L7, kXi, ang(0.25), ang(-0.5),
       ang(-0.5), ang(0.75), kXi, {1.0, -1.0, 0.0, 0.0}, {1.0, -2.0, 0.0, 0.0},
       {2.0, -3.0, 0.0, 0.0}},
      {GateName::Ry12, 2, EC::YXY, CP::L4_L7, kXi, ang(0.25), ang(-0.5),
       ang(-0.5), ang(-0.25), kXi, {1.0, -1.0, 0.0, 0.0}, {1.0, -2.0, 0.0, 0.0},
       {2.0, -3.0, 0.0, 0.0}},
      {GateName::Rx23, 2, EC::XYX, CP::L4_L7, kXi, ang(-0.25), ang(0.5),
       ang(0.5), ang(-0.75), kXi, {1.0, -1.0, 0.0, 0.0}, {1.0, -2.0, 0.0, 0.0},
       {2.0, -3.0, 0.0, 0.0}},
      {GateName::Ry23, 2, EC::YXY, CP::L4_L7, kXi, ang(-0.25), ang(0.5),
       ang(0.5), ang(0.25), kXi, {1.0, -1.0, 0.0, 0.0}, {1.0, -2.0, 0.0, 0.0},
       {2.0, -3.0, 0.0, 0.0}},
      {GateName::Rx13, 2, EC::YXY, CP::L4_L7, ang(-0.5), ang(0.5), kZero,
       kZero, ang(0.5), ang(-0.5), {1.0, 0.0, -1.0, 0.0}, {1.0, 0.0, -0.5, 0.0},
       {2.0, 0.0, -1.5, 0.0}},
      {GateName::Ry13, 2, EC::YXY, CP::L4_L7, ang(0.5), ang(0.25), kZero,
       kZero, ang(0.25), ang(0.5), {1.0, 0.0, -1.0, 0.0}, {1.0, 0.0, -0.5, 0.0},
       {2.0, 0.0, -1.5, 0.0}},

      // QFT at its three admissible phases pi/6 + 2 pi p / 3
      {GateName::QFT, 0, EC::XYX, CP::L4_L7, ang(-0.5), ang(1.0 / 3.0),
       ang(0.25), ang(-0.25), ang(2.0 / 3.0), ang(-0.5),
       {1.0, 0.0, 0.0, -2.0}, {1.0, 0.0, 0.0, -1.0}, {2.0, 0.0, 0.0, -3.0}},
      {GateName::QFT, 1, EC::XYX, CP::L4_L7, ang(-0.5), ang(1.0 / 3.0),
       ang(-0.25), ang(-0.25), ang(1.0 / 3.0), ang(0.5),
       {0.0, 0.0, 0.0, 2.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 0.0, 3.0}},
      {GateName::QFT, 2, EC::YXY, CP::L4_L7, ang(-0.5), ang(1.0 / 6.0),
       ang(0.25), ang(-0.25), ang(1.0 / 6.0), ang(0.5),
       {0.0, 0.0, 0.0, 1.0}, {1.0, 0.0, 0.0, -1.0}, {1.0, 0.0, 0.0, 0.0}},
  };
  return rows;
}

double phase_of_index(GateName gate, int phase_index) {
  const double phi0 = (gate == GateName::QFT) ? kPi / 6.0 : 0.0;
  return phi0 + kTwoPi * phase_index / 3.0;
}

// Durations evaluate to exact zeros at domain endpoints up to roundoff;
// snap those so downstream validity checks see clean values.
double snap_nonnegative(double t) {
  return (t < 0.0 && t > -1e-12) ? 0.0 : t;
}

}  // namespace

double xi_angle(double theta) {
  return 0.5 * std::atan2(2.0 * std::sqrt(2.0) * std::sin(theta / 2.0),
                          1.0 + 3.0 * std::cos(theta / 2.0));
}

double rotation_tau(double theta) {
  const double c = std::cos(theta / 4.0);
  return std::acos(c * c);
}

double qft_tau() {
  static const double value = std::acos(std::sqrt(2.0 / 3.0));
  return value;
}

double small_angle_tmin(double theta) {
  return 3.0 * theta / (2.0 * std::sqrt(2.0));
}

double AngleSpec::eval(double theta) const {
  return c_pi * kPi + c_xi * xi_angle(theta);
}

double TimeSpec::eval(double theta) const {
  return c_pi * kPi + c_tau * rotation_tau(theta) + c_theta * theta +
         c_tq * qft_tau();
}

const std::vector<TableRowSpec>& table_rows() { return rows_storage(); }

AnalyticSolution evaluate_row(const TableRowSpec& row, double theta) {
  const bool rotation = is_rotation_gate(row.gate);
  if (rotation) {
    if (!(theta >= 0.0 && theta < kTwoPi)) {
      throw ThetaOutOfValidatedDomainError(
          "evaluate_row: rotation angle must lie in [0, 2pi)");
    }
  } else {
    theta = 0.0;
  }

  AnalyticSolution sol;
  sol.gate = row.gate;
  sol.phase_index = row.phase_index;
  sol.phi = phase_of_index(row.gate, row.phase_index);
  sol.theta = theta;
  sol.theta_validated = !rotation || (theta > 0.0 && theta <= kPi + 1e-12);

  SequenceParams p;
  p.alpha1 = row.alpha1.eval(theta);
  p.beta1 = row.beta1.eval(theta);
  p.gamma1 = row.gamma1.eval(theta);
  p.alpha2 = row.alpha2.eval(theta);
  p.beta2 = row.beta2.eval(theta);
  p.gamma2 = row.gamma2.eval(theta);
  p.t1 = snap_nonnegative(row.t1.eval(theta));
  p.t2 = snap_nonnegative(row.t2.eval(theta));
  p.convention = row.convention;
  p.pair = row.pair;
  sol.params = p;
  sol.tmin = row.tmin.eval(theta);

  // Defense against transcription slips: on the validated domain every
  // tabulated duration is provably nonnegative, so a negative value here is
  // a bug in the row data rather than a property of the math.
  if (sol.theta_validated && (p.t1 < 0.0 || p.t2 < 0.0)) {
    throw std::logic_error("evaluate_row: tabulated duration went negative");
  }
  return sol;
}

AnalyticSolution lookup_solution(GateName gate, double theta, double phi) {
  const GlobalPhaseSet phases = global_phases(make_gate(
      gate, is_rotation_gate(gate) ? wrap_2pi(theta) : 0.0));
  int phase_index = -1;
  for (int p = 0; p < 3; ++p) {
    if (phase_distance(phi, phases.phases[p]) < 1e-9) {
      phase_index = p;
      break;
    }
  }
  if (phase_index < 0) {
    throw UnknownCombinationError(
        std::string("lookup_solution: phi is not an admissible global phase of ") +
        to_string(gate));
  }
  for (const TableRowSpec& row : table_rows()) {
    if (row.gate == gate && row.phase_index == phase_index) {
      return evaluate_row(row, theta);
    }
  }
  throw UnknownCombinationError(
      std::string("lookup_solution: no tabulated row for ") + to_string(gate));
}

const char* to_string(GateFamily family) {
  switch (family) {
    case GateFamily::R12: return "R12";
    case GateFamily::R23: return "R23";
    case GateFamily::R13: return "R13";
  }
  return "?";
}

std::optional<GateFamily> parse_gate_family(std::string_view text) {
  if (text == "R12" || text == "r12") return GateFamily::R12;
  if (text == "R23" || text == "r23") return GateFamily::R23;
  if (text == "R13" || text == "r13") return GateFamily::R13;
  return std::nullopt;
}

std::vector<std::pair<double, double>> tmin_curve(
    GateFamily family, double phi, const std::vector<double>& theta_grid) {
  int phase_index = -1;
  for (int p = 0; p < 3; ++p) {
    if (phase_distance(phi, kTwoPi * p / 3.0) < 1e-9) {
      phase_index = p;
      break;
    }
  }
  if (phase_index < 0) {
    throw UnknownCombinationError(
        "tmin_curve: rotation phases are 0, 2pi/3 and 4pi/3");
  }

  std::vector<std::pair<double, double>> curve;
  curve.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    if (!(theta >= 0.0 && theta < kTwoPi)) {
      throw ThetaOutOfValidatedDomainError(
          "tmin_curve: theta must lie in [0, 2pi)");
    }
    double tmin = kPi;  // the middle phase is angle-independent
    if (phase_index != 1) {
      const double ramp = (family == GateFamily::R13)
                              ? 1.5 * theta
                              : 3.0 * rotation_tau(theta);
      tmin = (phase_index == 0) ? ramp : kTwoPi - ramp;
    }
    curve.emplace_back(theta, tmin);
  }
  return curve;
}

std::vector<double> validation_theta_grid() {
  std::vector<double> grid;
  grid.reserve(12);
  for (int k = 1; k <= 12; ++k) {
    grid.push_back(k * kPi / 12.0);
  }
  return grid;
}

void write_table_csv(std::ostream& os, const std::vector<double>& theta_grid) {
  os << "gate,phi,theta,alpha1,beta1,gamma1,alpha2,beta2,gamma2,t1,t2,"
        "convention,cartan_pair,Tmin,residual\n";
  char buf[64];
  const auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const TableRowSpec& row : table_rows()) {
    const bool rotation = is_rotation_gate(row.gate);
    const std::vector<double> thetas =
        rotation ? theta_grid : std::vector<double>{0.0};
    for (double theta : thetas) {
      const AnalyticSolution sol = evaluate_row(row, theta);
      const GateTarget target = make_gate(row.gate, rotation ? theta : 0.0);
      const double res = residual(sol.params, target, sol.phi);
      const SequenceParams& p = sol.params;
      os << to_string(row.gate) << ',' << num(sol.phi) << ',' << num(sol.theta)
         << ',' << num(p.alpha1) << ',' << num(p.beta1) << ',' << num(p.gamma1)
         << ',' << num(p.alpha2) << ',' << num(p.beta2) << ',' << num(p.gamma2)
         << ',' << num(p.t1) << ',' << num(p.t2) << ',' << to_string(p.convention)
         << ',' << to_string(p.pair) << ',' << num(sol.tmin) << ',' << num(res)
         << '\n';
    }
  }
}

}  // namespace qkak
