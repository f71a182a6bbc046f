#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "qkak/cartan.hpp"
#include "qkak/gates.hpp"

namespace qkak {

struct UnknownCombinationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ThetaOutOfValidatedDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Half-angle of the frame tilt entering the closed-form solutions:
/// xi = (1/2) atan2(2 sqrt(2) sin(theta/2), 1 + 3 cos(theta/2)), taken on
/// the branch that is continuous through theta = pi.
double xi_angle(double theta);

/// Evolution time unit of the rotation solutions: arccos(cos^2(theta/4)).
double rotation_tau(double theta);

/// Evolution time unit of the Fourier-transform solutions,
/// arccos(sqrt(2/3)) = (1/2) arctan(2 sqrt(2)) which also equals xi(pi).
double qft_tau();

/// Small-angle limit of the minimum rotation time: 3 theta / (2 sqrt(2)).
double small_angle_tmin(double theta);

/// Angle entry of a closed-form parameter row: c_pi * pi + c_xi * xi(theta).
struct AngleSpec {
  double c_pi = 0.0;
  double c_xi = 0.0;
  double eval(double theta) const;
};

/// Duration entry: c_pi * pi + c_tau * tau(theta) + c_theta * theta
/// + c_tq * qft_tau().
struct TimeSpec {
  double c_pi = 0.0;
  double c_tau = 0.0;
  double c_theta = 0.0;
  double c_tq = 0.0;
  double eval(double theta) const;
};

/// One closed-form solution row: a gate, one of its three admissible global
/// phases, and the parameter expressions that implement it time-optimally.
struct TableRowSpec {
  GateName gate;
  int phase_index;  ///< 0, 1, 2 indexing phi0 + 2 pi p / 3
  EulerConvention convention;
  CartanPair pair;
  AngleSpec alpha1, beta1, gamma1, alpha2, beta2, gamma2;
  TimeSpec t1, t2;
  TimeSpec tmin;  ///< stated separately so t1 + t2 = tmin stays a checkable claim
};

/// All 21 rows: 6 rotation gates x 3 phases, plus 3 QFT phases.
const std::vector<TableRowSpec>& table_rows();

struct AnalyticSolution {
  GateName gate;
  int phase_index;
  double phi;    ///< radians
  double theta;  ///< radians; 0 for QFT
  SequenceParams params;
  double tmin;
  bool theta_validated;  ///< true when theta lies in the validated domain (0, pi]
};

/// Evaluates a row at the given angle. Rotation rows are validated on
/// (0, pi]; angles in (pi, 2 pi) are evaluated but flagged, and angles
/// outside [0, 2 pi) throw ThetaOutOfValidatedDomainError. The QFT rows
/// ignore theta.
AnalyticSolution evaluate_row(const TableRowSpec& row, double theta);

/// Finds the row for (gate, phi) and evaluates it. phi must match one of the
/// gate's admissible phases within 1e-9 (mod 2 pi) or the lookup throws
/// UnknownCombinationError.
AnalyticSolution lookup_solution(GateName gate, double theta, double phi);

/// Curve families of the minimum-time plots; the x and y rotations of a
/// level pair share their closed-form T_min.
enum class GateFamily { R12, R23, R13 };

const char* to_string(GateFamily family);
std::optional<GateFamily> parse_gate_family(std::string_view text);

/// Evaluates the closed-form T_min on a theta grid for one family and phase.
std::vector<std::pair<double, double>> tmin_curve(GateFamily family, double phi,
                                                  const std::vector<double>& theta_grid);

/// The residual threshold every tabulated row must meet on the validation grid.
inline constexpr double kTableResidualTol = 1e-9;

/// Standard validation grid {k pi / 12 : k = 1..12}.
std::vector<double> validation_theta_grid();

/// Writes the full table as CSV: rotation rows evaluated on the given grid,
/// QFT rows once, with the per-row reproduction residual in the last column.
/// Columns: gate, phi, theta, alpha1, beta1, gamma1, alpha2, beta2, gamma2,
/// t1, t2, convention, cartan_pair, Tmin, residual.
void write_table_csv(std::ostream& os, const std::vector<double>& theta_grid);

}  // namespace qkak
