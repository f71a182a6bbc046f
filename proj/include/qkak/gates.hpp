#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "qkak/su3.hpp"

namespace qkak {

/// Target gates: selective rotations R_axis^{m-n}(theta) acting on one pair
/// of levels, and the three-level quantum Fourier transform.
enum class GateName { Rx12, Ry12, Rx23, Ry23, Rx13, Ry13, QFT };

bool is_rotation_gate(GateName name);
const char* to_string(GateName name);
std::optional<GateName> parse_gate_name(std::string_view text);

struct AngleOutOfRangeError : std::domain_error {
  using std::domain_error::domain_error;
};

struct GateTarget {
  GateName name;
  double theta;       ///< rotation angle in radians; 0 for QFT
  Operator3 unitary;  ///< the exact 3x3 matrix
};

/// Builds the named target gate. Selective rotations embed the standard
/// SU(2) rotation block, exp(-i theta sigma_axis / 2), into the chosen level
/// pair, so an x rotation by theta has off-diagonal entries -i sin(theta/2)
/// and a y rotation has off-diagonals -sin / +sin. theta must lie in
/// [0, 2pi) for rotations; theta and theta + 2pi differ by a block sign that
/// a global-phase choice absorbs. theta is ignored for the QFT.
GateTarget make_gate(GateName name, double theta = 0.0);

/// The three global phases phi for which e^{i phi} U_G lands in SU(3):
/// phi0 + 2 pi p / 3 for p = 0, 1, 2, with phi0 the smallest value in
/// [0, pi] making the determinant 1.
struct GlobalPhaseSet {
  double phi0;
  std::array<double, 3> phases;
};

GlobalPhaseSet global_phases(const GateTarget& gate);

/// Same computation from a raw unitary, used for solver targets that are
/// not named gates. Throws NotUnitaryError.
GlobalPhaseSet global_phases(const Operator3& unitary);

}  // namespace qkak
