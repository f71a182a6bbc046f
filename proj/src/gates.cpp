#include "qkak/gates.hpp"

#include <cmath>

namespace qkak {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct LevelPair {
  int a, b;
};

LevelPair level_pair(GateName name) {
  switch (name) {
    case GateName::Rx12:
    case GateName::Ry12:
      return {0, 1};
    case GateName::Rx23:
    case GateName::Ry23:
      return {1, 2};
    default:
      return {0, 2};
  }
}

bool is_x_rotation(GateName name) {
  return name == GateName::Rx12 || name == GateName::Rx23 || name == GateName::Rx13;
}

Operator3 qft_matrix() {
  const Complex sigma = std::exp(kI * (kTwoPi / 3.0));
  const double r = 1.0 / std::sqrt(3.0);
  Operator3 F;
  F << r, r, r, r, r * sigma, r * sigma * sigma, r, r * sigma * sigma, r * sigma;
  return F;
}

}  // namespace

bool is_rotation_gate(GateName name) { return name != GateName::QFT; }

const char* to_string(GateName name) {
  switch (name) {
    case GateName::Rx12: return "Rx12";
    case GateName::Ry12: return "Ry12";
    case GateName::Rx23: return "Rx23";
    case GateName::Ry23: return "Ry23";
    case GateName::Rx13: return "Rx13";
    case GateName::Ry13: return "Ry13";
    case GateName::QFT: return "QFT";
  }
  return "?";
}

std::optional<GateName> parse_gate_name(std::string_view text) {
  constexpr GateName all[] = {GateName::Rx12, GateName::Ry12, GateName::Rx23,
                              GateName::Ry23, GateName::Rx13, GateName::Ry13,
                              GateName::QFT};
  for (GateName g : all) {
    if (text == to_string(g)) return g;
  }
  if (text == "qft" || text == "F") return GateName::QFT;
  return std::nullopt;
}

GateTarget make_gate(GateName name, double theta) {
  if (name == GateName::QFT) {
    return {name, 0.0, qft_matrix()};
  }
  if (!(theta >= 0.0 && theta < kTwoPi)) {
    throw AngleOutOfRangeError("make_gate: rotation angle must lie in [0, 2pi)");
  }
  const auto [a, b] = level_pair(name);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Operator3 G = Operator3::Identity();
  G(a, a) = c;
  G(b, b) = c;
  if (is_x_rotation(name)) {
    G(a, b) = -kI * s;
    G(b, a) = -kI * s;
  } else {
    G(a, b) = -s;
    G(b, a) = s;
  }
  return {name, theta, G};
}

GlobalPhaseSet global_phases(const Operator3& unitary) {
  if (!is_unitary(unitary)) {
    throw NotUnitaryError("global_phases: input must be unitary");
  }
  // det(e^{i phi} U) = e^{3 i phi} det(U), so phi solves 3 phi = -arg(det)
  // modulo 2 pi. Of the three solutions per turn, spaced 2 pi / 3 apart, the
  // smallest nonnegative one is always at most 2 pi / 3, hence within [0, pi].
  const double arg_det = std::arg(unitary.determinant());
  double phi0 = -arg_det / 3.0;
  while (phi0 < 0.0) phi0 += kTwoPi / 3.0;
  while (phi0 >= kTwoPi / 3.0) phi0 -= kTwoPi / 3.0;
  GlobalPhaseSet set;
  set.phi0 = phi0;
  for (int p = 0; p < 3; ++p) {
    set.phases[p] = phi0 + kTwoPi * p / 3.0;
  }
  return set;
}

GlobalPhaseSet global_phases(const GateTarget& gate) {
  return global_phases(gate.unitary);
}

}  // namespace qkak
