#include "qkak/pulse.hpp"

#include <cmath>

namespace qkak {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kAngleEps = 1e-14;
constexpr double kDelayEps = 1e-15;

double wrap_pi(double a) {
  double r = std::fmod(a + kPi, kTwoPi);
  if (r <= 0.0) r += kTwoPi;
  return r - kPi;
}

void append_merged(std::vector<PulseEvent>& out, const PulseEvent& e) {
  if (e.kind == PulseEvent::Kind::HardPulse) {
    const double a = wrap_pi(e.angle);
    if (std::fabs(a) < kAngleEps) return;
    if (!out.empty() && out.back().kind == PulseEvent::Kind::HardPulse &&
        out.back().axis == e.axis) {
      const double merged = wrap_pi(out.back().angle + a);
      out.pop_back();
      if (std::fabs(merged) >= kAngleEps) {
        out.push_back(PulseEvent::pulse(e.axis, merged));
      }
      return;
    }
    out.push_back(PulseEvent::pulse(e.axis, a));
  } else {
    if (e.duration < kDelayEps) return;
    if (!out.empty() && out.back().kind == PulseEvent::Kind::Delay) {
      out.back().duration += e.duration;
      return;
    }
    out.push_back(e);
  }
}

}  // namespace

const char* to_string(PulseAxis axis) {
  return axis == PulseAxis::X ? "x" : "y";
}

PulseEvent PulseEvent::pulse(PulseAxis axis, double angle) {
  PulseEvent e;
  e.kind = Kind::HardPulse;
  e.axis = axis;
  e.angle = angle;
  return e;
}

PulseEvent PulseEvent::delay(double duration) {
  PulseEvent e;
  e.kind = Kind::Delay;
  e.duration = duration;
  return e;
}

int PulseProgram::pulse_count() const {
  int n = 0;
  for (const PulseEvent& e : events) {
    if (e.kind == PulseEvent::Kind::HardPulse) ++n;
  }
  return n;
}

int PulseProgram::delay_count() const {
  return static_cast<int>(events.size()) - pulse_count();
}

PulseProgram compile_sequence(const SequenceParams& p, bool merge) {
  if (p.t1 < 0.0 || p.t2 < 0.0) {
    throw NegativeTimeError("compile_sequence: durations must be nonnegative");
  }
  const bool wing_a_is_x = (p.convention == EulerConvention::XYX);
  const PulseAxis ax_a = wing_a_is_x ? PulseAxis::X : PulseAxis::Y;
  const PulseAxis ax_b = wing_a_is_x ? PulseAxis::Y : PulseAxis::X;

  // Factors in operator order, leftmost applied last.
  std::vector<PulseEvent> ops;
  ops.reserve(12);
  ops.push_back(PulseEvent::pulse(ax_a, p.alpha1));
  ops.push_back(PulseEvent::pulse(ax_b, p.beta1));
  ops.push_back(PulseEvent::pulse(ax_a, p.gamma1));
  ops.push_back(PulseEvent::delay(p.t1));
  if (p.pair == CartanPair::L4_L7) {
    ops.push_back(PulseEvent::pulse(PulseAxis::Y, kPi / 2.0));
    ops.push_back(PulseEvent::delay(p.t2));
    ops.push_back(PulseEvent::pulse(PulseAxis::Y, -kPi / 2.0));
  } else {
    ops.push_back(PulseEvent::pulse(PulseAxis::Y, -kPi / 2.0));
    ops.push_back(PulseEvent::pulse(PulseAxis::X, kPi / 4.0));
    ops.push_back(PulseEvent::delay(p.t2));
    ops.push_back(PulseEvent::pulse(PulseAxis::X, -kPi / 4.0));
    ops.push_back(PulseEvent::pulse(PulseAxis::Y, kPi / 2.0));
  }
  ops.push_back(PulseEvent::pulse(ax_a, p.alpha2));
  ops.push_back(PulseEvent::pulse(ax_b, p.beta2));
  ops.push_back(PulseEvent::pulse(ax_a, p.gamma2));

  PulseProgram prog;
  prog.total_free_time = p.t1 + p.t2;
  if (!merge) {
    prog.events.assign(ops.rbegin(), ops.rend());
    return prog;
  }
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    append_merged(prog.events, *it);
  }
  return prog;
}

Operator3 simulate_ideal(const PulseProgram& prog) {
  Operator3 M = Operator3::Identity();
  for (const PulseEvent& e : prog.events) {
    if (e.kind == PulseEvent::Kind::HardPulse) {
      const Operator3 R =
          e.axis == PulseAxis::X ? rotation_x(e.angle) : rotation_y(e.angle);
      M = R * M;
    } else {
      M = free_evolution(e.duration) * M;
    }
  }
  return M;
}

Operator3 simulate_finite(const PulseProgram& prog, double omega) {
  if (!(omega > 0.0)) {
    throw NonpositiveAmplitudeError(
        "simulate_finite: rf amplitude must be positive");
  }
  const SpinOperators& ops = spin1_operators();
  Operator3 M = Operator3::Identity();
  for (const PulseEvent& e : prog.events) {
    if (e.kind == PulseEvent::Kind::HardPulse) {
      if (e.angle == 0.0) continue;
      const Operator3& axis = e.axis == PulseAxis::X ? ops.Ix : ops.Iy;
      const double sign = e.angle > 0.0 ? 1.0 : -1.0;
      const Operator3 H = ops.Hq + sign * omega * axis;
      M = herm_expm(H, std::fabs(e.angle) / omega) * M;
    } else {
      M = free_evolution(e.duration) * M;
    }
  }
  return M;
}

std::vector<std::pair<double, double>> error_vs_amplitude(
    const PulseProgram& prog, const Operator3& target,
    const std::vector<double>& omegas) {
  std::vector<std::pair<double, double>> out;
  out.reserve(omegas.size());
  for (double omega : omegas) {
    out.emplace_back(omega,
                     1.0 - gate_fidelity(simulate_finite(prog, omega), target));
  }
  return out;
}

}  // namespace qkak
