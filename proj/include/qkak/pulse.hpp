#pragma once

#include <stdexcept>
#include <vector>

#include "qkak/cartan.hpp"
#include "qkak/su3.hpp"

namespace qkak {

struct NonpositiveAmplitudeError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class PulseAxis { X, Y };

const char* to_string(PulseAxis axis);

/// One event of a pulse program: an instantaneous nonselective rotation
/// about x or y, or an interval of free evolution under the quadrupole
/// Hamiltonian. Pulse angles are normalized to (-pi, pi]; delays are
/// nonnegative and expressed in units of 1/q.
struct PulseEvent {
  enum class Kind { HardPulse, Delay };

  Kind kind;
  PulseAxis axis = PulseAxis::X;  ///< meaningful for pulses only
  double angle = 0.0;             ///< radians, pulses only
  double duration = 0.0;          ///< 1/q, delays only

  static PulseEvent pulse(PulseAxis axis, double angle);
  static PulseEvent delay(double duration);
};

/// Time-ordered pulse program: events[0] executes first.
struct PulseProgram {
  std::vector<PulseEvent> events;
  double total_free_time = 0.0;  ///< sum of delay durations, equals t1 + t2

  int pulse_count() const;
  int delay_count() const;
};

/// Expands the eight-factor sequence into hard pulses and delays. Each
/// central factor becomes framing pulses around a delay (e^{-i t L7} needs a
/// y(pi/2)/y(-pi/2) frame, e^{-i t L8} a combined y and x(pi/4) frame); the
/// factor list is then reversed into execution order, since the first factor
/// applied to a state is the rightmost in the operator product. With merge
/// enabled, adjacent same-axis pulses are summed mod 2pi, adjacent delays
/// are joined, and identity events are dropped; programs built from the
/// L4/L7 pair never exceed 8 pulses and 2 delays. Throws NegativeTimeError.
PulseProgram compile_sequence(const SequenceParams& p, bool merge = true);

/// Product of exact rotation and free-evolution propagators in time order.
Operator3 simulate_ideal(const PulseProgram& prog);

/// Same product with every hard pulse replaced by evolution under
/// Hq + omega * I_axis for time |angle| / omega; negative angles flip the
/// amplitude sign, the phase-inverted rf convention. Throws
/// NonpositiveAmplitudeError for omega <= 0.
Operator3 simulate_finite(const PulseProgram& prog, double omega);

/// Infidelity 1 - gate_fidelity(simulate_finite(prog, omega), target) for
/// each amplitude. Amplitudes must be positive and ascending.
std::vector<std::pair<double, double>> error_vs_amplitude(
    const PulseProgram& prog, const Operator3& target,
    const std::vector<double>& omegas);

}  // namespace qkak
