#pragma once

#include <json.hpp>

#include "qkak/pulse.hpp"

namespace qkak {

/// Serializes a compiled program together with its provenance. Schema:
/// {version, q_units, events: [{kind, axis?, angle_rad?, duration?}],
/// source_params, target_gate, phi}. target_gate is whatever JSON value the
/// caller uses to describe the target, typically {"name": ..., "theta": ...}.
nlohmann::json program_to_json(const PulseProgram& prog,
                               const SequenceParams& source,
                               const nlohmann::json& target_gate, double phi);

/// Rebuilds the event list from serialized form. source_params, target_gate
/// and phi are carried for audit and are not needed to replay the program.
PulseProgram program_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const SequenceParams& p);
SequenceParams params_from_json(const nlohmann::json& j);

}  // namespace qkak
