#include "qkak/pulse_json.hpp"

#include <stdexcept>
#include <string>

namespace qkak {

using nlohmann::json;

json params_to_json(const SequenceParams& p) {
  return json{{"alpha1", p.alpha1},
              {"beta1", p.beta1},
              {"gamma1", p.gamma1},
              {"alpha2", p.alpha2},
              {"beta2", p.beta2},
              {"gamma2", p.gamma2},
              {"t1", p.t1},
              {"t2", p.t2},
              {"convention", to_string(p.convention)},
              {"cartan_pair", to_string(p.pair)}};
}

SequenceParams params_from_json(const json& j) {
  SequenceParams p;
  p.alpha1 = j.at("alpha1").get<double>();
  p.beta1 = j.at("beta1").get<double>();
  p.gamma1 = j.at("gamma1").get<double>();
  p.alpha2 = j.at("alpha2").get<double>();
  p.beta2 = j.at("beta2").get<double>();
  p.gamma2 = j.at("gamma2").get<double>();
  p.t1 = j.at("t1").get<double>();
  p.t2 = j.at("t2").get<double>();
  const auto convention = parse_convention(j.at("convention").get<std::string>());
  const auto pair = parse_cartan_pair(j.at("cartan_pair").get<std::string>());
  if (!convention || !pair) {
    throw std::invalid_argument("params_from_json: unknown convention or pair");
  }
  p.convention = *convention;
  p.pair = *pair;
  return p;
}

json program_to_json(const PulseProgram& prog, const SequenceParams& source,
                     const json& target_gate, double phi) {
  json events = json::array();
  for (const PulseEvent& e : prog.events) {
    if (e.kind == PulseEvent::Kind::HardPulse) {
      events.push_back(json{{"kind", "hard_pulse"},
                            {"axis", to_string(e.axis)},
                            {"angle_rad", e.angle}});
    } else {
      events.push_back(json{{"kind", "delay"}, {"duration", e.duration}});
    }
  }
  return json{{"version", 1},
              {"q_units", true},
              {"events", std::move(events)},
              {"source_params", params_to_json(source)},
              {"target_gate", target_gate},
              {"phi", phi}};
}

PulseProgram program_from_json(const json& j) {
  if (j.at("version").get<int>() != 1) {
    throw std::invalid_argument("program_from_json: unsupported version");
  }
  PulseProgram prog;
  for (const json& e : j.at("events")) {
    const std::string kind = e.at("kind").get<std::string>();
    if (kind == "hard_pulse") {
      const std::string axis = e.at("axis").get<std::string>();
      if (axis != "x" && axis != "y") {
        throw std::invalid_argument("program_from_json: axis must be x or y");
      }
      prog.events.push_back(PulseEvent::pulse(
          axis == "x" ? PulseAxis::X : PulseAxis::Y,
          e.at("angle_rad").get<double>()));
    } else if (kind == "delay") {
      const double d = e.at("duration").get<double>();
      prog.events.push_back(PulseEvent::delay(d));
      prog.total_free_time += d;
    } else {
      throw std::invalid_argument("program_from_json: unknown event kind");
    }
  }
  return prog;
}

}  // namespace qkak
