#include "camarl/envs/malfunction.hpp"

#include "camarl/errors.hpp"

namespace camarl::envs {

std::string to_string(MalfunctionKind kind) {
    return kind == MalfunctionKind::immobilize_discrete ? "immobilize_discrete" : "zero_torque_continuous";
}

MalfunctionKind malfunction_kind_from_string(const std::string& name) {
    if (name == "immobilize_discrete") return MalfunctionKind::immobilize_discrete;
    if (name == "zero_torque_continuous") return MalfunctionKind::zero_torque_continuous;
    throw InvalidInput("unknown malfunction kind '" + name + "'");
}

GridWorldState apply_malfunction(GridWorldState state, const MalfunctionSpec& spec) {
    if (spec.kind != MalfunctionKind::immobilize_discrete) {
        throw InvalidInput("grid agents only support the immobilize malfunction");
    }
    if (spec.agent_index < 0 || spec.agent_index >= static_cast<int>(state.immobilized.size())) {
        throw InvalidInput("malfunction agent index out of range");
    }
    state.immobilized[static_cast<std::size_t>(spec.agent_index)] = true;
    return state;
}

CrawlerState apply_malfunction(CrawlerState state, const MalfunctionSpec& spec) {
    if (spec.kind != MalfunctionKind::zero_torque_continuous) {
        throw InvalidInput("crawler legs only support the zero-torque malfunction");
    }
    if (spec.agent_index < 0 || spec.agent_index >= state.n_agents()) {
        throw InvalidInput("malfunction agent index out of range");
    }
    state.zero_torque[static_cast<std::size_t>(spec.agent_index)] = true;
    return state;
}

}  // namespace camarl::envs
