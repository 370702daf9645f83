#pragma once

#include <string>

#include "camarl/envs/crawler.hpp"
#include "camarl/envs/gridworld.hpp"

namespace camarl::envs {

enum class MalfunctionKind { immobilize_discrete, zero_torque_continuous };

std::string to_string(MalfunctionKind kind);
MalfunctionKind malfunction_kind_from_string(const std::string& name);

struct MalfunctionSpec {
    int agent_index = 0;
    MalfunctionKind kind = MalfunctionKind::immobilize_discrete;
};

// The grid agent keeps its cell and ignores its own actions, but can still be pushed.
GridWorldState apply_malfunction(GridWorldState state, const MalfunctionSpec& spec);

// The crawler leg applies (0, 0) on every subsequent step.
CrawlerState apply_malfunction(CrawlerState state, const MalfunctionSpec& spec);

}  // namespace camarl::envs
