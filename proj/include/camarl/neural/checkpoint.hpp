#pragma once

#include <filesystem>
#include <iosfwd>

#include "camarl/neural/mlp.hpp"

namespace camarl::neural {

// Text format with every real written as a C99 hex float, so a save/load cycle
// reproduces the parameters bit for bit:
//
//   camarl-mlp 1
//   layers <count> <size_0> ... <size_L>
//   activations <name_0> ... <name_{L-1}>
//   weight <l> <rows> <cols>
//   <row-major values>
//   bias <l> <size>
//   <values>
void save_parameters(const MlpParameters& params, std::ostream& out);
MlpParameters load_parameters(std::istream& in);

void save_parameters(const MlpParameters& params, const std::filesystem::path& path);
MlpParameters load_parameters(const std::filesystem::path& path);

}  // namespace camarl::neural
