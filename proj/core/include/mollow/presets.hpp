#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mollow/config.hpp"

namespace mollow {

/// fig1a: gamma units, Rabi frequency 4, 6, 8, k = 0.01.
/// fig1b: Rabi units, gamma = 0.2, detuning -1, 0, 1, k = 0.01.
/// fig2a: as fig1b with k = 0.2.
/// fig2b: as fig2a with gamma = 0.4.
/// All use b = 0.9 and c = 1.6e-4.
std::vector<std::string> preset_names();

/// Throws ValidationError for an unknown name.
RunConfig preset(std::string_view name);

}  // namespace mollow
