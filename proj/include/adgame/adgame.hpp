#pragma once

#include "adgame/common.hpp"
#include "adgame/game.hpp"
#include "adgame/io.hpp"
#include "adgame/matrix.hpp"
#include "adgame/platoon.hpp"
#include "adgame/recipes.hpp"
#include "adgame/simulator.hpp"
#include "adgame/spectral.hpp"
#include "adgame/topology.hpp"

namespace adgame {
inline constexpr const char* kVersion = "0.1.0";
}
