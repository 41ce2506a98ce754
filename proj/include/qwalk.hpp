#pragma once

#include "qwalk/classical.hpp"
#include "qwalk/coins.hpp"
#include "qwalk/config.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/io.hpp"
#include "qwalk/lattice_state.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/stats.hpp"
#include "qwalk/tolerances.hpp"
#include "qwalk/types.hpp"
