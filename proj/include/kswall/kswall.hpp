#pragma once

#include "kswall/automorphism.hpp"
#include "kswall/engine.hpp"
#include "kswall/io.hpp"
#include "kswall/lattice.hpp"
#include "kswall/novikov.hpp"
#include "kswall/rational.hpp"
#include "kswall/scenes.hpp"
#include "kswall/svg.hpp"
#include "kswall/tropical.hpp"
