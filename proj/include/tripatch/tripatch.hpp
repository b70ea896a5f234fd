#pragma once

// Umbrella header: triangular Bezier patches via polar forms, de Casteljau
// evaluation/subdivision, midpoint subdivision strategies, tessellation,
// and the text/OBJ/JSON interchange formats.

#include <tripatch/core.hpp>
#include <tripatch/blossom.hpp>
#include <tripatch/decasteljau.hpp>
#include <tripatch/strategies.hpp>
#include <tripatch/tessellate.hpp>
#include <tripatch/io.hpp>
