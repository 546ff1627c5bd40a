#pragma once

// Core library: fields, groups, modules, bar cohomology, difference
// cohomology and the rational (G_m, G_a) computations.  The JSON-facing
// headers (scenario.hpp, report.hpp, runner.hpp, selftest.hpp) are separate
// and need nlohmann/json.

#include "diffcoh/bar.hpp"
#include "diffcoh/cohomology.hpp"
#include "diffcoh/difference_cohomology.hpp"
#include "diffcoh/error.hpp"
#include "diffcoh/field.hpp"
#include "diffcoh/group.hpp"
#include "diffcoh/linalg.hpp"
#include "diffcoh/module.hpp"
#include "diffcoh/ore.hpp"
#include "diffcoh/parallel.hpp"
#include "diffcoh/polynomial.hpp"
#include "diffcoh/random.hpp"
#include "diffcoh/ratdiff.hpp"
#include "diffcoh/semilinear.hpp"
