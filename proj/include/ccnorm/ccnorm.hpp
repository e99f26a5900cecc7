#pragma once

#include "constants.hpp"
#include "core.hpp"
#include "formulas.hpp"
#include "operators.hpp"
#include "oracle.hpp"
#include "power.hpp"
#include "sequences.hpp"
#include "special.hpp"
#include "sums.hpp"
