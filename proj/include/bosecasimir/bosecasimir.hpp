#pragma once

#include "bosecasimir/casimir.hpp"
#include "bosecasimir/errors.hpp"
#include "bosecasimir/oracles.hpp"
#include "bosecasimir/physics.hpp"
#include "bosecasimir/polylog.hpp"
#include "bosecasimir/sweep.hpp"
#include "bosecasimir/types.hpp"
