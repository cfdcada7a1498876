#pragma once

#include "effdirac/constants.hpp"
#include "effdirac/coupling.hpp"
#include "effdirac/dirac.hpp"
#include "effdirac/errors.hpp"
#include "effdirac/numerics.hpp"
#include "effdirac/observables.hpp"
#include "effdirac/solver.hpp"
#include "effdirac/states.hpp"
