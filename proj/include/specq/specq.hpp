#pragma once

// Umbrella header.

#include "specq/algebraic.hpp"
#include "specq/classify.hpp"
#include "specq/errors.hpp"
#include "specq/ifs.hpp"
#include "specq/interval.hpp"
#include "specq/polynomial.hpp"
#include "specq/rational.hpp"
#include "specq/spectrum.hpp"
#include "specq/sturm.hpp"
