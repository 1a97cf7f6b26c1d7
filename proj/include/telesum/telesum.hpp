#pragma once

// Umbrella header: the full telegraph-sum distribution library.

#include "telesum/distribution.hpp"
#include "telesum/errors.hpp"
#include "telesum/finite_diff.hpp"
#include "telesum/fourier.hpp"
#include "telesum/identities.hpp"
#include "telesum/mc.hpp"
#include "telesum/quadrature.hpp"
#include "telesum/series.hpp"
#include "telesum/specfun.hpp"
#include "telesum/sumdist.hpp"
#include "telesum/table.hpp"
#include "telesum/telegraph.hpp"

namespace telesum {} // namespace telesum
