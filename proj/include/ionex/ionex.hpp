#pragma once

// Umbrella header: the full ionex pipeline.

#include "ionex/version.hpp"
#include "ionex/linalg.hpp"
#include "ionex/quadrature.hpp"
#include "ionex/coulomb.hpp"
#include "ionex/hylleraas.hpp"
#include "ionex/matrix_elements.hpp"
#include "ionex/ratios.hpp"
#include "ionex/report.hpp"
