#pragma once

#include "oplab/boundary_analysis.hpp"
#include "oplab/error.hpp"
#include "oplab/kernels.hpp"
#include "oplab/moebius.hpp"
#include "oplab/operator_lab.hpp"
#include "oplab/power_series.hpp"
#include "oplab/weighted_spaces.hpp"
