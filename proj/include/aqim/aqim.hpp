#pragma once

#include "aqim/bounds.hpp"
#include "aqim/ensemble.hpp"
#include "aqim/experiments.hpp"
#include "aqim/metrics.hpp"
#include "aqim/partition.hpp"
#include "aqim/record.hpp"
#include "aqim/rng.hpp"
#include "aqim/sampling.hpp"
#include "aqim/special_functions.hpp"
#include "aqim/state.hpp"
#include "aqim/stats.hpp"
#include "aqim/subspace_merit.hpp"
#include "aqim/tails.hpp"
#include "aqim/thresholds.hpp"
