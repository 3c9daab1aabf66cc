#pragma once

#include "fuzzyvc/errors.hpp"
#include "fuzzyvc/rational.hpp"
#include "fuzzyvc/random.hpp"
#include "fuzzyvc/combinatorics.hpp"
#include "fuzzyvc/cover_search.hpp"
#include "fuzzyvc/fuzzy_core.hpp"
#include "fuzzyvc/lp_exact.hpp"
#include "fuzzyvc/width_metrics.hpp"
#include "fuzzyvc/nets.hpp"
#include "fuzzyvc/helly_pq.hpp"
#include "fuzzyvc/instance_io.hpp"
#include "fuzzyvc/generators.hpp"
#include "fuzzyvc/report.hpp"
