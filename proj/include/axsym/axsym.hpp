#pragma once

// Umbrella header: the whole library in one include.

#include "axsym/empirical.hpp"
#include "axsym/error.hpp"
#include "axsym/estimator.hpp"
#include "axsym/geometry.hpp"
#include "axsym/ingest.hpp"
#include "axsym/io.hpp"
#include "axsym/parallel.hpp"
#include "axsym/peaks.hpp"
#include "axsym/rng.hpp"
#include "axsym/scenarios.hpp"
