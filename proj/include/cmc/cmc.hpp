#pragma once

// Umbrella header: frequency-resolved causal discovery between time series
// by cross-mapping coherence, plus the benchmark simulators and CSV I/O.

#include "cmc/crossmap.hpp"
#include "cmc/embedding.hpp"
#include "cmc/errors.hpp"
#include "cmc/io.hpp"
#include "cmc/pipeline.hpp"
#include "cmc/prominence.hpp"
#include "cmc/shift_scan.hpp"
#include "cmc/simulators.hpp"
#include "cmc/spectral.hpp"
#include "cmc/timeseries.hpp"
