#pragma once

// Umbrella header. Pull in solvers_http.hpp separately if the HTTP solver is
// needed; it drags in the bundled HTTP client.

#include "tsbench/core.hpp"
#include "tsbench/dataset_io.hpp"
#include "tsbench/describe.hpp"
#include "tsbench/eval.hpp"
#include "tsbench/formats.hpp"
#include "tsbench/prompts.hpp"
#include "tsbench/report.hpp"
#include "tsbench/rng.hpp"
#include "tsbench/runner.hpp"
#include "tsbench/solvers.hpp"
#include "tsbench/stats.hpp"
#include "tsbench/synth.hpp"
#include "tsbench/synth_multi.hpp"
#include "tsbench/synth_quadrant.hpp"
#include "tsbench/synth_uni.hpp"
#include "tsbench/tasks.hpp"
