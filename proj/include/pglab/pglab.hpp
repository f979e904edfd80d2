#pragma once

// Umbrella header for the digamma/polygamma workbench: series evaluators with
// error estimates, an independent integral oracle, the derived function
// families under study, grid-based property checks, conjecture scans, and the
// claim registry with its report renderers.  Everything is header-only and
// free of global state; all entry points are safe to call concurrently.

#include "pglab/binet.hpp"
#include "pglab/checks.hpp"
#include "pglab/cm.hpp"
#include "pglab/constants.hpp"
#include "pglab/errors.hpp"
#include "pglab/grid.hpp"
#include "pglab/outcome.hpp"
#include "pglab/paperfun.hpp"
#include "pglab/report_io.hpp"
#include "pglab/scans.hpp"
#include "pglab/specfun.hpp"
#include "pglab/suite.hpp"
