#pragma once

#include "cltlab/version.hpp"
#include "cltlab/errors.hpp"
#include "cltlab/rational.hpp"
#include "cltlab/rng.hpp"
#include "cltlab/gaussian.hpp"
#include "cltlab/distribution.hpp"
#include "cltlab/scheme.hpp"
#include "cltlab/diagnostics.hpp"
#include "cltlab/step_cdf.hpp"
#include "cltlab/exact_engine.hpp"
#include "cltlab/mc_engine.hpp"
#include "cltlab/gaussfit.hpp"
#include "cltlab/json_writer.hpp"
#include "cltlab/config.hpp"
#include "cltlab/report.hpp"
#include "cltlab/runner.hpp"
