#pragma once

#include "sobtrace/constants.hpp"
#include "sobtrace/errors.hpp"
#include "sobtrace/grid.hpp"
#include "sobtrace/harness.hpp"
#include "sobtrace/oracle.hpp"
#include "sobtrace/quadrature.hpp"
#include "sobtrace/specfun.hpp"
#include "sobtrace/spectral.hpp"
#include "sobtrace/traceops.hpp"
