#pragma once

#include "volterra/analysis.hpp"
#include "volterra/error.hpp"
#include "volterra/expression.hpp"
#include "volterra/model.hpp"
#include "volterra/oracles.hpp"
#include "volterra/quad.hpp"
#include "volterra/solver.hpp"
#include "volterra/repro.hpp"
#include "volterra/verify.hpp"
