#pragma once

#include "mbeu/error.hpp"
#include "mbeu/rational.hpp"
#include "mbeu/model.hpp"
#include "mbeu/mlr.hpp"
#include "mbeu/simplex.hpp"
#include "mbeu/feasibility.hpp"
#include "mbeu/rationalizer.hpp"
#include "mbeu/verifier.hpp"
#include "mbeu/generators.hpp"
#include "mbeu/lehmann.hpp"
#include "mbeu/json_io.hpp"
