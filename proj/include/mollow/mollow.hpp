#pragma once

#include "mollow/correlation.hpp"
#include "mollow/dispersion.hpp"
#include "mollow/errors.hpp"
#include "mollow/io.hpp"
#include "mollow/model_params.hpp"
#include "mollow/montecarlo.hpp"
#include "mollow/numerics.hpp"
#include "mollow/parallel.hpp"
#include "mollow/response.hpp"
#include "mollow/sweep.hpp"

namespace mollow {
inline constexpr const char* version = "0.1.0";
}
