#pragma once

#include "vlcode/codes.hpp"
#include "vlcode/energy.hpp"
#include "vlcode/entropy.hpp"
#include "vlcode/exact_models.hpp"
#include "vlcode/measures.hpp"
#include "vlcode/parallel.hpp"
#include "vlcode/processes.hpp"
#include "vlcode/rational.hpp"
#include "vlcode/rng.hpp"
#include "vlcode/string_calc.hpp"
#include "vlcode/words.hpp"
#include "vlcode/zeta.hpp"

namespace vlcode {
inline constexpr const char* library_version = "0.1.0";
}
