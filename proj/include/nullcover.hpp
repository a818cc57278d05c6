#pragma once

#include "nullcover/arith.hpp"
#include "nullcover/cover.hpp"
#include "nullcover/ek.hpp"
#include "nullcover/error.hpp"
#include "nullcover/groups.hpp"
#include "nullcover/nullset_spec.hpp"
#include "nullcover/padic.hpp"
#include "nullcover/plan.hpp"
#include "nullcover/slalom.hpp"
#include "nullcover/structure.hpp"
#include "nullcover/translator.hpp"
