#pragma once

#include "cfin/conformable.hpp"
#include "cfin/csv.hpp"
#include "cfin/finance.hpp"
#include "cfin/linalg.hpp"
#include "cfin/lyapunov.hpp"
#include "cfin/svg.hpp"
#include "cfin/sweep.hpp"
