#pragma once

#include "cantor/numeric.hpp"
#include "cantor/cantor_set.hpp"
#include "cantor/staircase.hpp"
#include "cantor/valuation.hpp"
#include "cantor/measure.hpp"
#include "cantor/calculus.hpp"
#include "cantor/serialize.hpp"
