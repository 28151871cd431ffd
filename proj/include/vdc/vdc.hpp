#pragma once

#include "vdc/arith.hpp"
#include "vdc/construction.hpp"
#include "vdc/cosine_poly.hpp"
#include "vdc/error.hpp"
#include "vdc/gamma.hpp"
#include "vdc/numeric.hpp"
#include "vdc/parallel.hpp"
#include "vdc/recurrence.hpp"
#include "vdc/simplex.hpp"
#include "vdc/spectrum.hpp"
#include "vdc/tau.hpp"
#include "vdc/weights.hpp"
