#pragma once

#include "hsmult/errors.hpp"
#include "hsmult/exponent.hpp"
#include "hsmult/scalar.hpp"
#include "hsmult/param_poly.hpp"
#include "hsmult/ratfunc.hpp"
#include "hsmult/sparse_poly.hpp"
#include "hsmult/series.hpp"
#include "hsmult/parser.hpp"
#include "hsmult/linalg.hpp"
#include "hsmult/dual_space.hpp"
#include "hsmult/modp.hpp"
#include "hsmult/matlis.hpp"
#include "hsmult/reduction.hpp"
#include "hsmult/oracles.hpp"
#include "hsmult/instance_io.hpp"
