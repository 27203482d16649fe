#pragma once

#include "realfactor/config.hpp"
#include "realfactor/errors.hpp"
#include "realfactor/factorizer.hpp"
#include "realfactor/matrix.hpp"
#include "realfactor/oracle.hpp"
#include "realfactor/polynomial.hpp"
#include "realfactor/textio.hpp"
#include "realfactor/truepair.hpp"
