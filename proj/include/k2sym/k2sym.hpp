#pragma once

// Everything except the command-line layer, which needs the vendored
// CLI11 and JSON headers: include "k2sym/cli.hpp" for that.

#include "k2sym/arith/fq.hpp"
#include "k2sym/arith/integer.hpp"
#include "k2sym/arith/poly.hpp"
#include "k2sym/arith/polyfactor.hpp"
#include "k2sym/arith/primes.hpp"
#include "k2sym/charpforms.hpp"
#include "k2sym/error.hpp"
#include "k2sym/expr.hpp"
#include "k2sym/funcfield.hpp"
#include "k2sym/k2q.hpp"
#include "k2sym/localsym.hpp"
#include "k2sym/quadforms.hpp"
#include "k2sym/regnum.hpp"
#include "k2sym/selftest.hpp"
#include "k2sym/symbol_expr.hpp"
#include "k2sym/zeta.hpp"
