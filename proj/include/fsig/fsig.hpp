#pragma once

// Exact F-signature toolkit for hypersurface pairs over prime fields.
//
// The central object is the function t -> s(R, f^t) for R = F_p[[x_1..x_n]]
// and f in the maximal ideal, evaluated exactly at p-adic rationals t = a/p^c
// as a normalized matrix rank over F_p. Satellite modules cover Newton
// polytope volumes for monomial ideals, self-similarity (p-fractal) probes,
// and structural property checks (monotonicity, convexity, slope identities).

#include "fsig/cache.hpp"
#include "fsig/errors.hpp"
#include "fsig/fractal.hpp"
#include "fsig/newton.hpp"
#include "fsig/padic.hpp"
#include "fsig/parse.hpp"
#include "fsig/poly.hpp"
#include "fsig/prime_field.hpp"
#include "fsig/rational.hpp"
#include "fsig/rational_matrix.hpp"
#include "fsig/sigcore.hpp"
#include "fsig/sparse_matrix_fp.hpp"
#include "fsig/table_io.hpp"
#include "fsig/verify.hpp"
