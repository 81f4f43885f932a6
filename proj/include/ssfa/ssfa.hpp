#ifndef SSFA_SSFA_HPP
#define SSFA_SSFA_HPP

// Self-similar factor approximants: extrapolation of truncated
// small-variable expansions to their large-variable power law.

#include "approximant.hpp"
#include "cases.hpp"
#include "complex.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "precision.hpp"
#include "roots.hpp"
#include "series.hpp"
#include "solver.hpp"

#endif
