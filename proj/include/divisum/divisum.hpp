#pragma once

#include "divisum/errors.hpp"
#include "divisum/summation.hpp"
#include "divisum/arith.hpp"
#include "divisum/divisor_approx.hpp"
#include "divisum/singular_series.hpp"
#include "divisum/lemma_sums.hpp"
#include "divisum/correlations.hpp"
#include "divisum/moments.hpp"
#include "divisum/gap_bounds.hpp"
