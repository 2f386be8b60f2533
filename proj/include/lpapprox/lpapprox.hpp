#pragma once

#include "lpapprox/quadrature.hpp"
#include "lpapprox/grid.hpp"
#include "lpapprox/basis.hpp"
#include "lpapprox/solver.hpp"
#include "lpapprox/verdict.hpp"
#include "lpapprox/certificates.hpp"
#include "lpapprox/oracles.hpp"
#include "lpapprox/regions.hpp"
#include "lpapprox/ball_quadrature.hpp"
#include "lpapprox/potentials.hpp"
#include "lpapprox/catalog.hpp"
