#pragma once

#include "algebra.hpp"
#include "bits.hpp"
#include "chain.hpp"
#include "exact_solver.hpp"
#include "gf2poly.hpp"
#include "io.hpp"
#include "modp.hpp"
#include "numtheory.hpp"
#include "rational.hpp"
#include "simulate.hpp"
#include "spectral.hpp"
#include "version.hpp"
