#pragma once

#include "mldeg/error.hpp"
#include "mldeg/exactmath/bareiss.hpp"
#include "mldeg/exactmath/bigfloat.hpp"
#include "mldeg/exactmath/bivariate.hpp"
#include "mldeg/exactmath/multipoly.hpp"
#include "mldeg/exactmath/rational.hpp"
#include "mldeg/exactmath/roots.hpp"
#include "mldeg/exactmath/series.hpp"
#include "mldeg/exactmath/sturm.hpp"
#include "mldeg/exactmath/unipoly.hpp"
#include "mldeg/polytope/fan.hpp"
#include "mldeg/polytope/hull.hpp"
#include "mldeg/polytope/lattice.hpp"
#include "mldeg/polytope/polytope.hpp"
#include "mldeg/formulas/dense.hpp"
#include "mldeg/formulas/toric.hpp"
#include "mldeg/arrangement/arrangement.hpp"
#include "mldeg/arrangement/bruteforce.hpp"
#include "mldeg/oracle/oracle.hpp"
