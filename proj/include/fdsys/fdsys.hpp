#pragma once

#include "fdsys/dot.hpp"
#include "fdsys/errors.hpp"
#include "fdsys/generators.hpp"
#include "fdsys/gf.hpp"
#include "fdsys/graph.hpp"
#include "fdsys/linear.hpp"
#include "fdsys/monomial.hpp"
#include "fdsys/multipoly.hpp"
#include "fdsys/phase.hpp"
#include "fdsys/rng.hpp"
#include "fdsys/specfile.hpp"
#include "fdsys/stochastic.hpp"
#include "fdsys/system.hpp"
#include "fdsys/updorder.hpp"
#include "fdsys/upoly.hpp"
