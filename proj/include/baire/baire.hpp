#pragma once

// Umbrella header for the library.

#include "baire/automaton.hpp"
#include "baire/buchi.hpp"
#include "baire/error.hpp"
#include "baire/io.hpp"
#include "baire/loops.hpp"
#include "baire/oracle.hpp"
#include "baire/random.hpp"
#include "baire/scc.hpp"
#include "baire/state_set.hpp"
#include "baire/verify.hpp"
#include "baire/witness.hpp"
