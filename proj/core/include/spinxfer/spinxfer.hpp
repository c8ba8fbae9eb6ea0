#pragma once

#include "spinxfer/basis.hpp"
#include "spinxfer/ensemble.hpp"
#include "spinxfer/errors.hpp"
#include "spinxfer/evolution.hpp"
#include "spinxfer/hamiltonian.hpp"
#include "spinxfer/observables.hpp"
#include "spinxfer/rng.hpp"
#include "spinxfer/trend.hpp"
