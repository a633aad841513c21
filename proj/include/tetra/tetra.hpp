#pragma once

#include "tetra/matrix.hpp"
#include "tetra/vec3.hpp"
#include "tetra/pauli.hpp"
#include "tetra/sic.hpp"
#include "tetra/tables.hpp"
#include "tetra/wigner.hpp"
#include "tetra/correlations.hpp"
#include "tetra/rng.hpp"
#include "tetra/sim.hpp"
#include "tetra/qkd.hpp"
