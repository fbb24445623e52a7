#pragma once

#include "stabthresh/integration.hpp"
#include "stabthresh/lattice_points.hpp"
#include "stabthresh/linalg.hpp"
#include "stabthresh/polytope.hpp"
#include "stabthresh/rational.hpp"
#include "stabthresh/triangulation.hpp"
