#pragma once

// Umbrella header.

#include "itermaps/capture.hpp"
#include "itermaps/cluster.hpp"
#include "itermaps/coefficients.hpp"
#include "itermaps/errors.hpp"
#include "itermaps/io.hpp"
#include "itermaps/iterative_map.hpp"
#include "itermaps/linalg.hpp"
#include "itermaps/map_spec.hpp"
#include "itermaps/maps1d.hpp"
#include "itermaps/mapsnd.hpp"
#include "itermaps/polynomial_system.hpp"
#include "itermaps/problems.hpp"
#include "itermaps/scalar_problem.hpp"
#include "itermaps/vector_problem.hpp"
#include "itermaps/version.hpp"
