#pragma once

#include "cylknot/catalog.hpp"
#include "cylknot/census.hpp"
#include "cylknot/error.hpp"
#include "cylknot/exact.hpp"
#include "cylknot/geometry.hpp"
#include "cylknot/invariants.hpp"
#include "cylknot/io.hpp"
#include "cylknot/matrix.hpp"
#include "cylknot/solver.hpp"
#include "cylknot/topomatrix.hpp"
