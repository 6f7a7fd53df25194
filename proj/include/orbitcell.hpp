#pragma once

// Core library. The report and command-line layers (orbitcell/report.hpp,
// orbitcell/cli.hpp) additionally need the vendored json and CLI11 headers.
#include "orbitcell/apps.hpp"
#include "orbitcell/chern.hpp"
#include "orbitcell/chow_ring.hpp"
#include "orbitcell/families.hpp"
#include "orbitcell/graded_poly.hpp"
#include "orbitcell/m0n.hpp"
#include "orbitcell/rational.hpp"
#include "orbitcell/solver.hpp"
#include "orbitcell/taut_parser.hpp"
