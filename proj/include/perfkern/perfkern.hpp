#pragma once

#include "perfkern/chordal_solver.hpp"
#include "perfkern/clawfree.hpp"
#include "perfkern/decomposition.hpp"
#include "perfkern/errors.hpp"
#include "perfkern/generators.hpp"
#include "perfkern/geometry.hpp"
#include "perfkern/graph.hpp"
#include "perfkern/io.hpp"
#include "perfkern/kernel.hpp"
#include "perfkern/matching.hpp"
#include "perfkern/oracle.hpp"
#include "perfkern/structure.hpp"
