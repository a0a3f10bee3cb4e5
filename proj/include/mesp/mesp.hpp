#pragma once

// Everything in one include.

#include "mesp/csc.hpp"
#include "mesp/errors.hpp"
#include "mesp/generators.hpp"
#include "mesp/graph.hpp"
#include "mesp/graph_io.hpp"
#include "mesp/modular_decomposition.hpp"
#include "mesp/modulators.hpp"
#include "mesp/shortest_paths.hpp"
#include "mesp/solvers/answer.hpp"
#include "mesp/solvers/auto.hpp"
#include "mesp/solvers/bruteforce.hpp"
#include "mesp/solvers/cluster.hpp"
#include "mesp/solvers/disjoint_paths.hpp"
#include "mesp/solvers/modular_width.hpp"
