// Umbrella header.
#pragma once

#include "graph.hpp"
#include "io.hpp"
#include "connectivity.hpp"
#include "minor.hpp"
#include "rotation.hpp"
#include "genus_search.hpp"
#include "planarity.hpp"
#include "faceset.hpp"
#include "constructions.hpp"
