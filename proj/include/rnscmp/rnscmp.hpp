#pragma once

// Umbrella header for the rnscmp library.

#include <rnscmp/bench.hpp>
#include <rnscmp/circuit.hpp>
#include <rnscmp/cluster.hpp>
#include <rnscmp/compare.hpp>
#include <rnscmp/error.hpp>
#include <rnscmp/math.hpp>
#include <rnscmp/moduli.hpp>
#include <rnscmp/netlist.hpp>
#include <rnscmp/subgroup_table.hpp>
#include <rnscmp/verify.hpp>
