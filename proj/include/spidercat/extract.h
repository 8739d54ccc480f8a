#ifndef SPIDERCAT_EXTRACT_H
#define SPIDERCAT_EXTRACT_H

#include "spidercat/circuit.h"
#include "spidercat/spider_tree.h"
#include "spidercat/zgraph.h"

namespace spidercat {

/// Turns a Z-graph and a spider-ordering tree into a CNOT circuit with postselected
/// measurements. Spiders are visited by (tree depth, id); each spider owns a qubit
/// line that it hands on to one child (a boundary leaf if it has one). Other tree
/// children get a fresh |0> line fed by one CNOT, non-tree edges become a |0>
/// ancilla hit by one CNOT from each end and measured in Z, and a boundary spider
/// that keeps passing its line on copies itself onto a fresh output qubit.
///
/// For a Z-graph built from a marked cubic graph the CNOT count is the total number
/// of spiders plus one. Throws std::invalid_argument on an invalid tree.
Circuit extract_circuit(const ZGraph &z, const SpiderTree &tree);

}  // namespace spidercat

#endif
