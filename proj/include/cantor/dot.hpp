#pragma once

#include <cantor/cantortrie.hpp>
#include <cantor/construction.hpp>

#include <string>
#include <vector>

namespace cantor {

/// Graphviz rendering of a trie. FULL leaves are filled boxes, EMPTY leaves
/// plain boxes, split nodes points labelled by their stem.
std::string complex_to_dot(const CylinderComplex& c, const std::string& name = "complex");

/// The nested intervals of a bisection run as a chain, one node per step.
std::string trace_to_dot(const std::vector<BisectionStep>& trace, const std::string& name = "bisection");

}  // namespace cantor
