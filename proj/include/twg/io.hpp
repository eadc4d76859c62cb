#pragma once

#include <iosfwd>
#include <string>

#include "twg/disk.hpp"
#include "twg/map.hpp"
#include "twg/trigraph.hpp"

namespace twg {

// Embedding files:
//   map <vertex-count> <edge-count>
//   v <id>: <edge-id><+|-> ...          one line per vertex, cyclic rotation
// Comments start with '#'. Edge endpoints are inferred from the two
// occurrences of each edge id. Writing renumbers edges by first appearance,
// starts every rotation at the smallest incident edge, and is stable under
// re-parsing.
CombinatorialMap read_map(std::istream& in);
void write_map(std::ostream& out, const CombinatorialMap& m);

// Plain graph files: "graph <n> <m>" then "e <u> <v>" lines.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

// Contraction sequence files:
//   ctrseq <initial-vertex-count>
//   c <u> <v> -> <w> [I.<sub>|II|III]
//   maxred <observed>
ContractionSequence read_sequence(std::istream& in, int* maxred_line = nullptr);
void write_sequence(std::ostream& out, const ContractionSequence& seq, int maxred,
                    bool emit_phases);

// Decomposition files:
//   decomp genus <g>
//   p <id>: <v> <v> ...                 paths, top to bottom
//   b <id> parent <root|id>: <path-id> ...
//   summary root-bag <size> <bound>
//   summary children <count> <bound>
//   summary max-nonroot-bag <size> 8
struct DecompositionFile {
    int genus = 0;
    std::vector<std::vector<int>> paths;
    RootedTreeDecomposition dec;
    int root_bag = 0, root_bound = 0;
    int children = 0, child_bound = 0;
    int max_nonroot = 0;
};

DecompositionFile read_decomposition(std::istream& in);
void write_decomposition(std::ostream& out, const ProductStructure& ps);

// Rebuilds a ProductStructure from a parsed file so the full checker can run
// against the host map.
ProductStructure to_product_structure(const DecompositionFile& f, int nv);

}  // namespace twg
