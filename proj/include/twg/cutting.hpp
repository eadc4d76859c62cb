#pragma once

#include <vector>

#include "twg/bfs.hpp"
#include "twg/map.hpp"

namespace twg {

// Tree-cotree residue: the g edges in neither the BFS tree nor a spanning
// tree of the dual graph avoiding the tree edges.
std::vector<int> leftover_edges(const CombinatorialMap& m, const MapBfsTree& tree);

// Cutting data: g extra edges, the subtree spanned by the root paths to their
// endpoints, and the closed walk bounding the complementary disk. The walk is
// stored as the dart-side sequence of the boundary circle of a regular
// neighbourhood of the cut subgraph.
struct CutSystem {
    std::vector<int> extra_edges;       // map edge ids, exactly g of them
    std::vector<uint8_t> in_t0;         // per vertex: member of the subtree
    std::vector<uint8_t> f0_edge;       // per edge: cut edge (tree part or extra)
    std::vector<int> walk;              // dart sides, length 2 * |F0|
};

CutSystem cut_walk(const CombinatorialMap& m, const MapBfsTree& tree,
                   const std::vector<int>& extra);

// Partition of the subtree's vertices into vertical paths, leaf by leaf in
// embedding order. Path 0 runs from the leftmost leaf to the root.
PathPartition boundary_paths(const CombinatorialMap& m, const MapBfsTree& tree,
                             const CutSystem& cut);

struct WalkSegment {
    int path = -1;   // path id within the boundary partition
    int begin = 0;   // starting walk position
    int length = 0;  // number of walk positions
};

// Minimal split of the walk positions into runs that stay on one path, follow
// tree edges only, and are monotone in layer. Position t of the walk is the
// corner between sides t-1 and t; the segment ranges are cyclic.
struct WalkSegmentation {
    std::vector<WalkSegment> segments;
};

WalkSegmentation segment_walk(const CombinatorialMap& m, const MapBfsTree& tree,
                              const CutSystem& cut, const PathPartition& paths);

// Original vertex visited at walk position t.
int walk_corner_vertex(const CombinatorialMap& m, const CutSystem& cut, int t);

}  // namespace twg
