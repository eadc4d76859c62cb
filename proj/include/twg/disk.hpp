#pragma once

#include <optional>
#include <vector>

#include "twg/bfs.hpp"
#include "twg/cutting.hpp"
#include "twg/map.hpp"

namespace twg {

// Cut-open disk: a planar all-positive map whose outer face is the boundary
// cycle. Vertices of the cut subtree appear once per corner of the boundary
// walk; interior vertices are shared with the host map.
struct Disk {
    CombinatorialMap m;
    FaceSet fs;
    Graph ug;                 // underlying simple graph of m
    int outer_face = -1;
    std::vector<int> parent;       // disk forest, -1 at roots
    std::vector<int> parent_edge;  // disk edge realising the parent link
    std::vector<int> layer;
    std::vector<int> to_orig;  // disk vertex -> host vertex
};

// Registry of the vertical paths created during disk processing. Paths are
// stored top to bottom as disk vertex lists.
struct PathStore {
    std::vector<std::vector<int>> verts;
    int add(std::vector<int> vs) {
        verts.push_back(std::move(vs));
        return (int)verts.size() - 1;
    }
    int size() const { return (int)verts.size(); }
};

// Contiguous run of boundary vertices lying on one path, listed in
// boundary-cycle order with strictly monotone layers.
struct Arc {
    int path = -1;
    std::vector<int> verts;
};

// Sub-disk given by its inner faces and its boundary cycle split into arcs.
struct Region {
    std::vector<int> faces;  // sorted disk face ids
    std::vector<Arc> arcs;   // cyclic order around the boundary
};

struct RootedTreeDecomposition {
    std::vector<std::vector<int>> bags;  // path ids; bag 0 is the root
    std::vector<int> parent;             // -1 at the root
};

// Disk produced by cutting a genus-g triangulation open; `segment_paths`
// lists the store ids of the boundary segments in walk order, and
// `segment_host_path` maps each of them to the boundary path of the host it
// refines.
struct CutDisk {
    Disk disk;
    Region whole;
    PathStore store;
    std::vector<int> segment_paths;
    std::vector<int> segment_host_path;
};

CutDisk build_disk(const CombinatorialMap& host, const MapBfsTree& tree, const CutSystem& cut,
                   const PathPartition& bpaths, const WalkSegmentation& segs);

// Planar variant: the host triangulation itself, with the chosen outer face's
// three corners as singleton boundary paths. The tree must be rooted at a
// vertex of that face.
CutDisk build_disk_planar(const CombinatorialMap& host, const MapBfsTree& tree, int outer_face);

// Vertex colours 0,1,2 by the first boundary arc hit on the ancestor chain.
struct ThreeColoring {
    std::vector<int8_t> color;  // indexed by disk vertex, -1 outside the region
};

// groups[i] is the colour of arc entry i; set `transparent[i]` to let chains
// climb through that arc. Boundary classes must be consecutive and non-empty.
ThreeColoring reach_coloring(const Disk& d, const Region& r, const std::vector<int>& groups,
                             const std::vector<uint8_t>* transparent = nullptr);

// First region face (in id order) carrying all three colours.
int find_trichromatic_face(const Disk& d, const Region& r, const ThreeColoring& c);

std::vector<int> region_interior(const Disk& d, const Region& r);

// Lemma-style recursive decomposition of a region bounded by at most six
// vertical paths: grows `store` with the new interior paths and returns the
// root bag of the produced subtree inside `dec`.
int decompose_region(const Disk& d, const Region& r, PathStore& store,
                     RootedTreeDecomposition& dec);

// Convenience wrapper returning the partition of the region's vertices
// together with the rooted tree-decomposition of its quotient.
struct HexDecomposition {
    PathPartition partition;  // over disk vertices (uncovered verts get -1)
    RootedTreeDecomposition dec;
    std::vector<std::vector<int>> path_verts;  // store contents
};

HexDecomposition decompose_hexagon(const Disk& d, const Region& r);

// Skeleton of vertical paths splitting a many-path region into faces bounded
// by at most six paths each.
struct Skeleton {
    std::vector<int> paths;      // store ids of every bounding path
    std::vector<Region> faces;
};

Skeleton split_region(const Disk& d, const Region& r, PathStore& store);

// Refines skeleton faces with chords until each non-empty face has an
// interior component adjacent to every bounding path.
Skeleton add_separating_chords(const Disk& d, const Skeleton& s, const PathStore& store);

struct ProductStructure {
    int genus = 0;
    PathPartition partition;  // over host vertices
    RootedTreeDecomposition dec;
    int root_bag_size = 0;
    int root_children = 0;
    int max_nonroot_bag = 0;
    int skeleton_faces = 0;   // non-empty faces before chording
    int chorded_faces = 0;    // non-empty faces after chording
};

// Full pipeline on a triangulation with a BFS tree; handles genus zero via
// the single-region route (tree rooted on the outer face).
ProductStructure product_structure(const CombinatorialMap& host, const MapBfsTree& tree);

// Planar helper: picks the outer face (face 0) and a root on it.
int planar_root(const CombinatorialMap& host);

void check_tree_decomposition(const QuotientGraph& q, const RootedTreeDecomposition& dec);

// Verifies every bound promised by the product structure against the host
// triangulation, including the per-child touching-component property.
void check_product_structure(const CombinatorialMap& host, const ProductStructure& ps);

}  // namespace twg
