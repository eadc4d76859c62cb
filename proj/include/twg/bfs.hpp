#pragma once

#include <vector>

#include "twg/map.hpp"

namespace twg {

// Simple undirected graph with sorted adjacency lists.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;
    std::vector<std::pair<int, int>> edges;

    explicit Graph(int vertices = 0) : n(vertices), adj(vertices) {}
    void add_edge(int u, int v);
    void finish();  // sorts adjacency, removes duplicates
    bool adjacent(int u, int v) const;
};

// Underlying simple graph of a map (parallel edges collapse).
Graph underlying_graph(const CombinatorialMap& m);

// Rooted spanning forest realising graph distances, together with the layer
// index of each vertex. parent == -1 marks a root.
struct BfsForest {
    std::vector<int> parent;
    std::vector<int> layer;
    std::vector<int> roots;
};

BfsForest bfs_tree(const Graph& g, int root);

// BFS tree over a map; also records, per non-root vertex, the smallest map
// edge realising the parent relation (needed by the tree-cotree split).
struct MapBfsTree {
    BfsForest forest;
    std::vector<int> parent_edge;         // -1 for the root
    std::vector<uint8_t> edge_in_tree;    // per map edge
};

MapBfsTree map_bfs_tree(const CombinatorialMap& m, int root);

struct Layering {
    std::vector<std::vector<int>> layers;
};

Layering layering_of(const Graph& g, const BfsForest& f);

BfsForest restrict_forest(const BfsForest& f, const std::vector<uint8_t>& removed);

// A path in the BFS forest listed top (closest to some root) to bottom, with
// strictly increasing layers. Checked at construction.
struct VerticalPath {
    int id = -1;
    std::vector<int> vertices;
};

VerticalPath make_vertical_path(const BfsForest& f, std::vector<int> vertices, int id);

struct PathPartition {
    std::vector<VerticalPath> paths;
    // vertex -> path id, -1 when the vertex is not covered
    std::vector<int> path_of;
};

PathPartition make_path_partition(int nv, std::vector<VerticalPath> paths);

struct QuotientGraph {
    int n = 0;  // number of paths
    std::vector<std::vector<int>> adj;
    bool adjacent(int a, int b) const;
};

// Contracts each path of the partition to a single vertex. The partition must
// cover every vertex of the graph.
QuotientGraph quotient(const Graph& g, const PathPartition& p);

}  // namespace twg
