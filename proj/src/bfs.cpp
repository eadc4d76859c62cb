#include "twg/bfs.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace twg {

void Graph::add_edge(int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
    edges.push_back({std::min(u, v), std::max(u, v)});
}

void Graph::finish() {
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool Graph::adjacent(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

Graph underlying_graph(const CombinatorialMap& m) {
    Graph g(m.nv);
    for (int e = 0; e < m.edge_count(); ++e) {
        auto [u, v] = m.edge_ends(e);
        g.add_edge(u, v);
    }
    g.finish();
    return g;
}

BfsForest bfs_tree(const Graph& g, int root) {
    if (root < 0 || root >= g.n) throw error(errc::unknown_root, "root out of range");
    BfsForest f;
    f.parent.assign(g.n, -1);
    f.layer.assign(g.n, -1);
    f.roots = {root};
    std::deque<int> q = {root};
    f.layer[root] = 0;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : g.adj[v])
            if (f.layer[w] < 0) {
                f.layer[w] = f.layer[v] + 1;
                q.push_back(w);
                ++reached;
            }
    }
    if (reached != g.n) throw error(errc::disconnected, "graph is not connected");
    // Deterministic parents: the smallest-id neighbour one layer up.
    for (int v = 0; v < g.n; ++v) {
        if (v == root) continue;
        for (int w : g.adj[v])
            if (f.layer[w] == f.layer[v] - 1) {
                f.parent[v] = w;
                break;
            }
        TWG_CHECK(f.parent[v] >= 0, "bfs vertex with no parent");
    }
    return f;
}

MapBfsTree map_bfs_tree(const CombinatorialMap& m, int root) {
    Graph g = underlying_graph(m);
    MapBfsTree t;
    t.forest = bfs_tree(g, root);
    t.parent_edge.assign(m.nv, -1);
    t.edge_in_tree.assign(m.edge_count(), 0);
    // Smallest map edge realising each parent link.
    for (int e = 0; e < m.edge_count(); ++e) {
        auto [u, v] = m.edge_ends(e);
        if (t.forest.parent[u] == v && t.parent_edge[u] == -1) t.parent_edge[u] = e;
        if (t.forest.parent[v] == u && t.parent_edge[v] == -1) t.parent_edge[v] = e;
    }
    for (int v = 0; v < m.nv; ++v) {
        if (v == root) continue;
        TWG_CHECK(t.parent_edge[v] >= 0, "missing parent edge");
        t.edge_in_tree[t.parent_edge[v]] = 1;
    }
    return t;
}

Layering layering_of(const Graph& g, const BfsForest& f) {
    int top = 0;
    for (int v = 0; v < g.n; ++v) {
        if (f.layer[v] < 0) throw error(errc::not_a_layering, "vertex without layer");
        top = std::max(top, f.layer[v]);
    }
    for (auto [u, v] : g.edges)
        if (std::abs(f.layer[u] - f.layer[v]) > 1)
            throw error(errc::not_a_layering,
                        "edge {" + std::to_string(u) + "," + std::to_string(v) +
                            "} spans non-adjacent layers");
    Layering l;
    l.layers.assign(top + 1, {});
    for (int v = 0; v < g.n; ++v) l.layers[f.layer[v]].push_back(v);
    return l;
}

BfsForest restrict_forest(const BfsForest& f, const std::vector<uint8_t>& removed) {
    BfsForest r;
    int n = (int)f.parent.size();
    r.parent.assign(n, -1);
    r.layer.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        if (removed[v]) continue;
        r.layer[v] = f.layer[v];
        int p = f.parent[v];
        if (p >= 0 && !removed[p])
            r.parent[v] = p;
        else
            r.roots.push_back(v);
    }
    return r;
}

VerticalPath make_vertical_path(const BfsForest& f, std::vector<int> vertices, int id) {
    TWG_CHECK(!vertices.empty(), "empty vertical path");
    for (size_t i = 1; i < vertices.size(); ++i) {
        if (f.parent[vertices[i]] != vertices[i - 1] ||
            f.layer[vertices[i]] != f.layer[vertices[i - 1]] + 1)
            throw error(errc::internal, "vertex sequence is not a vertical path");
    }
    return VerticalPath{id, std::move(vertices)};
}

PathPartition make_path_partition(int nv, std::vector<VerticalPath> paths) {
    PathPartition p;
    p.paths = std::move(paths);
    p.path_of.assign(nv, -1);
    for (const auto& path : p.paths)
        for (int v : path.vertices) {
            if (p.path_of[v] != -1)
                throw error(errc::not_a_partition,
                            "vertex " + std::to_string(v) + " covered twice");
            p.path_of[v] = path.id;
        }
    return p;
}

bool QuotientGraph::adjacent(int a, int b) const {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

QuotientGraph quotient(const Graph& g, const PathPartition& p) {
    int np = 0;
    for (const auto& path : p.paths) np = std::max(np, path.id + 1);
    for (int v = 0; v < g.n; ++v)
        if (p.path_of[v] < 0)
            throw error(errc::not_a_partition, "vertex " + std::to_string(v) + " not covered");
    QuotientGraph q;
    q.n = np;
    q.adj.assign(np, {});
    for (auto [u, v] : g.edges) {
        int a = p.path_of[u], b = p.path_of[v];
        if (a == b) continue;
        q.adj[a].push_back(b);
        q.adj[b].push_back(a);
    }
    for (auto& a : q.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return q;
}

}  // namespace twg
