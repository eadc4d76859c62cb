#pragma once

// Shared test fixtures: tiny maps, disk regions with boundary-rooted forests,
// and brute-force oracles kept independent of the library code they check.

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <vector>

#include "twg/disk.hpp"
#include "twg/generators.hpp"
#include "twg/trigraph.hpp"

namespace fixtures {

using namespace twg;

// Triangle on the sphere.
inline CombinatorialMap triangle_map() {
    MapBuilder mb(3);
    mb.add_occurrence(0, 0, 1);  // 0-1
    mb.add_occurrence(0, 2, 1);  // 0-2
    mb.add_occurrence(1, 1, 1);  // 1-2
    mb.add_occurrence(1, 0, 1);
    mb.add_occurrence(2, 2, 1);
    mb.add_occurrence(2, 1, 1);
    return mb.build();
}

// Planar square (4-cycle).
inline CombinatorialMap square_map() {
    MapBuilder mb(4);
    for (int v = 0; v < 4; ++v) {
        mb.add_occurrence(v, v, 1);
        mb.add_occurrence(v, (v + 3) % 4, 1);
    }
    return mb.build();
}

// K4 with a planar rotation system.
inline CombinatorialMap k4_map() {
    // edges: 0:01 1:02 2:03 3:12 4:13 5:23
    MapBuilder mb(4);
    mb.add_occurrence(0, 0, 1);
    mb.add_occurrence(0, 1, 1);
    mb.add_occurrence(0, 2, 1);
    mb.add_occurrence(1, 0, 1);
    mb.add_occurrence(1, 4, 1);
    mb.add_occurrence(1, 3, 1);
    mb.add_occurrence(2, 1, 1);
    mb.add_occurrence(2, 3, 1);
    mb.add_occurrence(2, 5, 1);
    mb.add_occurrence(3, 2, 1);
    mb.add_occurrence(3, 5, 1);
    mb.add_occurrence(3, 4, 1);
    return mb.build();
}

inline Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    g.finish();
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    g.finish();
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    g.finish();
    return g;
}

inline Graph star_graph(int leaves) {
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    g.finish();
    return g;
}

// Exhaustive twin-width by trying every contraction sequence; no memo, no
// pruning beyond the running bound. Usable up to ~6 vertices.
inline int naive_twinwidth(const Graph& g) {
    struct State {
        std::vector<std::vector<int>> members;
        const Graph* g;
        bool black(const std::vector<int>& A, const std::vector<int>& B, bool& any) const {
            any = false;
            bool all = true;
            for (int a : A)
                for (int b : B) {
                    if (g->adjacent(a, b))
                        any = true;
                    else
                        all = false;
                }
            return all;
        }
        int max_red() const {
            int worst = 0;
            for (size_t i = 0; i < members.size(); ++i) {
                int reds = 0;
                for (size_t j = 0; j < members.size(); ++j) {
                    if (i == j) continue;
                    bool any;
                    bool all = black(members[i], members[j], any);
                    if (any && !all) ++reds;
                }
                worst = std::max(worst, reds);
            }
            return worst;
        }
    };
    State st;
    st.g = &g;
    for (int v = 0; v < g.n; ++v) st.members.push_back({v});
    int best = g.n;
    auto rec = [&](auto&& self, State& s, int sofar) -> void {
        if (sofar >= best) return;
        if (s.members.size() == 1) {
            best = std::min(best, sofar);
            return;
        }
        for (size_t i = 0; i < s.members.size(); ++i)
            for (size_t j = i + 1; j < s.members.size(); ++j) {
                State nxt = s;
                nxt.members[i].insert(nxt.members[i].end(), nxt.members[j].begin(),
                                      nxt.members[j].end());
                nxt.members.erase(nxt.members.begin() + j);
                int m = std::max(sofar, nxt.max_red());
                self(self, nxt, m);
            }
    };
    rec(rec, st, 0);
    return best;
}

// All connected graphs on n labelled vertices, one representative per
// isomorphism class (canonical form = lexicographically smallest adjacency
// bitmask over all vertex permutations).
inline std::vector<Graph> connected_classes(int n) {
    std::vector<int> perm(n);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    int np = (int)pairs.size();
    std::set<uint64_t> seen;
    std::vector<Graph> out;
    for (uint64_t mask = 0; mask < (1ull << np); ++mask) {
        // connectivity
        std::vector<std::vector<int>> adj(n);
        for (int p = 0; p < np; ++p)
            if (mask >> p & 1) {
                adj[pairs[p].first].push_back(pairs[p].second);
                adj[pairs[p].second].push_back(pairs[p].first);
            }
        std::vector<char> vis(n, 0);
        std::deque<int> q = {0};
        vis[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : adj[v])
                if (!vis[w]) {
                    vis[w] = 1;
                    ++cnt;
                    q.push_back(w);
                }
        }
        if (cnt != n) continue;
        // canonical form
        std::iota(perm.begin(), perm.end(), 0);
        uint64_t canon = ~0ull;
        do {
            uint64_t pm = 0;
            for (int p = 0; p < np; ++p)
                if (mask >> p & 1) {
                    int a = perm[pairs[p].first], b = perm[pairs[p].second];
                    if (a > b) std::swap(a, b);
                    int idx =
                        (int)(std::find(pairs.begin(), pairs.end(), std::make_pair(a, b)) -
                              pairs.begin());
                    pm |= 1ull << idx;
                }
            canon = std::min(canon, pm);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (seen.insert(canon).second) {
            Graph g(n);
            for (int p = 0; p < np; ++p)
                if (canon >> p & 1) g.add_edge(pairs[p].first, pairs[p].second);
            g.finish();
            out.push_back(g);
        }
    }
    return out;
}

// Disk fixture: a planar triangulated disk together with a boundary-rooted
// forest and the boundary cycle split into monotone arcs.
struct DiskFixture {
    Disk disk;
    Region region;
    int paths = 0;
};

// Builds the Disk wrapper for a planar map whose face `outer` is the boundary
// cycle: BFS layers from `root` (a boundary vertex), parents preferring the
// boundary cycle so that the monotone boundary runs are forest paths.
inline DiskFixture make_disk_fixture(const CombinatorialMap& planar, int root_hint = 0) {
    DiskFixture fx;
    Disk& d = fx.disk;
    d.m = planar;
    std::vector<uint8_t> flips;
    TWG_CHECK(orienting_flips(d.m, flips), "fixture map must be planar");
    flip_vertices(d.m, flips);
    d.fs = trace_faces(d.m);
    d.ug = underlying_graph(d.m);
    // outer face: the face of maximal degree (unique in these fixtures)
    int outer = 0;
    for (int f = 1; f < d.fs.face_count(); ++f)
        if (d.fs.degree(f) > d.fs.degree(outer)) outer = f;
    d.outer_face = outer;
    std::vector<int> cyc = d.fs.face_vertices(d.m, outer);
    {
        std::set<int> dedup(cyc.begin(), cyc.end());
        TWG_CHECK(dedup.size() == cyc.size(), "fixture boundary walk must be simple");
    }
    auto it = std::find(cyc.begin(), cyc.end(), root_hint);
    if (it == cyc.end()) it = cyc.begin();
    std::rotate(cyc.begin(), it, cyc.end());
    int root = cyc[0];

    BfsForest f = bfs_tree(d.ug, root);
    d.layer = f.layer;
    d.parent.assign(d.m.nv, -1);
    d.parent_edge.assign(d.m.nv, -1);
    d.to_orig.resize(d.m.nv);
    std::iota(d.to_orig.begin(), d.to_orig.end(), 0);

    // boundary-first parents: prefer the cycle neighbour one layer up
    std::set<int> on_cycle(cyc.begin(), cyc.end());
    std::vector<int> cyc_parent(d.m.nv, -1);
    int L = (int)cyc.size();
    for (int i = 0; i < L; ++i) {
        int v = cyc[i], prv = cyc[(i + L - 1) % L], nxt = cyc[(i + 1) % L];
        if (d.layer[prv] == d.layer[v] - 1)
            cyc_parent[v] = prv;
        else if (d.layer[nxt] == d.layer[v] - 1)
            cyc_parent[v] = nxt;
    }
    for (int v = 0; v < d.m.nv; ++v) {
        if (v == root) continue;
        int p = -1;
        if (on_cycle.count(v) && cyc_parent[v] >= 0)
            p = cyc_parent[v];
        else
            p = f.parent[v];
        d.parent[v] = p;
    }
    // parent edges: smallest map edge joining the pair
    for (int e = 0; e < d.m.edge_count(); ++e) {
        auto [u, v] = d.m.edge_ends(e);
        if (d.parent[u] == v && d.parent_edge[u] < 0) d.parent_edge[u] = e;
        if (d.parent[v] == u && d.parent_edge[v] < 0) d.parent_edge[v] = e;
    }

    // arcs: maximal monotone boundary runs that follow parent links
    std::vector<std::vector<int>> runs;
    std::vector<int> cur = {cyc[0]};
    auto linked = [&](int a, int b) { return d.parent[a] == b || d.parent[b] == a; };
    for (int i = 1; i < L; ++i) {
        int prev = cur.back(), v = cyc[i];
        bool extend = linked(prev, v);
        if (extend && cur.size() >= 2) {
            int dir = d.layer[cur[1]] - d.layer[cur[0]];
            extend = d.layer[v] - d.layer[prev] == dir;
        }
        if (extend)
            cur.push_back(v);
        else {
            runs.push_back(cur);
            cur = {v};
        }
    }
    runs.push_back(cur);
    // wrap-around merge
    if (runs.size() > 1) {
        auto& first = runs.front();
        auto& last = runs.back();
        bool can = linked(last.back(), first.front());
        if (can) {
            std::vector<int> joined = last;
            joined.insert(joined.end(), first.begin(), first.end());
            int dir = 0;
            bool mono = true;
            for (size_t i = 1; i < joined.size(); ++i) {
                int step = d.layer[joined[i]] - d.layer[joined[i - 1]];
                if (dir == 0)
                    dir = step;
                mono = mono && step == dir;
            }
            if (mono && joined.size() <= (size_t)L) {
                runs.back() = joined;
                runs.erase(runs.begin());
            }
        }
    }
    PathStore store;
    for (auto& run : runs) {
        std::vector<int> vs = run;
        if (d.layer[vs.front()] > d.layer[vs.back()]) std::reverse(vs.begin(), vs.end());
        int id = store.add(vs);
        fx.region.arcs.push_back(Arc{id, run});
    }
    for (int f2 = 0; f2 < d.fs.face_count(); ++f2)
        if (f2 != outer) fx.region.faces.push_back(f2);
    fx.paths = (int)runs.size();
    return fx;
}

// Grid-strip disk with a controllable number of boundary arcs: rows x cols
// grid, fan-triangulated, boundary = the outer rectangle.
inline CombinatorialMap strip_disk(int rows, int cols) {
    // build as a planar map via oriented faces of the triangulated grid
    auto vid = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::array<int, 3>> faces;
    for (int r = 0; r + 1 < rows; ++r)
        for (int c = 0; c + 1 < cols; ++c) {
            faces.push_back({vid(r, c), vid(r + 1, c), vid(r, c + 1)});
            faces.push_back({vid(r, c + 1), vid(r + 1, c), vid(r + 1, c + 1)});
        }
    // close with the outer face walk (reverse orientation around the border)
    std::vector<int> border;
    for (int c = 0; c < cols; ++c) border.push_back(vid(0, c));
    for (int r = 1; r < rows; ++r) border.push_back(vid(r, cols - 1));
    for (int c = cols - 2; c >= 0; --c) border.push_back(vid(rows - 1, c));
    for (int r = rows - 2; r >= 1; --r) border.push_back(vid(r, 0));
    // MapBuilder from directed faces + one big outer face
    std::map<std::pair<int, int>, int> succ;
    auto add_succ = [&](int v, int a, int b) { succ[{v, a}] = b; };
    for (auto& f : faces)
        for (int t = 0; t < 3; ++t) add_succ(f[t], f[(t + 1) % 3], f[(t + 2) % 3]);
    int B = (int)border.size();
    for (int i = 0; i < B; ++i) {
        int v = border[(i + 1) % B], a = border[i], b = border[(i + 2) % B];
        add_succ(v, a, b);
    }
    std::map<std::pair<int, int>, int> eid;
    int ne = 0;
    for (auto& [k, v] : succ) {
        auto e = std::minmax(k.first, k.second);
        if (!eid.count(e)) eid[{e.first, e.second}] = ne++;
    }
    MapBuilder mb(rows * cols);
    for (int v = 0; v < rows * cols; ++v) {
        int start = -1;
        for (auto& [k, val] : succ)
            if (k.first == v) {
                start = k.second;
                break;
            }
        int aa = start;
        do {
            auto e = std::minmax(v, aa);
            mb.add_occurrence(v, eid.at({e.first, e.second}), 1);
            aa = succ.at({v, aa});
        } while (aa != start);
    }
    return mb.build();
}

}  // namespace fixtures
