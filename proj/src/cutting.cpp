#include "twg/cutting.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace twg {

std::vector<int> leftover_edges(const CombinatorialMap& m, const MapBfsTree& tree) {
    SurfaceInfo info = euler_genus(m);
    if (info.genus == 0)
        throw error(errc::genus_zero, "planar input has no leftover edges");
    TWG_CHECK(is_triangulation(m), "leftover_edges expects a triangulation");
    FaceSet fs = trace_faces(m);

    // Dual spanning tree over faces, BFS with smallest-face tie-break, using
    // only edges outside the primal tree.
    std::vector<std::vector<std::pair<int, int>>> dual(fs.face_count());  // (face, edge)
    for (int e = 0; e < m.edge_count(); ++e) {
        if (tree.edge_in_tree[e]) continue;
        auto [f1, f2] = fs.edge_faces(e);
        dual[f1].push_back({f2, e});
        dual[f2].push_back({f1, e});
    }
    for (auto& a : dual) std::sort(a.begin(), a.end());
    std::vector<char> seen(fs.face_count(), 0);
    std::vector<uint8_t> in_dual_tree(m.edge_count(), 0);
    std::deque<int> q = {0};
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int f = q.front();
        q.pop_front();
        for (auto [f2, e] : dual[f])
            if (!seen[f2]) {
                seen[f2] = 1;
                in_dual_tree[e] = 1;
                q.push_back(f2);
                ++reached;
            }
    }
    TWG_CHECK(reached == fs.face_count(), "dual graph minus tree edges is disconnected");

    std::vector<int> extra;
    for (int e = 0; e < m.edge_count(); ++e)
        if (!tree.edge_in_tree[e] && !in_dual_tree[e]) extra.push_back(e);
    TWG_CHECK((int)extra.size() == info.genus,
              "leftover count " + std::to_string(extra.size()) + " != genus " +
                  std::to_string(info.genus));
    return extra;
}

namespace {

int next_cut_side(const CombinatorialMap& m, const std::vector<uint8_t>& in_cut, int s) {
    int d = FaceSet::side_dart(s);
    int rev = FaceSet::side_rev(s) ^ (m.edge_sign[CombinatorialMap::edge_of(d)] < 0 ? 1 : 0);
    int nd = CombinatorialMap::twin(d);
    do {
        nd = rev ? m.rot_prev(nd) : m.rot_next(nd);
    } while (!in_cut[CombinatorialMap::edge_of(nd)]);
    return FaceSet::side(nd, rev);
}

}  // namespace

CutSystem cut_walk(const CombinatorialMap& m, const MapBfsTree& tree,
                   const std::vector<int>& extra) {
    CutSystem cut;
    cut.extra_edges = extra;
    cut.in_t0.assign(m.nv, 0);
    cut.f0_edge.assign(m.edge_count(), 0);
    for (int e : extra) {
        TWG_CHECK(!tree.edge_in_tree[e], "extra edge lies in the tree");
        cut.f0_edge[e] = 1;
        auto [u, v] = m.edge_ends(e);
        for (int x : {u, v})
            while (x >= 0 && !cut.in_t0[x]) {
                cut.in_t0[x] = 1;
                if (tree.parent_edge[x] >= 0) cut.f0_edge[tree.parent_edge[x]] = 1;
                x = tree.forest.parent[x];
            }
    }

    // Boundary circles of a regular neighbourhood of the cut subgraph: orbits
    // of the sign-aware traversal restricted to cut edges. A single mirror
    // pair of orbits means one circle.
    std::vector<int> orbit_of(2 * m.dart_count(), -2);
    std::vector<std::vector<int>> orbits;
    for (int d = 0; d < m.dart_count(); ++d)
        if (!cut.f0_edge[CombinatorialMap::edge_of(d)])
            orbit_of[2 * d] = orbit_of[2 * d + 1] = -3;  // not a cut side
    for (int s0 = 0; s0 < 2 * m.dart_count(); ++s0) {
        if (orbit_of[s0] != -2) continue;
        int id = (int)orbits.size();
        orbits.push_back({});
        int s = s0;
        do {
            orbit_of[s] = id;
            orbits[id].push_back(s);
            s = next_cut_side(m, cut.f0_edge, s);
        } while (s != s0);
    }
    if (orbits.size() != 2)
        throw error(errc::not_a_disk,
                    "cut neighbourhood has " + std::to_string(orbits.size() / 2) +
                        " boundary circles");
    TWG_CHECK(orbit_of[mirror_side(m, orbits[0][0])] == 1, "orbits are not mirror mates");

    // The complement must be one region: the dual restricted to non-cut edges
    // must connect all faces.
    FaceSet fs = trace_faces(m);
    std::vector<std::vector<int>> dual(fs.face_count());
    for (int e = 0; e < m.edge_count(); ++e) {
        if (cut.f0_edge[e]) continue;
        auto [f1, f2] = fs.edge_faces(e);
        dual[f1].push_back(f2);
        dual[f2].push_back(f1);
    }
    std::vector<char> seen(fs.face_count(), 0);
    std::deque<int> q = {0};
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int f = q.front();
        q.pop_front();
        for (int f2 : dual[f])
            if (!seen[f2]) {
                seen[f2] = 1;
                q.push_back(f2);
                ++reached;
            }
    }
    if (reached != fs.face_count())
        throw error(errc::not_a_disk, "cut complement is not a single region");

    cut.walk = orbits[0][0] <= orbits[1][0] ? orbits[0] : orbits[1];

    // Audit: every cut edge is traversed exactly twice by the walk.
    std::vector<int> times(m.edge_count(), 0);
    for (int s : cut.walk) ++times[CombinatorialMap::edge_of(FaceSet::side_dart(s))];
    for (int e = 0; e < m.edge_count(); ++e)
        TWG_CHECK(times[e] == (cut.f0_edge[e] ? 2 : 0), "walk edge-coverage audit failed");
    return cut;
}

int walk_corner_vertex(const CombinatorialMap& m, const CutSystem& cut, int t) {
    return m.dart_origin[FaceSet::side_dart(cut.walk[t])];
}

PathPartition boundary_paths(const CombinatorialMap& m, const MapBfsTree& tree,
                             const CutSystem& cut) {
    int root = -1;
    for (int v = 0; v < m.nv; ++v)
        if (cut.in_t0[v] && tree.forest.parent[v] < 0) root = v;
    TWG_CHECK(root >= 0, "cut subtree misses the root");

    // Children in embedding order: scan the rotation starting after the
    // parent dart (at the root, from the stored first dart).
    std::vector<std::vector<int>> children(m.nv);
    std::vector<int> order;
    std::vector<int> stack = {root};
    std::vector<uint8_t> is_tree_child_dart(m.dart_count(), 0);
    for (int v = 0; v < m.nv; ++v) {
        if (!cut.in_t0[v] || v == root) continue;
        int e = tree.parent_edge[v];
        int d = m.dart_origin[2 * e] == tree.forest.parent[v] ? 2 * e : 2 * e + 1;
        is_tree_child_dart[d] = 1;  // dart at the parent pointing to v
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        const auto& rot = m.rotation[v];
        int deg = (int)rot.size();
        int start = 0;
        if (v != root) {
            int pe = tree.parent_edge[v];
            int pd = m.dart_origin[2 * pe] == v ? 2 * pe : 2 * pe + 1;
            start = m.rot_pos[pd];
        }
        std::vector<int> kids;
        for (int i = 1; i <= deg; ++i) {
            int d = rot[(start + i) % deg];
            if (is_tree_child_dart[d]) kids.push_back(m.head(d));
        }
        children[v] = kids;
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }

    std::vector<int> leaves;
    for (int v : order)
        if (cut.in_t0[v] && children[v].empty()) leaves.push_back(v);
    TWG_CHECK(!leaves.empty(), "cut subtree has no leaves");

    std::vector<uint8_t> assigned(m.nv, 0);
    std::vector<VerticalPath> paths;
    for (int leaf : leaves) {
        std::vector<int> up;
        int v = leaf;
        while (v >= 0 && !assigned[v]) {
            up.push_back(v);
            assigned[v] = 1;
            v = tree.forest.parent[v];
        }
        if (up.empty()) continue;
        std::reverse(up.begin(), up.end());
        paths.push_back(make_vertical_path(tree.forest, std::move(up), (int)paths.size()));
    }
    for (int v = 0; v < m.nv; ++v)
        TWG_CHECK(!cut.in_t0[v] || assigned[v], "subtree vertex missed by the paths");
    return make_path_partition(m.nv, std::move(paths));
}

WalkSegmentation segment_walk(const CombinatorialMap& m, const MapBfsTree& tree,
                              const CutSystem& cut, const PathPartition& paths) {
    int n = (int)cut.walk.size();
    auto corner = [&](int t) { return walk_corner_vertex(m, cut, ((t % n) + n) % n); };
    auto layer = [&](int t) { return tree.forest.layer[corner(t)]; };

    // Hard break after position t when the side leaving t is not a tree edge
    // of the subtree, or the path changes.
    std::vector<uint8_t> hard(n, 0);
    for (int t = 0; t < n; ++t) {
        int e = CombinatorialMap::edge_of(FaceSet::side_dart(cut.walk[t]));
        bool tree_edge = tree.edge_in_tree[e] != 0;
        if (!tree_edge || paths.path_of[corner(t)] != paths.path_of[corner(t + 1)]) hard[t] = 1;
    }
    int start = -1;
    for (int t = 0; t < n; ++t)
        if (hard[t]) {
            start = (t + 1) % n;
            break;
        }
    TWG_CHECK(start >= 0, "walk has no segment boundary");

    WalkSegmentation seg;
    int t = start;
    int consumed = 0;
    while (consumed < n) {
        WalkSegment s;
        s.path = paths.path_of[corner(t)];
        s.begin = t;
        s.length = 1;
        int dir = 0;
        while (consumed + s.length < n) {
            int cur = (t + s.length - 1) % n;
            if (hard[cur]) break;
            int d = layer(cur + 1) - layer(cur);
            TWG_CHECK(d == 1 || d == -1, "tree edge spans non-adjacent layers");
            if (dir == 0)
                dir = d;
            else if (d != dir)
                break;
            ++s.length;
        }
        seg.segments.push_back(s);
        consumed += s.length;
        t = (t + s.length) % n;
    }
    TWG_CHECK(consumed == n, "segmentation does not cover the walk");
    return seg;
}

}  // namespace twg
