#include "twg/generators.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "twg/bfs.hpp"

namespace twg {

CombinatorialMap toroidal_grid(int n) {
    TWG_CHECK(n >= 3, "torus grid needs n >= 3");
    auto vid = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
    auto right = [n, vid](int i, int j) { return vid(i, j); };
    auto down = [n, vid](int i, int j) { return n * n + vid(i, j); };
    MapBuilder mb(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int v = vid(i, j);
            mb.add_occurrence(v, right(i, j), 1);     // east
            mb.add_occurrence(v, down(i, j), 1);      // south
            mb.add_occurrence(v, right(i, j - 1), 1); // west
            mb.add_occurrence(v, down(i - 1, j), 1);  // north
        }
    CombinatorialMap m = mb.build();
    SurfaceInfo info = euler_genus(m);
    TWG_CHECK(info.genus == 2 && info.orientable, "torus grid failed the genus check");
    return m;
}

namespace {

// Builds a map from oriented triangle lists: every directed edge must appear
// exactly once, which pins down the rotation at each vertex.
CombinatorialMap from_oriented_faces(int nv, const std::vector<std::array<int, 3>>& faces) {
    std::map<std::pair<int, int>, int> succ;  // directed edge (v,a) -> next neighbour b
    for (const auto& f : faces)
        for (int t = 0; t < 3; ++t) {
            int v = f[t], a = f[(t + 1) % 3], b = f[(t + 2) % 3];
            TWG_CHECK(!succ.count({v, a}), "directed edge repeated");
            succ[{v, a}] = b;
        }
    std::map<std::pair<int, int>, int> edge_id;
    int ne = 0;
    for (const auto& [key, val] : succ) {
        auto [v, a] = key;
        auto e = std::minmax(v, a);
        if (!edge_id.count({e.first, e.second})) edge_id[{e.first, e.second}] = ne++;
    }
    MapBuilder mb(nv);
    for (int v = 0; v < nv; ++v) {
        // collect neighbours by following the successor cycle
        int start = -1;
        for (const auto& [key, val] : succ)
            if (key.first == v) {
                start = key.second;
                break;
            }
        TWG_CHECK(start >= 0, "isolated vertex");
        int a = start;
        do {
            auto e = std::minmax(v, a);
            mb.add_occurrence(v, edge_id.at({e.first, e.second}), 1);
            a = succ.at({v, a});
        } while (a != start);
    }
    return mb.build();
}

}  // namespace

CombinatorialMap projective_k6() {
    // Icosahedron with poles 0 and 11 and two pentagonal bands; the antipodal
    // quotient identifies 0<->11 and band vertex i with the opposite band
    // vertex shifted by two.
    auto u = [](int i) { return 1 + ((i % 5 + 5) % 5); };
    auto l = [](int i) { return 6 + ((i % 5 + 5) % 5); };
    std::vector<std::array<int, 3>> faces;
    for (int i = 0; i < 5; ++i) {
        faces.push_back({0, u(i), u(i + 1)});
        faces.push_back({u(i + 1), u(i), l(i)});
        faces.push_back({u(i), l(i - 1), l(i)});
        faces.push_back({11, l(i + 1), l(i)});
    }
    CombinatorialMap ico = from_oriented_faces(12, faces);
    SurfaceInfo si = euler_genus(ico);
    TWG_CHECK(si.genus == 0 && is_triangulation(ico), "icosahedron construction broken");

    std::vector<int> antipode(12);
    antipode[0] = 11;
    antipode[11] = 0;
    for (int i = 0; i < 5; ++i) {
        antipode[u(i)] = l(i + 2);
        antipode[l(i + 2)] = u(i);
    }
    // classes keyed by the smaller representative
    std::vector<int> cls(12, -1), rep;
    for (int v = 0; v < 12; ++v)
        if (cls[v] < 0) {
            cls[v] = cls[antipode[v]] = (int)rep.size();
            rep.push_back(v);
        }
    // quotient edges: orbits of icosahedron edges under the antipodal map
    std::map<std::pair<int, int>, int> qedge;
    int qn = 0;
    auto canon = [&](int a, int b) {
        auto e1 = std::minmax(a, b);
        auto e2 = std::minmax(antipode[a], antipode[b]);
        return std::min(std::make_pair(e1.first, e1.second),
                        std::make_pair(e2.first, e2.second));
    };
    for (int e = 0; e < ico.edge_count(); ++e) {
        auto [a, b] = ico.edge_ends(e);
        auto key = canon(a, b);
        if (!qedge.count(key)) qedge[key] = qn++;
    }
    TWG_CHECK(qn == 15, "quotient must have 15 edges");
    MapBuilder mb(6);
    for (int c = 0; c < 6; ++c) {
        int r = rep[c];
        for (int d : ico.rotation[r]) {
            int w = ico.head(d);
            int sign = rep[cls[w]] == w ? 1 : -1;  // reaching the mirrored copy
            mb.add_occurrence(c, qedge.at(canon(r, w)), sign);
        }
    }
    CombinatorialMap k6 = mb.build();
    SurfaceInfo info = euler_genus(k6);
    TWG_CHECK(info.genus == 1 && !info.orientable && is_triangulation(k6),
              "projective K6 failed verification");
    return k6;
}

CombinatorialMap torus_k7() {
    // Uniform rotation by a fixed difference sequence; search the
    // lexicographically first sequence giving a torus triangulation.
    std::array<int, 6> delta = {1, 2, 3, 4, 5, 6};
    std::sort(delta.begin(), delta.end());
    auto eid = [](int a, int b) {
        if (a > b) std::swap(a, b);
        return a * 7 - a * (a + 1) / 2 + (b - a - 1);
    };
    do {
        MapBuilder mb(7);
        for (int v = 0; v < 7; ++v)
            for (int d : delta) mb.add_occurrence(v, eid(v, (v + d) % 7), 1);
        CombinatorialMap m = mb.build();
        if (!is_triangulation(m)) continue;
        SurfaceInfo info = euler_genus(m);
        if (info.genus == 2 && info.orientable) return m;
    } while (std::next_permutation(delta.begin(), delta.end()));
    TWG_CHECK(false, "no K7 torus rotation found");
    return {};
}

// ---------------------------------------------------------------------------
// Local surgeries used by the randomised generators.

namespace {

// Inserts `items` into the rotation at `vertex` so that, read in direction
// `dir` (+1 forward), they follow `anchor` in the given order.
void splice_after(CombinatorialMap& m, int vertex, int anchor, std::vector<int> items, int dir) {
    auto& rot = m.rotation[vertex];
    if (dir < 0) std::reverse(items.begin(), items.end());
    int pos = m.rot_pos[anchor] + (dir > 0 ? 1 : 0);
    rot.insert(rot.begin() + pos, items.begin(), items.end());
    m.rot_pos.resize(m.dart_count(), -1);
    for (int i = pos; i < (int)rot.size(); ++i) m.rot_pos[rot[i]] = i;
}

int side_sigma(int s) { return FaceSet::side_rev(s) ? -1 : 1; }

// Inserts a vertex inside the face with walk `walk`, joining it to every
// corner; returns the new walks (one triangle per old walk position).
int insert_vertex_in_walk(CombinatorialMap& m, const std::vector<int>& walk,
                          std::vector<std::vector<int>>* new_walks) {
    int L = (int)walk.size();
    int x = m.nv++;
    m.rotation.push_back({});
    int e0 = m.edge_count();
    std::vector<int> aside(L), bside(L);
    for (int t = 0; t < L; ++t) {
        int v = m.dart_origin[FaceSet::side_dart(walk[t])];
        int sigma = side_sigma(walk[t]);
        m.edge_sign.push_back((int8_t)sigma);
        m.edge_augmented.push_back(0);
        m.dart_origin.push_back(v);      // dart 2(e0+t), at the corner
        m.dart_origin.push_back(x);      // dart 2(e0+t)+1, at the new vertex
        aside[t] = 2 * (e0 + t);
        bside[t] = 2 * (e0 + t) + 1;
    }
    m.rot_pos.resize(m.dart_count(), -1);
    for (int t = 0; t < L; ++t) {
        int prev = walk[(t + L - 1) % L];
        int sigma = side_sigma(walk[t]);
        splice_after(m, m.dart_origin[aside[t]],
                     CombinatorialMap::twin(FaceSet::side_dart(prev)), {aside[t]}, sigma);
    }
    for (int t = L - 1; t >= 0; --t) m.rotation[x].push_back(bside[t]);
    for (int i = 0; i < (int)m.rotation[x].size(); ++i) m.rot_pos[m.rotation[x][i]] = i;
    if (new_walks) {
        for (int t = 0; t < L; ++t) {
            int sig_next = side_sigma(walk[(t + 1) % L]);
            new_walks->push_back({walk[t], FaceSet::side(aside[(t + 1) % L], sig_next == -1),
                                  FaceSet::side(bside[t], 0)});
        }
    }
    return x;
}

// Joins two vertex-disjoint triangular faces by a triangulated tube; Euler
// genus grows by two.
void add_tube(CombinatorialMap& m, const std::vector<int>& walk1, const std::vector<int>& walk2) {
    TWG_CHECK(walk1.size() == 3 && walk2.size() == 3, "tube needs triangle faces");
    int a[3], b[3], sg[3], tu[3];
    for (int t = 0; t < 3; ++t) {
        a[t] = m.dart_origin[FaceSet::side_dart(walk1[t])];
        b[t] = m.dart_origin[FaceSet::side_dart(walk2[t])];
        sg[t] = side_sigma(walk1[t]);
        tu[t] = side_sigma(walk2[t]);
    }
    for (int t = 0; t < 3; ++t)
        for (int s = 0; s < 3; ++s) TWG_CHECK(a[t] != b[s], "tube faces share a vertex");

    int e0 = m.edge_count();
    int alpha[3], beta[3], delta[3], eps[3];
    for (int t = 0; t < 3; ++t) {  // vertical edges a_t -- b_t
        m.edge_sign.push_back((int8_t)(-sg[t] * tu[t]));
        m.edge_augmented.push_back(0);
        alpha[t] = 2 * (e0 + t);
        beta[t] = 2 * (e0 + t) + 1;
        m.dart_origin.push_back(a[t]);
        m.dart_origin.push_back(b[t]);
    }
    for (int t = 0; t < 3; ++t) {  // diagonal edges a_t -- b_{t+1}
        m.edge_sign.push_back((int8_t)(-sg[t] * tu[(t + 1) % 3]));
        m.edge_augmented.push_back(0);
        delta[t] = 2 * (e0 + 3 + t);
        eps[t] = 2 * (e0 + 3 + t) + 1;
        m.dart_origin.push_back(a[t]);
        m.dart_origin.push_back(b[(t + 1) % 3]);
    }
    m.rot_pos.resize(m.dart_count(), -1);
    for (int t = 0; t < 3; ++t) {
        int in1 = CombinatorialMap::twin(FaceSet::side_dart(walk1[(t + 2) % 3]));
        splice_after(m, a[t], in1, {alpha[t], delta[t]}, sg[t]);
        int in2 = CombinatorialMap::twin(FaceSet::side_dart(walk2[(t + 2) % 3]));
        splice_after(m, b[t], in2, {eps[(t + 2) % 3], beta[t]}, tu[t]);
    }
}

std::vector<std::vector<int>> inner_walks(const CombinatorialMap& m, int skip_face) {
    FaceSet fs = trace_faces(m);
    std::vector<std::vector<int>> walks;
    for (int f = 0; f < fs.face_count(); ++f)
        if (f != skip_face) walks.push_back(fs.walks[f]);
    return walks;
}

// Random diagonal flip with a full retrace; returns false (leaving the map
// unchanged) when the chosen edge is not flippable.
bool try_flip(CombinatorialMap& m, int e, bool keep_simple, int protect_face) {
    FaceSet fs = trace_faces(m);
    auto [f1, f2] = fs.edge_faces(e);
    if (f1 == f2 || fs.degree(f1) != 3 || fs.degree(f2) != 3) return false;
    if (f1 == protect_face || f2 == protect_face) return false;
    auto e1 = fs.face_edges(f1), e2 = fs.face_edges(f2);
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    std::vector<int> shared;
    std::set_intersection(e1.begin(), e1.end(), e2.begin(), e2.end(),
                          std::back_inserter(shared));
    if (shared.size() != 1) return false;
    auto [u, v] = m.edge_ends(e);
    int x = -1, y = -1;
    for (int vv : fs.face_vertices(m, f1))
        if (vv != u && vv != v) x = vv;
    for (int vv : fs.face_vertices(m, f2))
        if (vv != u && vv != v) y = vv;
    if (x < 0 || y < 0 || x == y) return false;
    if (keep_simple) {
        Graph g = underlying_graph(m);
        if (g.adjacent(x, y)) return false;
    }

    // Rebuild without e, renumbering edges above it down by one.
    MapBuilder mb(m.nv);
    for (int vv = 0; vv < m.nv; ++vv)
        for (int d : m.rotation[vv]) {
            int ee = CombinatorialMap::edge_of(d);
            if (ee == e) continue;
            mb.add_occurrence(vv, ee < e ? ee : ee - 1, m.edge_sign[ee]);
        }
    CombinatorialMap cut;
    try {
        cut = mb.build();
    } catch (const error&) {
        return false;
    }
    FaceSet fs2 = trace_faces(cut);
    int genus_before;
    {
        SurfaceInfo si = euler_genus(m);
        genus_before = si.genus;
    }
    for (int f = 0; f < fs2.face_count(); ++f) {
        const auto& w = fs2.walks[f];
        if (w.size() != 4) continue;
        for (int i = 0; i < 4; ++i) {
            int ci = cut.dart_origin[FaceSet::side_dart(w[i])];
            int cj = cut.dart_origin[FaceSet::side_dart(w[(i + 2) % 4])];
            if ((ci == x && cj == y) || (ci == y && cj == x)) {
                std::vector<int> walk = w;
                std::rotate(walk.begin(), walk.begin() + i, walk.end());
                // insert the new diagonal exactly like the triangulation step
                CombinatorialMap out = cut;
                int L = 4;
                int s_last = walk[L - 1], s0 = walk[0], s2 = walk[2];
                int v0 = out.dart_origin[FaceSet::side_dart(s0)];
                int v2 = out.dart_origin[FaceSet::side_dart(s2)];
                int sigma0 = FaceSet::side_rev(s0), sigma2 = FaceSet::side_rev(s2);
                int ne = out.edge_count();
                int n1 = 2 * ne, n2 = 2 * ne + 1;
                out.edge_sign.push_back((int8_t)(sigma0 == sigma2 ? 1 : -1));
                out.edge_augmented.push_back(0);
                out.dart_origin.push_back(v0);
                out.dart_origin.push_back(v2);
                out.rot_pos.resize(out.dart_count(), -1);
                splice_after(out, v0, CombinatorialMap::twin(FaceSet::side_dart(s_last)), {n1},
                             sigma0 == 0 ? 1 : -1);
                splice_after(out, v2, FaceSet::side_dart(s2), {n2}, sigma2 == 0 ? -1 : 1);
                validate_map(out);
                if (!is_triangulation(out)) return false;
                SurfaceInfo si = euler_genus(out);
                if (si.genus != genus_before) return false;
                m = out;
                return true;
            }
        }
    }
    return false;
}

}  // namespace

void insert_vertex_in_face(CombinatorialMap& m, int face) {
    FaceSet fs = trace_faces(m);
    insert_vertex_in_walk(m, fs.walks[face], nullptr);
}

void random_flips(CombinatorialMap& m, int count, uint64_t seed, int protect_face) {
    std::mt19937_64 rng(seed);
    int done = 0, attempts = 0;
    while (done < count && attempts < 20 * count + 50) {
        ++attempts;
        int e = (int)(rng() % (uint64_t)m.edge_count());
        if (try_flip(m, e, true, protect_face)) ++done;
    }
}

CombinatorialMap random_triangulation(int genus, int n, uint64_t seed) {
    TWG_CHECK(genus >= 1 && genus <= 8, "genus out of the generator's range");
    std::mt19937_64 rng(seed);
    CombinatorialMap m = (genus % 2 == 1) ? projective_k6() : torus_k7();
    int tubes = (genus - (genus % 2 == 1 ? 1 : 2)) / 2;

    // Grow, adding a tube every so often until the genus is reached.
    std::vector<std::vector<int>> walks = inner_walks(m, -1);
    auto grow_one = [&]() {
        int f = (int)(rng() % walks.size());
        std::vector<int> walk = walks[f];
        walks.erase(walks.begin() + f);
        std::vector<std::vector<int>> fresh;
        insert_vertex_in_walk(m, walk, &fresh);
        for (auto& w : fresh) walks.push_back(std::move(w));
    };
    for (int t = 0; t < tubes; ++t) {
        // make room: ensure two vertex-disjoint faces exist
        for (int i = 0; i < 8; ++i) grow_one();
        int f1 = -1, f2 = -1;
        for (int i = 0; i < (int)walks.size() && f1 < 0; ++i)
            for (int j = i + 1; j < (int)walks.size(); ++j) {
                std::set<int> vs;
                for (int s : walks[i]) vs.insert(m.dart_origin[FaceSet::side_dart(s)]);
                bool ok = true;
                for (int s : walks[j])
                    ok = ok && !vs.count(m.dart_origin[FaceSet::side_dart(s)]);
                if (ok) {
                    f1 = i;
                    f2 = j;
                    break;
                }
            }
        TWG_CHECK(f1 >= 0, "no vertex-disjoint face pair for the tube");
        std::vector<int> w1 = walks[f1], w2 = walks[f2];
        walks.erase(walks.begin() + std::max(f1, f2));
        walks.erase(walks.begin() + std::min(f1, f2));
        add_tube(m, w1, w2);
        validate_map(m);
        walks = inner_walks(m, -1);
    }
    while (m.nv < n) grow_one();
    validate_map(m);
    SurfaceInfo info = euler_genus(m);
    TWG_CHECK(info.genus == genus, "generator produced the wrong genus");
    TWG_CHECK(is_triangulation(m), "generator output is not a triangulation");
    random_flips(m, std::max(4, n / 10), rng());
    return m;
}

CombinatorialMap random_disk(int n, int boundary, uint64_t seed) {
    TWG_CHECK(boundary >= 3, "disk boundary needs at least three vertices");
    TWG_CHECK(n >= boundary, "vertex budget below the boundary size");
    int L = boundary;
    MapBuilder mb(L);
    auto cyc = [L](int j) { return ((j % L) + L) % L; };
    // cycle edges 0..L-1 (j joins j and j+1), fan edges L..2L-4 (0 joins j)
    auto fan = [L](int j) { return L + j - 2; };
    for (int v = 0; v < L; ++v) {
        if (v == 0) {
            mb.add_occurrence(0, cyc(0), 1);
            for (int j = 2; j <= L - 2; ++j) mb.add_occurrence(0, fan(j), 1);
            mb.add_occurrence(0, L - 1, 1);
        } else if (v == 1) {
            mb.add_occurrence(1, 1, 1);
            mb.add_occurrence(1, 0, 1);
        } else if (v == L - 1) {
            mb.add_occurrence(L - 1, L - 1, 1);
            mb.add_occurrence(L - 1, L - 2, 1);
        } else {
            mb.add_occurrence(v, v, 1);
            mb.add_occurrence(v, fan(v), 1);
            mb.add_occurrence(v, v - 1, 1);
        }
    }
    CombinatorialMap m = mb.build();
    SurfaceInfo info = euler_genus(m);
    TWG_CHECK(info.genus == 0, "disk base is not planar");
    FaceSet fs = trace_faces(m);
    int outer = -1;
    for (int f = 0; f < fs.face_count(); ++f) {
        bool cycle_only = true;
        for (int e : fs.face_edges(f)) cycle_only = cycle_only && e < L;
        if ((int)fs.degree(f) == L && cycle_only) outer = f;
    }
    TWG_CHECK(outer >= 0, "disk base outer face missing");

    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> walks;
    for (int f = 0; f < fs.face_count(); ++f)
        if (f != outer) walks.push_back(fs.walks[f]);
    while (m.nv < n) {
        int f = (int)(rng() % walks.size());
        std::vector<int> walk = walks[f];
        walks.erase(walks.begin() + f);
        std::vector<std::vector<int>> fresh;
        insert_vertex_in_walk(m, walk, &fresh);
        for (auto& w : fresh) walks.push_back(std::move(w));
    }
    // a few flips for variety, keeping the boundary cycle untouched
    int flips = std::min(20, std::max(0, n / 8));
    int done = 0, attempts = 0;
    while (done < flips && attempts < 20 * flips + 20) {
        ++attempts;
        int e = L + (int)(rng() % (uint64_t)(m.edge_count() - L));
        FaceSet cur = trace_faces(m);
        int out_face = -1;
        for (int f = 0; f < cur.face_count(); ++f) {
            bool cycle_only = true;
            for (int ee : cur.face_edges(f)) cycle_only = cycle_only && ee < L;
            if (cycle_only && (int)cur.degree(f) == L) out_face = f;
        }
        if (try_flip(m, e, true, out_face)) ++done;
    }
    validate_map(m);
    TWG_CHECK(euler_genus(m).genus == 0, "disk generator changed the genus");
    return m;
}

}  // namespace twg
