#include "twg/disk.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace twg {

namespace {

void validate_region(const Disk& d, const Region& r) {
    std::set<int> seen;
    TWG_CHECK(!r.arcs.empty(), "region without arcs");
    for (const auto& a : r.arcs) {
        TWG_CHECK(!a.verts.empty(), "empty arc");
        for (size_t i = 0; i < a.verts.size(); ++i) {
            TWG_CHECK(seen.insert(a.verts[i]).second, "arc vertices overlap");
            if (i == 0) continue;
            int x = a.verts[i - 1], y = a.verts[i];
            TWG_CHECK(d.parent[x] == y || d.parent[y] == x, "arc is not a forest path");
            TWG_CHECK(std::abs(d.layer[x] - d.layer[y]) == 1, "arc layers not consecutive");
        }
        int dir = 0;
        for (size_t i = 1; i < a.verts.size(); ++i) {
            int step = d.layer[a.verts[i]] - d.layer[a.verts[i - 1]];
            if (dir == 0) dir = step;
            TWG_CHECK(step == dir, "arc layers not monotone");
        }
    }
    for (size_t i = 1; i < r.faces.size(); ++i)
        TWG_CHECK(r.faces[i - 1] < r.faces[i], "region faces not sorted");
}

struct BoundaryIndex {
    std::map<int, std::pair<int, int>> where;  // vertex -> (entry, position)
    bool on_boundary(int v) const { return where.count(v) != 0; }
    int entry(int v) const { return where.at(v).first; }
};

BoundaryIndex index_boundary(const Region& r) {
    BoundaryIndex bi;
    for (int e = 0; e < (int)r.arcs.size(); ++e)
        for (int p = 0; p < (int)r.arcs[e].verts.size(); ++p)
            bi.where[r.arcs[e].verts[p]] = {e, p};
    return bi;
}

std::vector<int> distinct_arc_paths(const Region& r) {
    std::vector<int> ids;
    for (const auto& a : r.arcs) ids.push_back(a.path);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

}  // namespace

std::vector<int> region_interior(const Disk& d, const Region& r) {
    BoundaryIndex bi = index_boundary(r);
    std::set<int> inside;
    for (int f : r.faces)
        for (int v : d.fs.face_vertices(d.m, f))
            if (!bi.on_boundary(v)) inside.insert(v);
    return {inside.begin(), inside.end()};
}

ThreeColoring reach_coloring(const Disk& d, const Region& r, const std::vector<int>& groups,
                             const std::vector<uint8_t>* transparent) {
    TWG_CHECK(groups.size() == r.arcs.size(), "group per arc entry required");
    BoundaryIndex bi = index_boundary(r);
    std::vector<int> interior = region_interior(d, r);
    std::vector<uint8_t> in_region(d.m.nv, 0);
    for (int v : interior) in_region[v] = 1;
    for (const auto& [v, where] : bi.where) in_region[v] = 1;

    auto opaque = [&](int v) {
        if (!bi.on_boundary(v)) return false;
        return !transparent || !(*transparent)[bi.entry(v)];
    };

    ThreeColoring col;
    col.color.assign(d.m.nv, -1);
    for (const auto& [v, where] : bi.where)
        if (opaque(v)) col.color[v] = (int8_t)groups[where.first];
    for (int start = 0; start < d.m.nv; ++start) {
        if (!in_region[start] || col.color[start] >= 0) continue;
        std::vector<int> chain;
        int v = start;
        while (v >= 0 && in_region[v] && col.color[v] < 0 && !opaque(v)) {
            chain.push_back(v);
            v = d.parent[v];
        }
        if (v < 0 || !in_region[v])
            throw error(errc::unreachable_vertex,
                        "ancestor chain of " + std::to_string(start) + " leaves the region");
        int8_t c = col.color[v] >= 0 ? col.color[v] : (int8_t)groups[bi.entry(v)];
        for (int x : chain) col.color[x] = c;
    }
    // Sperner precondition: the boundary classes are consecutive, non-empty.
    std::vector<int> cyc;
    for (const auto& a : r.arcs)
        for (int v : a.verts) cyc.push_back(col.color[v]);
    int blocks = 0;
    bool present[3] = {false, false, false};
    for (size_t i = 0; i < cyc.size(); ++i) {
        TWG_CHECK(cyc[i] >= 0 && cyc[i] < 3, "uncoloured boundary vertex");
        present[cyc[i]] = true;
        if (cyc[i] != cyc[(i + 1) % cyc.size()]) ++blocks;
    }
    TWG_CHECK(present[0] && present[1] && present[2], "a colour class is empty");
    TWG_CHECK(blocks == 3, "boundary colour classes are not consecutive");
    return col;
}

int find_trichromatic_face(const Disk& d, const Region& r, const ThreeColoring& c) {
    for (int f : r.faces) {
        auto vs = d.fs.face_vertices(d.m, f);
        bool got[3] = {false, false, false};
        for (int v : vs) {
            TWG_CHECK(c.color[v] >= 0, "face vertex outside colouring");
            got[c.color[v]] = true;
        }
        if (got[0] && got[1] && got[2]) return f;
    }
    throw error(errc::no_trichromatic_face, "no trichromatic inner face");
}

namespace {

struct Leg {
    int z = -1;                // face vertex of this colour
    std::vector<int> chain;    // top..bottom, empty when z is on the stop set
    int attach = -1;           // stop vertex (parent of chain top, or z itself)
    int attach_entry = -1;     // entry of attach in the ambient region
    int path = -1;             // store id of the chain, -1 when empty
};

Leg climb_leg(const Disk& d, const BoundaryIndex& stops,
              const std::vector<uint8_t>* transparent, int z) {
    auto opaque = [&](int v) {
        if (!stops.on_boundary(v)) return false;
        return !transparent || !(*transparent)[stops.entry(v)];
    };
    Leg leg;
    leg.z = z;
    int v = z;
    while (!opaque(v)) {
        leg.chain.push_back(v);
        v = d.parent[v];
        TWG_CHECK(v >= 0, "leg climbed past a forest root");
    }
    leg.attach = v;
    leg.attach_entry = stops.entry(v);
    std::reverse(leg.chain.begin(), leg.chain.end());
    return leg;
}

struct CutSide {
    Region region;
    bool leg_desc = false;  // trailing arc: descending leg of the far colour
    bool leg_asc = false;   // trailing arc: ascending leg of the near colour
};

// Boundary arcs of the side running from leg i to leg j (cyclically forward).
CutSide side_arcs(const Region& r, const std::array<Leg, 3>& legs, int i, int j) {
    CutSide side;
    const Leg &li = legs[i], &lj = legs[j];
    int m = (int)r.arcs.size();
    if (li.attach == lj.attach) {
        side.region.arcs.push_back(Arc{r.arcs[li.attach_entry].path, {li.attach}});
    } else {
        const Arc& ai = r.arcs[li.attach_entry];
        auto pi = std::find(ai.verts.begin(), ai.verts.end(), li.attach);
        side.region.arcs.push_back(Arc{ai.path, std::vector<int>(pi, ai.verts.end())});
        for (int e = (li.attach_entry + 1) % m; e != lj.attach_entry; e = (e + 1) % m)
            side.region.arcs.push_back(r.arcs[e]);
        const Arc& aj = r.arcs[lj.attach_entry];
        auto pj = std::find(aj.verts.begin(), aj.verts.end(), lj.attach);
        side.region.arcs.push_back(Arc{aj.path, std::vector<int>(aj.verts.begin(), pj + 1)});
    }
    if (!lj.chain.empty()) {
        side.region.arcs.push_back(Arc{lj.path, lj.chain});
        side.leg_desc = true;
    }
    if (!li.chain.empty()) {
        std::vector<int> up(li.chain.rbegin(), li.chain.rend());
        side.region.arcs.push_back(Arc{li.path, up});
        side.leg_asc = true;
    }
    return side;
}

// Edge of face f joining vertices a and b (faces are triangles).
int face_edge_between(const Disk& d, int f, int a, int b) {
    const auto& walk = d.fs.walks[f];
    for (int s : walk) {
        int dart = FaceSet::side_dart(s);
        int u = d.m.dart_origin[dart], v = d.m.head(dart);
        if ((u == a && v == b) || (u == b && v == a)) return CombinatorialMap::edge_of(dart);
    }
    TWG_CHECK(false, "face has no edge between the given vertices");
    return -1;
}

// Cuts the region along the three legs and the trichromatic face; returns one
// side per colour pair (0,1), (1,2), (2,0). Sides may be empty.
std::array<CutSide, 3> cut3(const Disk& d, const Region& r, int face,
                            const std::array<Leg, 3>& legs) {
    std::vector<uint8_t> cut_edge(d.m.edge_count(), 0);
    for (const Leg& l : legs)
        for (int v : l.chain) cut_edge[d.parent_edge[v]] = 1;
    int tri[3];
    for (int i = 0; i < 3; ++i) {
        tri[i] = face_edge_between(d, face, legs[i].z, legs[(i + 1) % 3].z);
        cut_edge[tri[i]] = 1;
    }

    std::vector<uint8_t> member(d.fs.face_count(), 0), visited(d.fs.face_count(), 0);
    for (int f : r.faces) member[f] = 1;
    visited[face] = 1;

    std::array<CutSide, 3> out;
    int covered = 1;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        auto [fa, fb] = d.fs.edge_faces(tri[i]);
        int seed = fa == face ? fb : fa;
        TWG_CHECK(seed != face, "triangle edge sees its own face twice");
        std::vector<int> acc;
        if (seed >= 0 && member[seed] && !visited[seed]) {
            std::vector<int> stack = {seed};
            visited[seed] = 1;
            while (!stack.empty()) {
                int f = stack.back();
                stack.pop_back();
                acc.push_back(f);
                for (int e : d.fs.face_edges(f)) {
                    if (cut_edge[e]) continue;
                    auto [x, y] = d.fs.edge_faces(e);
                    int o = x == f ? y : x;
                    if (member[o] && !visited[o]) {
                        visited[o] = 1;
                        stack.push_back(o);
                    }
                }
            }
        }
        if (acc.empty()) continue;
        covered += (int)acc.size();
        out[i] = side_arcs(r, legs, i, j);
        std::sort(acc.begin(), acc.end());
        out[i].region.faces = std::move(acc);
    }
    TWG_CHECK(covered == (int)r.faces.size(), "tripod cut does not cover the region");
    return out;
}

std::array<Leg, 3> make_tripod(const Disk& d, const Region& r, const BoundaryIndex& bi,
                               const ThreeColoring& col, int face, PathStore& store,
                               const std::vector<uint8_t>* transparent) {
    std::array<Leg, 3> legs;
    auto vs = d.fs.face_vertices(d.m, face);
    for (int v : vs) legs[col.color[v]].z = v;
    for (int c = 0; c < 3; ++c) {
        TWG_CHECK(legs[c].z >= 0, "face is not trichromatic");
        legs[c] = climb_leg(d, bi, transparent, legs[c].z);
        if (!legs[c].chain.empty()) legs[c].path = store.add(legs[c].chain);
    }
    return legs;
}

int add_bag(RootedTreeDecomposition& dec, std::vector<int> paths) {
    std::sort(paths.begin(), paths.end());
    paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
    TWG_CHECK((int)paths.size() <= 8, "bag larger than eight paths");
    dec.bags.push_back(std::move(paths));
    dec.parent.push_back(-1);
    return (int)dec.bags.size() - 1;
}

// Splits the longest multi-vertex arc in two; used to reach three boundary
// entries before colouring.
void split_longest_arc(Region& r) {
    int best = -1, blen = 1;
    for (int i = 0; i < (int)r.arcs.size(); ++i)
        if ((int)r.arcs[i].verts.size() > blen) {
            blen = (int)r.arcs[i].verts.size();
            best = i;
        }
    TWG_CHECK(best >= 0, "no arc available to split");
    Arc a = r.arcs[best];
    int mid = (int)a.verts.size() / 2;
    Arc first{a.path, std::vector<int>(a.verts.begin(), a.verts.begin() + mid)};
    Arc second{a.path, std::vector<int>(a.verts.begin() + mid, a.verts.end())};
    r.arcs[best] = first;
    r.arcs.insert(r.arcs.begin() + best + 1, second);
}

int boundary_size(const Region& r) {
    int n = 0;
    for (const auto& a : r.arcs) n += (int)a.verts.size();
    return n;
}

}  // namespace

int decompose_region(const Disk& d, const Region& region, PathStore& store,
                     RootedTreeDecomposition& dec) {
    validate_region(d, region);
    std::vector<int> ids = distinct_arc_paths(region);
    TWG_CHECK((int)ids.size() <= 6, "region bounded by more than six paths");
    std::vector<int> interior = region_interior(d, region);
    if (interior.empty()) return add_bag(dec, ids);

    Region r = region;
    if (boundary_size(r) == 2) {
        // Two boundary vertices joined by parallel edges: cut along the chain
        // from the apex of an incident triangle.
        while (r.arcs.size() < 2) split_longest_arc(r);
        BoundaryIndex bi = index_boundary(r);
        int u = r.arcs[0].verts[0], v = r.arcs[1].verts[0];
        int face = -1, w = -1;
        for (int f : r.faces) {
            auto vs = d.fs.face_vertices(d.m, f);
            bool has_u = false, has_v = false;
            int other = -1;
            for (int x : vs) {
                if (x == u) has_u = true;
                else if (x == v) has_v = true;
                else other = x;
            }
            if (has_u && has_v && other >= 0 && !bi.on_boundary(other)) {
                face = f;
                w = other;
                break;
            }
        }
        TWG_CHECK(face >= 0, "lens region without an apex face");
        std::array<Leg, 3> legs;
        legs[0] = climb_leg(d, bi, nullptr, u);
        legs[1] = climb_leg(d, bi, nullptr, v);
        legs[2] = climb_leg(d, bi, nullptr, w);
        if (!legs[2].chain.empty()) legs[2].path = store.add(legs[2].chain);
        auto sides = cut3(d, r, face, legs);
        std::vector<int> bag = ids;
        if (legs[2].path >= 0) bag.push_back(legs[2].path);
        int b = add_bag(dec, bag);
        for (auto& s : sides)
            if (!s.region.faces.empty()) {
                int child = decompose_region(d, s.region, store, dec);
                dec.parent[child] = b;
            }
        return b;
    }

    while ((int)r.arcs.size() < 3) split_longest_arc(r);
    int k = (int)r.arcs.size();
    TWG_CHECK(k <= 6, "region with more than six boundary arcs");
    BoundaryIndex bi = index_boundary(r);

    if (k <= 5) {
        std::vector<int> groups(k, 2);
        groups[0] = 0;
        groups[1] = 1;
        ThreeColoring col = reach_coloring(d, r, groups);
        int face = find_trichromatic_face(d, r, col);
        auto legs = make_tripod(d, r, bi, col, face, store, nullptr);
        auto sides = cut3(d, r, face, legs);
        std::vector<int> bag = ids;
        for (const Leg& l : legs)
            if (l.path >= 0) bag.push_back(l.path);
        int b = add_bag(dec, bag);
        for (auto& s : sides)
            if (!s.region.faces.empty()) {
                int child = decompose_region(d, s.region, store, dec);
                dec.parent[child] = b;
            }
        return b;
    }

    // Six arcs: two-bag gadget. Colour pairs of consecutive arcs and pick the
    // leg pair whose attachments are at least two entries apart.
    std::vector<int> groups = {0, 0, 1, 1, 2, 2};
    ThreeColoring col = reach_coloring(d, r, groups);
    int face = find_trichromatic_face(d, r, col);
    auto legs = make_tripod(d, r, bi, col, face, store, nullptr);
    int ia = legs[0].attach_entry, ib = legs[1].attach_entry, ic = legs[2].attach_entry;
    TWG_CHECK(ia < 2 && ib >= 2 && ib < 4 && ic >= 4, "leg attachments in wrong groups");
    int x, y;  // cut pair: sides (x,y) under the root, the rest under bag two
    if (ib - ia >= 2) {
        x = 0;
        y = 1;
    } else {
        TWG_CHECK(ic - ib >= 2, "no leg pair two entries apart");
        x = 1;
        y = 2;
    }
    auto sides = cut3(d, r, face, legs);
    std::vector<int> rootbag = ids;
    if (legs[x].path >= 0) rootbag.push_back(legs[x].path);
    if (legs[y].path >= 0) rootbag.push_back(legs[y].path);
    int root = add_bag(dec, rootbag);
    std::vector<int> secondbag;
    for (int e = legs[y].attach_entry;; e = (e + 1) % 6) {
        secondbag.push_back(r.arcs[e].path);
        if (e == legs[x].attach_entry) break;
    }
    for (const Leg& l : legs)
        if (l.path >= 0) secondbag.push_back(l.path);
    int second = add_bag(dec, secondbag);
    dec.parent[second] = root;
    for (int i = 0; i < 3; ++i) {
        if (sides[i].region.faces.empty()) continue;
        int child = decompose_region(d, sides[i].region, store, dec);
        dec.parent[child] = i == x ? root : second;
    }
    return root;
}

HexDecomposition decompose_hexagon(const Disk& d, const Region& r) {
    HexDecomposition h;
    PathStore store;
    for (const auto& a : r.arcs) {
        std::vector<int> vs = a.verts;
        if (d.layer[vs.front()] > d.layer[vs.back()]) std::reverse(vs.begin(), vs.end());
        int id = store.add(vs);
        TWG_CHECK(id == a.path, "region arcs must use store ids 0..k-1");
    }
    int root = decompose_region(d, r, store, h.dec);
    TWG_CHECK(root == 0, "root bag expected first");
    std::vector<VerticalPath> paths;
    BfsForest f;
    f.parent = d.parent;
    f.layer = d.layer;
    for (int i = 0; i < store.size(); ++i)
        paths.push_back(make_vertical_path(f, store.verts[i], i));
    h.partition = make_path_partition(d.m.nv, std::move(paths));
    h.path_verts = store.verts;
    return h;
}

namespace {

Skeleton single_face_skeleton(const Region& r) {
    Skeleton s;
    s.paths = distinct_arc_paths(r);
    s.faces = {r};
    return s;
}

Skeleton merge_skeletons(Skeleton a, const Skeleton& b) {
    a.paths.insert(a.paths.end(), b.paths.begin(), b.paths.end());
    std::sort(a.paths.begin(), a.paths.end());
    a.paths.erase(std::unique(a.paths.begin(), a.paths.end()), a.paths.end());
    for (const auto& f : b.faces) a.faces.push_back(f);
    return a;
}

struct Tripod {
    int face = -1;
    std::array<Leg, 3> legs;
};

Tripod sperner_tripod(const Disk& d, const Region& r, const std::vector<int>& groups,
                      PathStore& store, const std::vector<uint8_t>* transparent,
                      const BoundaryIndex& attach_index) {
    Tripod t;
    ThreeColoring col = reach_coloring(d, r, groups, transparent);
    t.face = find_trichromatic_face(d, r, col);
    BoundaryIndex stops = index_boundary(r);
    auto vs = d.fs.face_vertices(d.m, t.face);
    for (int v : vs) t.legs[col.color[v]].z = v;
    for (int c = 0; c < 3; ++c) {
        TWG_CHECK(t.legs[c].z >= 0, "face is not trichromatic");
        t.legs[c] = climb_leg(d, stops, transparent, t.legs[c].z);
        if (!t.legs[c].chain.empty()) t.legs[c].path = store.add(t.legs[c].chain);
        // Attachment entry in the ambient region (for recolouring cuts the
        // stop region differs from the region being cut).
        t.legs[c].attach_entry = attach_index.entry(t.legs[c].attach);
    }
    return t;
}

std::vector<int> positional_groups(int k) {
    std::vector<int> groups(k, 2);
    for (int i = 0; i < 3 && i < k; ++i) groups[i] = 0;
    int greens = k == 7 ? 2 : 3;
    for (int i = 3; i < 3 + greens && i < k; ++i) groups[i] = 1;
    return groups;
}

int side_entry_count(const CutSide& s) { return (int)s.region.arcs.size(); }

// Recolours a seven-entry side produced by a tripod cut: its two end parts
// (together with the adjacent transparent legs) get the extreme colours, the
// middle parts the third.
Tripod recolour_tripod(const Disk& d, const Region& whole, const CutSide& wide,
                       PathStore& store) {
    const Region& w = wide.region;
    int n = (int)w.arcs.size();
    int nlegs = (wide.leg_desc ? 1 : 0) + (wide.leg_asc ? 1 : 0);
    int parts = n - nlegs;
    TWG_CHECK(parts >= 5, "recolour needs at least five boundary parts");
    std::vector<int> groups(n, 2);
    std::vector<uint8_t> transparent(n, 0);
    groups[0] = 0;
    groups[parts - 1] = 1;
    if (wide.leg_desc) {
        groups[parts] = 1;  // descending leg attaches next to the far part
        transparent[parts] = 1;
    }
    if (wide.leg_asc) {
        groups[n - 1] = 0;  // ascending leg wraps around to the first part
        transparent[n - 1] = 1;
    }
    BoundaryIndex ambient = index_boundary(whole);
    return sperner_tripod(d, w, groups, store, &transparent, ambient);
}

std::array<CutSide, 2> cut2(const Disk& d, const Region& r, const Tripod& t, int i) {
    int j = (i + 1) % 3;
    std::vector<uint8_t> cut_edge(d.m.edge_count(), 0);
    for (const Leg& l : {t.legs[i], t.legs[j]})
        for (int v : l.chain) cut_edge[d.parent_edge[v]] = 1;
    int e0 = face_edge_between(d, t.face, t.legs[i].z, t.legs[j].z);
    cut_edge[e0] = 1;

    std::vector<uint8_t> member(d.fs.face_count(), 0), visited(d.fs.face_count(), 0);
    for (int f : r.faces) member[f] = 1;

    auto flood = [&](int seed) {
        std::vector<int> acc;
        if (seed < 0 || !member[seed] || visited[seed]) return acc;
        std::vector<int> stack = {seed};
        visited[seed] = 1;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            acc.push_back(f);
            for (int e : d.fs.face_edges(f)) {
                if (cut_edge[e]) continue;
                auto [x, y] = d.fs.edge_faces(e);
                int o = x == f ? y : x;
                if (member[o] && !visited[o]) {
                    visited[o] = 1;
                    stack.push_back(o);
                }
            }
        }
        std::sort(acc.begin(), acc.end());
        return acc;
    };

    auto [fa, fb] = d.fs.edge_faces(e0);
    int seed1 = fa == t.face ? fb : fa;
    std::array<CutSide, 2> out;
    out[0] = side_arcs(r, t.legs, i, j);
    out[0].region.faces = flood(seed1);
    out[1] = side_arcs(r, t.legs, j, i);
    out[1].region.faces = flood(t.face);
    TWG_CHECK(out[0].region.faces.size() + out[1].region.faces.size() == r.faces.size(),
              "two-way cut does not cover the region");
    TWG_CHECK(!out[0].region.faces.empty() && !out[1].region.faces.empty(),
              "two-way cut produced an empty side");
    return out;
}

}  // namespace

Skeleton split_region(const Disk& d, const Region& region, PathStore& store) {
    validate_region(d, region);
    Region r = region;
    int k = (int)r.arcs.size();
    if (k <= 6) return single_face_skeleton(r);

    BoundaryIndex bi = index_boundary(r);
    Tripod t = sperner_tripod(d, r, positional_groups(k), store, nullptr, bi);
    int ia = t.legs[0].attach_entry, ib = t.legs[1].attach_entry, ic = t.legs[2].attach_entry;
    TWG_CHECK(ia < 3, "red leg attaches outside its group");
    TWG_CHECK(ib >= 3 && ib < (k == 7 ? 5 : 6), "green leg attaches outside its group");
    TWG_CHECK(ic >= (k == 7 ? 5 : 6), "blue leg attaches outside its group");

    auto finish = [&](const std::array<CutSide, 3>& sides, const Tripod& tp) {
        Skeleton s;
        s.paths = distinct_arc_paths(r);
        for (const Leg& l : tp.legs)
            if (l.path >= 0) s.paths.push_back(l.path);
        std::sort(s.paths.begin(), s.paths.end());
        for (const auto& side : sides)
            if (!side.region.faces.empty()) s.faces.push_back(side.region);
        return s;
    };

    if (k >= 9) {
        int lab = ib - ia, lbc = ic - ib, lca = k + ia - ic;
        if (lab <= 3 && lbc <= 3 && lca <= 3) {
            TWG_CHECK(k == 9, "balanced attachments need nine paths");
            auto sides = cut3(d, r, t.face, t.legs);
            for (const auto& s : sides)
                TWG_CHECK(side_entry_count(s) <= 6 || s.region.faces.empty(),
                          "balanced cut left a wide face");
            return finish(sides, t);
        }
        int pair = lab >= 4 ? 0 : (lbc >= 4 ? 1 : 2);
        auto halves = cut2(d, r, t, pair);
        Skeleton s1 = split_region(d, halves[0].region, store);
        Skeleton s2 = split_region(d, halves[1].region, store);
        return merge_skeletons(std::move(s1), s2);
    }

    auto sides = cut3(d, r, t.face, t.legs);
    int wide = -1, wide_count = 0;
    for (int i = 0; i < 3; ++i) {
        if (sides[i].region.faces.empty()) continue;
        int c = side_entry_count(sides[i]);
        if (c > 6) {
            TWG_CHECK(wide < 0, "two wide faces after a tripod cut");
            wide = i;
            wide_count = c;
        }
    }
    if (wide < 0) return finish(sides, t);

    if (k == 8 && wide_count == 7) {
        Skeleton sub = split_region(d, sides[wide].region, store);
        Skeleton s = finish({sides[(wide + 1) % 3], sides[(wide + 2) % 3], CutSide{}}, t);
        return merge_skeletons(std::move(s), sub);
    }

    // Recolour inside the wide side and cut the whole region along the new
    // tripod; the original legs are discarded.
    Tripod t2 = recolour_tripod(d, r, sides[wide], store);
    auto sides2 = cut3(d, r, t2.face, t2.legs);
    int wide2 = -1, wide2_count = 0;
    for (int i = 0; i < 3; ++i) {
        if (sides2[i].region.faces.empty()) continue;
        int c = side_entry_count(sides2[i]);
        if (c > 6) {
            TWG_CHECK(wide2 < 0, "two wide faces after recolouring");
            wide2 = i;
            wide2_count = c;
        }
    }
    if (wide2 < 0) return finish(sides2, t2);
    TWG_CHECK(k == 8 && wide2_count == 7, "recolouring left an over-wide face");
    Skeleton sub = split_region(d, sides2[wide2].region, store);
    Skeleton s = finish({sides2[(wide2 + 1) % 3], sides2[(wide2 + 2) % 3], CutSide{}}, t2);
    return merge_skeletons(std::move(s), sub);
}

namespace {

struct InteriorComponents {
    std::vector<std::vector<int>> comps;
    // arc-path ids adjacent to each component
    std::vector<std::vector<int>> touched;
};

InteriorComponents interior_components(const Disk& d, const Region& r) {
    BoundaryIndex bi = index_boundary(r);
    std::vector<int> interior = region_interior(d, r);
    std::vector<uint8_t> is_int(d.m.nv, 0);
    for (int v : interior) is_int[v] = 1;
    InteriorComponents ic;
    std::vector<uint8_t> done(d.m.nv, 0);
    for (int s : interior) {
        if (done[s]) continue;
        std::vector<int> comp, stack = {s};
        std::set<int> touch;
        done[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : d.ug.adj[v]) {
                if (is_int[w]) {
                    if (!done[w]) {
                        done[w] = 1;
                        stack.push_back(w);
                    }
                } else {
                    TWG_CHECK(bi.on_boundary(w), "interior vertex adjacent outside region");
                    touch.insert(r.arcs[bi.entry(w)].path);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        ic.comps.push_back(std::move(comp));
        ic.touched.push_back(std::vector<int>(touch.begin(), touch.end()));
    }
    return ic;
}

bool has_touching_component(const Disk& d, const Region& r) {
    std::vector<int> ids = distinct_arc_paths(r);
    InteriorComponents ic = interior_components(d, r);
    for (const auto& t : ic.touched)
        if (std::includes(t.begin(), t.end(), ids.begin(), ids.end())) return true;
    return ic.comps.empty();
}

void refine_face(const Disk& d, const Region& r, std::vector<Region>& out) {
    if (region_interior(d, r).empty() || has_touching_component(d, r)) {
        out.push_back(r);
        return;
    }
    // Need a separating chord: an edge interior to the face joining two
    // boundary vertices. Prefer chords between different arcs, which keep the
    // entry counts of both sides within bounds.
    BoundaryIndex bi = index_boundary(r);
    std::vector<uint8_t> member(d.fs.face_count(), 0);
    for (int f : r.faces) member[f] = 1;
    int chord = -1;
    bool cross = false;
    for (int f : r.faces) {
        for (int s : d.fs.walks[f]) {
            int dart = FaceSet::side_dart(s);
            int e = CombinatorialMap::edge_of(dart);
            auto [fa, fb] = d.fs.edge_faces(e);
            if (!member[fa] || !member[fb] || fa == fb) continue;  // boundary edge
            int u = d.m.dart_origin[dart], v = d.m.head(dart);
            if (!bi.on_boundary(u) || !bi.on_boundary(v)) continue;
            bool is_cross = bi.entry(u) != bi.entry(v);
            if (is_cross && (!cross || e < chord)) {
                chord = e;
                cross = true;
            } else if (!cross && !is_cross && (int)r.arcs.size() <= 5 && (chord < 0 || e < chord)) {
                chord = e;
            }
        }
    }
    TWG_CHECK(chord >= 0, "face fails the touching test but admits no chord");

    auto [u, v] = d.m.edge_ends(chord);
    auto [eu, pu] = bi.where.at(u);
    auto [ev, pv] = bi.where.at(v);
    if (eu == ev && pu > pv) {
        std::swap(u, v);
        std::swap(pu, pv);
    }
    int m = (int)r.arcs.size();
    Region s1, s2;
    if (eu == ev) {
        const Arc& a = r.arcs[eu];
        s1.arcs.push_back(Arc{a.path, std::vector<int>(a.verts.begin() + pu,
                                                        a.verts.begin() + pv + 1)});
        s2.arcs.push_back(Arc{a.path, std::vector<int>(a.verts.begin() + pv, a.verts.end())});
        for (int e = (eu + 1) % m; e != eu; e = (e + 1) % m) s2.arcs.push_back(r.arcs[e]);
        s2.arcs.push_back(Arc{a.path, std::vector<int>(a.verts.begin(),
                                                        a.verts.begin() + pu + 1)});
    } else {
        const Arc &au = r.arcs[eu], &av = r.arcs[ev];
        s1.arcs.push_back(Arc{au.path, std::vector<int>(au.verts.begin() + pu, au.verts.end())});
        for (int e = (eu + 1) % m; e != ev; e = (e + 1) % m) s1.arcs.push_back(r.arcs[e]);
        s1.arcs.push_back(Arc{av.path, std::vector<int>(av.verts.begin(),
                                                         av.verts.begin() + pv + 1)});
        s2.arcs.push_back(Arc{av.path, std::vector<int>(av.verts.begin() + pv, av.verts.end())});
        for (int e = (ev + 1) % m; e != eu; e = (e + 1) % m) s2.arcs.push_back(r.arcs[e]);
        s2.arcs.push_back(Arc{au.path, std::vector<int>(au.verts.begin(),
                                                         au.verts.begin() + pu + 1)});
    }
    // Faces on each side of the chord.
    std::vector<uint8_t> visited(d.fs.face_count(), 0);
    auto flood = [&](int seed) {
        std::vector<int> acc, stack = {seed};
        visited[seed] = 1;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            acc.push_back(f);
            for (int e : d.fs.face_edges(f)) {
                if (e == chord) continue;
                auto [x, y] = d.fs.edge_faces(e);
                int o = x == f ? y : x;
                if (member[o] && !visited[o]) {
                    visited[o] = 1;
                    stack.push_back(o);
                }
            }
        }
        std::sort(acc.begin(), acc.end());
        return acc;
    };
    auto [fa, fb] = d.fs.edge_faces(chord);
    std::vector<int> part1 = flood(fa), part2 = flood(fb);
    TWG_CHECK(part1.size() + part2.size() == r.faces.size(), "chord does not split the face");
    // Match the flooded parts to the arc splits: probe with a vertex unique to
    // one side.
    auto side_has_vertex = [&](const std::vector<int>& faces, int probe) {
        for (int f : faces)
            for (int x : d.fs.face_vertices(d.m, f))
                if (x == probe) return true;
        return false;
    };
    int probe = -1;
    for (const auto& a : s1.arcs)
        for (int x : a.verts)
            if (x != u && x != v) probe = x;
    bool p1_is_s1;
    if (probe >= 0) {
        p1_is_s1 = side_has_vertex(part1, probe);
    } else {
        // s1 degenerates to the chord's own bigon side; it is the part whose
        // every boundary vertex is u or v.
        auto only_uv = [&](const std::vector<int>& faces) {
            for (int f : faces)
                for (int x : d.fs.face_vertices(d.m, f))
                    if (bi.on_boundary(x) && x != u && x != v) return false;
            return true;
        };
        p1_is_s1 = only_uv(part1);
    }
    s1.faces = p1_is_s1 ? part1 : part2;
    s2.faces = p1_is_s1 ? part2 : part1;
    refine_face(d, s1, out);
    refine_face(d, s2, out);
}

}  // namespace

Skeleton add_separating_chords(const Disk& d, const Skeleton& s, const PathStore& store) {
    (void)store;
    Skeleton out;
    out.paths = s.paths;
    for (const auto& face : s.faces) refine_face(d, face, out.faces);
    int nonempty_before = 0, nonempty_after = 0;
    for (const auto& f : s.faces)
        if (!region_interior(d, f).empty()) ++nonempty_before;
    for (const auto& f : out.faces)
        if (!region_interior(d, f).empty()) ++nonempty_after;
    TWG_CHECK(nonempty_after <= 6 * std::max(1, nonempty_before),
              "chord refinement produced too many faces");
    return out;
}

// ---------------------------------------------------------------------------
// Disk construction

namespace {

struct DiskBuild {
    std::vector<int> claimed_by;   // host dart -> disk vertex claiming it
    std::vector<int> edge_map;     // host edge -> disk edge (-1 for cut edges)
};

}  // namespace

CutDisk build_disk(const CombinatorialMap& host, const MapBfsTree& tree, const CutSystem& cut,
                   const PathPartition& bpaths, const WalkSegmentation& segs) {
    int M = (int)cut.walk.size();
    TWG_CHECK(M >= 3, "cut walk too short");
    CutDisk out;

    std::vector<int> interior_id(host.nv, -1);
    int next = M;
    for (int v = 0; v < host.nv; ++v)
        if (!cut.in_t0[v]) interior_id[v] = next++;
    int disk_nv = next;

    // Edges: boundary copies first, then the surviving host edges.
    DiskBuild b;
    b.edge_map.assign(host.edge_count(), -1);
    int disk_ne = M;
    for (int e = 0; e < host.edge_count(); ++e)
        if (!cut.f0_edge[e]) b.edge_map[e] = disk_ne++;

    // Claim the corner intervals: walking the boundary circle, the non-cut
    // darts between the in-dart and the out-dart of each corner belong to
    // that corner's copy.
    b.claimed_by.assign(host.dart_count(), -1);
    std::vector<int> corner_rev(M, 0);
    std::vector<std::vector<int>> corner_darts(M);
    for (int t = 0; t < M; ++t) {
        int prev = cut.walk[(t + M - 1) % M];
        int curs = cut.walk[t];
        int v = host.dart_origin[FaceSet::side_dart(curs)];
        TWG_CHECK(host.head(FaceSet::side_dart(prev)) == v, "walk corners out of order");
        int rev = FaceSet::side_rev(curs);
        corner_rev[t] = rev;
        int from = CombinatorialMap::twin(FaceSet::side_dart(prev));
        int target = FaceSet::side_dart(curs);
        int x = from;
        while (true) {
            x = rev ? host.rot_prev(x) : host.rot_next(x);
            if (x == target) break;
            TWG_CHECK(!cut.f0_edge[CombinatorialMap::edge_of(x)],
                      "cut dart inside a corner interval");
            TWG_CHECK(b.claimed_by[x] == -1, "host dart claimed twice");
            b.claimed_by[x] = t;
            corner_darts[t].push_back(x);
        }
    }
    for (int dart = 0; dart < host.dart_count(); ++dart) {
        if (cut.f0_edge[CombinatorialMap::edge_of(dart)]) continue;
        if (cut.in_t0[host.dart_origin[dart]])
            TWG_CHECK(b.claimed_by[dart] >= 0, "unclaimed dart at a cut vertex");
    }

    // Sign of a surviving edge seen from the disk: flipped once per endpoint
    // whose corner is locally reversed.
    auto end_factor = [&](int dart) {
        int v = host.dart_origin[dart];
        if (!cut.in_t0[v]) return 1;
        return corner_rev[b.claimed_by[dart]] ? -1 : 1;
    };
    auto disk_end = [&](int dart) {
        int v = host.dart_origin[dart];
        return cut.in_t0[v] ? b.claimed_by[dart] : interior_id[v];
    };

    MapBuilder mb(disk_nv);
    for (int t = 0; t < M; ++t) {
        mb.add_occurrence(t, (t + M - 1) % M, 1);
        for (int x : corner_darts[t]) {
            int e = CombinatorialMap::edge_of(x);
            int sign = host.edge_sign[e] * end_factor(2 * e) * end_factor(2 * e + 1);
            mb.add_occurrence(t, b.edge_map[e], sign);
        }
        mb.add_occurrence(t, t, 1);
    }
    for (int v = 0; v < host.nv; ++v) {
        if (cut.in_t0[v]) continue;
        for (int dart : host.rotation[v]) {
            int e = CombinatorialMap::edge_of(dart);
            int sign = host.edge_sign[e] * end_factor(2 * e) * end_factor(2 * e + 1);
            mb.add_occurrence(interior_id[v], b.edge_map[e], sign);
        }
    }

    Disk& d = out.disk;
    d.m = mb.build();
    std::vector<uint8_t> flips;
    if (!orienting_flips(d.m, flips))
        throw error(errc::not_a_disk, "cut-open map is not orientable");
    flip_vertices(d.m, flips);
    for (int e = 0; e < d.m.edge_count(); ++e)
        TWG_CHECK(d.m.edge_sign[e] == 1, "disk normalisation left a negative sign");
    SurfaceInfo si = euler_genus(d.m);
    TWG_CHECK(si.genus == 0, "cut-open map is not planar");
    d.fs = trace_faces(d.m);
    d.ug = underlying_graph(d.m);
    d.outer_face = -1;
    for (int f = 0; f < d.fs.face_count(); ++f) {
        if (d.fs.degree(f) != M) continue;
        bool all_boundary = true;
        for (int e : d.fs.face_edges(f)) all_boundary = all_boundary && e < M;
        if (all_boundary) {
            TWG_CHECK(d.outer_face == -1, "two candidate outer faces");
            d.outer_face = f;
        }
    }
    TWG_CHECK(d.outer_face >= 0, "outer face not found");

    // Forest: layers are inherited; copies chain along their segment, the
    // lowest-layer end of every segment is a root.
    d.layer.assign(disk_nv, -1);
    d.parent.assign(disk_nv, -1);
    d.parent_edge.assign(disk_nv, -1);
    d.to_orig.assign(disk_nv, -1);
    for (int t = 0; t < M; ++t) {
        int v = host.dart_origin[FaceSet::side_dart(cut.walk[t])];
        d.to_orig[t] = v;
        d.layer[t] = tree.forest.layer[v];
    }
    for (int v = 0; v < host.nv; ++v)
        if (!cut.in_t0[v]) {
            d.to_orig[interior_id[v]] = v;
            d.layer[interior_id[v]] = tree.forest.layer[v];
        }
    for (int v = 0; v < host.nv; ++v) {
        if (cut.in_t0[v]) continue;
        int p = tree.forest.parent[v];
        int pe = tree.parent_edge[v];
        TWG_CHECK(!cut.f0_edge[pe], "interior parent edge lies on the cut");
        int pd = host.dart_origin[2 * pe] == p ? 2 * pe : 2 * pe + 1;
        d.parent[interior_id[v]] = disk_end(pd);
        d.parent_edge[interior_id[v]] = b.edge_map[pe];
    }
    for (const auto& s : segs.segments) {
        std::vector<int> run;
        for (int i = 0; i < s.length; ++i) run.push_back((s.begin + i) % M);
        bool ascending = s.length == 1 || d.layer[run[1]] > d.layer[run[0]];
        for (int i = 0; i < s.length; ++i) {
            if (ascending && i > 0) {
                d.parent[run[i]] = run[i - 1];
                d.parent_edge[run[i]] = (run[i] + M - 1) % M;
            } else if (!ascending && i + 1 < s.length) {
                d.parent[run[i]] = run[i + 1];
                d.parent_edge[run[i]] = run[i];
            }
        }
        std::vector<int> top_down = run;
        if (!ascending) std::reverse(top_down.begin(), top_down.end());
        int pid = out.store.add(top_down);
        out.segment_paths.push_back(pid);
        out.segment_host_path.push_back(s.path);
        Arc arc{pid, run};
        out.whole.arcs.push_back(arc);
    }
    for (int f = 0; f < d.fs.face_count(); ++f)
        if (f != d.outer_face) out.whole.faces.push_back(f);
    (void)bpaths;
    validate_region(d, out.whole);
    return out;
}

int planar_root(const CombinatorialMap& host) {
    CombinatorialMap m = host;
    std::vector<uint8_t> flips;
    TWG_CHECK(orienting_flips(m, flips), "planar map must be orientable");
    flip_vertices(m, flips);
    FaceSet fs = trace_faces(m);
    auto vs = fs.face_vertices(m, 0);
    return *std::min_element(vs.begin(), vs.end());
}

CutDisk build_disk_planar(const CombinatorialMap& host, const MapBfsTree& tree, int outer_face) {
    CutDisk out;
    Disk& d = out.disk;
    d.m = host;
    std::vector<uint8_t> flips;
    TWG_CHECK(orienting_flips(d.m, flips), "planar map must be orientable");
    flip_vertices(d.m, flips);
    d.fs = trace_faces(d.m);
    d.ug = underlying_graph(d.m);
    d.outer_face = outer_face;
    auto corners = d.fs.face_vertices(d.m, outer_face);
    TWG_CHECK(corners.size() == 3, "outer face of a triangulation must be a triangle");
    int root = -1;
    for (int v = 0; v < host.nv; ++v)
        if (tree.forest.parent[v] < 0) root = v;
    auto it = std::find(corners.begin(), corners.end(), root);
    TWG_CHECK(it != corners.end(), "tree root not on the outer face");
    std::rotate(corners.begin(), it, corners.end());

    d.layer = tree.forest.layer;
    d.parent = tree.forest.parent;
    d.parent_edge = tree.parent_edge;
    d.to_orig.resize(host.nv);
    std::iota(d.to_orig.begin(), d.to_orig.end(), 0);

    for (int i = 0; i < 3; ++i) {
        int pid = out.store.add({corners[i]});
        out.segment_paths.push_back(pid);
        out.segment_host_path.push_back(i);
        out.whole.arcs.push_back(Arc{pid, {corners[i]}});
    }
    for (int f = 0; f < d.fs.face_count(); ++f)
        if (f != outer_face) out.whole.faces.push_back(f);
    validate_region(d, out.whole);
    return out;
}

// ---------------------------------------------------------------------------
// Product structure assembly

namespace {

int nonempty_face_count(const Disk& d, const Skeleton& s) {
    int n = 0;
    for (const auto& f : s.faces)
        if (!region_interior(d, f).empty()) ++n;
    return n;
}

}  // namespace

ProductStructure product_structure(const CombinatorialMap& host, const MapBfsTree& tree) {
    SurfaceInfo info = euler_genus(host);
    TWG_CHECK(is_triangulation(host), "product structure needs a triangulation");
    ProductStructure ps;
    ps.genus = info.genus;

    CutDisk cd;
    PathPartition hostpaths;
    if (info.genus == 0) {
        cd = build_disk_planar(host, tree, 0);
        std::vector<VerticalPath> paths;
        for (int i = 0; i < 3; ++i)
            paths.push_back(VerticalPath{i, {cd.disk.to_orig[cd.store.verts[i][0]]}});
        hostpaths = make_path_partition(host.nv, std::move(paths));
    } else {
        std::vector<int> extra = leftover_edges(host, tree);
        CutSystem cut = cut_walk(host, tree, extra);
        hostpaths = boundary_paths(host, tree, cut);
        WalkSegmentation segs = segment_walk(host, tree, cut, hostpaths);
        int k = (int)hostpaths.paths.size();
        int l = (int)segs.segments.size();
        TWG_CHECK(k <= 2 * info.genus, "too many boundary paths");
        TWG_CHECK(l <= std::min(2 * info.genus + 2 * k - 1, 6 * info.genus - 1),
                  "too many walk segments");
        cd = build_disk(host, tree, cut, hostpaths, segs);
    }
    const Disk& d = cd.disk;

    Skeleton skel = (int)cd.whole.arcs.size() >= 7 ? split_region(d, cd.whole, cd.store)
                                                   : single_face_skeleton(cd.whole);
    ps.skeleton_faces = nonempty_face_count(d, skel);
    skel = add_separating_chords(d, skel, cd.store);
    ps.chorded_faces = nonempty_face_count(d, skel);

    RootedTreeDecomposition dec;
    dec.bags.push_back(skel.paths);
    dec.parent.push_back(-1);
    for (const auto& face : skel.faces) {
        if (region_interior(d, face).empty()) continue;
        int child = decompose_region(d, face, cd.store, dec);
        dec.parent[child] = 0;
    }

    // Final path ids: host boundary paths keep their ids, interior chains are
    // appended in store order; walk segments map back to the host path they
    // refine.
    int k = (int)hostpaths.paths.size();
    std::vector<int> store_final(cd.store.size(), -1);
    for (int i = 0; i < (int)cd.segment_paths.size(); ++i)
        store_final[cd.segment_paths[i]] = cd.segment_host_path[i];
    std::vector<uint8_t> referenced(cd.store.size(), 0);
    for (const auto& bag : dec.bags)
        for (int p : bag) referenced[p] = 1;
    int next_final = k;
    for (int i = 0; i < cd.store.size(); ++i)
        if (referenced[i] && store_final[i] < 0) store_final[i] = next_final++;

    ps.dec.bags.reserve(dec.bags.size());
    ps.dec.parent = dec.parent;
    for (auto& bag : dec.bags) {
        std::vector<int> mapped;
        for (int p : bag) {
            TWG_CHECK(store_final[p] >= 0, "bag references an unmapped path");
            mapped.push_back(store_final[p]);
        }
        std::sort(mapped.begin(), mapped.end());
        mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
        ps.dec.bags.push_back(std::move(mapped));
    }

    std::vector<VerticalPath> final_paths;
    for (const auto& p : hostpaths.paths) final_paths.push_back(p);
    for (int i = 0; i < cd.store.size(); ++i) {
        if (!referenced[i] || store_final[i] < k) continue;
        std::vector<int> verts;
        for (int v : cd.store.verts[i]) verts.push_back(d.to_orig[v]);
        final_paths.push_back(VerticalPath{store_final[i], std::move(verts)});
    }
    std::sort(final_paths.begin(), final_paths.end(),
              [](const VerticalPath& a, const VerticalPath& b) { return a.id < b.id; });
    ps.partition = make_path_partition(host.nv, std::move(final_paths));

    ps.root_bag_size = (int)ps.dec.bags[0].size();
    for (int b = 1; b < (int)ps.dec.bags.size(); ++b) {
        if (ps.dec.parent[b] == 0) ++ps.root_children;
        ps.max_nonroot_bag = std::max(ps.max_nonroot_bag, (int)ps.dec.bags[b].size());
    }
    check_product_structure(host, ps);
    return ps;
}

void check_tree_decomposition(const QuotientGraph& q, const RootedTreeDecomposition& dec) {
    int nb = (int)dec.bags.size();
    std::vector<std::vector<int>> bags_of(q.n);
    for (int b = 0; b < nb; ++b)
        for (int p : dec.bags[b]) {
            TWG_CHECK(p >= 0 && p < q.n, "bag references unknown path");
            bags_of[p].push_back(b);
        }
    for (int p = 0; p < q.n; ++p) {
        if (bags_of[p].empty())
            throw error(errc::bound_violation,
                        "path " + std::to_string(p) + " appears in no bag");
        // Connectivity: within the bag set, exactly one bag lacks its parent.
        std::set<int> inset(bags_of[p].begin(), bags_of[p].end());
        int heads = 0;
        for (int b : inset)
            if (dec.parent[b] < 0 || !inset.count(dec.parent[b])) ++heads;
        if (heads != 1)
            throw error(errc::bound_violation,
                        "bags containing path " + std::to_string(p) + " are disconnected");
    }
    for (int a = 0; a < q.n; ++a)
        for (int b : q.adj[a]) {
            if (b < a) continue;
            bool covered = false;
            for (int bag : bags_of[a]) {
                const auto& bg = dec.bags[bag];
                if (std::binary_search(bg.begin(), bg.end(), b)) {
                    covered = true;
                    break;
                }
            }
            if (!covered)
                throw error(errc::bound_violation, "edge {" + std::to_string(a) + "," +
                                                       std::to_string(b) + "} not covered");
        }
}

void check_product_structure(const CombinatorialMap& host, const ProductStructure& ps) {
    Graph g = underlying_graph(host);
    QuotientGraph q = quotient(g, ps.partition);
    check_tree_decomposition(q, ps.dec);
    int gen = ps.genus;
    int root_bound = std::max(6, 32 * gen - 27);
    int child_bound = 6 * std::max(1, 18 * gen - 21);
    if ((int)ps.dec.bags[0].size() > root_bound)
        throw error(errc::bound_violation, "root bag exceeds " + std::to_string(root_bound));
    int children = 0;
    for (int b = 1; b < (int)ps.dec.bags.size(); ++b) {
        if (ps.dec.parent[b] == 0) ++children;
        if ((int)ps.dec.bags[b].size() > 8)
            throw error(errc::bound_violation, "non-root bag exceeds eight paths");
    }
    if (children > child_bound)
        throw error(errc::bound_violation,
                    "root has " + std::to_string(children) + " children, bound " +
                        std::to_string(child_bound));

    // Subtree properties: at most six root-bag paths per child subtree, and
    // the vertices of its private paths induce a component adjacent to every
    // root-bag path the subtree uses.
    const auto& rootbag = ps.dec.bags[0];
    std::vector<std::vector<int>> kids(ps.dec.bags.size());
    for (int b = 1; b < (int)ps.dec.bags.size(); ++b) kids[ps.dec.parent[b]].push_back(b);
    std::vector<int> owner((int)q.n, -1);
    for (int c : kids[0]) {
        std::set<int> sub_paths;
        std::vector<int> stack = {c};
        while (!stack.empty()) {
            int b = stack.back();
            stack.pop_back();
            for (int p : ps.dec.bags[b]) sub_paths.insert(p);
            for (int x : kids[b]) stack.push_back(x);
        }
        std::vector<int> shared, priv;
        for (int p : sub_paths) {
            if (std::binary_search(rootbag.begin(), rootbag.end(), p))
                shared.push_back(p);
            else {
                priv.push_back(p);
                TWG_CHECK(owner[p] == -1, "interior path in two subtrees");
                owner[p] = c;
            }
        }
        if ((int)shared.size() > 6)
            throw error(errc::bound_violation, "child subtree uses more than six root paths");
        // Touching component over the private vertex set.
        std::vector<uint8_t> in_priv(g.n, 0);
        for (int p : priv)
            for (int v : ps.partition.paths[p].vertices) in_priv[v] = 1;
        std::vector<uint8_t> done(g.n, 0);
        bool found = priv.empty();
        for (int s = 0; s < g.n && !found; ++s) {
            if (!in_priv[s] || done[s]) continue;
            std::set<int> touch;
            std::vector<int> stack2 = {s};
            done[s] = 1;
            while (!stack2.empty()) {
                int v = stack2.back();
                stack2.pop_back();
                for (int w : g.adj[v]) {
                    if (in_priv[w]) {
                        if (!done[w]) {
                            done[w] = 1;
                            stack2.push_back(w);
                        }
                    } else {
                        touch.insert(ps.partition.path_of[w]);
                    }
                }
            }
            bool all = true;
            for (int p : shared) all = all && touch.count(p);
            found = found || all;
        }
        if (!found)
            throw error(errc::bound_violation,
                        "child subtree has no component touching all its root paths");
    }
}

}  // namespace twg
