#include "twg/map.hpp"

#include <algorithm>
#include <numeric>

namespace twg {

const char* errc_name(errc c) {
    switch (c) {
        case errc::broken_involution: return "BrokenInvolution";
        case errc::bad_rotation: return "BadRotation";
        case errc::loop_edge: return "LoopEdge";
        case errc::disconnected: return "Disconnected";
        case errc::degenerate_face: return "DegenerateFace";
        case errc::genus_zero: return "GenusZero";
        case errc::not_a_disk: return "NotADisk";
        case errc::unknown_root: return "UnknownRoot";
        case errc::not_a_layering: return "NotALayering";
        case errc::not_a_partition: return "NotAPartition";
        case errc::unreachable_vertex: return "UnreachableVertex";
        case errc::no_trichromatic_face: return "NoTrichromaticFace";
        case errc::unknown_vertex: return "UnknownVertex";
        case errc::self_contraction: return "SelfContraction";
        case errc::invalid_step: return "InvalidStep";
        case errc::too_large: return "TooLarge";
        case errc::not_a_7tree: return "NotA7Tree";
        case errc::parse_error: return "ParseError";
        case errc::bound_violation: return "BoundViolation";
        case errc::internal: return "Internal";
    }
    return "Unknown";
}

void CombinatorialMap::rebuild_positions() {
    rot_pos.assign(dart_count(), -1);
    for (int v = 0; v < nv; ++v)
        for (int i = 0; i < (int)rotation[v].size(); ++i) rot_pos[rotation[v][i]] = i;
}

CombinatorialMap MapBuilder::build() const {
    int ne = 0;
    for (const auto& r : rot) ne += (int)r.size();
    if (ne % 2 != 0) throw error(errc::broken_involution, "odd number of edge occurrences");
    ne /= 2;

    CombinatorialMap m;
    m.nv = nv;
    m.dart_origin.assign(2 * ne, -1);
    m.edge_sign.assign(ne, 0);
    m.edge_augmented.assign(ne, 0);
    m.rotation.assign(nv, {});

    std::vector<int> seen(ne, 0);
    for (int v = 0; v < nv; ++v) {
        for (auto [e, s] : rot[v]) {
            if (e < 0 || e >= ne)
                throw error(errc::bad_rotation, "edge id " + std::to_string(e) + " out of range");
            if (s != 1 && s != -1) throw error(errc::bad_rotation, "sign must be +1 or -1");
            if (seen[e] == 2)
                throw error(errc::broken_involution,
                            "edge " + std::to_string(e) + " occurs more than twice");
            int d = 2 * e + seen[e];
            if (seen[e] == 1) {
                if (m.dart_origin[2 * e] == v)
                    throw error(errc::loop_edge, "edge " + std::to_string(e) + " is a loop");
                if (m.edge_sign[e] != (int8_t)s)
                    throw error(errc::bad_rotation,
                                "edge " + std::to_string(e) + " has inconsistent signs");
            } else {
                m.edge_sign[e] = (int8_t)s;
            }
            ++seen[e];
            m.dart_origin[d] = v;
            m.rotation[v].push_back(d);
        }
    }
    for (int e = 0; e < ne; ++e)
        if (seen[e] != 2)
            throw error(errc::broken_involution,
                        "edge " + std::to_string(e) + " occurs " + std::to_string(seen[e]) +
                            " times");
    m.rebuild_positions();
    return m;
}

void validate_map(const CombinatorialMap& m) {
    int nd = m.dart_count();
    if ((int)m.dart_origin.size() != nd)
        throw error(errc::broken_involution, "dart table size mismatch");
    std::vector<int> where(nd, -1);
    for (int v = 0; v < m.nv; ++v) {
        for (int d : m.rotation[v]) {
            if (d < 0 || d >= nd) throw error(errc::bad_rotation, "dart out of range");
            if (where[d] != -1)
                throw error(errc::bad_rotation, "dart " + std::to_string(d) + " listed twice");
            where[d] = v;
            if (m.dart_origin[d] != v)
                throw error(errc::bad_rotation,
                            "dart " + std::to_string(d) + " origin mismatch");
        }
    }
    for (int d = 0; d < nd; ++d) {
        if (where[d] == -1)
            throw error(errc::bad_rotation, "dart " + std::to_string(d) + " missing");
        if (CombinatorialMap::twin(d) == d)
            throw error(errc::broken_involution, "twin fixes dart " + std::to_string(d));
        if (m.dart_origin[d] == m.dart_origin[CombinatorialMap::twin(d)])
            throw error(errc::loop_edge,
                        "edge " + std::to_string(CombinatorialMap::edge_of(d)) + " is a loop");
    }
    for (int e = 0; e < m.edge_count(); ++e)
        if (m.edge_sign[e] != 1 && m.edge_sign[e] != -1)
            throw error(errc::bad_rotation, "edge " + std::to_string(e) + " has no sign");
    for (int d = 0; d < nd; ++d)
        if (m.rot_pos[d] < 0 || m.rotation[m.dart_origin[d]][m.rot_pos[d]] != d)
            throw error(errc::bad_rotation, "rotation position table stale");
}

bool is_connected(const CombinatorialMap& m) {
    if (m.nv == 0) return true;
    std::vector<char> vis(m.nv, 0);
    std::vector<int> stack = {0};
    vis[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int d : m.rotation[v]) {
            int w = m.head(d);
            if (!vis[w]) {
                vis[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
        }
    }
    return cnt == m.nv;
}

int face_next_side(const CombinatorialMap& m, int s) {
    int d = FaceSet::side_dart(s);
    int rev = FaceSet::side_rev(s) ^ (m.edge_sign[CombinatorialMap::edge_of(d)] < 0 ? 1 : 0);
    int e = CombinatorialMap::twin(d);
    int nd = rev ? m.rot_prev(e) : m.rot_next(e);
    return FaceSet::side(nd, rev);
}

int mirror_side(const CombinatorialMap& m, int s) {
    int d = FaceSet::side_dart(s);
    int rev = 1 ^ FaceSet::side_rev(s) ^ (m.edge_sign[CombinatorialMap::edge_of(d)] < 0 ? 1 : 0);
    return FaceSet::side(CombinatorialMap::twin(d), rev);
}

FaceSet trace_faces(const CombinatorialMap& m) {
    int ns = 2 * m.dart_count();
    std::vector<int> orbit_of(ns, -1);
    std::vector<std::vector<int>> orbits;
    for (int s0 = 0; s0 < ns; ++s0) {
        if (orbit_of[s0] != -1) continue;
        int id = (int)orbits.size();
        orbits.push_back({});
        int s = s0;
        do {
            TWG_CHECK(orbit_of[s] == -1, "face traversal is not a permutation");
            orbit_of[s] = id;
            orbits[id].push_back(s);
            s = face_next_side(m, s);
        } while (s != s0);
    }
    // Orbits pair up under the mirror map; each pair is one face.
    FaceSet fs;
    fs.side_face.assign(ns, -1);
    std::vector<int> mate(orbits.size(), -1);
    for (int i = 0; i < (int)orbits.size(); ++i) {
        int j = orbit_of[mirror_side(m, orbits[i][0])];
        TWG_CHECK(j != i, "self-mirrored face orbit");
        TWG_CHECK(mate[i] == -1 || mate[i] == j, "inconsistent orbit pairing");
        mate[i] = j;
        TWG_CHECK(orbits[i].size() == orbits[j].size(), "mirror orbits differ in length");
    }
    for (int i = 0; i < (int)orbits.size(); ++i) {
        if (mate[i] < i) continue;  // keep the earlier orbit of each pair
        int f = (int)fs.walks.size();
        for (int s : orbits[i]) fs.side_face[s] = f;
        for (int s : orbits[mate[i]]) fs.side_face[s] = f;
        fs.walks.push_back(std::move(orbits[i]));
    }
    // Cover audit: the kept walks and their mirrors cover each side once, so
    // each edge is traversed exactly twice across all face walks.
    size_t total = 0;
    for (const auto& w : fs.walks) total += w.size();
    TWG_CHECK((int)total == m.dart_count(), "face walks do not cover darts");
    return fs;
}

std::vector<int> FaceSet::face_vertices(const CombinatorialMap& m, int f) const {
    std::vector<int> vs;
    vs.reserve(walks[f].size());
    for (int s : walks[f]) vs.push_back(m.dart_origin[side_dart(s)]);
    return vs;
}

std::vector<int> FaceSet::face_edges(int f) const {
    std::vector<int> es;
    es.reserve(walks[f].size());
    for (int s : walks[f]) es.push_back(CombinatorialMap::edge_of(side_dart(s)));
    return es;
}

bool orienting_flips(const CombinatorialMap& m, std::vector<uint8_t>& flip) {
    flip.assign(m.nv, 0);
    std::vector<int8_t> orient(m.nv, 0);
    for (int s = 0; s < m.nv; ++s) {
        if (orient[s]) continue;
        orient[s] = 1;
        std::vector<int> stack = {s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int d : m.rotation[v]) {
                int w = m.head(d);
                int8_t want = (int8_t)(orient[v] * m.edge_sign[CombinatorialMap::edge_of(d)]);
                if (orient[w] == 0) {
                    orient[w] = want;
                    stack.push_back(w);
                } else if (orient[w] != want) {
                    return false;
                }
            }
        }
    }
    for (int v = 0; v < m.nv; ++v) flip[v] = orient[v] < 0;
    return true;
}

void flip_vertices(CombinatorialMap& m, const std::vector<uint8_t>& flip) {
    for (int v = 0; v < m.nv; ++v)
        if (flip[v]) std::reverse(m.rotation[v].begin(), m.rotation[v].end());
    for (int e = 0; e < m.edge_count(); ++e) {
        int u = m.dart_origin[2 * e], w = m.dart_origin[2 * e + 1];
        int f = (flip[u] ? 1 : 0) ^ (flip[w] ? 1 : 0);
        if (f) m.edge_sign[e] = (int8_t)-m.edge_sign[e];
    }
    m.rebuild_positions();
}

SurfaceInfo euler_genus(const CombinatorialMap& m) {
    validate_map(m);
    if (!is_connected(m)) throw error(errc::disconnected, "map is not connected");
    FaceSet fs = trace_faces(m);
    SurfaceInfo info;
    info.vertices = m.nv;
    info.edges = m.edge_count();
    info.faces = fs.face_count();
    info.euler_characteristic = info.vertices - info.edges + info.faces;
    info.genus = 2 - info.euler_characteristic;
    std::vector<uint8_t> flip;
    info.orientable = orienting_flips(m, flip);
    TWG_CHECK(info.genus >= 0, "negative Euler genus");
    TWG_CHECK(!info.orientable || info.genus % 2 == 0, "orientable surface with odd genus");
    return info;
}

bool is_triangulation(const CombinatorialMap& m) {
    validate_map(m);
    FaceSet fs = trace_faces(m);
    for (int f = 0; f < fs.face_count(); ++f)
        if (fs.degree(f) != 3) return false;
    return true;
}

namespace {

// Splits off the triangle (corner i, i+1, i+2) of the given face walk with a
// new edge between corners i and i+2. Returns the shortened walk.
std::vector<int> add_diagonal(CombinatorialMap& m, std::vector<int> walk, int i) {
    int L = (int)walk.size();
    auto dart = [](int s) { return FaceSet::side_dart(s); };
    auto rev = [](int s) { return FaceSet::side_rev(s); };
    std::rotate(walk.begin(), walk.begin() + i, walk.end());

    int s_last = walk[L - 1], s0 = walk[0], s1 = walk[1], s2 = walk[2];
    int v0 = m.dart_origin[dart(s0)];
    int v2 = m.dart_origin[dart(s2)];
    TWG_CHECK(v0 != v2, "diagonal would be a loop");
    TWG_CHECK(face_next_side(m, s_last) == s0 && face_next_side(m, s1) == s2,
              "face walk out of sync");

    int sigma0 = rev(s0), sigma2 = rev(s2);
    int e = m.edge_count();
    int n1 = 2 * e, n2 = 2 * e + 1;
    m.edge_sign.push_back((int8_t)(sigma0 == sigma2 ? 1 : -1));
    m.edge_augmented.push_back(1);
    m.dart_origin.push_back(v0);
    m.dart_origin.push_back(v2);

    auto insert_at = [&m](int vertex, int anchor, int nd, bool after) {
        auto& r = m.rotation[vertex];
        int pos = m.rot_pos[anchor] + (after ? 1 : 0);
        r.insert(r.begin() + pos, nd);
        m.rot_pos.resize(m.dart_count(), -1);
        for (int k = pos; k < (int)r.size(); ++k) m.rot_pos[r[k]] = k;
    };
    // At v0 the new dart goes right after (w.r.t. the local orientation) the
    // in-dart of corner 0; at v2 it goes right before the out-dart of corner 2.
    insert_at(v0, CombinatorialMap::twin(dart(s_last)), n1, sigma0 == 0);
    insert_at(v2, dart(s2), n2, sigma2 != 0);

    std::vector<int> shorter;
    shorter.reserve(L - 1);
    shorter.push_back(FaceSet::side(n1, sigma0));
    for (int k = 2; k < L; ++k) shorter.push_back(walk[k]);
    return shorter;
}

}  // namespace

CombinatorialMap triangulate(const CombinatorialMap& input) {
    validate_map(input);
    if (!is_connected(input)) throw error(errc::disconnected, "map is not connected");
    CombinatorialMap m = input;
    FaceSet fs = trace_faces(m);
    for (int f = 0; f < fs.face_count(); ++f)
        if (fs.degree(f) < 3)
            throw error(errc::degenerate_face,
                        "face " + std::to_string(f) + " has walk length " +
                            std::to_string(fs.degree(f)));
    bool done = true;
    for (int f = 0; f < fs.face_count(); ++f) done = done && fs.degree(f) == 3;
    if (done) return m;

    for (int f = 0; f < fs.face_count(); ++f) {
        std::vector<int> walk = fs.walks[f];
        while ((int)walk.size() > 3) {
            int L = (int)walk.size();
            int pick = -1;
            for (int i = 0; i < L; ++i) {
                int vi = m.dart_origin[FaceSet::side_dart(walk[i])];
                int vj = m.dart_origin[FaceSet::side_dart(walk[(i + 2) % L])];
                if (vi != vj) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0)
                throw error(errc::degenerate_face,
                            "face admits no loop-free diagonal");
            walk = add_diagonal(m, std::move(walk), pick);
        }
    }
    TWG_CHECK(is_triangulation(m), "triangulation postcondition failed");
    return m;
}

}  // namespace twg
