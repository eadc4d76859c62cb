#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twg {

enum class errc {
    broken_involution,
    bad_rotation,
    loop_edge,
    disconnected,
    degenerate_face,
    genus_zero,
    not_a_disk,
    unknown_root,
    not_a_layering,
    not_a_partition,
    unreachable_vertex,
    no_trichromatic_face,
    unknown_vertex,
    self_contraction,
    invalid_step,
    too_large,
    not_a_7tree,
    parse_error,
    bound_violation,
    internal,
};

struct error : std::runtime_error {
    errc code;
    error(errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

const char* errc_name(errc c);

// Internal consistency tripwire; throws errc::internal so violations surface in
// release builds as well.
#define TWG_CHECK(cond, msg)                                                     \
    do {                                                                         \
        if (!(cond)) throw ::twg::error(::twg::errc::internal, std::string(msg)); \
    } while (0)

// Graph embedded on a surface, encoded as a signed rotation system.
// Darts are 0..2E-1; edge(d) = d/2 and twin(d) = d^1. Every edge carries a
// sign; -1 marks an orientation-reversing edge. Parallel edges are allowed,
// loops are not.
struct CombinatorialMap {
    int nv = 0;
    std::vector<int> dart_origin;              // dart -> origin vertex
    std::vector<int8_t> edge_sign;             // edge -> +1 / -1
    std::vector<std::vector<int>> rotation;    // vertex -> darts, cyclic order
    std::vector<int> rot_pos;                  // dart -> index in rotation[origin]
    std::vector<uint8_t> edge_augmented;       // edge -> set by triangulate()

    int vertex_count() const { return nv; }
    int edge_count() const { return (int)edge_sign.size(); }
    int dart_count() const { return 2 * edge_count(); }

    static int edge_of(int d) { return d >> 1; }
    static int twin(int d) { return d ^ 1; }
    int head(int d) const { return dart_origin[twin(d)]; }

    int rot_next(int d) const {
        const auto& r = rotation[dart_origin[d]];
        int i = rot_pos[d] + 1;
        return r[i == (int)r.size() ? 0 : i];
    }
    int rot_prev(int d) const {
        const auto& r = rotation[dart_origin[d]];
        int i = rot_pos[d];
        return r[i == 0 ? r.size() - 1 : i - 1];
    }

    void rebuild_positions();

    // Endpoints of an edge (origin of each dart).
    std::pair<int, int> edge_ends(int e) const {
        return {dart_origin[2 * e], dart_origin[2 * e + 1]};
    }
};

// Builds a map from per-vertex rotations given as (edge id, sign) occurrence
// lists. Each edge id in 0..E-1 must occur exactly twice, at distinct
// vertices, with matching signs.
struct MapBuilder {
    int nv = 0;
    std::vector<std::vector<std::pair<int, int>>> rot;  // vertex -> (edge, sign)

    explicit MapBuilder(int vertices = 0) : nv(vertices), rot(vertices) {}
    void add_occurrence(int v, int edge, int sign) { rot[v].push_back({edge, sign}); }
    CombinatorialMap build() const;
};

// Dart sides encode the sign-aware face traversal state: side = 2*dart + h,
// where h = 1 means the local orientation is currently reversed.
struct FaceSet {
    // One representative boundary walk per face, as a dart-side sequence.
    std::vector<std::vector<int>> walks;
    // dart side -> face id; covers all 4E sides (a face owns the sides of both
    // of its traversal orbits).
    std::vector<int> side_face;

    static int side(int dart, int reversed) { return 2 * dart + reversed; }
    static int side_dart(int s) { return s >> 1; }
    static int side_rev(int s) { return s & 1; }

    int face_count() const { return (int)walks.size(); }
    int degree(int f) const { return (int)walks[f].size(); }
    // The two faces incident to edge e (equal if both sides see the same face).
    std::pair<int, int> edge_faces(int e) const {
        return {side_face[FaceSet::side(2 * e, 0)], side_face[FaceSet::side(2 * e, 1)]};
    }
    // Vertices visited by the walk of face f, in walk order.
    std::vector<int> face_vertices(const CombinatorialMap& m, int f) const;
    std::vector<int> face_edges(int f) const;
};

struct SurfaceInfo {
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    int euler_characteristic = 0;
    int genus = 0;  // Euler genus, 2 - chi
    bool orientable = false;
};

int face_next_side(const CombinatorialMap& m, int s);
int mirror_side(const CombinatorialMap& m, int s);

void validate_map(const CombinatorialMap& m);
bool is_connected(const CombinatorialMap& m);
FaceSet trace_faces(const CombinatorialMap& m);
SurfaceInfo euler_genus(const CombinatorialMap& m);
CombinatorialMap triangulate(const CombinatorialMap& m);
bool is_triangulation(const CombinatorialMap& m);

// Flips the rotation direction at the given vertices (and the signs of their
// incident edges); the embedding is unchanged. Used to normalise orientable
// maps to all-positive signs.
void flip_vertices(CombinatorialMap& m, const std::vector<uint8_t>& flip);

// For an orientable map, computes a flip set making every sign positive.
// Returns false if the map is non-orientable.
bool orienting_flips(const CombinatorialMap& m, std::vector<uint8_t>& flip);

}  // namespace twg
