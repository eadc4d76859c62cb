#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "twg/bfs.hpp"

namespace twg {

// Graph with black and red edge sets. Vertices carry stable integer ids;
// contraction introduces a fresh vertex (smallest never-used id) so that
// recorded sequences replay label-exactly.
struct Trigraph {
    struct Vert {
        std::set<int> black;
        std::set<int> red;
    };
    std::unordered_map<int, Vert> verts;
    int next_fresh = 0;

    static Trigraph from_graph(const Graph& g);

    bool alive(int v) const { return verts.count(v) != 0; }
    int vertex_count() const { return (int)verts.size(); }
    int red_degree(int v) const { return (int)verts.at(v).red.size(); }
    int max_red_degree() const;

    // Contracts u and v into a fresh vertex; returns its id.
    int contract(int u, int v);
};

enum class Phase : uint8_t { none = 0, one = 1, two = 2, three = 3 };

struct Step {
    int u = -1, v = -1, w = -1;
    Phase phase = Phase::none;
    int subphase = -1;  // subphase index within phase I, -1 otherwise
};

struct ContractionSequence {
    int initial_vertices = 0;
    std::vector<Step> steps;
    bool complete() const { return (int)steps.size() == initial_vertices - 1; }
};

struct ReplayReport {
    std::vector<int> step_max;  // max red degree after each step
    int overall_max = 0;
    bool complete = false;
    int phase_max[4] = {0, 0, 0, 0};  // indexed by Phase value
};

// Applies the sequence step by step, recording red-degree maxima. Throws
// InvalidStep (with the step index) on malformed steps.
ReplayReport replay(const Graph& g, const ContractionSequence& seq);

// Exact twin-width of graphs with at most `budget` (<= 9) vertices, by
// reachability search over vertex-set partitions. A state is fully determined
// by the partition of the original vertices, so memoisation is exact.
int exact_twinwidth(const Graph& g, int budget = 9);

// Minimum, over unordered pairs, of the red degree of the merged vertex after
// a single contraction of the all-black trigraph.
int first_contraction_lower_bound(const Graph& g);

// Largest n with n(n-7) <= 6(g-2): complete graphs of that order embed in
// Euler genus g (g != 2).
int heawood_number(int g);

struct LowerBoundWitness {
    int n = 0;
    uint64_t seed = 0;
    Graph graph;
    bool degrees_ok = false;    // every degree within (n-1)/2 +- n^{3/4}
    bool codegrees_ok = false;  // every codegree within (n-2)/4 +- n^{3/4}
    int first_contraction = 0;
    double bound = 0.0;  // n/2 - 2 - 4 n^{3/4}
};

// Samples G(n,1/2) with n the Heawood number of g (or an explicit override)
// and reports the degree/codegree window checks together with the implied
// first-contraction bound. Sampling uses std::mt19937_64 seeded with `seed`;
// pairs (i,j), i<j, are drawn in lexicographic order, one bit each.
LowerBoundWitness sample_lowerbound_witness(int g, uint64_t seed,
                                            std::optional<int> n_override = std::nullopt);

}  // namespace twg
