#pragma once

#include <optional>
#include <vector>

#include "twg/disk.hpp"
#include "twg/trigraph.hpp"

namespace twg {

// Static data of the contraction plan: the graph H0 obtained by contracting
// the root-bag paths and the touching component of each child subtree, the
// degree-sum groups, and a 7-tree elimination order per subtree.
struct SchedulePlan {
    int genus = 0;
    int genus_eff = 1;       // planar inputs schedule with the genus-one parameters
    long long s_sq = 0;      // s^2 = 423 * genus_eff; grouping compares stay integral
    int k = 0;               // root-bag paths
    int l = 0;               // child subtrees

    struct Subtree {
        std::vector<int> boundary;            // root-bag path ids used, sorted
        std::vector<int> elim;                // path ids, boundary first
        std::vector<std::vector<int>> intro;  // per position: paths of the intro bag
        std::vector<int> verts;               // vertices on the non-root paths
        std::vector<int> touch_comp;          // component adjacent to all boundary paths
    };
    std::vector<Subtree> subtrees;

    std::vector<int> a_degree;  // H0 degree per root path
    std::vector<int> b_degree;  // H0 degree per subtree
    std::vector<std::vector<int>> a_groups;  // indices of root paths
    std::vector<std::vector<int>> b_groups;  // indices of subtrees
    int kprime = 0, lprime = 0;
};

SchedulePlan build_plan(const CombinatorialMap& host, const MapBfsTree& tree,
                        const ProductStructure& ps);

// Elimination order of a subtree's paths: boundary paths first, then by
// introduction bag; every later path's earlier neighbours lie inside one bag
// of size at most eight.
std::vector<int> elimination_order(const RootedTreeDecomposition& dec, int subtree_root,
                                   const std::vector<int>& root_bag);

struct ScheduleResult {
    ContractionSequence seq;
    ReplayReport report;
    int genus = 0;
    int genus_eff = 1;
    double s = 0.0;
    int k = 0, l = 0, kprime = 0, lprime = 0;
    double bound = 0.0;  // 6 * max(3 sqrt(47 g) + 1, 2^24)
    int observed_max = 0;
};

// Red-degree budget certified for Euler genus g (genus-one parameters apply
// to planar inputs).
double twinwidth_bound(int genus);

// Builds the full contraction sequence of `graph` using the product structure
// of `map`; the graph must span the map's vertex set and use a subset of its
// edges. The replay asserts the per-phase red-degree bounds.
ScheduleResult schedule(const Graph& graph, const CombinatorialMap& map);

}  // namespace twg
