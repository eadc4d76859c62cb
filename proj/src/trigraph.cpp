#include "twg/trigraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace twg {

Trigraph Trigraph::from_graph(const Graph& g) {
    Trigraph t;
    for (int v = 0; v < g.n; ++v) {
        auto& vert = t.verts[v];
        vert.black.insert(g.adj[v].begin(), g.adj[v].end());
    }
    t.next_fresh = g.n;
    return t;
}

int Trigraph::max_red_degree() const {
    int m = 0;
    for (const auto& [v, vert] : verts) m = std::max(m, (int)vert.red.size());
    return m;
}

int Trigraph::contract(int u, int v) {
    if (!alive(u)) throw error(errc::unknown_vertex, "vertex " + std::to_string(u));
    if (!alive(v)) throw error(errc::unknown_vertex, "vertex " + std::to_string(v));
    if (u == v) throw error(errc::self_contraction, "vertex " + std::to_string(u));
    int w = next_fresh++;
    Vert merged;
    const Vert &a = verts[u], &b = verts[v];
    auto collect = [&](const Vert& src) {
        for (int x : src.black)
            if (x != u && x != v) merged.red.insert(x);  // provisional, refined below
        for (int x : src.red)
            if (x != u && x != v) merged.red.insert(x);
    };
    collect(a);
    collect(b);
    // An edge to x stays black only when both u and v saw x as a black
    // neighbour.
    std::vector<int> blacks;
    for (int x : merged.red)
        if (a.black.count(x) && b.black.count(x)) blacks.push_back(x);
    for (int x : blacks) {
        merged.red.erase(x);
        merged.black.insert(x);
    }
    for (int x : merged.black) {
        auto& vx = verts[x];
        vx.black.erase(u);
        vx.black.erase(v);
        vx.red.erase(u);
        vx.red.erase(v);
        vx.black.insert(w);
    }
    for (int x : merged.red) {
        auto& vx = verts[x];
        vx.black.erase(u);
        vx.black.erase(v);
        vx.red.erase(u);
        vx.red.erase(v);
        vx.red.insert(w);
    }
    verts.erase(u);
    verts.erase(v);
    verts[w] = std::move(merged);
    return w;
}

ReplayReport replay(const Graph& g, const ContractionSequence& seq) {
    if (seq.initial_vertices != g.n)
        throw error(errc::invalid_step, "sequence is for a different vertex count");
    Trigraph t = Trigraph::from_graph(g);
    ReplayReport rep;
    rep.step_max.reserve(seq.steps.size());
    // Red-degree histogram for O(1) running maximum.
    std::vector<int> hist(2 * g.n + 2, 0);
    std::unordered_map<int, int> deg;
    for (const auto& [v, vert] : t.verts) {
        deg[v] = (int)vert.red.size();
        hist[deg[v]]++;
    }
    int cur_max = 0;
    auto bump = [&](int v, int now) {
        auto it = deg.find(v);
        int before = it == deg.end() ? -1 : it->second;
        if (before >= 0) hist[before]--;
        if (now >= 0) {
            hist[now]++;
            deg[v] = now;
            cur_max = std::max(cur_max, now);
        } else {
            deg.erase(v);
        }
        while (cur_max > 0 && hist[cur_max] == 0) --cur_max;
    };
    int idx = 0;
    for (const auto& st : seq.steps) {
        if (!t.alive(st.u) || !t.alive(st.v) || st.u == st.v)
            throw error(errc::invalid_step, "step " + std::to_string(idx) + " is invalid");
        if (st.w != t.next_fresh)
            throw error(errc::invalid_step,
                        "step " + std::to_string(idx) + " names fresh vertex " +
                            std::to_string(st.w) + ", expected " + std::to_string(t.next_fresh));
        // Track degree changes of the affected neighbourhood.
        std::vector<int> affected;
        for (int x : t.verts[st.u].black) affected.push_back(x);
        for (int x : t.verts[st.u].red) affected.push_back(x);
        for (int x : t.verts[st.v].black) affected.push_back(x);
        for (int x : t.verts[st.v].red) affected.push_back(x);
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
        int w = t.contract(st.u, st.v);
        bump(st.u, -1);
        bump(st.v, -1);
        for (int x : affected)
            if (x != st.u && x != st.v) bump(x, (int)t.verts[x].red.size());
        bump(w, (int)t.verts[w].red.size());
        rep.step_max.push_back(cur_max);
        rep.overall_max = std::max(rep.overall_max, cur_max);
        rep.phase_max[(int)st.phase] = std::max(rep.phase_max[(int)st.phase], cur_max);
        ++idx;
    }
    rep.complete = t.vertex_count() == 1;
    return rep;
}

namespace {

// Partition-based oracle machinery: classes are bitmasks over <= 9 vertices.
struct PartitionOracle {
    int n;
    std::vector<uint16_t> adj;  // vertex -> neighbour mask

    explicit PartitionOracle(const Graph& g) : n(g.n), adj(g.n, 0) {
        for (auto [u, v] : g.edges) {
            adj[u] |= (uint16_t)(1u << v);
            adj[v] |= (uint16_t)(1u << u);
        }
    }

    // Red degree of every class; classes X,Y are joined black iff every
    // member pair is an original edge, red iff some but not all.
    bool feasible(const std::vector<uint16_t>& classes, int k) const {
        int m = (int)classes.size();
        for (int i = 0; i < m; ++i) {
            int reds = 0;
            uint16_t any_i = 0, all_i = 0xffff;
            for (int v = 0; v < n; ++v)
                if (classes[i] & (1u << v)) {
                    any_i |= adj[v];
                    all_i &= adj[v];
                }
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                uint16_t cj = classes[j];
                if (!(any_i & cj)) continue;
                // Black join iff every member of j sees all of class i.
                if ((cj & ~all_i) != 0) ++reds;
            }
            if (reds > k) return false;
        }
        return true;
    }

    bool reach_one(std::vector<uint16_t> classes, int k,
                   std::set<std::vector<uint16_t>>& failed) const {
        if (classes.size() == 1) return true;
        std::sort(classes.begin(), classes.end());
        if (failed.count(classes)) return false;
        int m = (int)classes.size();
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                std::vector<uint16_t> next;
                next.reserve(m - 1);
                for (int t = 0; t < m; ++t)
                    if (t != i && t != j) next.push_back(classes[t]);
                next.push_back((uint16_t)(classes[i] | classes[j]));
                if (!feasible(next, k)) continue;
                if (reach_one(std::move(next), k, failed)) return true;
            }
        failed.insert(classes);
        return false;
    }
};

}  // namespace

int exact_twinwidth(const Graph& g, int budget) {
    if (budget > 9) throw error(errc::too_large, "oracle budget capped at 9");
    if (g.n > budget)
        throw error(errc::too_large,
                    std::to_string(g.n) + " vertices exceed budget " + std::to_string(budget));
    if (g.n <= 1) return 0;
    PartitionOracle oracle(g);
    std::vector<uint16_t> discrete;
    for (int v = 0; v < g.n; ++v) discrete.push_back((uint16_t)(1u << v));
    for (int k = 0;; ++k) {
        std::set<std::vector<uint16_t>> failed;
        if (oracle.reach_one(discrete, k, failed)) return k;
    }
}

int first_contraction_lower_bound(const Graph& g) {
    TWG_CHECK(g.n >= 2, "need at least two vertices");
    int best = g.n;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            int reds = 0;
            // symmetric difference of neighbourhoods, u and v excluded
            size_t i = 0, j = 0;
            const auto &a = g.adj[u], &b = g.adj[v];
            auto skip = [&](int x) { return x == u || x == v; };
            while (i < a.size() || j < b.size()) {
                if (j == b.size() || (i < a.size() && a[i] < b[j])) {
                    if (!skip(a[i])) ++reds;
                    ++i;
                } else if (i == a.size() || b[j] < a[i]) {
                    if (!skip(b[j])) ++reds;
                    ++j;
                } else {
                    ++i;
                    ++j;
                }
            }
            best = std::min(best, reds);
        }
    return best;
}

int heawood_number(int g) {
    // floor((7 + sqrt(1+24g)) / 2), computed with integer arithmetic
    long long s = 0;
    while ((s + 1) * (s + 1) <= 1 + 24LL * g) ++s;
    return (int)((7 + s) / 2);
}

LowerBoundWitness sample_lowerbound_witness(int g, uint64_t seed, std::optional<int> n_override) {
    LowerBoundWitness w;
    w.seed = seed;
    if (n_override) {
        w.n = *n_override;
    } else {
        if (g <= 2)
            throw error(errc::bound_violation,
                        "Heawood construction needs genus > 2 (pass an explicit n)");
        w.n = heawood_number(g);
    }
    TWG_CHECK(w.n >= 2, "witness needs at least two vertices");
    std::mt19937_64 rng(seed);
    Graph gr(w.n);
    for (int i = 0; i < w.n; ++i)
        for (int j = i + 1; j < w.n; ++j)
            if (rng() & 1u) gr.add_edge(i, j);
    gr.finish();
    double window = std::pow((double)w.n, 0.75);
    double dlo = (w.n - 1) / 2.0 - window, dhi = (w.n - 1) / 2.0 + window;
    w.degrees_ok = true;
    for (int v = 0; v < w.n; ++v) {
        double d = (double)gr.adj[v].size();
        if (d < dlo || d > dhi) w.degrees_ok = false;
    }
    double clo = (w.n - 2) / 4.0 - window, chi = (w.n - 2) / 4.0 + window;
    w.codegrees_ok = true;
    for (int u = 0; u < w.n && w.codegrees_ok; ++u)
        for (int v = u + 1; v < w.n; ++v) {
            std::vector<int> common;
            std::set_intersection(gr.adj[u].begin(), gr.adj[u].end(), gr.adj[v].begin(),
                                  gr.adj[v].end(), std::back_inserter(common));
            double c = (double)common.size();
            if (c < clo || c > chi) {
                w.codegrees_ok = false;
                break;
            }
        }
    w.first_contraction = first_contraction_lower_bound(gr);
    w.bound = w.n / 2.0 - 2.0 - 4.0 * window;
    w.graph = std::move(gr);
    return w;
}

}  // namespace twg
