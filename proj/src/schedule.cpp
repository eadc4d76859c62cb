#include "twg/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace twg {

namespace {

// exact test for "value > s" with s = sqrt(s_sq)
bool exceeds_s(long long value, long long s_sq) {
    if (value < 0) return false;
    return value * value > s_sq;
}

}  // namespace

std::vector<int> elimination_order(const RootedTreeDecomposition& dec, int subtree_root,
                                   const std::vector<int>& root_bag) {
    std::vector<std::vector<int>> kids(dec.bags.size());
    for (int b = 0; b < (int)dec.bags.size(); ++b)
        if (dec.parent[b] >= 0) kids[dec.parent[b]].push_back(b);
    std::vector<int> bag_order;
    std::vector<int> queue = {subtree_root};
    for (size_t i = 0; i < queue.size(); ++i) {
        bag_order.push_back(queue[i]);
        for (int c : kids[queue[i]]) queue.push_back(c);
    }
    std::vector<int> order;
    std::set<int> placed;
    // Boundary paths (members of the root bag) come first, by id.
    std::set<int> in_sub;
    for (int b : bag_order)
        for (int p : dec.bags[b]) in_sub.insert(p);
    for (int p : in_sub)
        if (std::binary_search(root_bag.begin(), root_bag.end(), p)) {
            order.push_back(p);
            placed.insert(p);
        }
    for (int b : bag_order) {
        std::vector<int> fresh;
        for (int p : dec.bags[b])
            if (!placed.count(p)) fresh.push_back(p);
        std::sort(fresh.begin(), fresh.end());
        for (int p : fresh) {
            order.push_back(p);
            placed.insert(p);
        }
    }
    return order;
}

SchedulePlan build_plan(const CombinatorialMap& host, const MapBfsTree& tree,
                        const ProductStructure& ps) {
    (void)tree;
    Graph g0 = underlying_graph(host);
    QuotientGraph q = quotient(g0, ps.partition);
    SchedulePlan plan;
    plan.genus = ps.genus;
    plan.genus_eff = std::max(1, ps.genus);
    plan.s_sq = 423LL * plan.genus_eff;

    const auto& rootbag = ps.dec.bags[0];
    plan.k = (int)rootbag.size();
    std::vector<std::vector<int>> kids(ps.dec.bags.size());
    for (int b = 1; b < (int)ps.dec.bags.size(); ++b) kids[ps.dec.parent[b]].push_back(b);

    std::vector<int> path_owner(q.n, -1);  // subtree index of interior paths
    for (int c : kids[0]) {
        SchedulePlan::Subtree st;
        std::vector<int> stack = {c};
        std::set<int> sub_paths;
        std::vector<int> bags;
        while (!stack.empty()) {
            int b = stack.back();
            stack.pop_back();
            bags.push_back(b);
            for (int p : ps.dec.bags[b]) sub_paths.insert(p);
            for (int x : kids[b]) stack.push_back(x);
        }
        for (int p : sub_paths)
            if (std::binary_search(rootbag.begin(), rootbag.end(), p))
                st.boundary.push_back(p);
            else
                path_owner[p] = (int)plan.subtrees.size();
        TWG_CHECK((int)st.boundary.size() <= 6, "subtree uses more than six root paths");
        st.elim = elimination_order(ps.dec, c, rootbag);
        // introduction bag per position
        std::map<int, int> intro_bag;
        std::vector<int> queue = {c};
        for (size_t i = 0; i < queue.size(); ++i) {
            for (int p : ps.dec.bags[queue[i]])
                if (!intro_bag.count(p)) intro_bag[p] = queue[i];
            for (int x : kids[queue[i]]) queue.push_back(x);
        }
        st.intro.resize(st.elim.size());
        for (int pos = 0; pos < (int)st.elim.size(); ++pos)
            st.intro[pos] = ps.dec.bags[intro_bag.at(st.elim[pos])];
        for (int p : sub_paths)
            if (path_owner[p] == (int)plan.subtrees.size())
                for (int v : ps.partition.paths[p].vertices) st.verts.push_back(v);
        std::sort(st.verts.begin(), st.verts.end());
        plan.subtrees.push_back(std::move(st));
    }
    plan.l = (int)plan.subtrees.size();
    TWG_CHECK(plan.k <= 32 * plan.genus_eff, "root bag larger than 32g");
    TWG_CHECK(plan.l <= 108 * plan.genus_eff, "more than 108g subtrees");

    // Validate the 7-tree property of each elimination order.
    for (auto& st : plan.subtrees) {
        std::map<int, int> pos;
        for (int i = 0; i < (int)st.elim.size(); ++i) pos[st.elim[i]] = i;
        int np = (int)st.boundary.size();
        for (int i = np; i < (int)st.elim.size(); ++i) {
            int p = st.elim[i];
            std::set<int> intro(st.intro[i].begin(), st.intro[i].end());
            int back = 0;
            for (int r : q.adj[p]) {
                auto it = pos.find(r);
                if (it == pos.end() || it->second >= i) continue;
                ++back;
                if (!intro.count(r))
                    throw error(errc::not_a_7tree,
                                "path " + std::to_string(p) +
                                    " has an earlier neighbour outside its bag");
            }
            if (back > 7)
                throw error(errc::not_a_7tree,
                            "path " + std::to_string(p) + " has " + std::to_string(back) +
                                " earlier neighbours");
        }
    }

    // H0: contract the root paths and, per subtree, the component of its
    // private vertices adjacent to every boundary path it uses.
    std::vector<int> root_index(q.n, -1);
    for (int i = 0; i < plan.k; ++i) root_index[rootbag[i]] = i;
    plan.a_degree.assign(plan.k, 0);
    plan.b_degree.assign(plan.l, 0);
    std::set<std::pair<int, int>> h0_edges;  // (a,b) encoded: a-nodes 0..k-1, b-nodes k+i
    for (int i = 0; i < plan.l; ++i) {
        auto& st = plan.subtrees[i];
        std::vector<uint8_t> in_vi(g0.n, 0);
        for (int v : st.verts) in_vi[v] = 1;
        std::vector<uint8_t> seen(g0.n, 0);
        for (int s : st.verts) {
            if (seen[s]) continue;
            std::vector<int> comp, stack = {s};
            std::set<int> touch;
            seen[s] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                comp.push_back(v);
                for (int w : g0.adj[v]) {
                    if (in_vi[w]) {
                        if (!seen[w]) {
                            seen[w] = 1;
                            stack.push_back(w);
                        }
                    } else {
                        int p = ps.partition.path_of[w];
                        TWG_CHECK(root_index[p] >= 0, "subtree vertex adjacent to foreign path");
                        touch.insert(p);
                    }
                }
            }
            bool all = true;
            for (int p : st.boundary) all = all && touch.count(p);
            if (all && st.touch_comp.empty()) {
                std::sort(comp.begin(), comp.end());
                st.touch_comp = comp;
            }
        }
        TWG_CHECK(!st.touch_comp.empty(), "subtree has no touching component");
        std::set<int> nbr;
        for (int v : st.touch_comp)
            for (int w : g0.adj[v])
                if (!in_vi[w]) nbr.insert(ps.partition.path_of[w]);
        for (int p : nbr) h0_edges.insert({root_index[p], plan.k + i});
        TWG_CHECK((int)nbr.size() <= 6, "contracted subtree vertex has degree above six");
    }
    for (int a = 0; a < q.n; ++a) {
        if (root_index[a] < 0) continue;
        for (int b : q.adj[a])
            if (root_index[b] >= 0 && root_index[a] < root_index[b])
                h0_edges.insert({root_index[a], root_index[b]});
    }
    for (auto [a, b] : h0_edges) {
        (a < plan.k ? plan.a_degree[a] : plan.b_degree[a - plan.k])++;
        (b < plan.k ? plan.a_degree[b] : plan.b_degree[b - plan.k])++;
    }
    long long edge_bound = 3LL * (plan.k + plan.l + plan.genus_eff);
    TWG_CHECK((long long)h0_edges.size() <= edge_bound, "H0 has too many edges");

    // Degree-sum grouping: close a group as soon as its sum exceeds s.
    std::vector<int> current;
    long long sum = 0;
    for (int i = 0; i < plan.l; ++i) {
        current.push_back(i);
        sum += plan.b_degree[i];
        if (exceeds_s(sum, plan.s_sq)) {
            plan.b_groups.push_back(current);
            current.clear();
            sum = 0;
        }
    }
    if (!current.empty()) plan.b_groups.push_back(current);
    plan.lprime = (int)plan.b_groups.size();

    current.clear();
    sum = 0;
    for (int i = 0; i < plan.k; ++i) {
        if (exceeds_s(plan.a_degree[i], plan.s_sq)) {
            plan.a_groups.push_back({i});
            continue;
        }
        current.push_back(i);
        sum += plan.a_degree[i];
        if (exceeds_s(sum, plan.s_sq)) {
            plan.a_groups.push_back(current);
            current.clear();
            sum = 0;
        }
    }
    if (!current.empty()) plan.a_groups.push_back(current);
    plan.kprime = (int)plan.a_groups.size();

    long long kl = plan.kprime + plan.lprime;
    if (kl > 2) {
        TWG_CHECK((kl - 2) * (kl - 2) <= 4 * plan.s_sq, "k' + l' exceeds 2s + 2");
    }
    return plan;
}

double twinwidth_bound(int genus) {
    int g = std::max(1, genus);
    return 6.0 * std::max(3.0 * std::sqrt(47.0 * g) + 1.0, 16777216.0);
}

namespace {

struct Blob {
    int id;                                  // current trigraph vertex
    int layer;
    int min_vert;                            // smallest original member, for ordering
    std::vector<std::pair<int, int>> shadow; // (path position, neighbour vertex), sorted
};

std::vector<std::pair<int, int>> filter_shadow(const std::vector<std::pair<int, int>>& s,
                                               int below) {
    std::vector<std::pair<int, int>> out;
    for (auto& e : s)
        if (e.first < below) out.push_back(e);
    return out;
}

struct Emitter {
    Trigraph tg;
    ContractionSequence seq;
    std::vector<uint8_t> on_root_path;
    std::vector<int> layer_of_orig;
    std::map<int, int> blob_layer;
    Phase phase = Phase::none;
    int subphase = -1;

    int contract(int u, int v, bool layer_strict) {
        if (phase == Phase::one) {
            TWG_CHECK(u >= (int)on_root_path.size() || !on_root_path[u],
                      "phase one touches a root path vertex");
            TWG_CHECK(v >= (int)on_root_path.size() || !on_root_path[v],
                      "phase one touches a root path vertex");
        }
        if (layer_strict)
            TWG_CHECK(layer_at(u) == layer_at(v), "cross-layer contraction");
        int lu = layer_at(u);
        int w = tg.contract(u, v);
        seq.steps.push_back(Step{u, v, w, phase, subphase});
        blob_layer.erase(u);
        blob_layer.erase(v);
        blob_layer[w] = lu;
        return w;
    }
    int layer_at(int x) const {
        auto it = blob_layer.find(x);
        if (it != blob_layer.end()) return it->second;
        return layer_of_orig[x];
    }
};

struct UnionFind {
    std::vector<int> up, mn;
    int add() {
        up.push_back((int)up.size());
        mn.push_back((int)up.size() - 1);
        return (int)up.size() - 1;
    }
    int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        up[b] = a;
        mn[a] = std::min(mn[a], mn[b]);
    }
};

using Pool = std::vector<Blob>;

void sort_pool(Pool& p) {
    std::sort(p.begin(), p.end(), [](const Blob& a, const Blob& b) {
        if (a.layer != b.layer) return a.layer < b.layer;
        if (a.shadow != b.shadow) return a.shadow < b.shadow;
        return a.min_vert < b.min_vert;
    });
}

// Merges blobs with equal (layer, shadow filtered below `below`), contracting
// later ones into the earliest. Pools are concatenated in the given order.
Pool sweep_merge(Emitter& em, std::vector<Pool> pools, int below) {
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> index;
    Pool out;
    for (auto& pool : pools) {
        sort_pool(pool);
        for (auto& b : pool) {
            auto key = std::make_pair(b.layer, filter_shadow(b.shadow, below));
            auto it = index.find(key);
            if (it == index.end()) {
                Blob nb = b;
                nb.shadow = key.second;
                index[key] = (int)out.size();
                out.push_back(std::move(nb));
            } else {
                Blob& target = out[it->second];
                target.id = em.contract(target.id, b.id, true);
                target.min_vert = std::min(target.min_vert, b.min_vert);
            }
        }
    }
    return out;
}

}  // namespace

ScheduleResult schedule(const Graph& graph, const CombinatorialMap& map) {
    validate_map(map);
    SurfaceInfo info = euler_genus(map);
    TWG_CHECK(graph.n == map.nv, "graph must span the map's vertex set");
    {
        Graph um = underlying_graph(map);
        for (auto [u, v] : graph.edges)
            TWG_CHECK(um.adjacent(u, v), "graph edge missing from the map");
    }
    CombinatorialMap g0 = triangulate(map);
    int root = info.genus == 0 ? planar_root(g0) : 0;
    MapBfsTree tree = map_bfs_tree(g0, root);
    ProductStructure ps = product_structure(g0, tree);
    SchedulePlan plan = build_plan(g0, tree, ps);

    ScheduleResult res;
    res.genus = info.genus;
    res.genus_eff = plan.genus_eff;
    res.s = 3.0 * std::sqrt(47.0 * plan.genus_eff);
    res.k = plan.k;
    res.l = plan.l;
    res.kprime = plan.kprime;
    res.lprime = plan.lprime;
    res.bound = twinwidth_bound(info.genus);

    const auto& rootbag = ps.dec.bags[0];
    Emitter em;
    em.tg = Trigraph::from_graph(graph);
    em.seq.initial_vertices = graph.n;
    em.on_root_path.assign(graph.n, 0);
    for (int p : rootbag)
        for (int v : ps.partition.paths[p].vertices) em.on_root_path[v] = 1;
    em.layer_of_orig = tree.forest.layer;

    int path_bound = 3 * (plan.lprime + 1);

    // subtree index -> position of b_i inside its group, group id
    std::vector<int> b_group_of(plan.l, -1);
    for (int gidx = 0; gidx < (int)plan.b_groups.size(); ++gidx)
        for (int i : plan.b_groups[gidx]) b_group_of[i] = gidx;
    std::vector<std::map<int, int>> b_acc(plan.b_groups.size());  // layer -> vertex

    em.phase = Phase::one;
    for (int i = 0; i < plan.l; ++i) {
        em.subphase = i;
        auto& st = plan.subtrees[i];
        int n = (int)st.elim.size();
        int np = (int)st.boundary.size();
        std::map<int, int> pos;
        for (int t = 0; t < n; ++t) pos[st.elim[t]] = t;

        // neighbours of each subtree vertex by path position
        std::map<int, std::vector<std::pair<int, int>>> back;
        for (int v : st.verts) {
            int own = pos.at(ps.partition.path_of[v]);
            std::vector<std::pair<int, int>> bs;
            for (int w : graph.adj[v]) {
                int p = ps.partition.path_of[w];
                auto it = pos.find(p);
                TWG_CHECK(it != pos.end(), "subtree vertex adjacent outside its subtree");
                if (it->second < own) bs.push_back({it->second, w});
            }
            std::sort(bs.begin(), bs.end());
            TWG_CHECK((int)bs.size() <= 21, "shadow larger than 21 vertices");
            back[v] = std::move(bs);
        }

        Pool conclusion_pool;
        if (n < 8) {
            for (int v : st.verts)
                conclusion_pool.push_back(
                    Blob{v, tree.forest.layer[v], v, {}});
        } else {
            // forward 7-tree edges: positions whose intro bag contains Q_t
            std::vector<std::vector<int>> fwd(n);
            for (int t = 0; t < n; ++t)
                for (int p : plan.subtrees[i].intro[t]) {
                    auto it = pos.find(p);
                    if (it != pos.end() && it->second < t) fwd[it->second].push_back(t);
                }
            UnionFind uf;
            std::vector<int> uf_id(n, -1);
            std::map<int, Pool> pools;  // uf root -> pool
            auto path_singletons = [&](int t) {
                Pool p;
                for (int v : ps.partition.paths[st.elim[t]].vertices) {
                    auto it = back.find(v);
                    TWG_CHECK(it != back.end(), "path vertex missing back list");
                    p.push_back(Blob{v, tree.forest.layer[v], v, it->second});
                }
                return p;
            };
            uf_id[n - 1] = uf.add();
            uf.mn[uf_id[n - 1]] = n - 1;
            pools[uf.find(uf_id[n - 1])] = path_singletons(n - 1);

            for (int p = n - 2; p >= np - 1; --p) {
                // alive components adjacent to Q_{p}, ordered by smallest position
                std::vector<int> roots;
                for (int t : fwd[p]) {
                    TWG_CHECK(uf_id[t] >= 0, "forward edge to a dormant path");
                    int r = uf.find(uf_id[t]);
                    if (std::find(roots.begin(), roots.end(), r) == roots.end())
                        roots.push_back(r);
                }
                std::sort(roots.begin(), roots.end(),
                          [&](int a, int b) { return uf.mn[a] < uf.mn[b]; });
                std::vector<Pool> parts;
                for (int r : roots) {
                    parts.push_back(std::move(pools[r]));
                    pools.erase(r);
                }
                Pool merged = sweep_merge(em, std::move(parts), p + 1);
                if (p >= np) {
                    // regroup by the tighter shadow, then absorb the path
                    std::vector<Pool> one;
                    one.push_back(std::move(merged));
                    merged = sweep_merge(em, std::move(one), p);
                    Pool singles = path_singletons(p);
                    for (auto& b : singles) b.shadow = filter_shadow(b.shadow, p);
                    sort_pool(singles);
                    std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> index;
                    for (int t = 0; t < (int)merged.size(); ++t)
                        index[{merged[t].layer, merged[t].shadow}] = t;
                    for (auto& b : singles) {
                        auto key = std::make_pair(b.layer, b.shadow);
                        auto it = index.find(key);
                        if (it == index.end()) {
                            index[key] = (int)merged.size();
                            merged.push_back(b);
                        } else {
                            Blob& target = merged[it->second];
                            target.id = em.contract(target.id, b.id, true);
                            target.min_vert = std::min(target.min_vert, b.min_vert);
                        }
                    }
                    uf_id[p] = uf.add();
                    uf.mn[uf_id[p]] = p;
                    for (int r : roots) uf.unite(uf_id[p], r);
                    pools[uf.find(uf_id[p])] = std::move(merged);
                } else {
                    // boundary path: merge only; stash under a fresh component
                    uf_id[p] = uf.add();
                    uf.mn[uf_id[p]] = p;
                    for (int r : roots) uf.unite(uf_id[p], r);
                    pools[uf.find(uf_id[p])] = std::move(merged);
                }
            }
            for (auto& [r, pool] : pools)
                for (auto& b : pool) conclusion_pool.push_back(b);
        }

        // Conclusion: one vertex per layer, then into the group accumulator.
        std::map<int, std::vector<Blob>> by_layer;
        for (auto& b : conclusion_pool) by_layer[b.layer].push_back(b);
        std::map<int, int> layer_vertex;
        for (auto& [layer, blobs] : by_layer) {
            std::sort(blobs.begin(), blobs.end(),
                      [](const Blob& a, const Blob& b) { return a.min_vert < b.min_vert; });
            int cur = blobs[0].id;
            for (size_t t = 1; t < blobs.size(); ++t) cur = em.contract(cur, blobs[t].id, true);
            layer_vertex[layer] = cur;
        }
        auto& acc = b_acc[b_group_of[i]];
        for (auto [layer, v] : layer_vertex) {
            auto it = acc.find(layer);
            if (it == acc.end())
                acc[layer] = v;
            else
                it->second = em.contract(it->second, v, true);
        }
        // End-of-subphase audit: red degree along the root paths.
        for (int p : rootbag)
            for (int v : ps.partition.paths[p].vertices)
                if (em.tg.alive(v) && em.tg.red_degree(v) > path_bound)
                    throw error(errc::bound_violation,
                                "root path vertex exceeds 3(l'+1) red degree");
    }

    // Phase II: merge the paths of each degree group layer by layer.
    em.phase = Phase::two;
    em.subphase = -1;
    long long phase2_cap_sq = 36LL * plan.s_sq;  // (6s)^2
    std::vector<std::map<int, int>> a_acc(plan.a_groups.size());
    for (int gidx = 0; gidx < (int)plan.a_groups.size(); ++gidx) {
        auto& acc = a_acc[gidx];
        for (int idx : plan.a_groups[gidx]) {
            int p = rootbag[idx];
            for (int v : ps.partition.paths[p].vertices) {
                int layer = tree.forest.layer[v];
                auto it = acc.find(layer);
                if (it == acc.end())
                    acc[layer] = v;
                else
                    it->second = em.contract(it->second, v, true);
                int r = em.tg.max_red_degree();
                if (r > 6 && (long long)(r - 6) * (r - 6) > phase2_cap_sq)
                    throw error(errc::bound_violation, "phase two exceeds 6(s+1)");
            }
        }
    }

    // Phase III: collapse layers top to bottom, then chain them together.
    em.phase = Phase::three;
    std::map<int, std::vector<int>> layers;
    for (auto& acc : a_acc)
        for (auto [layer, v] : acc) layers[layer].push_back(v);
    for (auto& acc : b_acc)
        for (auto [layer, v] : acc) layers[layer].push_back(v);
    int phase3_cap = 3 * (plan.kprime + plan.lprime) - 1;
    std::vector<int> layer_rep;
    for (auto& [layer, vs] : layers) {
        int cur = vs[0];
        for (size_t t = 1; t < vs.size(); ++t) {
            cur = em.contract(cur, vs[t], true);
            if (em.tg.max_red_degree() > phase3_cap)
                throw error(errc::bound_violation, "phase three exceeds 3(k'+l')-1");
        }
        layer_rep.push_back(cur);
    }
    for (size_t t = 1; t < layer_rep.size(); ++t) {
        layer_rep[t] = em.contract(layer_rep[t - 1], layer_rep[t], false);
        if (em.tg.max_red_degree() > phase3_cap)
            throw error(errc::bound_violation, "phase three exceeds 3(k'+l')-1");
    }
    TWG_CHECK(em.tg.vertex_count() == 1, "schedule did not reach a single vertex");
    TWG_CHECK(em.seq.complete(), "sequence length mismatch");

    res.seq = std::move(em.seq);
    res.report = replay(graph, res.seq);
    TWG_CHECK(res.report.complete, "replay incomplete");
    res.observed_max = res.report.overall_max;
    if ((double)res.observed_max > res.bound)
        throw error(errc::bound_violation, "replay exceeded the certified bound");
    return res;
}

}  // namespace twg
