#include "twg/io.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace twg {

namespace {

struct LineReader {
    std::istream& in;
    int lineno = 0;
    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++lineno;
            size_t h = line.find('#');
            if (h != std::string::npos) line.erase(h);
            size_t a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            line = line.substr(a);
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw error(errc::parse_error, "line " + std::to_string(lineno) + ": " + msg);
    }
};

}  // namespace

CombinatorialMap read_map(std::istream& in) {
    LineReader r{in};
    std::string line;
    if (!r.next(line)) r.fail("missing header");
    std::istringstream head(line);
    std::string tag;
    int nv = 0, ne = 0;
    head >> tag >> nv >> ne;
    if (tag != "map" || head.fail() || nv < 0 || ne < 0) r.fail("expected 'map <V> <E>'");
    MapBuilder mb(nv);
    std::vector<char> seen(nv, 0);
    for (int i = 0; i < nv; ++i) {
        if (!r.next(line)) r.fail("missing vertex line");
        std::istringstream ls(line);
        std::string vt;
        ls >> vt;
        if (vt != "v") r.fail("expected 'v <id>: ...'");
        std::string idtok;
        ls >> idtok;
        if (!idtok.empty() && idtok.back() == ':') idtok.pop_back();
        int v = -1;
        try {
            v = std::stoi(idtok);
        } catch (...) {
            r.fail("bad vertex id");
        }
        if (v < 0 || v >= nv || seen[v]) r.fail("bad or repeated vertex id");
        seen[v] = 1;
        std::string tok;
        while (ls >> tok) {
            if (tok == ":") continue;
            int sign = 1;
            char last = tok.back();
            if (last == '+' || last == '-') {
                sign = last == '-' ? -1 : 1;
                tok.pop_back();
            }
            int e = -1;
            try {
                e = std::stoi(tok);
            } catch (...) {
                r.fail("bad edge token");
            }
            if (e < 0 || e >= ne) r.fail("edge id out of range");
            mb.add_occurrence(v, e, sign);
        }
    }
    try {
        return mb.build();
    } catch (const error& e) {
        throw error(e.code, std::string("after line ") + std::to_string(r.lineno) + ": " +
                                e.what());
    }
}

void write_map(std::ostream& out, const CombinatorialMap& m) {
    // Renumber edges by first appearance in the canonical sweep; start each
    // rotation at its smallest renumbered edge so output round-trips exactly.
    std::vector<int> renum(m.edge_count(), -1);
    int next = 0;
    for (int v = 0; v < m.nv; ++v)
        for (int d : m.rotation[v]) {
            int e = CombinatorialMap::edge_of(d);
            if (renum[e] < 0) renum[e] = next++;
        }
    out << "map " << m.nv << " " << m.edge_count() << "\n";
    for (int v = 0; v < m.nv; ++v) {
        const auto& rot = m.rotation[v];
        int start = 0;
        for (int i = 1; i < (int)rot.size(); ++i)
            if (renum[CombinatorialMap::edge_of(rot[i])] <
                renum[CombinatorialMap::edge_of(rot[start])])
                start = i;
        out << "v " << v << ":";
        for (int i = 0; i < (int)rot.size(); ++i) {
            int d = rot[(start + i) % rot.size()];
            int e = CombinatorialMap::edge_of(d);
            out << " " << renum[e] << (m.edge_sign[e] < 0 ? '-' : '+');
        }
        out << "\n";
    }
}

Graph read_graph(std::istream& in) {
    LineReader r{in};
    std::string line;
    if (!r.next(line)) r.fail("missing header");
    std::istringstream head(line);
    std::string tag;
    int n = 0, mcount = 0;
    head >> tag >> n >> mcount;
    if (tag != "graph" || head.fail() || n < 0 || mcount < 0)
        r.fail("expected 'graph <n> <m>'");
    Graph g(n);
    for (int i = 0; i < mcount; ++i) {
        if (!r.next(line)) r.fail("missing edge line");
        std::istringstream ls(line);
        std::string et;
        int u, v;
        ls >> et >> u >> v;
        if (et != "e" || ls.fail() || u < 0 || v < 0 || u >= n || v >= n || u == v)
            r.fail("expected 'e <u> <v>'");
        g.add_edge(u, v);
    }
    g.finish();
    return g;
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "graph " << g.n << " " << g.edges.size() << "\n";
    for (auto [u, v] : g.edges) out << "e " << u << " " << v << "\n";
}

ContractionSequence read_sequence(std::istream& in, int* maxred_line) {
    LineReader r{in};
    std::string line;
    if (!r.next(line)) r.fail("missing header");
    std::istringstream head(line);
    std::string tag;
    int n = 0;
    head >> tag >> n;
    if (tag != "ctrseq" || head.fail() || n <= 0) r.fail("expected 'ctrseq <n>'");
    ContractionSequence seq;
    seq.initial_vertices = n;
    if (maxred_line) *maxred_line = -1;
    while (r.next(line)) {
        std::istringstream ls(line);
        std::string t;
        ls >> t;
        if (t == "maxred") {
            int v = -1;
            ls >> v;
            if (ls.fail()) r.fail("bad maxred line");
            if (maxred_line) *maxred_line = v;
            break;
        }
        if (t != "c") r.fail("expected 'c <u> <v> -> <w>'");
        Step st;
        std::string arrow;
        ls >> st.u >> st.v >> arrow >> st.w;
        if (ls.fail() || arrow != "->") r.fail("expected 'c <u> <v> -> <w>'");
        std::string ph;
        if (ls >> ph) {
            if (ph == "II")
                st.phase = Phase::two;
            else if (ph == "III")
                st.phase = Phase::three;
            else if (ph.rfind("I.", 0) == 0) {
                st.phase = Phase::one;
                try {
                    st.subphase = std::stoi(ph.substr(2));
                } catch (...) {
                    r.fail("bad phase tag");
                }
            } else
                r.fail("bad phase tag");
        }
        seq.steps.push_back(st);
    }
    return seq;
}

void write_sequence(std::ostream& out, const ContractionSequence& seq, int maxred,
                    bool emit_phases) {
    out << "ctrseq " << seq.initial_vertices << "\n";
    for (const auto& st : seq.steps) {
        out << "c " << st.u << " " << st.v << " -> " << st.w;
        if (emit_phases && st.phase != Phase::none) {
            if (st.phase == Phase::one)
                out << " I." << st.subphase;
            else if (st.phase == Phase::two)
                out << " II";
            else
                out << " III";
        }
        out << "\n";
    }
    out << "maxred " << maxred << "\n";
}

DecompositionFile read_decomposition(std::istream& in) {
    LineReader r{in};
    std::string line;
    if (!r.next(line)) r.fail("missing header");
    {
        std::istringstream head(line);
        std::string tag, gt;
        DecompositionFile dummy;
        head >> tag >> gt >> dummy.genus;
        if (tag != "decomp" || gt != "genus" || head.fail()) r.fail("expected 'decomp genus <g>'");
        dummy.paths.clear();
        // fallthrough with parsed genus
        DecompositionFile f;
        f.genus = dummy.genus;
        std::map<int, std::vector<int>> paths;
        std::map<int, std::pair<int, std::vector<int>>> bags;
        while (r.next(line)) {
            std::istringstream ls(line);
            std::string t;
            ls >> t;
            if (t == "p") {
                std::string idtok;
                ls >> idtok;
                if (!idtok.empty() && idtok.back() == ':') idtok.pop_back();
                int id = -1;
                try {
                    id = std::stoi(idtok);
                } catch (...) {
                    r.fail("bad path id");
                }
                std::vector<int> vs;
                int v;
                while (ls >> v) vs.push_back(v);
                if (vs.empty() || paths.count(id)) r.fail("bad path line");
                paths[id] = vs;
            } else if (t == "b") {
                int id = -1;
                std::string ptok, par;
                ls >> id >> ptok >> par;
                if (ls.fail() || ptok != "parent") r.fail("expected 'b <id> parent <p>:'");
                if (!par.empty() && par.back() == ':') par.pop_back();
                int parent = -1;
                if (par != "root") {
                    try {
                        parent = std::stoi(par);
                    } catch (...) {
                        r.fail("bad parent");
                    }
                }
                std::string rest;
                std::getline(ls, rest);
                std::istringstream rs(rest);
                std::vector<int> ids;
                std::string tok;
                while (rs >> tok) {
                    if (tok == ":") continue;
                    try {
                        ids.push_back(std::stoi(tok));
                    } catch (...) {
                        r.fail("bad bag entry");
                    }
                }
                if (bags.count(id)) r.fail("repeated bag id");
                bags[id] = {parent, ids};
            } else if (t == "summary") {
                std::string what;
                ls >> what;
                if (what == "root-bag")
                    ls >> f.root_bag >> f.root_bound;
                else if (what == "children")
                    ls >> f.children >> f.child_bound;
                else if (what == "max-nonroot-bag")
                    ls >> f.max_nonroot;
                if (ls.fail()) r.fail("bad summary line");
            } else {
                r.fail("unknown record '" + t + "'");
            }
        }
        int np = (int)paths.size();
        f.paths.resize(np);
        for (auto& [id, vs] : paths) {
            if (id < 0 || id >= np) r.fail("path ids must be dense");
            f.paths[id] = vs;
        }
        int nb = (int)bags.size();
        f.dec.bags.resize(nb);
        f.dec.parent.assign(nb, -1);
        for (auto& [id, pb] : bags) {
            if (id < 0 || id >= nb) r.fail("bag ids must be dense");
            f.dec.parent[id] = pb.first;
            std::sort(pb.second.begin(), pb.second.end());
            pb.second.erase(std::unique(pb.second.begin(), pb.second.end()), pb.second.end());
            f.dec.bags[id] = pb.second;
        }
        return f;
    }
}

void write_decomposition(std::ostream& out, const ProductStructure& ps) {
    out << "decomp genus " << ps.genus << "\n";
    for (const auto& p : ps.partition.paths) {
        out << "p " << p.id << ":";
        for (int v : p.vertices) out << " " << v;
        out << "\n";
    }
    for (int b = 0; b < (int)ps.dec.bags.size(); ++b) {
        out << "b " << b << " parent ";
        if (ps.dec.parent[b] < 0)
            out << "root";
        else
            out << ps.dec.parent[b];
        out << ":";
        for (int p : ps.dec.bags[b]) out << " " << p;
        out << "\n";
    }
    out << "summary root-bag " << ps.root_bag_size << " " << std::max(6, 32 * ps.genus - 27)
        << "\n";
    out << "summary children " << ps.root_children << " " << 6 * std::max(1, 18 * ps.genus - 21)
        << "\n";
    out << "summary max-nonroot-bag " << ps.max_nonroot_bag << " 8\n";
}

ProductStructure to_product_structure(const DecompositionFile& f, int nv) {
    ProductStructure ps;
    ps.genus = f.genus;
    ps.dec = f.dec;
    std::vector<VerticalPath> paths;
    for (int i = 0; i < (int)f.paths.size(); ++i) paths.push_back({i, f.paths[i]});
    ps.partition = make_path_partition(nv, std::move(paths));
    ps.root_bag_size = f.dec.bags.empty() ? 0 : (int)f.dec.bags[0].size();
    for (int b = 1; b < (int)f.dec.bags.size(); ++b) {
        if (f.dec.parent[b] == 0) ++ps.root_children;
        ps.max_nonroot_bag = std::max(ps.max_nonroot_bag, (int)f.dec.bags[b].size());
    }
    return ps;
}

}  // namespace twg
