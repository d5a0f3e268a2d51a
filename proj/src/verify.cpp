#include "opetopic/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <set>

#include "json.hpp"
#include "opetopic/union_find.hpp"

namespace opetopic::verify {

using trees::Port;
using trees::Wiring;

// ---------------------------------------------------------------------------
// Tree oracle: literal graph construction plus depth-first search.

bool oracle_acyclic(const Wiring& w) {
    const int k = w.profile().node_count();
    // undirected multigraph on the real nodes; edge per node-to-node pairing
    std::vector<std::pair<int, int>> edges;
    for (const auto& [d, c] : w.map())
        if (d.kind == Port::Kind::node_input && c.kind == Port::Kind::node_output)
            edges.emplace_back(d.node, c.node);
    std::vector<std::vector<int>> incident(k);
    for (size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].first == edges[e].second) return false; // self-loop
        incident[edges[e].first].push_back(static_cast<int>(e));
        incident[edges[e].second].push_back(static_cast<int>(e));
    }
    std::vector<char> visited(k, 0);
    for (int start = 0; start < k; ++start) {
        if (visited[start]) continue;
        // stack of (vertex, edge used to get here)
        std::vector<std::pair<int, int>> stack{{start, -1}};
        visited[start] = 1;
        while (!stack.empty()) {
            auto [v, via] = stack.back();
            stack.pop_back();
            for (int e : incident[v]) {
                if (e == via) continue;
                int u = edges[e].first == v ? edges[e].second : edges[e].first;
                if (visited[u]) return false;
                visited[u] = 1;
                stack.emplace_back(u, e);
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Opetope oracles: exhaustive structural matching search.

namespace {

void combine_label_matchings(const std::vector<std::vector<Matching>>& options, size_t at,
                             std::vector<Matching>& current, const Matching& skeleton,
                             int cap, std::vector<Matching>& out) {
    if (at == options.size()) {
        Matching m = skeleton;
        m.labels = current;
        if (static_cast<int>(out.size()) >= cap)
            throw BoundExceeded("matching search cap exceeded");
        out.push_back(std::move(m));
        return;
    }
    for (const Matching& opt : options[at]) {
        current.push_back(opt);
        combine_label_matchings(options, at + 1, current, skeleton, cap, out);
        current.pop_back();
    }
}

} // namespace

std::vector<Matching> oracle_matchings(const Opetope& a, const Opetope& b, int cap) {
    std::vector<Matching> out;
    if (a.dim() != b.dim()) return out;
    if (a.dim() <= 1) {
        out.push_back(Matching{});
        return out;
    }
    const Wiring& wa = a.wiring();
    const Wiring& wb = b.wiring();
    const int k = wa.profile().node_count();
    if (k != wb.profile().node_count()) return out;
    const int l = wa.profile().leaf_count();
    if (l != wb.profile().leaf_count()) return out;

    if (k == 0) {
        for (const Matching& em : oracle_matchings(a.edge_labels()[0], b.edge_labels()[0], cap)) {
            (void)em;
            Matching m;
            m.leaf_perm = {0};
            if (static_cast<int>(out.size()) >= cap)
                throw BoundExceeded("matching search cap exceeded");
            out.push_back(std::move(m));
        }
        return out;
    }

    std::vector<int> sigma(k);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        bool fits = true;
        for (int i = 0; i < k && fits; ++i)
            if (wa.profile().arities[i] != wb.profile().arities[sigma[i]]) fits = false;
        if (!fits) continue;

        std::vector<int> lambda(l, -1);
        for (const auto& [d, c] : wa.map()) {
            if (d.kind == Port::Kind::node_input) {
                Port img = wb.image(Port::node_input(sigma[d.node], d.slot));
                if (c.kind == Port::Kind::node_output) {
                    if (img != Port::node_output(sigma[c.node])) { fits = false; break; }
                } else {
                    if (img.kind != Port::Kind::formal_input) { fits = false; break; }
                    lambda[c.slot] = img.slot;
                }
            } else {
                Port img = wb.image(Port::formal_output());
                if (img != Port::node_output(sigma[c.node])) { fits = false; break; }
            }
        }
        if (!fits) continue;

        std::vector<std::vector<Matching>> options;
        for (int i = 0; i < k && fits; ++i) {
            options.push_back(oracle_matchings(a.node_labels()[i], b.node_labels()[sigma[i]], cap));
            if (options.back().empty()) fits = false;
        }
        if (!fits) continue;

        Matching skeleton;
        skeleton.node_perm = sigma;
        skeleton.leaf_perm = lambda;
        std::vector<Matching> current;
        combine_label_matchings(options, 0, current, skeleton, cap, out);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

std::vector<Opetope> oracle_enumerate(int dim, int max_nodes, int max_arity, long guard) {
    if (dim == 0) return {Opetope::point()};
    if (dim == 1) return {Opetope::arrow()};

    std::vector<Opetope> labels = oracle_enumerate(dim - 1, max_nodes, max_arity, guard);
    std::vector<Opetope> edge_pool = oracle_enumerate(dim - 2, max_nodes, max_arity, guard);

    std::vector<Opetope> candidates;
    for (const Opetope& e : edge_pool) candidates.push_back(null_opetope(e));

    // all ordered label tuples of every size, then every tree wiring
    std::vector<int> tuple;
    auto rec = [&](auto&& self, int k) -> void {
        if (static_cast<int>(tuple.size()) == k) {
            trees::NodeProfile prof;
            for (int t : tuple) {
                int a = labels[t].source_arity();
                if (a > max_arity) return;
                prof.arities.push_back(a);
            }
            if (prof.total_inputs() - prof.node_count() + 1 < 0) return;
            for (const Wiring& w : trees::enumerate_wirings(prof, prof.total_inputs() + 1)) {
                PastingDiagram pd;
                pd.wiring = w;
                for (int t : tuple) pd.nodes.push_back(labels[t]);
                try {
                    candidates.push_back(make_opetope(dim, pd));
                } catch (const InvalidInput&) {
                }
                if (static_cast<long>(candidates.size()) > guard)
                    throw BoundExceeded("oracle enumeration guard exceeded");
            }
            return;
        }
        for (size_t t = 0; t < labels.size(); ++t) {
            tuple.push_back(static_cast<int>(t));
            self(self, k);
            tuple.pop_back();
        }
    };
    for (int k = 1; k <= max_nodes; ++k) rec(rec, k);

    // de-duplicate by exhaustive matching only
    std::vector<Opetope> reps;
    for (const Opetope& c : candidates) {
        bool fresh = true;
        for (const Opetope& r : reps)
            if (!oracle_matchings(c, r).empty()) {
                fresh = false;
                break;
            }
        if (fresh) reps.push_back(c);
    }
    return reps;
}

// ---------------------------------------------------------------------------
// Category oracles

namespace {

using category::Generator;
using category::MorphismWord;

std::string matching_key(const Matching& m) {
    std::string s = "(";
    for (int v : m.node_perm) s += std::to_string(v) + ".";
    s += "|";
    for (int v : m.leaf_perm) s += std::to_string(v) + ".";
    s += "|";
    for (const Matching& c : m.labels) s += matching_key(c);
    return s + ")";
}

std::string exact_word_key(const MorphismWord& w) {
    std::string s;
    for (const Generator& g : w) {
        switch (g.kind) {
        case Generator::Kind::source: s += "s" + std::to_string(g.index); break;
        case Generator::Kind::target: s += "t"; break;
        case Generator::Kind::iso: s += "g" + matching_key(g.witness); break;
        }
        s += "@" + g.cod.code() + ";";
    }
    return s;
}

// one Relation-2 instance: the two identified composable pairs
struct RelationInstance {
    Generator inner_a, outer_a;
    Generator inner_b, outer_b;
};

std::vector<RelationInstance> relation_instances(const Opetope& theta) {
    std::vector<RelationInstance> out;
    if (theta.dim() < 2) return out;
    TargetResult tr = target_with_map(theta);
    const auto& nodes = source_faces(theta);
    for (const auto& [y, ay] : theta.wiring().map()) {
        RelationInstance r;
        if (y.kind == trees::Port::Kind::node_input) {
            r.inner_a = category::source_gen(nodes[y.node], y.slot);
            r.outer_a = category::source_gen(theta, y.node);
            if (ay.kind == trees::Port::Kind::node_output) {
                r.inner_b = category::target_gen(nodes[ay.node]);
                r.outer_b = category::source_gen(theta, ay.node);
            } else {
                r.inner_b = category::source_gen(tr.target, tr.leaf_to_source[ay.slot]);
                r.outer_b = category::target_gen(theta);
            }
        } else {
            if (ay.kind == trees::Port::Kind::node_output) {
                r.inner_a = category::target_gen(nodes[ay.node]);
                r.outer_a = category::source_gen(theta, ay.node);
            } else {
                r.inner_a = category::source_gen(tr.target, tr.leaf_to_source[ay.slot]);
                r.outer_a = category::target_gen(theta);
            }
            r.inner_b = category::target_gen(tr.target);
            r.outer_b = category::target_gen(theta);
        }
        out.push_back(std::move(r));
    }
    return out;
}

void all_chains_into(const Opetope& alpha, std::map<std::string, std::vector<MorphismWord>>& memo,
                     long guard) {
    if (memo.count(alpha.code())) return;
    std::vector<MorphismWord> chains{{}};
    for (const Generator& g : category::generators_of(alpha)) {
        all_chains_into(g.dom, memo, guard);
        for (const MorphismWord& below : memo.at(g.dom.code())) {
            MorphismWord w = below;
            w.push_back(g);
            chains.push_back(std::move(w));
            if (static_cast<long>(chains.size()) > guard)
                throw BoundExceeded("face-quotient oracle guard exceeded");
        }
    }
    memo.emplace(alpha.code(), std::move(chains));
}

} // namespace

WordPartition oracle_face_quotient(const Opetope& alpha, long guard) {
    std::map<std::string, std::vector<MorphismWord>> memo;
    all_chains_into(alpha, memo, guard);
    const std::vector<MorphismWord>& chains = memo.at(alpha.code());

    std::map<std::string, int> index_of;
    for (size_t i = 0; i < chains.size(); ++i) index_of[exact_word_key(chains[i])] = static_cast<int>(i);

    std::map<std::string, std::vector<RelationInstance>> instances;
    auto instances_of = [&](const Opetope& o) -> const std::vector<RelationInstance>& {
        auto it = instances.find(o.code());
        if (it == instances.end()) it = instances.emplace(o.code(), relation_instances(o)).first;
        return it->second;
    };

    UnionFind uf(static_cast<int>(chains.size()));
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t ci = 0; ci < chains.size(); ++ci) {
            const MorphismWord& w = chains[ci];
            for (size_t i = 0; i + 1 < w.size(); ++i) {
                for (const RelationInstance& r : instances_of(w[i + 1].cod)) {
                    const bool fwd = w[i] == r.inner_a && w[i + 1] == r.outer_a;
                    const bool bwd = w[i] == r.inner_b && w[i + 1] == r.outer_b;
                    if (!fwd && !bwd) continue;
                    MorphismWord v = w;
                    v[i] = fwd ? r.inner_b : r.inner_a;
                    v[i + 1] = fwd ? r.outer_b : r.outer_a;
                    auto it = index_of.find(exact_word_key(v));
                    if (it == index_of.end())
                        throw InvalidInput("internal: rewritten chain left the chain set");
                    changed = uf.unite(static_cast<int>(ci), it->second) || changed;
                }
            }
        }
    }

    WordPartition part;
    std::map<std::pair<int, int>, int> block_index; // (dim, root) -> block
    for (size_t ci = 0; ci < chains.size(); ++ci) {
        const MorphismWord& w = chains[ci];
        int dim = w.empty() ? alpha.dim() : w.front().dom.dim();
        int root = uf.find(static_cast<int>(ci));
        auto key = std::make_pair(dim, root);
        auto it = block_index.find(key);
        if (it == block_index.end()) {
            it = block_index.emplace(key, static_cast<int>(part.blocks[dim].size())).first;
            part.blocks[dim].emplace_back();
        }
        part.blocks[dim][it->second].push_back(category::word_key(w));
        part.block_of[category::word_key(w)] = it->second;
    }
    return part;
}

namespace {

std::vector<MorphismWord> one_step_reductions(const MorphismWord& v) {
    std::vector<MorphismWord> out;
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        const Generator& a = v[i];
        const Generator& b = v[i + 1];
        if (a.kind != Generator::Kind::iso && b.kind == Generator::Kind::iso) {
            auto [component, transported] = category::restrict_gen(b, a);
            MorphismWord w = v;
            w[i] = component;
            w[i + 1] = transported;
            out.push_back(std::move(w));
        } else if (a.kind == Generator::Kind::iso && b.kind == Generator::Kind::iso) {
            Generator composed;
            composed.kind = Generator::Kind::iso;
            composed.dom = a.dom;
            composed.cod = b.cod;
            composed.witness = a.witness.then(b.witness);
            MorphismWord w = v;
            w.erase(w.begin() + i);
            w[i] = composed;
            out.push_back(std::move(w));
        } else if (a.kind == Generator::Kind::iso && a.witness.is_identity() &&
                   b.kind != Generator::Kind::iso) {
            MorphismWord w = v;
            w.erase(w.begin() + i);
            out.push_back(std::move(w));
        }
    }
    return out;
}

} // namespace

ReductionFan oracle_normalize(const MorphismWord& w, long guard) {
    category::check_composable(w);
    std::map<std::string, int> longest;
    std::map<std::string, MorphismWord> seen;
    std::vector<MorphismWord> normals;

    auto explore = [&](auto&& self, const MorphismWord& v) -> int {
        std::string key = exact_word_key(v);
        auto it = longest.find(key);
        if (it != longest.end()) return it->second;
        if (static_cast<long>(longest.size()) > guard)
            throw BoundExceeded("reduction exploration guard exceeded");
        longest[key] = 0; // provisional; the system terminates, so no cycles
        auto nexts = one_step_reductions(v);
        int best = 0;
        if (nexts.empty()) {
            normals.push_back(v);
        } else {
            for (const MorphismWord& n : nexts) best = std::max(best, 1 + self(self, n));
        }
        longest[key] = best;
        return best;
    };
    int depth = explore(explore, w);

    std::map<std::string, MorphismWord> dedup;
    for (const MorphismWord& n : normals) dedup.emplace(exact_word_key(n), n);
    ReductionFan fan;
    for (auto& [k, v] : dedup) fan.normal_forms.push_back(v);
    fan.longest_path = depth;
    return fan;
}

// ---------------------------------------------------------------------------
// Colimit mutants

namespace {

using osets::Cell;
using osets::CellId;
using osets::ColimitResult;
using osets::Diagram;
using osets::OpetopicSet;
using osets::OSetMorphism;

// Twin of the colimit construction with injectable defects.
ColimitResult build_colimit(const Diagram& d, ColimitMutation mutation) {
    int dmax = -1;
    for (const auto& obj : d.objects) dmax = std::max(dmax, obj.max_dim());

    ColimitResult out;
    out.coprojections.resize(d.objects.size());
    for (size_t i = 0; i < d.objects.size(); ++i)
        out.coprojections[i].map.resize(d.objects[i].cells.size());

    bool skipped = false;
    std::vector<std::map<std::pair<int, CellId>, CellId>> rep_of(dmax + 1);
    for (int dim = 0; dim <= dmax; ++dim) {
        std::vector<std::pair<int, CellId>> elems;
        std::map<std::pair<int, CellId>, int> index;
        for (size_t i = 0; i < d.objects.size(); ++i) {
            if (dim > d.objects[i].max_dim()) continue;
            for (const Cell& c : d.objects[i].cells[dim]) {
                index[{static_cast<int>(i), c.id}] = static_cast<int>(elems.size());
                elems.emplace_back(static_cast<int>(i), c.id);
            }
        }
        UnionFind uf(static_cast<int>(elems.size()));
        for (const auto& ar : d.arrows) {
            if (dim >= static_cast<int>(ar.map.map.size())) continue;
            for (const auto& [a, b] : ar.map.map[dim]) {
                int ia = index.at({ar.src, a});
                int ib = index.at({ar.dst, b});
                if (mutation == ColimitMutation::skip_merge && !skipped &&
                    uf.find(ia) != uf.find(ib)) {
                    skipped = true;
                    continue;
                }
                uf.unite(ia, ib);
            }
        }
        for (size_t e = 0; e < elems.size(); ++e) {
            int root = uf.find(static_cast<int>(e));
            const auto& [obj, cid] = elems[root];
            int pos = 0;
            for (const Cell& c : d.objects[obj].cells[dim]) {
                if (c.id == cid) break;
                ++pos;
            }
            rep_of[dim][elems[e]] = std::to_string(obj) + "." + std::to_string(pos);
        }
    }

    for (int dim = 0; dim <= dmax; ++dim) {
        std::set<CellId> emitted;
        for (size_t i = 0; i < d.objects.size(); ++i) {
            if (dim > d.objects[i].max_dim()) continue;
            for (const Cell& c : d.objects[i].cells[dim]) {
                CellId zid = rep_of[dim].at({static_cast<int>(i), c.id});
                out.coprojections[i].map[dim][c.id] = zid;
                if (!emitted.insert(zid).second) continue;
                Cell zc;
                zc.id = zid;
                zc.shape = c.shape;
                for (const auto& [addr, bid] : c.boundary)
                    zc.boundary[addr] = rep_of[addr.dim].at({static_cast<int>(i), bid});
                out.colimit.add(std::move(zc));
            }
        }
    }
    out.colimit.sort_cells();

    if (mutation == ColimitMutation::extra_cell) {
        Cell extra;
        extra.id = "mutant.0";
        extra.shape = Opetope::point();
        out.colimit.add(extra);
        out.colimit.sort_cells();
    }
    if (mutation == ColimitMutation::wrong_frame) {
        for (auto& layer : out.colimit.cells) {
            bool done = false;
            for (Cell& c : layer) {
                if (c.boundary.empty()) continue;
                auto& [addr, bid] = *c.boundary.begin();
                for (const Cell& other : out.colimit.cells[addr.dim])
                    if (other.id != bid) {
                        bid = other.id;
                        done = true;
                        break;
                    }
                if (done) break;
            }
            if (done) break;
        }
    }
    return out;
}

} // namespace

ColimitResult mutated_colimit(const Diagram& d, ColimitMutation m) {
    if (m == ColimitMutation::none) return osets::colimit(d);
    return build_colimit(d, m);
}

// ---------------------------------------------------------------------------
// Seeded instances

namespace {

struct SeededRng {
    std::uint64_t state;
    explicit SeededRng(std::uint64_t seed) : state(seed ? seed : 1) {}
    std::uint64_t next() {
        // splitmix64: identical streams on every platform
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

// opetopes whose realizations stay small
std::vector<Opetope> realization_pool(const Bounds& b) {
    std::vector<Opetope> pool;
    for (int d = 0; d <= b.max_dim; ++d)
        for (const Opetope& o : enumerate_opetopes(d, b.max_nodes, b.max_arity))
            if (osets::realize(o).total_cells() * 3 <= b.max_cells) pool.push_back(o);
    return pool;
}

// Greedy dimension-ascending construction of one shape- and frame-
// preserving assignment; gives up on the first unlabellable cell.
std::optional<OSetMorphism> random_morphism(SeededRng& rng, const OpetopicSet& X,
                                            const OpetopicSet& Y) {
    OSetMorphism f;
    f.map.resize(X.cells.size());
    for (int dim = 0; dim < static_cast<int>(X.cells.size()); ++dim) {
        if (dim > Y.max_dim() && !X.cells[dim].empty()) return std::nullopt;
        for (const Cell& c : X.cells[dim]) {
            std::vector<const Cell*> candidates;
            for (const Cell& y : Y.cells[dim]) {
                if (!(y.shape == c.shape)) continue;
                bool ok = true;
                for (const auto& [addr, bid] : c.boundary)
                    if (f.map[addr.dim].at(bid) != y.boundary.at(addr)) {
                        ok = false;
                        break;
                    }
                if (ok) candidates.push_back(&y);
            }
            if (candidates.empty()) return std::nullopt;
            f.map[dim][c.id] = candidates[rng.below(static_cast<int>(candidates.size()))]->id;
        }
    }
    return f;
}

const Cell* random_cell(SeededRng& rng, const OpetopicSet& X) {
    long n = X.total_cells();
    if (n == 0) return nullptr;
    int pick = rng.below(static_cast<int>(n));
    for (const auto& layer : X.cells)
        for (const Cell& c : layer)
            if (pick-- == 0) return &c;
    return nullptr;
}

// Up to three objects and four arrows. Gluing arrows go out of a
// representable connector, so merges genuinely happen; extra arrows come
// from the greedy sampler when it finds one.
Diagram seeded_diagram(SeededRng& rng, const std::vector<Opetope>& pool, const Bounds& b,
                       long cell_budget = 0) {
    if (cell_budget == 0) cell_budget = b.max_cells;
    Diagram d;
    long cells = 0;
    int nmain = 1 + rng.below(2);
    for (int i = 0; i < nmain; ++i) {
        const Opetope& o = pool[rng.below(static_cast<int>(pool.size()))];
        OpetopicSet X = osets::realize(o);
        if (cells + X.total_cells() > cell_budget && !d.objects.empty()) break;
        cells += X.total_cells();
        d.objects.push_back(std::move(X));
    }

    int style = rng.below(3); // 0: coproduct, 1: pushout-style, 2: coequalizer-style
    if (style > 0 && static_cast<int>(d.objects.size()) < b.max_diagram_objects) {
        int j1 = rng.below(static_cast<int>(d.objects.size()));
        if (const Cell* c1 = random_cell(rng, d.objects[j1])) {
            Opetope x = c1->shape;
            OpetopicSet connector = osets::realize(x);
            if (cells + connector.total_cells() <= cell_budget) {
                int ci = static_cast<int>(d.objects.size());
                cells += connector.total_cells();
                d.objects.push_back(connector);
                d.arrows.push_back(
                    {ci, j1, osets::morphism_from_cell(x, d.objects[j1], *c1)});
                // second leg: another cell of the same shape, anywhere
                int j2 = style == 2 ? j1 : rng.below(static_cast<int>(d.objects.size()) - 1);
                auto cand = osets::cells_of_shape(x, d.objects[j2]);
                if (!cand.empty()) {
                    const Cell& c2 = cand[rng.below(static_cast<int>(cand.size()))];
                    d.arrows.push_back(
                        {ci, j2, osets::morphism_from_cell(x, d.objects[j2], c2)});
                }
            }
        }
    }

    int extra = rng.below(3);
    for (int a = 0; a < extra && static_cast<int>(d.arrows.size()) < 4; ++a) {
        int src = rng.below(static_cast<int>(d.objects.size()));
        int dst = rng.below(static_cast<int>(d.objects.size()));
        auto f = random_morphism(rng, d.objects[src], d.objects[dst]);
        if (!f) continue;
        d.arrows.push_back({src, dst, std::move(*f)});
    }
    return d;
}

OpetopicSet renamed_copy(const OpetopicSet& X, OSetMorphism& renaming) {
    OpetopicSet Y;
    renaming.map.assign(X.cells.size(), {});
    for (int d = 0; d < static_cast<int>(X.cells.size()); ++d)
        for (const Cell& c : X.cells[d]) renaming.map[d][c.id] = "r." + c.id;
    for (int d = 0; d < static_cast<int>(X.cells.size()); ++d)
        for (const Cell& c : X.cells[d]) {
            Cell y;
            y.id = "r." + c.id;
            y.shape = c.shape;
            for (const auto& [addr, bid] : c.boundary) y.boundary[addr] = "r." + bid;
            Y.add(std::move(y));
        }
    Y.sort_cells();
    return Y;
}

std::vector<Opetope> shapes_in(const OpetopicSet& X, const OpetopicSet& Y) {
    std::map<std::string, Opetope> by_code;
    for (const OpetopicSet* s : {&X, &Y})
        for (const auto& layer : s->cells)
            for (const Cell& c : layer) by_code.emplace(c.shape.code(), c.shape);
    std::vector<Opetope> out;
    for (auto& [k, v] : by_code) out.push_back(v);
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Presheaf evidence

std::vector<CheckReport> run_presheaf_evidence(const Bounds& b, ColimitMutation mutate) {
    std::vector<CheckReport> out;
    std::vector<Opetope> pool = realization_pool(b);

    // every produced colimit satisfies the universal property
    {
        Timer tm;
        CheckReport r{"presheaf/cocomplete", std::to_string(b.seeded_diagrams) + " seeded diagrams",
                      true, "", 0};
        SeededRng rng(b.seed);
        long arrows = 0, cells = 0, merged = 0;
        for (int i = 0; i < b.seeded_diagrams && r.pass; ++i) {
            Diagram d = seeded_diagram(rng, pool, b);
            ColimitResult res = mutated_colimit(d, mutate);
            arrows += static_cast<long>(d.arrows.size());
            cells += res.colimit.total_cells();
            long disjoint = 0;
            for (const auto& obj : d.objects) disjoint += obj.total_cells();
            merged += disjoint - res.colimit.total_cells();
            if (!osets::is_colimit(res.colimit, res.coprojections, d)) {
                r.pass = false;
                r.witness = "diagram " + std::to_string(i) + " failed the universal property";
            }
        }
        if (r.pass)
            r.witness = std::to_string(arrows) + " arrows, " + std::to_string(cells) +
                        " colimit cells, " + std::to_string(merged) + " cells glued away";
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    // realization is full and faithful
    {
        Timer tm;
        CheckReport r{"presheaf/full-faithful", "all pool pairs", true, "", 0};
        for (const Opetope& a : pool) {
            for (const Opetope& bb : pool) {
                OpetopicSet ra = osets::realize(a), rb = osets::realize(bb);
                auto homs = osets::hom_oset(ra, rb, 200000);
                auto classes = category::hom(a, bb);
                if (homs.size() != classes.size()) {
                    r.pass = false;
                    r.witness = "hom(" + a.code() + ", " + bb.code() + "): " +
                                std::to_string(homs.size()) + " morphisms vs " +
                                std::to_string(classes.size()) + " classes";
                    break;
                }
                // the bijection: each class induces a distinct morphism
                std::set<std::vector<std::map<CellId, CellId>>> induced;
                for (const auto& h : classes)
                    induced.insert(osets::realize_morphism(a, bb, h.address).map);
                if (induced.size() != homs.size()) {
                    r.pass = false;
                    r.witness = "induced morphisms collide for " + a.code() + " -> " + bb.code();
                    break;
                }
            }
            if (!r.pass) break;
        }
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    // cells of shape alpha in a colimit form the set-colimit
    {
        Timer tm;
        CheckReport r{"presheaf/projectivity", std::to_string(b.seeded_diagrams) + " seeded diagrams",
                      true, "", 0};
        SeededRng rng(b.seed + 1);
        for (int i = 0; i < b.seeded_diagrams && r.pass; ++i) {
            Diagram d = seeded_diagram(rng, pool, b);
            ColimitResult res = mutated_colimit(d, mutate);
            for (const Opetope& alpha : pool) {
                // set-colimit of cells_of_shape(alpha, D(-))
                std::vector<std::pair<int, CellId>> elems;
                std::map<std::pair<int, CellId>, int> index;
                for (size_t oi = 0; oi < d.objects.size(); ++oi)
                    for (const Cell& c : osets::cells_of_shape(alpha, d.objects[oi])) {
                        index[{static_cast<int>(oi), c.id}] = static_cast<int>(elems.size());
                        elems.emplace_back(static_cast<int>(oi), c.id);
                    }
                UnionFind uf(static_cast<int>(elems.size()));
                for (const auto& ar : d.arrows)
                    for (const Cell& c : osets::cells_of_shape(alpha, d.objects[ar.src]))
                        uf.unite(index.at({ar.src, c.id}),
                                 index.at({ar.dst, ar.map.apply(alpha.dim(), c.id)}));
                // the canonical map into cells_of_shape(alpha, Z)
                std::map<int, CellId> image;
                bool well_defined = true;
                for (size_t e = 0; e < elems.size(); ++e) {
                    CellId im =
                        res.coprojections[elems[e].first].apply(alpha.dim(), elems[e].second);
                    auto [it, fresh] = image.emplace(uf.find(static_cast<int>(e)), im);
                    if (!fresh && it->second != im) well_defined = false;
                }
                std::set<CellId> hit;
                for (auto& [root, im] : image) hit.insert(im);
                auto z_cells = osets::cells_of_shape(alpha, res.colimit);
                bool bijective = well_defined && hit.size() == image.size() &&
                                 image.size() == z_cells.size();
                if (!bijective) {
                    r.pass = false;
                    r.witness = "diagram " + std::to_string(i) + ", shape " + alpha.code();
                    break;
                }
            }
        }
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    // invertibility is detected by shape restrictions
    {
        Timer tm;
        CheckReport r{"presheaf/strong-generation",
                      std::to_string(b.seeded_morphisms) + " seeded morphisms", true, "", 0};
        SeededRng rng(b.seed + 2);
        int tested = 0;
        int guard = 0;
        long isos = 0, nonisos = 0;
        while (tested < b.seeded_morphisms && r.pass && ++guard < 20 * b.seeded_morphisms) {
            Diagram d = seeded_diagram(rng, pool, b, 20);
            ColimitResult res = osets::colimit(d);
            if (res.colimit.total_cells() > 20) continue;
            OpetopicSet X = res.colimit;
            OpetopicSet Y;
            OSetMorphism F;
            switch (rng.below(6)) {
            case 0:
                Y = X;
                F = osets::identity_morphism(X);
                break;
            case 1:
                Y = renamed_copy(X, F);
                break;
            case 2:
            case 3:
            case 4: {
                int oi = rng.below(static_cast<int>(d.objects.size()));
                X = d.objects[oi];
                Y = res.colimit;
                F = res.coprojections[oi];
                break;
            }
            default: {
                auto f = random_morphism(rng, X, res.colimit);
                if (!f) continue;
                Y = res.colimit;
                F = std::move(*f);
                break;
            }
            }
            ++tested;
            bool iso = osets::is_iso_morphism(X, Y, F);
            bool all_bijective = true;
            for (const Opetope& alpha : shapes_in(X, Y)) {
                auto xs = osets::cells_of_shape(alpha, X);
                auto ys = osets::cells_of_shape(alpha, Y);
                std::set<CellId> images;
                for (const Cell& c : xs) images.insert(F.apply(alpha.dim(), c.id));
                if (images.size() != xs.size() || xs.size() != ys.size()) {
                    all_bijective = false;
                    break;
                }
            }
            if (iso != all_bijective) {
                r.pass = false;
                r.witness = "morphism " + std::to_string(tested) + ": iso=" +
                            (iso ? "yes" : "no") + " but restrictions " +
                            (all_bijective ? "all bijective" : "not all bijective");
            }
            if (iso) ++isos; else ++nonisos;
        }
        if (r.pass)
            r.witness = std::to_string(isos) + " isomorphisms, " + std::to_string(nonisos) +
                        " proper morphisms, all agreeing with their restrictions";
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    // representables probe sets: morphisms from a realization are its cells
    {
        Timer tm;
        CheckReport r{"presheaf/yoneda", "seeded sets against the pool", true, "", 0};
        SeededRng rng(b.seed + 3);
        for (int i = 0; i < 10 && r.pass; ++i) {
            Diagram d = seeded_diagram(rng, pool, b);
            OpetopicSet X = mutated_colimit(d, mutate).colimit;
            if (X.total_cells() > 40) continue;
            for (const Opetope& alpha : pool) {
                try {
                    auto homs = osets::hom_oset(osets::realize(alpha), X, 2000000);
                    auto cells = osets::cells_of_shape(alpha, X);
                    if (homs.size() != cells.size()) {
                        r.pass = false;
                        r.witness = "shape " + alpha.code() + " on seeded set " + std::to_string(i);
                        break;
                    }
                } catch (const BoundExceeded&) {
                    r.pass = false;
                    r.witness = "hom enumeration guard tripped on shape " + alpha.code();
                    break;
                }
            }
        }
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    // the three built-in mutants must each break the universal property
    {
        Timer tm;
        CheckReport r{"presheaf/mutants", "skip-merge, extra-cell, wrong-frame", true, "", 0};
        Diagram d;
        d.objects = {osets::realize(Opetope::point()), osets::realize(Opetope::arrow()),
                     osets::realize(Opetope::arrow())};
        d.arrows.push_back(
            {0, 1, osets::realize_morphism(Opetope::point(), Opetope::arrow(), {0, 1})});
        d.arrows.push_back(
            {0, 2, osets::realize_morphism(Opetope::point(), Opetope::arrow(), {0, 0})});
        for (ColimitMutation m : {ColimitMutation::skip_merge, ColimitMutation::extra_cell,
                                  ColimitMutation::wrong_frame}) {
            ColimitResult res = mutated_colimit(d, m);
            if (osets::is_colimit(res.colimit, res.coprojections, d)) {
                r.pass = false;
                r.witness = "mutant " + std::to_string(static_cast<int>(m)) + " went undetected";
            }
        }
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    return out;
}

// ---------------------------------------------------------------------------
// The full suite

namespace {

std::vector<trees::NodeProfile> profiles_with_ports(int ports) {
    std::vector<trees::NodeProfile> out;
    auto rec = [&](auto&& self, std::vector<int>& cur, int sum) -> void {
        trees::NodeProfile p{cur};
        if (sum - static_cast<int>(cur.size()) + 1 >= 0) out.push_back(p);
        if (static_cast<int>(cur.size()) >= ports) return;
        for (int m = 0; sum + m + 1 <= ports; ++m) {
            cur.push_back(m);
            self(self, cur, sum + m);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    rec(rec, cur, 0);
    return out;
}

void for_each_bijection(const trees::NodeProfile& prof,
                        const std::function<void(const Wiring&)>& fn) {
    std::vector<Port> dom, cod;
    for (int i = 0; i < prof.node_count(); ++i)
        for (int b = 0; b < prof.arities[i]; ++b) dom.push_back(Port::node_input(i, b));
    dom.push_back(Port::formal_output());
    for (int i = 0; i < prof.node_count(); ++i) cod.push_back(Port::node_output(i));
    for (int j = 0; j < prof.leaf_count(); ++j) cod.push_back(Port::formal_input(j));
    std::vector<int> perm(dom.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<std::pair<Port, Port>> pairs;
        pairs.reserve(dom.size());
        for (size_t i = 0; i < dom.size(); ++i) pairs.emplace_back(dom[i], cod[perm[i]]);
        fn(Wiring::from_pairs(prof, std::move(pairs)));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

} // namespace

std::vector<CheckReport> run_checks(const Bounds& b, const std::string& only,
                                    ColimitMutation mutate) {
    std::vector<CheckReport> out;
    auto want = [&](const std::string& name) { return only.empty() || name.rfind(only, 0) == 0; };

    if (want("trees/correspondence")) {
        Timer tm;
        CheckReport r{"trees/correspondence",
                      "all bijections over profiles with <= " + std::to_string(b.tree_ports) +
                          " ports",
                      true, "", 0};
        long total = 0, treecount = 0;
        for (const trees::NodeProfile& prof : profiles_with_ports(b.tree_ports)) {
            if (!r.pass) break;
            for_each_bijection(prof, [&](const Wiring& w) {
                if (!r.pass) return;
                ++total;
                bool fast = trees::is_tree(w);
                if (fast != oracle_acyclic(w)) {
                    r.pass = false;
                    r.witness = "loop check disagreement on a wiring with " +
                                std::to_string(w.domain_size()) + " ports";
                    return;
                }
                if (fast) {
                    ++treecount;
                    if (!(trees::encode(trees::decode(w), w.profile()) == w)) {
                        r.pass = false;
                        r.witness = "encode(decode(w)) differs from w";
                    }
                }
            });
        }
        if (r.pass)
            r.witness = std::to_string(total) + " bijections, " + std::to_string(treecount) +
                        " trees, all agreeing";
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    if (want("trees/leaf-formula")) {
        Timer tm;
        CheckReport r{"trees/leaf-formula", "all decoded trees within the port bound", true, "", 0};
        for (const trees::NodeProfile& prof : profiles_with_ports(b.tree_ports)) {
            if (!r.pass) break;
            for (const Wiring& w : trees::enumerate_wirings(prof, b.tree_ports)) {
                trees::CombedTree t = trees::decode(w);
                int leaf_slots = 0;
                for (const auto& n : t.nodes)
                    for (const auto& s : n.slots)
                        if (s.leaf) ++leaf_slots;
                if (t.node_count() == 0) leaf_slots = 1;
                if (t.leaf_count() != prof.leaf_count() || leaf_slots != prof.leaf_count()) {
                    r.pass = false;
                    r.witness = "decoded leaf count disagrees with the formula";
                    break;
                }
            }
        }
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    std::vector<Opetope> rewrite_pool;
    if (want("rewriting/termination") || want("rewriting/words-equal")) {
        for (int d = 1; d <= std::min(3, b.max_dim); ++d)
            for (const Opetope& o : enumerate_opetopes(d, b.max_nodes, b.max_arity))
                rewrite_pool.push_back(o);
    }

    if (want("rewriting/termination")) {
        Timer tm;
        CheckReport r{"rewriting/termination",
                      "one-gap words with j+m <= " + std::to_string(b.one_gap_steps), true, "", 0};
        long words = 0;
        for (const Opetope& alpha : rewrite_pool) {
            if (!r.pass) break;
            for (const category::Generator& g : category::generators_of(alpha)) {
                if (!r.pass) break;
                category::Generator idd = category::identity_iso(g.dom);
                category::Generator idc = category::identity_iso(alpha);
                for (int m = 0; m + 0 <= b.one_gap_steps && r.pass; ++m)
                    for (int j = 0; m + j <= b.one_gap_steps && r.pass; ++j) {
                        category::MorphismWord w;
                        for (int i = 0; i < m; ++i) w.push_back(idd);
                        w.push_back(g);
                        for (int i = 0; i < j; ++i) w.push_back(idc);
                        ++words;
                        ReductionFan fan = oracle_normalize(w);
                        if (fan.normal_forms.size() != 1 ||
                            !(fan.normal_forms[0] == category::MorphismWord{g}) ||
                            fan.longest_path > 2 * j + m ||
                            !(category::normalize(w) == fan.normal_forms[0])) {
                            r.pass = false;
                            r.witness = "j=" + std::to_string(j) + " m=" + std::to_string(m) +
                                        " over " + alpha.code();
                        }
                    }
            }
        }
        if (r.pass) r.witness = std::to_string(words) + " words, unique normal forms in bound";
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    if (want("rewriting/words-equal")) {
        Timer tm;
        CheckReport r{"rewriting/words-equal",
                      "all parallel generator chains, length <= " + std::to_string(b.pair_word_len),
                      true, "", 0};
        long pairs = 0;
        for (const Opetope& alpha : rewrite_pool) {
            if (!r.pass) break;
            if (alpha.dim() > b.pair_word_len) continue;
            WordPartition part = oracle_face_quotient(alpha);
            // regenerate the chains to compare pairwise
            std::vector<category::MorphismWord> chains;
            auto rec = [&](auto&& self, const Opetope& at, category::MorphismWord acc) -> void {
                if (!acc.empty()) chains.push_back(acc);
                for (const category::Generator& g : category::generators_of(at)) {
                    category::MorphismWord w = acc;
                    w.insert(w.begin(), g);
                    self(self, g.dom, w);
                }
            };
            rec(rec, alpha, {});
            for (const auto& w1 : chains) {
                if (!r.pass) break;
                for (const auto& w2 : chains) {
                    if (!(w1.front().dom == w2.front().dom)) continue;
                    ++pairs;
                    bool fast = category::words_equal(w1, w2);
                    bool oracle = part.block_of.at(category::word_key(w1)) ==
                                  part.block_of.at(category::word_key(w2));
                    if (fast != oracle) {
                        r.pass = false;
                        r.witness = category::word_key(w1) + " vs " + category::word_key(w2);
                        break;
                    }
                }
            }
            if (!r.pass) break;
            // identity insertions exhaust the remaining composable words up
            // to the length bound; each must stay in its chain's class
            for (const auto& w : chains) {
                auto pad = [&](auto&& self, const category::MorphismWord& v) -> bool {
                    if (static_cast<int>(v.size()) >= b.pair_word_len) return true;
                    for (size_t pos = 0; pos <= v.size(); ++pos) {
                        category::MorphismWord padded = v;
                        const Opetope& obj = pos < v.size() ? v[pos].dom : v.back().cod;
                        padded.insert(padded.begin() + pos, category::identity_iso(obj));
                        ++pairs;
                        if (!category::words_equal(padded, w)) return false;
                        if (!self(self, padded)) return false;
                    }
                    return true;
                };
                if (!pad(pad, w)) {
                    r.pass = false;
                    r.witness = "identity padding changed " + category::word_key(w);
                    break;
                }
            }
        }
        if (r.pass) r.witness = std::to_string(pairs) + " parallel pairs agree with the oracle";
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    if (want("faces/distinctness")) {
        Timer tm;
        CheckReport r{"faces/distinctness",
                      "dims <= 3 at (4,3); dim 4 at (2,3) and (4,2)", true, "", 0};
        long seen = 0;
        auto sweep = [&](int dim, int nodes, int arity) {
            for (const Opetope& o : enumerate_opetopes(dim, nodes, arity)) {
                if (!r.pass) return;
                ++seen;
                const auto counts = category::face_table(o).counts();
                if (counts[dim - 1] != o.source_arity() + 1) {
                    r.pass = false;
                    r.witness = o.code() + " has " + std::to_string(counts[dim - 1]) +
                                " codimension-1 classes for " + std::to_string(o.source_arity()) +
                                " nodes";
                }
            }
        };
        for (int d = 1; d <= 3 && r.pass; ++d) sweep(d, 4, 3);
        if (r.pass) sweep(4, 2, 3);
        if (r.pass) sweep(4, 4, 2);
        if (r.pass) r.witness = std::to_string(seen) + " opetopes, all with node count + 1";
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    if (want("faces/vector")) {
        Timer tm;
        CheckReport r{"faces/vector", "two-binary-node 3-opetope", true, "", 0};
        Opetope theta = parse_code("(3;[(2;[a:[a:*]]):[(2;[a:[a:*]]):*,*],*])");
        WordPartition part = oracle_face_quotient(theta);
        std::vector<int> oracle_counts;
        for (int d = 0; d <= 3; ++d)
            oracle_counts.push_back(static_cast<int>(part.blocks[d].size()));
        std::vector<int> table_counts = category::face_table(theta).counts();
        std::vector<int> expected{4, 5, 3, 1};
        if (oracle_counts != expected || table_counts != expected) {
            r.pass = false;
            r.witness = "expected (1,3,5,4) across dims (3,2,1,0)";
        } else {
            r.witness = "(1,3,5,4) from both the oracle and the table";
        }
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    if (want("faces/quotient-oracle")) {
        Timer tm;
        CheckReport r{"faces/quotient-oracle", "pool opetopes vs congruence closure", true, "", 0};
        for (int d = 1; d <= std::min(3, b.max_dim) && r.pass; ++d)
            for (const Opetope& o : enumerate_opetopes(d, b.max_nodes, b.max_arity)) {
                WordPartition part = oracle_face_quotient(o);
                auto counts = category::face_table(o).counts();
                for (int m = 0; m <= o.dim(); ++m)
                    if (static_cast<int>(part.blocks[m].size()) != counts[m]) {
                        r.pass = false;
                        r.witness = o.code() + " at dimension " + std::to_string(m);
                        break;
                    }
                if (!r.pass) break;
            }
        r.elapsed_ms = tm.ms();
        out.push_back(std::move(r));
    }

    const bool any_presheaf =
        only.empty() || only.rfind("presheaf", 0) == 0 || std::string("presheaf").rfind(only, 0) == 0;
    if (any_presheaf)
        for (CheckReport& r : run_presheaf_evidence(b, mutate))
            if (want(r.check)) out.push_back(std::move(r));

    return out;
}

std::string report_json_line(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["instance"] = r.instance;
    j["pass"] = r.pass;
    j["witness"] = r.witness;
    return j.dump();
}

} // namespace opetopic::verify
