#include "opetopic/opetope.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace opetopic {

using trees::Port;
using trees::Wiring;

// ---------------------------------------------------------------------------
// Matching

Matching Matching::identity_for(const Opetope& o) {
    Matching m;
    if (o.has_body()) {
        const int n = static_cast<int>(o.node_labels().size());
        m.node_perm.resize(n);
        std::iota(m.node_perm.begin(), m.node_perm.end(), 0);
        for (const Opetope& lab : o.node_labels()) m.labels.push_back(identity_for(lab));
        const int l = o.wiring().profile().leaf_count();
        m.leaf_perm.resize(l);
        std::iota(m.leaf_perm.begin(), m.leaf_perm.end(), 0);
    }
    return m;
}

Matching Matching::inverse() const {
    Matching r;
    r.node_perm.resize(node_perm.size());
    r.labels.resize(labels.size());
    for (size_t i = 0; i < node_perm.size(); ++i) {
        r.node_perm[node_perm[i]] = static_cast<int>(i);
        r.labels[node_perm[i]] = labels[i].inverse();
    }
    r.leaf_perm.resize(leaf_perm.size());
    for (size_t p = 0; p < leaf_perm.size(); ++p) r.leaf_perm[leaf_perm[p]] = static_cast<int>(p);
    return r;
}

Matching Matching::then(const Matching& m) const {
    if (node_perm.size() != m.node_perm.size() || leaf_perm.size() != m.leaf_perm.size())
        throw InvalidInput("matchings are not composable");
    Matching r;
    r.node_perm.resize(node_perm.size());
    r.labels.resize(labels.size());
    for (size_t i = 0; i < node_perm.size(); ++i) {
        r.node_perm[i] = m.node_perm[node_perm[i]];
        r.labels[i] = labels[i].then(m.labels[node_perm[i]]);
    }
    r.leaf_perm.resize(leaf_perm.size());
    for (size_t p = 0; p < leaf_perm.size(); ++p) r.leaf_perm[p] = m.leaf_perm[leaf_perm[p]];
    return r;
}

bool Matching::is_identity() const {
    for (size_t i = 0; i < node_perm.size(); ++i)
        if (node_perm[i] != static_cast<int>(i)) return false;
    for (size_t p = 0; p < leaf_perm.size(); ++p)
        if (leaf_perm[p] != static_cast<int>(p)) return false;
    for (const Matching& m : labels)
        if (!m.is_identity()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Atoms

Opetope atom(int dim) {
    Opetope o;
    o.dim_ = dim;
    o.code_ = dim == 0 ? "p" : "a";
    return o;
}

const Opetope& Opetope::point() {
    static const Opetope p = atom(0);
    return p;
}

const Opetope& Opetope::arrow() {
    static const Opetope a = atom(1);
    return a;
}

bool Opetope::is_null_tree() const { return body_ && body_->nodes.empty(); }

const Wiring& Opetope::wiring() const {
    if (!body_) throw InvalidInput("atomic opetope has no pasting tree");
    return body_->wiring;
}

const std::vector<Opetope>& Opetope::node_labels() const {
    if (!body_) throw InvalidInput("atomic opetope has no pasting tree");
    return body_->nodes;
}

const std::vector<Opetope>& Opetope::edge_labels() const {
    if (!body_) throw InvalidInput("atomic opetope has no pasting tree");
    return body_->edges;
}

int Opetope::source_arity() const {
    if (dim_ == 0) return 0;
    if (dim_ == 1) return 1;
    return static_cast<int>(body_->nodes.size());
}

// ---------------------------------------------------------------------------
// Flat arena trees: the working representation for canonicalization and
// composite (target) computation.

namespace {

struct Flat {
    struct Node {
        Opetope label;
        int tag = -1; // surviving-node marker used by grafting
        std::vector<std::pair<bool, int>> slots; // (is_leaf, leaf_tag or child index)
    };
    std::vector<Node> nodes; // arena; replaced nodes are left orphaned
    int root = -1;           // -1: null tree
    Opetope null_edge;       // when root == -1
    int null_leaf_tag = -1;  // when root == -1
};

Flat flat_of_body(const Wiring& w, const std::vector<Opetope>& labels) {
    Flat f;
    const int k = w.profile().node_count();
    if (k == 0) {
        Port img = w.image(Port::formal_output());
        f.null_leaf_tag = img.slot;
        return f; // null_edge filled by caller when needed
    }
    f.nodes.resize(k);
    for (int i = 0; i < k; ++i) {
        f.nodes[i].label = labels[i];
        f.nodes[i].slots.resize(w.profile().arities[i]);
        for (int b = 0; b < w.profile().arities[i]; ++b) {
            Port img = w.image(Port::node_input(i, b));
            if (img.kind == Port::Kind::formal_input)
                f.nodes[i].slots[b] = {true, img.slot};
            else
                f.nodes[i].slots[b] = {false, img.node};
        }
    }
    f.root = w.image(Port::formal_output()).node;
    return f;
}

Flat flat_of(const Opetope& o) {
    Flat f = flat_of_body(o.wiring(), o.node_labels());
    if (f.root < 0) f.null_edge = o.edge_labels().at(0);
    return f;
}

// Redirects whatever points at node b (a parent slot or the root) to
// `content`; used when node b is removed.
void redirect(Flat& f, int b, std::pair<bool, int> content) {
    if (f.root == b) {
        if (content.first) {
            // the tree collapsed to a bare edge
            f.root = -1;
            f.null_leaf_tag = content.second;
        } else {
            f.root = content.second;
        }
        return;
    }
    for (auto& n : f.nodes)
        for (auto& s : n.slots)
            if (!s.first && s.second == b) {
                s = content;
                return;
            }
    throw InvalidInput("internal: dangling node in pasting tree");
}

// Substitutes the composite tree `s` for node b of `base`. The slots of
// node b reattach at the leaves of `s`, matched by leaf tag.
void replace_node(Flat& base, int b, Flat&& s) {
    auto slots = base.nodes[b].slots;
    base.nodes[b].slots.clear(); // orphaned; stale child links must not linger
    if (s.root < 0) {
        // unit composite: splice the single slot content through
        if (slots.size() != 1) throw InvalidInput("internal: unit substitution into non-unary node");
        Opetope edge = s.null_edge;
        redirect(base, b, slots[0]);
        if (base.root < 0) base.null_edge = edge;
        return;
    }
    const int offset = static_cast<int>(base.nodes.size());
    for (auto& n : s.nodes) {
        for (auto& sl : n.slots)
            if (!sl.first) sl.second += offset;
        base.nodes.push_back(std::move(n));
    }
    // reattach node b's contents at the leaves of s
    for (int a = 0; a < static_cast<int>(slots.size()); ++a) {
        bool found = false;
        for (int i = offset; i < static_cast<int>(base.nodes.size()) && !found; ++i)
            for (auto& sl : base.nodes[i].slots)
                if (sl.first && sl.second == a) {
                    sl = slots[a];
                    found = true;
                    break;
                }
        if (!found) throw InvalidInput("internal: composite leaf not found during substitution");
    }
    redirect(base, b, {false, s.root + offset});
}

// Reachable part of a Flat in depth-first preorder, as a pasting diagram.
// Leaf tags become the formal input indices. Also reports each new node's
// tag, in the new numbering.
struct FlatPd {
    PastingDiagram pd;
    std::vector<int> tags;
};

FlatPd flat_to_pd(const Flat& f) {
    FlatPd out;
    if (f.root < 0) {
        trees::NodeProfile prof{};
        out.pd.wiring = Wiring::from_pairs(
            prof, {{Port::formal_output(), Port::formal_input(0)}});
        out.pd.edges = {f.null_edge};
        return out;
    }
    std::vector<int> order;
    std::map<int, int> newidx;
    auto walk = [&](auto&& self, int i) -> void {
        newidx[i] = static_cast<int>(order.size());
        order.push_back(i);
        for (const auto& s : f.nodes[i].slots)
            if (!s.first) self(self, s.second);
    };
    walk(walk, f.root);

    trees::NodeProfile prof;
    for (int i : order) prof.arities.push_back(static_cast<int>(f.nodes[i].slots.size()));
    std::vector<std::pair<Port, Port>> pairs;
    for (size_t ni = 0; ni < order.size(); ++ni) {
        const auto& n = f.nodes[order[ni]];
        for (int b = 0; b < static_cast<int>(n.slots.size()); ++b) {
            if (n.slots[b].first)
                pairs.emplace_back(Port::node_input(static_cast<int>(ni), b),
                                   Port::formal_input(n.slots[b].second));
            else
                pairs.emplace_back(Port::node_input(static_cast<int>(ni), b),
                                   Port::node_output(newidx.at(n.slots[b].second)));
        }
        out.pd.nodes.push_back(n.label);
        out.tags.push_back(n.tag);
    }
    pairs.emplace_back(Port::formal_output(), Port::node_output(0));
    out.pd.wiring = Wiring::from_pairs(std::move(prof), std::move(pairs));
    return out;
}

// Composite of the pasting tree of a presentation (dim >= 3): a flat tree
// over (dim-2)-opetopes whose surviving nodes are tagged with the formal
// input index of the leaf they came from.
Flat composite_of(const PastingDiagram& pd) {
    auto graft = [&](auto&& self, int j) -> Flat {
        Flat base = flat_of(pd.nodes[j]);
        const int arity = pd.nodes[j].source_arity();
        for (int b = 0; b < arity; ++b) {
            Port img = pd.wiring.image(Port::node_input(j, b));
            if (img.kind == Port::Kind::formal_input)
                base.nodes[b].tag = img.slot;
            else
                replace_node(base, b, self(self, img.node));
        }
        return base;
    };
    int root = pd.wiring.image(Port::formal_output()).node;
    return graft(graft, root);
}

std::string serialize(const PastingDiagram& pd, int dim);

struct TargetInfo {
    Opetope target;
    std::vector<int> leaf_to_source;
};

// Target and leaf alignment of a validated presentation. The presentation
// may still carry arbitrary node numbering and leaf indexing.
TargetInfo presented_target(int dim, const PastingDiagram& pd) {
    const int l = pd.wiring.profile().leaf_count();
    if (pd.wiring.profile().node_count() == 0) {
        Opetope t = unit_on(pd.edges.at(0));
        std::vector<int> map(l);
        std::iota(map.begin(), map.end(), 0);
        return {t, map};
    }
    if (dim == 2) return {Opetope::arrow(), {0}};
    Flat comp = composite_of(pd);
    FlatPd fp = flat_to_pd(comp);
    if (fp.pd.wiring.profile().node_count() == 0) {
        if (l != 0) throw InvalidInput("internal: empty composite of a tree with leaves");
        return {make_opetope(dim - 1, fp.pd), {}};
    }
    auto [t, m] = make_opetope_with_witness(dim - 1, fp.pd);
    std::vector<int> map(l, -1);
    for (size_t ni = 0; ni < fp.tags.size(); ++ni) {
        if (fp.tags[ni] < 0 || fp.tags[ni] >= l)
            throw InvalidInput("internal: composite node lost its leaf tag");
        map[fp.tags[ni]] = m.node_perm[ni];
    }
    for (int v : map)
        if (v < 0) throw InvalidInput("internal: leaf unmatched by composite");
    return {t, map};
}

std::string serialize(const PastingDiagram& pd, int dim) {
    std::ostringstream os;
    os << "(" << dim << ";";
    if (pd.wiring.profile().node_count() == 0) {
        os << "!" << pd.edges.at(0).code();
    } else {
        auto emit = [&](auto&& self, int i) -> void {
            os << "[" << pd.nodes[i].code() << ":";
            const int m = pd.wiring.profile().arities[i];
            for (int b = 0; b < m; ++b) {
                if (b) os << ",";
                Port img = pd.wiring.image(Port::node_input(i, b));
                if (img.kind == Port::Kind::formal_input)
                    os << "*";
                else
                    self(self, img.node);
            }
            os << "]";
        };
        emit(emit, pd.wiring.image(Port::formal_output()).node);
    }
    os << ")";
    return os.str();
}

std::mutex& target_cache_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::string, TargetInfo>& target_cache() {
    static std::map<std::string, TargetInfo> c;
    return c;
}

} // namespace

// ---------------------------------------------------------------------------
// Construction

Opetope make_opetope(int dim) {
    if (dim != 0 && dim != 1) throw InvalidInput("only dimensions 0 and 1 are atomic");
    return dim == 0 ? Opetope::point() : Opetope::arrow();
}

std::pair<Opetope, Matching> make_opetope_with_witness(int dim, const PastingDiagram& pd) {
    if (dim < 2) throw InvalidInput("a pasting diagram needs dimension at least 2");
    const auto& prof = pd.wiring.profile();
    const int k = prof.node_count();

    if (static_cast<int>(pd.nodes.size()) != k)
        throw InvalidInput("invalid pasting: need one node label per tree node");
    for (int i = 0; i < k; ++i) {
        if (pd.nodes[i].dim() != dim - 1)
            throw InvalidInput("invalid pasting: node label has wrong dimension");
        if (pd.nodes[i].source_arity() != prof.arities[i])
            throw InvalidInput("invalid pasting: node arity disagrees with its label");
    }
    if (!trees::is_tree(pd.wiring)) throw InvalidInput("not a tree");
    if (k == 0 && pd.edges.empty())
        throw InvalidInput("invalid pasting: a null tree needs its edge label");

    // Expected edge labels, in domain-port order.
    std::vector<Opetope> expected;
    std::vector<Opetope> node_targets(k);
    for (int i = 0; i < k; ++i) node_targets[i] = target(pd.nodes[i]);
    for (const auto& [y, ay] : pd.wiring.map()) {
        if (y.kind == Port::Kind::node_input) {
            Opetope src = dim - 1 == 1 ? Opetope::point() : pd.nodes[y.node].node_labels().at(y.slot);
            if (ay.kind == Port::Kind::node_output) {
                if (!(node_targets[ay.node] == src))
                    throw InvalidInput("invalid pasting: faces disagree along an internal edge");
            }
            expected.push_back(src);
        } else { // formal output
            if (ay.kind == Port::Kind::node_output)
                expected.push_back(node_targets[ay.node]);
            else
                expected.push_back(pd.edges.at(0)); // null tree: the label is free data
        }
    }
    if (!pd.edges.empty()) {
        if (pd.edges.size() != expected.size())
            throw InvalidInput("invalid pasting: need one edge label per wiring domain port");
        for (size_t e = 0; e < expected.size(); ++e) {
            if (pd.edges[e].dim() != dim - 2)
                throw InvalidInput("invalid pasting: edge label has wrong dimension");
            if (!(pd.edges[e] == expected[e]))
                throw InvalidInput("invalid pasting: edge label disagrees with incident faces");
        }
    }

    // Canonical node order: depth-first preorder from the root.
    std::vector<int> perm(k, -1); // presented index -> canonical position
    std::vector<int> order;       // canonical position -> presented index
    if (k > 0) {
        auto walk = [&](auto&& self, int i) -> void {
            perm[i] = static_cast<int>(order.size());
            order.push_back(i);
            for (int b = 0; b < prof.arities[i]; ++b) {
                Port img = pd.wiring.image(Port::node_input(i, b));
                if (img.kind == Port::Kind::node_output) self(self, img.node);
            }
        };
        walk(walk, pd.wiring.image(Port::formal_output()).node);
    }

    // Canonical leaf order: formal input p goes to the position of its
    // node in the canonically numbered target.
    PastingDiagram derived{pd.wiring, pd.nodes, expected};
    TargetInfo ti = presented_target(dim, derived);

    PastingDiagram canon;
    trees::NodeProfile cprof;
    for (int i : order) cprof.arities.push_back(prof.arities[i]);
    std::vector<std::pair<Port, Port>> pairs;
    if (k == 0) {
        pairs.emplace_back(Port::formal_output(), Port::formal_input(0));
    } else {
        for (int pos = 0; pos < k; ++pos) {
            int i = order[pos];
            for (int b = 0; b < prof.arities[i]; ++b) {
                Port img = pd.wiring.image(Port::node_input(i, b));
                Port to = img.kind == Port::Kind::formal_input
                              ? Port::formal_input(ti.leaf_to_source[img.slot])
                              : Port::node_output(perm[img.node]);
                pairs.emplace_back(Port::node_input(pos, b), to);
            }
        }
        pairs.emplace_back(Port::formal_output(), Port::node_output(0));
    }
    canon.wiring = Wiring::from_pairs(std::move(cprof), std::move(pairs));
    canon.nodes.resize(k);
    for (int i = 0; i < k; ++i) canon.nodes[perm[i]] = pd.nodes[i];
    for (const auto& [y, ay] : canon.wiring.map()) {
        if (y.kind == Port::Kind::node_input) {
            Opetope src = dim - 1 == 1 ? Opetope::point()
                                       : canon.nodes[y.node].node_labels().at(y.slot);
            canon.edges.push_back(src);
        } else if (ay.kind == Port::Kind::node_output) {
            canon.edges.push_back(node_targets[order[ay.node]]);
        } else {
            canon.edges.push_back(derived.edges.at(0));
        }
    }

    Opetope o;
    o.dim_ = dim;
    o.code_ = serialize(canon, dim);
    o.body_ = std::make_shared<const PastingDiagram>(std::move(canon));

    Matching w;
    w.node_perm = perm;
    for (int i = 0; i < k; ++i) w.labels.push_back(Matching::identity_for(pd.nodes[i]));
    w.leaf_perm = ti.leaf_to_source;
    return {o, w};
}

Opetope make_opetope(int dim, const PastingDiagram& pd) {
    return make_opetope_with_witness(dim, pd).first;
}

Opetope null_opetope(const Opetope& edge) {
    trees::NodeProfile prof{};
    PastingDiagram pd;
    pd.wiring = Wiring::from_pairs(prof, {{Port::formal_output(), Port::formal_input(0)}});
    pd.edges = {edge};
    return make_opetope(edge.dim() + 2, pd);
}

Opetope unit_on(const Opetope& x) {
    if (x.dim() == 0) return Opetope::arrow();
    const int m = x.source_arity();
    trees::NodeProfile prof{{m}};
    std::vector<std::pair<Port, Port>> pairs;
    for (int b = 0; b < m; ++b)
        pairs.emplace_back(Port::node_input(0, b), Port::formal_input(b));
    pairs.emplace_back(Port::formal_output(), Port::node_output(0));
    PastingDiagram pd;
    pd.wiring = Wiring::from_pairs(prof, std::move(pairs));
    pd.nodes = {x};
    return make_opetope(x.dim() + 1, pd);
}

// ---------------------------------------------------------------------------
// Faces

std::vector<Opetope> source_faces(const Opetope& o) {
    if (o.dim() == 0) throw InvalidInput("no source");
    if (o.dim() == 1) return {Opetope::point()};
    return o.node_labels();
}

TargetResult target_with_map(const Opetope& o) {
    if (o.dim() == 0) throw InvalidInput("no target");
    if (o.dim() == 1) return {Opetope::point(), {}};
    {
        std::scoped_lock lk(target_cache_mutex());
        auto it = target_cache().find(o.code());
        if (it != target_cache().end()) return {it->second.target, it->second.leaf_to_source};
    }
    PastingDiagram body{o.wiring(), o.node_labels(), o.edge_labels()};
    TargetInfo ti = presented_target(o.dim(), body);
    std::scoped_lock lk(target_cache_mutex());
    target_cache().emplace(o.code(), ti);
    return {ti.target, ti.leaf_to_source};
}

Opetope target(const Opetope& o) { return target_with_map(o).target; }

// ---------------------------------------------------------------------------

std::optional<Matching> iso_matching(const Opetope& a, const Opetope& b) {
    if (!(a == b)) return std::nullopt;
    return Matching::identity_for(a);
}

bool is_isomorphic(const Opetope& a, const Opetope& b) { return a == b; }

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct Sketch {
    int label = -1;
    std::vector<std::optional<Sketch>> slots;
    int size = 1;
};

void extend(const std::vector<Opetope>& labels,
            const std::map<std::string, std::vector<int>>& by_target,
            const Opetope& face, int budget, std::vector<Sketch>& out);

// All trees rooted at `label` with at most `budget` nodes in total.
std::vector<Sketch> sketches_rooted(const std::vector<Opetope>& labels,
                                    const std::map<std::string, std::vector<int>>& by_target,
                                    int label_idx, int budget) {
    std::vector<Sketch> result;
    if (budget < 1) return result;
    const Opetope& lab = labels[label_idx];
    const auto faces = source_faces(lab);
    // fill slots left to right, sharing the remaining budget
    std::vector<std::vector<std::optional<Sketch>>> partial{{}};
    std::vector<int> used{0};
    for (const Opetope& face : faces) {
        std::vector<std::vector<std::optional<Sketch>>> next;
        std::vector<int> next_used;
        for (size_t p = 0; p < partial.size(); ++p) {
            // leaf
            next.push_back(partial[p]);
            next.back().push_back(std::nullopt);
            next_used.push_back(used[p]);
            // subtree
            std::vector<Sketch> subs;
            extend(labels, by_target, face, budget - 1 - used[p], subs);
            for (auto& s : subs) {
                next.push_back(partial[p]);
                next.back().push_back(s);
                next_used.push_back(used[p] + s.size);
            }
        }
        partial = std::move(next);
        used = std::move(next_used);
    }
    for (size_t p = 0; p < partial.size(); ++p) {
        Sketch s;
        s.label = label_idx;
        s.slots = std::move(partial[p]);
        s.size = used[p] + 1;
        result.push_back(std::move(s));
    }
    return result;
}

void extend(const std::vector<Opetope>& labels,
            const std::map<std::string, std::vector<int>>& by_target,
            const Opetope& face, int budget, std::vector<Sketch>& out) {
    auto it = by_target.find(face.code());
    if (it == by_target.end()) return;
    for (int c : it->second) {
        auto subs = sketches_rooted(labels, by_target, c, budget);
        out.insert(out.end(), subs.begin(), subs.end());
    }
}

PastingDiagram sketch_to_pd(const std::vector<Opetope>& labels, const Sketch& root) {
    std::vector<Opetope> nodes;
    std::vector<int> arities;
    std::vector<std::pair<Port, Port>> pairs;
    int next_leaf = 0;
    auto walk = [&](auto&& self, const Sketch& s) -> int {
        int idx = static_cast<int>(nodes.size());
        nodes.push_back(labels[s.label]);
        arities.push_back(static_cast<int>(s.slots.size()));
        for (size_t b = 0; b < s.slots.size(); ++b) {
            if (!s.slots[b]) {
                pairs.emplace_back(Port::node_input(idx, static_cast<int>(b)),
                                   Port::formal_input(next_leaf++));
            } else {
                int child = self(self, *s.slots[b]);
                pairs.emplace_back(Port::node_input(idx, static_cast<int>(b)),
                                   Port::node_output(child));
            }
        }
        return idx;
    };
    walk(walk, root);
    pairs.emplace_back(Port::formal_output(), Port::node_output(0));
    PastingDiagram pd;
    pd.wiring = Wiring::from_pairs(trees::NodeProfile{arities}, std::move(pairs));
    pd.nodes = std::move(nodes);
    return pd;
}

} // namespace

std::vector<Opetope> enumerate_opetopes(int dim, int max_nodes, int max_arity, long guard) {
    if (dim < 0 || max_nodes < 0 || max_arity < 0) throw InvalidInput("bounds must be non-negative");
    if (dim == 0) return {Opetope::point()};
    if (dim == 1) return {Opetope::arrow()};

    std::vector<Opetope> labels;
    for (const Opetope& o : enumerate_opetopes(dim - 1, max_nodes, max_arity, guard))
        if (o.source_arity() <= max_arity) labels.push_back(o);
    std::map<std::string, std::vector<int>> by_target;
    for (size_t i = 0; i < labels.size(); ++i)
        by_target[target(labels[i]).code()].push_back(static_cast<int>(i));

    std::set<std::string> seen;
    std::vector<Opetope> out;
    auto add = [&](Opetope o) {
        if (static_cast<long>(seen.size()) >= guard) throw BoundExceeded("enumeration guard exceeded");
        if (seen.insert(o.code()).second) out.push_back(std::move(o));
    };

    for (const Opetope& e : enumerate_opetopes(dim - 2, max_nodes, max_arity, guard))
        add(null_opetope(e));
    for (size_t i = 0; i < labels.size(); ++i)
        for (const Sketch& s : sketches_rooted(labels, by_target, static_cast<int>(i), max_nodes))
            add(make_opetope(dim, sketch_to_pd(labels, s)));

    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Code parsing and rendering

namespace {

struct Parser {
    std::string_view s;
    size_t pos = 0;

    char peek() const {
        if (pos >= s.size()) throw InvalidInput("unexpected end of canonical code");
        return s[pos];
    }
    char take() {
        char c = peek();
        ++pos;
        return c;
    }
    void expect(char c) {
        if (take() != c) throw InvalidInput(std::string("malformed canonical code, expected '") + c + "'");
    }

    Opetope parse() {
        char c = peek();
        if (c == 'p') { ++pos; return Opetope::point(); }
        if (c == 'a') { ++pos; return Opetope::arrow(); }
        expect('(');
        int dim = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) dim = dim * 10 + (take() - '0');
        expect(';');
        Opetope result;
        if (peek() == '!') {
            ++pos;
            Opetope edge = parse();
            result = null_opetope(edge);
            if (result.dim() != dim) throw InvalidInput("canonical code dimension mismatch");
        } else {
            std::vector<Opetope> nodes;
            std::vector<int> arities;
            std::vector<std::pair<Port, Port>> pairs;
            int next_leaf = 0;
            auto node = [&](auto&& self) -> int {
                expect('[');
                int idx = static_cast<int>(nodes.size());
                nodes.push_back(Opetope::point()); // placeholder, keeps preorder indexing
                arities.push_back(0);
                nodes[idx] = parse();
                expect(':');
                int b = 0;
                if (peek() != ']') {
                    while (true) {
                        if (peek() == '*') {
                            ++pos;
                            pairs.emplace_back(Port::node_input(idx, b), Port::formal_input(next_leaf++));
                        } else {
                            int child = self(self);
                            pairs.emplace_back(Port::node_input(idx, b), Port::node_output(child));
                        }
                        ++b;
                        if (peek() == ',') { ++pos; continue; }
                        break;
                    }
                }
                arities[idx] = b;
                expect(']');
                return idx;
            };
            node(node);
            pairs.emplace_back(Port::formal_output(), Port::node_output(0));
            PastingDiagram pd;
            pd.wiring = Wiring::from_pairs(trees::NodeProfile{arities}, std::move(pairs));
            pd.nodes = std::move(nodes);
            result = make_opetope(dim, pd);
        }
        expect(')');
        return result;
    }
};

} // namespace

Opetope parse_code(std::string_view code) {
    Parser p{code};
    Opetope o = p.parse();
    if (p.pos != code.size()) throw InvalidInput("trailing characters after canonical code");
    if (o.code() != code)
        throw InvalidInput("code is not in canonical form; canonical is " + o.code());
    return o;
}

std::string describe(const Opetope& o) {
    std::ostringstream os;
    os << o.dim() << "-opetope " << o.code() << "\n";
    if (!o.has_body()) return os.str();
    auto walk = [&](auto&& self, int i, int depth) -> void {
        os << std::string(2 * depth, ' ') << "node " << i << ": " << o.node_labels()[i].code() << "\n";
        for (int b = 0; b < o.wiring().profile().arities[i]; ++b) {
            Port img = o.wiring().image(Port::node_input(i, b));
            if (img.kind == Port::Kind::formal_input)
                os << std::string(2 * depth + 2, ' ') << "leaf " << img.slot << "\n";
            else
                self(self, img.node, depth + 1);
        }
    };
    if (o.is_null_tree())
        os << "  null tree on " << o.edge_labels()[0].code() << "\n";
    else
        walk(walk, 0, 1);
    return os.str();
}

} // namespace opetopic
