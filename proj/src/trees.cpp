#include "opetopic/trees.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace opetopic::trees {

int NodeProfile::total_inputs() const {
    return std::accumulate(arities.begin(), arities.end(), 0);
}

int NodeProfile::leaf_count() const {
    for (int m : arities)
        if (m < 0) throw InvalidInput("node arity must be non-negative");
    int l = total_inputs() - node_count() + 1;
    if (l < 0) throw InvalidInput("no tree exists for this profile");
    return l;
}

int leaf_count(const NodeProfile& profile) { return profile.leaf_count(); }

std::string to_string(const Port& p) {
    switch (p.kind) {
    case Port::Kind::node_input: return "x(" + std::to_string(p.node) + "," + std::to_string(p.slot) + ")";
    case Port::Kind::node_output: return "x(" + std::to_string(p.node) + ")";
    case Port::Kind::formal_input: return "z(" + std::to_string(p.slot) + ")";
    case Port::Kind::formal_output: return "z";
    }
    return "?";
}

namespace {

std::vector<Port> domain_ports(const NodeProfile& profile) {
    std::vector<Port> out;
    for (int i = 0; i < profile.node_count(); ++i)
        for (int b = 0; b < profile.arities[i]; ++b) out.push_back(Port::node_input(i, b));
    out.push_back(Port::formal_output());
    return out;
}

std::vector<Port> codomain_ports(const NodeProfile& profile) {
    std::vector<Port> out;
    for (int i = 0; i < profile.node_count(); ++i) out.push_back(Port::node_output(i));
    int l = profile.leaf_count();
    for (int j = 0; j < l; ++j) out.push_back(Port::formal_input(j));
    return out;
}

} // namespace

Wiring Wiring::from_pairs(NodeProfile profile, std::vector<std::pair<Port, Port>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    auto dom = domain_ports(profile);
    auto cod = codomain_ports(profile);
    if (pairs.size() != dom.size())
        throw InvalidInput("wiring map has wrong size");
    std::set<Port> seen_cod;
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].first != dom[i])
            throw InvalidInput("wiring domain is not the full set of node inputs plus the formal output");
        if (!seen_cod.insert(pairs[i].second).second)
            throw InvalidInput("wiring map is not injective");
    }
    for (const Port& c : cod)
        if (!seen_cod.count(c)) throw InvalidInput("wiring map misses codomain port " + to_string(c));
    Wiring w;
    w.profile_ = std::move(profile);
    w.map_ = std::move(pairs);
    return w;
}

Port Wiring::image(const Port& p) const {
    auto it = std::lower_bound(map_.begin(), map_.end(), p,
                               [](const auto& pr, const Port& q) { return pr.first < q; });
    if (it == map_.end() || it->first != p) throw InvalidInput("port not in wiring domain: " + to_string(p));
    return it->second;
}

Port Wiring::preimage(const Port& p) const {
    for (const auto& [d, c] : map_)
        if (c == p) return d;
    throw InvalidInput("port not in wiring codomain: " + to_string(p));
}

bool has_closed_loop(const Wiring& w) {
    const int k = w.profile().node_count();
    // consumer[i] = node whose input absorbs the output of node i, or -1.
    std::vector<int> consumer(k, -1);
    for (const auto& [d, c] : w.map()) {
        if (c.kind == Port::Kind::node_output && d.kind == Port::Kind::node_input)
            consumer[c.node] = d.node;
    }
    std::vector<int> state(k, 0); // 0 fresh, 1 on path, 2 done
    for (int start = 0; start < k; ++start) {
        int i = start;
        while (i >= 0 && state[i] == 0) {
            state[i] = 1;
            i = consumer[i];
        }
        if (i >= 0 && state[i] == 1) return true;
        // mark the walked path as done
        int j = start;
        while (j >= 0 && state[j] == 1) {
            state[j] = 2;
            j = consumer[j];
        }
    }
    return false;
}

bool is_tree(const Wiring& w) { return !has_closed_loop(w); }

Wiring encode(const CombedTree& t, const NodeProfile& profile) {
    const int k = profile.node_count();
    const int l = profile.leaf_count();
    if (t.node_count() != k) throw InvalidInput("combed tree node count disagrees with profile");
    if (t.leaf_count() != l) throw InvalidInput("combed tree leaf count disagrees with profile");
    if (static_cast<int>(t.node_order.size()) != k) throw InvalidInput("tau has wrong size");

    // tau and rho must be genuine bijections.
    std::vector<char> seen(k, 0);
    for (int v : t.node_order) {
        if (v < 0 || v >= k || seen[v]) throw InvalidInput("tau is not a bijection");
        seen[v] = 1;
    }
    std::vector<char> seenl(l, 0);
    for (int v : t.leaf_perm) {
        if (v < 0 || v >= l || seenl[v]) throw InvalidInput("rho is not a permutation");
        seenl[v] = 1;
    }

    std::vector<std::pair<Port, Port>> pairs;
    if (k == 0) {
        pairs.emplace_back(Port::formal_output(), Port::formal_input(t.leaf_perm[0]));
        return Wiring::from_pairs(profile, std::move(pairs));
    }

    // Root: the only position that is no one's child.
    std::vector<char> is_child(k, 0);
    for (const auto& n : t.nodes)
        for (const auto& s : n.slots)
            if (!s.leaf) {
                if (s.index < 0 || s.index >= k || is_child[s.index])
                    throw InvalidInput("combed tree child structure is broken");
                is_child[s.index] = 1;
            }
    int root = -1;
    for (int p = 0; p < k; ++p)
        if (!is_child[p]) {
            if (root >= 0) throw InvalidInput("combed tree is not connected");
            root = p;
        }
    if (root < 0) throw InvalidInput("combed tree has no root");

    for (int p = 0; p < k; ++p) {
        int i = t.node_order[p];
        if (static_cast<int>(t.nodes[p].slots.size()) != profile.arities[i])
            throw InvalidInput("planar arity disagrees with profile at node " + std::to_string(i));
        for (int b = 0; b < profile.arities[i]; ++b) {
            const auto& s = t.nodes[p].slots[b];
            if (s.leaf)
                pairs.emplace_back(Port::node_input(i, b), Port::formal_input(t.leaf_perm[s.index]));
            else
                pairs.emplace_back(Port::node_input(i, b), Port::node_output(t.node_order[s.index]));
        }
    }
    pairs.emplace_back(Port::formal_output(), Port::node_output(t.node_order[root]));
    return Wiring::from_pairs(profile, std::move(pairs));
}

CombedTree decode(const Wiring& w) {
    if (!is_tree(w)) throw InvalidInput("not a tree");
    const auto& prof = w.profile();
    const int k = prof.node_count();

    CombedTree t;
    if (k == 0) {
        Port img = w.image(Port::formal_output());
        t.leaf_perm = {img.slot};
        return t;
    }

    Port rootp = w.image(Port::formal_output());
    if (rootp.kind != Port::Kind::node_output)
        throw InvalidInput("root of a non-empty tree must be a node output");

    // Depth-first preorder from the root, slots left to right.
    t.nodes.resize(k);
    t.node_order.assign(k, -1);
    int next_pos = 0;
    int next_leaf = 0;
    std::vector<int> leaf_targets; // traversal order -> formal input index
    // Recursive lambda over node indices; returns assigned position.
    auto walk = [&](auto&& self, int i) -> int {
        int pos = next_pos++;
        t.node_order[pos] = i;
        t.nodes[pos].slots.resize(prof.arities[i]);
        for (int b = 0; b < prof.arities[i]; ++b) {
            Port img = w.image(Port::node_input(i, b));
            if (img.kind == Port::Kind::formal_input) {
                t.nodes[pos].slots[b] = {true, next_leaf++};
                leaf_targets.push_back(img.slot);
            } else {
                int child = self(self, img.node);
                t.nodes[pos].slots[b] = {false, child};
            }
        }
        return pos;
    };
    walk(walk, rootp.node);
    if (next_pos != k) throw InvalidInput("wiring is not connected"); // unreachable for valid trees
    t.leaf_perm = leaf_targets;
    return t;
}

std::vector<Wiring> enumerate_wirings(const NodeProfile& profile, int max_ports) {
    const int n = profile.total_inputs() + 1;
    profile.leaf_count(); // validates
    if (n > max_ports) throw BoundExceeded("profile too large");

    auto dom = domain_ports(profile);
    auto cod = codomain_ports(profile);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Wiring> out;
    do {
        std::vector<std::pair<Port, Port>> pairs;
        pairs.reserve(n);
        for (int i = 0; i < n; ++i) pairs.emplace_back(dom[i], cod[perm[i]]);
        Wiring w = Wiring::from_pairs(profile, std::move(pairs));
        if (is_tree(w)) out.push_back(std::move(w));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    return out;
}

LabelledWiring attach_labels(const Wiring& w, const std::vector<EdgeLabel>& labels,
                             const PortObjects& objects) {
    if (labels.size() != w.map().size())
        throw InvalidInput("need exactly one label per wiring domain port");
    auto object_at = [&](const Port& p) -> const std::string& {
        auto it = objects.find(p);
        if (it == objects.end()) throw InvalidInput("no object stated for port " + to_string(p));
        return it->second;
    };
    for (size_t e = 0; e < labels.size(); ++e) {
        const auto& [y, ay] = w.map()[e];
        if (labels[e].cod != object_at(y) || labels[e].dom != object_at(ay))
            throw InvalidInput("label incompatible with wiring at " + to_string(y));
    }
    return LabelledWiring{w, labels};
}

} // namespace opetopic::trees
