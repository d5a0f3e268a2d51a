#include "doctest.h"

#include "opetopic/trees.hpp"
#include "opetopic/verify.hpp"

using namespace opetopic;
using trees::CombedTree;
using trees::NodeProfile;
using trees::Port;
using trees::Wiring;

namespace {

Wiring wiring_of(NodeProfile prof, std::vector<std::pair<Port, Port>> pairs) {
    return Wiring::from_pairs(std::move(prof), std::move(pairs));
}

// the single binary corolla: both inputs are leaves
Wiring corolla() {
    return wiring_of({{2}}, {
        {Port::node_input(0, 0), Port::formal_input(0)},
        {Port::node_input(0, 1), Port::formal_input(1)},
        {Port::formal_output(), Port::node_output(0)},
    });
}

// node 1 feeds node 0
Wiring chain() {
    return wiring_of({{1, 1}}, {
        {Port::node_input(0, 0), Port::node_output(1)},
        {Port::node_input(1, 0), Port::formal_input(0)},
        {Port::formal_output(), Port::node_output(0)},
    });
}

Wiring null_wiring() {
    return wiring_of({{}}, {{Port::formal_output(), Port::formal_input(0)}});
}

// all profiles with (sum m_i) + 1 <= ports and a non-negative leaf count
std::vector<NodeProfile> small_profiles(int ports) {
    std::vector<NodeProfile> out;
    auto rec = [&](auto&& self, std::vector<int>& cur, int sum) -> void {
        NodeProfile p{cur};
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

std::vector<Wiring> all_bijections(const NodeProfile& prof) {
    std::vector<Port> dom, cod;
    for (int i = 0; i < prof.node_count(); ++i)
        for (int b = 0; b < prof.arities[i]; ++b) dom.push_back(Port::node_input(i, b));
    dom.push_back(Port::formal_output());
    for (int i = 0; i < prof.node_count(); ++i) cod.push_back(Port::node_output(i));
    for (int j = 0; j < prof.leaf_count(); ++j) cod.push_back(Port::formal_input(j));
    std::vector<int> perm(dom.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::vector<Wiring> out;
    do {
        std::vector<std::pair<Port, Port>> pairs;
        for (size_t i = 0; i < dom.size(); ++i) pairs.emplace_back(dom[i], cod[perm[i]]);
        out.push_back(Wiring::from_pairs(prof, std::move(pairs)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace

TEST_CASE("leaf count formula") {
    CHECK(trees::leaf_count(NodeProfile{{2}}) == 2);
    CHECK(trees::leaf_count(NodeProfile{{}}) == 1);
    CHECK(trees::leaf_count(NodeProfile{{1, 1}}) == 1);
    CHECK(trees::leaf_count(NodeProfile{{3, 0, 2}}) == 3);
    CHECK_THROWS_AS(trees::leaf_count(NodeProfile{{0, 0}}), InvalidInput);
}

TEST_CASE("closed loops") {
    // self-loop
    CHECK(trees::has_closed_loop(wiring_of({{1}}, {
        {Port::node_input(0, 0), Port::node_output(0)},
        {Port::formal_output(), Port::formal_input(0)},
    })));
    // two-node cycle
    CHECK(trees::has_closed_loop(wiring_of({{1, 1}}, {
        {Port::node_input(0, 0), Port::node_output(1)},
        {Port::node_input(1, 0), Port::node_output(0)},
        {Port::formal_output(), Port::formal_input(0)},
    })));
    CHECK_FALSE(trees::has_closed_loop(corolla()));
    CHECK(trees::is_tree(corolla()));
    CHECK(trees::is_tree(chain()));
    CHECK(trees::is_tree(null_wiring()));
}

TEST_CASE("is_tree agrees with the graph oracle on all small bijections") {
    for (const NodeProfile& prof : small_profiles(5)) {
        for (const Wiring& w : all_bijections(prof)) {
            CAPTURE(prof.arities);
            CHECK(trees::is_tree(w) == verify::oracle_acyclic(w));
        }
    }
}

TEST_CASE("encode and decode") {
    SUBCASE("binary corolla round-trip") {
        CombedTree t = trees::decode(corolla());
        CHECK(t.node_count() == 1);
        CHECK(t.leaf_perm == std::vector<int>{0, 1});
        CHECK(trees::encode(t, corolla().profile()) == corolla());
    }
    SUBCASE("null tree") {
        CombedTree t = trees::decode(null_wiring());
        CHECK(t.node_count() == 0);
        CHECK(t.leaf_count() == 1);
        CHECK(trees::encode(t, NodeProfile{{}}) == null_wiring());
    }
    SUBCASE("two-node chain") {
        CombedTree t;
        t.nodes = {{{CombedTree::Slot{false, 1}}}, {{CombedTree::Slot{true, 0}}}};
        t.node_order = {0, 1};
        t.leaf_perm = {0};
        CHECK(trees::encode(t, NodeProfile{{1, 1}}) == chain());
        CHECK(trees::decode(chain()) == t);
    }
    SUBCASE("decode rejects loops") {
        Wiring looped = wiring_of({{1}}, {
            {Port::node_input(0, 0), Port::node_output(0)},
            {Port::formal_output(), Port::formal_input(0)},
        });
        CHECK_THROWS_AS(trees::decode(looped), InvalidInput);
    }
    SUBCASE("encode then decode is the identity on all small tree wirings") {
        for (const NodeProfile& prof : small_profiles(5)) {
            for (const Wiring& w : trees::enumerate_wirings(prof)) {
                CombedTree t = trees::decode(w);
                CHECK(trees::encode(t, prof) == w);
                CHECK(static_cast<int>(t.leaf_perm.size()) == prof.leaf_count());
            }
        }
    }
}

TEST_CASE("wiring enumeration") {
    CHECK(trees::enumerate_wirings(NodeProfile{{1, 1}}).size() == 2);
    CHECK(trees::enumerate_wirings(NodeProfile{{}}).size() == 1);
    CHECK(trees::enumerate_wirings(NodeProfile{{1}}).size() == 1);
    CHECK_THROWS_AS(trees::enumerate_wirings(NodeProfile{{5, 5}}), BoundExceeded);

    SUBCASE("matches the brute-force filter") {
        for (const NodeProfile& prof : small_profiles(5)) {
            std::vector<Wiring> brute;
            for (const Wiring& w : all_bijections(prof))
                if (verify::oracle_acyclic(w)) brute.push_back(w);
            std::sort(brute.begin(), brute.end());
            CHECK(trees::enumerate_wirings(prof) == brute);
        }
    }
}

TEST_CASE("edge labelling") {
    trees::PortObjects obj;
    SUBCASE("corolla with matching objects") {
        Wiring w = corolla();
        for (const auto& [d, c] : w.map()) obj[d] = "A", obj[c] = "A";
        std::vector<trees::EdgeLabel> labels(3, {"id", "A", "A"});
        CHECK_NOTHROW(trees::attach_labels(w, labels, obj));
    }
    SUBCASE("chain with one swapped label") {
        Wiring w = chain();
        obj[Port::node_input(0, 0)] = "B";
        obj[Port::node_output(1)] = "C";
        obj[Port::node_input(1, 0)] = "D";
        obj[Port::formal_input(0)] = "D";
        obj[Port::formal_output()] = "E";
        obj[Port::node_output(0)] = "E";
        std::vector<trees::EdgeLabel> good = {
            {"f", "C", "B"}, {"g", "D", "D"}, {"h", "E", "E"}};
        CHECK_NOTHROW(trees::attach_labels(w, good, obj));
        std::vector<trees::EdgeLabel> swapped = good;
        std::swap(swapped[0].dom, swapped[0].cod);
        CHECK_THROWS_AS(trees::attach_labels(w, swapped, obj), InvalidInput);
    }
    SUBCASE("null tree with its single label") {
        obj[Port::formal_output()] = "A";
        obj[Port::formal_input(0)] = "A";
        CHECK_NOTHROW(trees::attach_labels(null_wiring(), {{"id", "A", "A"}}, obj));
        CHECK_THROWS_AS(trees::attach_labels(null_wiring(), {}, obj), InvalidInput);
    }
}
