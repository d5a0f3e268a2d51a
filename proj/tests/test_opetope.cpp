#include "doctest.h"

#include <set>

#include "opetopic/opetope.hpp"
#include "opetopic/verify.hpp"

using namespace opetopic;
using trees::NodeProfile;
using trees::Port;
using trees::Wiring;

namespace {

// the m-ary 2-opetope: a chain of m unary nodes
Opetope chain2(int m) {
    if (m == 0) return null_opetope(Opetope::point());
    NodeProfile prof{std::vector<int>(m, 1)};
    std::vector<std::pair<Port, Port>> pairs;
    for (int i = 0; i + 1 < m; ++i)
        pairs.emplace_back(Port::node_input(i, 0), Port::node_output(i + 1));
    pairs.emplace_back(Port::node_input(m - 1, 0), Port::formal_input(0));
    pairs.emplace_back(Port::formal_output(), Port::node_output(0));
    PastingDiagram pd;
    pd.wiring = Wiring::from_pairs(prof, std::move(pairs));
    pd.nodes.assign(m, Opetope::arrow());
    return make_opetope(2, pd);
}

// a 3-opetope with `child` plugged into slot `b` of `parent`
Opetope plug3(const Opetope& parent, int b, const Opetope& child) {
    int mp = parent.source_arity(), mc = child.source_arity();
    NodeProfile prof{{mp, mc}};
    std::vector<std::pair<Port, Port>> pairs;
    int leaf = 0;
    for (int s = 0; s < mp; ++s) {
        if (s == b)
            pairs.emplace_back(Port::node_input(0, s), Port::node_output(1));
        else
            pairs.emplace_back(Port::node_input(0, s), Port::formal_input(leaf++));
    }
    for (int s = 0; s < mc; ++s)
        pairs.emplace_back(Port::node_input(1, s), Port::formal_input(leaf++));
    pairs.emplace_back(Port::formal_output(), Port::node_output(0));
    PastingDiagram pd;
    pd.wiring = Wiring::from_pairs(prof, std::move(pairs));
    pd.nodes = {parent, child};
    return make_opetope(3, pd);
}

} // namespace

TEST_CASE("atoms") {
    CHECK(Opetope::point().dim() == 0);
    CHECK(Opetope::point().code() == "p");
    CHECK(Opetope::arrow().code() == "a");
    CHECK(source_faces(Opetope::arrow()) == std::vector<Opetope>{Opetope::point()});
    CHECK(target(Opetope::arrow()) == Opetope::point());
    CHECK_THROWS_AS(source_faces(Opetope::point()), InvalidInput);
    CHECK_THROWS_AS(target(Opetope::point()), InvalidInput);
}

TEST_CASE("2-opetopes are chains") {
    CHECK(chain2(0).code() == "(2;!p)");
    CHECK(chain2(1).code() == "(2;[a:*])");
    CHECK(chain2(2).code() == "(2;[a:[a:*]])");
    CHECK(chain2(0).is_null_tree());
    CHECK(chain2(2).source_arity() == 2);
    CHECK(source_faces(chain2(2)) == std::vector<Opetope>{Opetope::arrow(), Opetope::arrow()});
    for (int m = 0; m <= 4; ++m) CHECK(target(chain2(m)) == Opetope::arrow());

    SUBCASE("a binary node label is rejected at dimension 2") {
        PastingDiagram pd;
        pd.wiring = Wiring::from_pairs(NodeProfile{{2}}, {
            {Port::node_input(0, 0), Port::formal_input(0)},
            {Port::node_input(0, 1), Port::formal_input(1)},
            {Port::formal_output(), Port::node_output(0)},
        });
        pd.nodes = {Opetope::arrow()};
        CHECK_THROWS_AS(make_opetope(2, pd), InvalidInput);
    }
}

TEST_CASE("presentations differing by node order canonicalize together") {
    // same chain, nodes numbered the other way round
    PastingDiagram pd;
    pd.wiring = Wiring::from_pairs(NodeProfile{{1, 1}}, {
        {Port::node_input(0, 0), Port::formal_input(0)},
        {Port::node_input(1, 0), Port::node_output(0)},
        {Port::formal_output(), Port::node_output(1)},
    });
    pd.nodes = {Opetope::arrow(), Opetope::arrow()};
    auto [o, w] = make_opetope_with_witness(2, pd);
    CHECK(o == chain2(2));
    CHECK(w.node_perm == std::vector<int>{1, 0});
    CHECK_FALSE(w.is_identity());
    CHECK(w.then(w.inverse()).is_identity());
}

TEST_CASE("targets by substitution") {
    Opetope b = chain2(2);
    SUBCASE("binary into binary gives the ternary") {
        Opetope theta = plug3(b, 0, b);
        CHECK(theta.source_arity() == 2);
        CHECK(target(theta) == chain2(3));
        CHECK(plug3(b, 1, b) != theta);
        CHECK(target(plug3(b, 1, b)) == chain2(3));
    }
    SUBCASE("null 3-opetope targets the unary 2-opetope") {
        Opetope n3 = null_opetope(Opetope::arrow());
        CHECK(n3.dim() == 3);
        CHECK(n3.source_arity() == 0);
        CHECK(target(n3) == chain2(1));
        CHECK(unit_on(Opetope::arrow()) == chain2(1));
    }
    SUBCASE("single node composes to its label") {
        CHECK(target(unit_on(b)) == b);
        CHECK(target(unit_on(chain2(0))) == chain2(0));
    }
    SUBCASE("source arity of the target counts leaves") {
        for (const Opetope& o : enumerate_opetopes(3, 3, 3)) {
            CHECK(target(o).source_arity() == o.wiring().profile().leaf_count());
            if (o.is_null_tree()) continue;
            int internal = 0;
            for (const auto& [d, c] : o.wiring().map())
                if (d.kind == Port::Kind::node_input && c.kind == Port::Kind::node_output)
                    ++internal;
            int total = 0;
            for (const Opetope& s : source_faces(o)) total += s.source_arity();
            CHECK(target(o).source_arity() == total - internal);
        }
    }
}

TEST_CASE("invalid pastings are rejected") {
    SUBCASE("loop") {
        PastingDiagram pd;
        pd.wiring = Wiring::from_pairs(NodeProfile{{1, 1}}, {
            {Port::node_input(0, 0), Port::node_output(1)},
            {Port::node_input(1, 0), Port::node_output(0)},
            {Port::formal_output(), Port::formal_input(0)},
        });
        pd.nodes = {Opetope::arrow(), Opetope::arrow()};
        CHECK_THROWS_WITH_AS(make_opetope(2, pd), "not a tree", InvalidInput);
    }
    SUBCASE("edge label of the wrong dimension") {
        Opetope theta = plug3(chain2(2), 0, chain2(2));
        PastingDiagram pd{theta.wiring(), theta.node_labels(), {}};
        pd.edges.assign(theta.edge_labels().size(), Opetope::point());
        CHECK_THROWS_AS(make_opetope(3, pd), InvalidInput);
    }
    SUBCASE("faces disagree along an internal edge") {
        // unit on the unary chain feeds a slot expecting the binary chain
        Opetope parent = unit_on(chain2(2));
        Opetope child = unit_on(chain2(1));
        NodeProfile prof{{1, 1}};
        PastingDiagram pd;
        pd.wiring = Wiring::from_pairs(prof, {
            {Port::node_input(0, 0), Port::node_output(1)},
            {Port::node_input(1, 0), Port::formal_input(0)},
            {Port::formal_output(), Port::node_output(0)},
        });
        pd.nodes = {parent, child};
        CHECK_THROWS_AS(make_opetope(4, pd), InvalidInput);
    }
    SUBCASE("null pasting requires its edge label") {
        PastingDiagram pd;
        pd.wiring = Wiring::from_pairs(NodeProfile{{}},
                                       {{Port::formal_output(), Port::formal_input(0)}});
        CHECK_THROWS_AS(make_opetope(2, pd), InvalidInput);
    }
}

TEST_CASE("enumeration") {
    CHECK(enumerate_opetopes(0, 3, 3).size() == 1);
    CHECK(enumerate_opetopes(1, 3, 3).size() == 1);

    SUBCASE("one 2-opetope per arity") {
        auto dim2 = enumerate_opetopes(2, 3, 3);
        REQUIRE(dim2.size() == 4);
        std::set<int> arities;
        for (const Opetope& o : dim2) arities.insert(o.source_arity());
        CHECK(arities == std::set<int>{0, 1, 2, 3});
    }
    SUBCASE("thirteen 3-opetopes within (2,2)") {
        auto dim3 = enumerate_opetopes(3, 2, 2);
        REQUIRE(dim3.size() == 13);
        int nulls = 0, one = 0, two = 0;
        for (const Opetope& o : dim3) {
            int n = o.source_arity();
            if (o.is_null_tree()) ++nulls;
            else if (n == 1) ++one;
            else ++two;
        }
        CHECK(nulls == 1);
        CHECK(one == 3);
        CHECK(two == 9);
        CHECK(std::is_sorted(dim3.begin(), dim3.end()));
        CHECK(enumerate_opetopes(3, 2, 2) == dim3); // stable across runs
    }
    SUBCASE("agrees with the raw search de-duplicated by matchings") {
        CHECK(verify::oracle_enumerate(2, 2, 2).size() == enumerate_opetopes(2, 2, 2).size());
        CHECK(verify::oracle_enumerate(3, 2, 2).size() == 13);
    }
}

TEST_CASE("isomorphism and matchings") {
    Opetope b = chain2(2);
    CHECK(is_isomorphic(b, b));
    CHECK_FALSE(is_isomorphic(b, chain2(3)));
    CHECK(iso_matching(b, b)->is_identity());
    CHECK_FALSE(iso_matching(b, chain2(3)).has_value());

    SUBCASE("every small opetope is rigid") {
        for (int d = 1; d <= 3; ++d)
            for (const Opetope& o : enumerate_opetopes(d, 2, 2)) {
                auto autos = verify::oracle_matchings(o, o);
                REQUIRE(autos.size() == 1);
                CHECK(autos[0].is_identity());
            }
    }
    SUBCASE("matching search agrees with code equality") {
        auto pool = enumerate_opetopes(3, 2, 2);
        for (const Opetope& x : pool)
            for (const Opetope& y : pool)
                CHECK((x == y) == !verify::oracle_matchings(x, y).empty());
    }
}

TEST_CASE("canonical form is stable") {
    for (int d = 2; d <= 3; ++d)
        for (const Opetope& o : enumerate_opetopes(d, 2, 2)) {
            PastingDiagram body{o.wiring(), o.node_labels(), o.edge_labels()};
            auto [re, w] = make_opetope_with_witness(d, body);
            CHECK(re == o);
            CHECK(w.is_identity());
            TargetResult t = target_with_map(o);
            for (size_t p = 0; p < t.leaf_to_source.size(); ++p)
                CHECK(t.leaf_to_source[p] == static_cast<int>(p));
        }
}

TEST_CASE("iterated target reaches the point") {
    for (int d = 0; d <= 3; ++d)
        for (Opetope o : enumerate_opetopes(d, 2, 2)) {
            for (int step = 0; step < d; ++step) {
                Opetope t = target(o);
                CHECK(t.dim() == o.dim() - 1);
                o = t;
            }
            CHECK(o == Opetope::point());
        }
}

TEST_CASE("codes parse back") {
    for (int d = 0; d <= 3; ++d)
        for (const Opetope& o : enumerate_opetopes(d, 2, 2))
            CHECK(parse_code(o.code()) == o);
    CHECK_THROWS_AS(parse_code("(2;[a:*]"), InvalidInput);
    CHECK_THROWS_AS(parse_code("nope"), InvalidInput);
}
