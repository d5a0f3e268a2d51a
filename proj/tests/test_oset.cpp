#include "doctest.h"

#include "opetopic/oset.hpp"
#include "opetopic/verify.hpp"

using namespace opetopic;
using category::FaceAddress;
using osets::Cell;
using osets::Diagram;
using osets::OpetopicSet;
using osets::OSetMorphism;

namespace {

Opetope binary() { return parse_code("(2;[a:[a:*]])"); }

// index category: one point mapped into the s- or t-vertex of an arrow
Diagram pushout_diagram() {
    Diagram d;
    d.objects = {osets::realize(Opetope::point()), osets::realize(Opetope::arrow()),
                 osets::realize(Opetope::arrow())};
    // t-vertex of the first arrow, s-vertex of the second
    d.arrows.push_back({0, 1, osets::realize_morphism(Opetope::point(), Opetope::arrow(), {0, 1})});
    d.arrows.push_back({0, 2, osets::realize_morphism(Opetope::point(), Opetope::arrow(), {0, 0})});
    return d;
}

Diagram coequalizer_diagram() {
    Diagram d;
    d.objects = {osets::realize(Opetope::point()), osets::realize(Opetope::arrow())};
    d.arrows.push_back({0, 1, osets::realize_morphism(Opetope::point(), Opetope::arrow(), {0, 0})});
    d.arrows.push_back({0, 1, osets::realize_morphism(Opetope::point(), Opetope::arrow(), {0, 1})});
    return d;
}

std::vector<int> cell_counts(const OpetopicSet& X) {
    std::vector<int> out;
    for (const auto& layer : X.cells) out.push_back(static_cast<int>(layer.size()));
    return out;
}

} // namespace

TEST_CASE("realize") {
    OpetopicSet pt = osets::realize(Opetope::point());
    CHECK(cell_counts(pt) == std::vector<int>{1});
    CHECK(osets::validate(pt).ok);

    OpetopicSet arr = osets::realize(Opetope::arrow());
    CHECK(cell_counts(arr) == std::vector<int>{2, 1});
    CHECK(osets::validate(arr).ok);

    OpetopicSet bin = osets::realize(binary());
    CHECK(cell_counts(bin) == std::vector<int>{3, 3, 1});
    CHECK(osets::validate(bin).ok);

    SUBCASE("every realization validates") {
        for (int d = 0; d <= 3; ++d)
            for (const Opetope& o : enumerate_opetopes(d, 2, 2))
                CHECK(osets::validate(osets::realize(o)).ok);
    }
    SUBCASE("realized face morphisms are valid and trace the face") {
        OSetMorphism s0 = osets::realize_morphism(Opetope::arrow(), binary(), {1, 0});
        CHECK(osets::validate_morphism(arr, bin, s0).ok);
        CHECK(s0.apply(1, "1.0") == "1.0");
        OSetMorphism t = osets::realize_morphism(Opetope::arrow(), binary(), {1, 2});
        CHECK(osets::validate_morphism(arr, bin, t).ok);
        CHECK(t.apply(1, "1.0") == "1.2");
    }
}

TEST_CASE("validation catches broken boundaries") {
    OpetopicSet bin = osets::realize(binary());
    SUBCASE("dangling id") {
        OpetopicSet bad = bin;
        bad.cells[2][0].boundary[{1, 0}] = "missing";
        CHECK_FALSE(osets::validate(bad).ok);
    }
    SUBCASE("target edge endpoints must match the identified source endpoints") {
        OpetopicSet bad = bin;
        Cell extra_pt;
        extra_pt.id = "x";
        extra_pt.shape = Opetope::point();
        bad.add(extra_pt);
        Cell stray = *bad.find(1, bad.cells[2][0].boundary.at({1, 2}));
        stray.id = "e";
        stray.boundary[{0, 1}] = "x"; // its target endpoint now disagrees
        bad.add(stray);
        bad.cells[2][0].boundary[{1, 2}] = "e";
        bad.sort_cells();
        auto rep = osets::validate(bad);
        CHECK_FALSE(rep.ok);
    }
}

TEST_CASE("cells of shape") {
    OpetopicSet bin = osets::realize(binary());
    CHECK(osets::cells_of_shape(Opetope::point(), bin).size() == 3);
    CHECK(osets::cells_of_shape(Opetope::arrow(), bin).size() == 3);
    CHECK(osets::cells_of_shape(binary(), bin).size() == 1);
    CHECK(osets::cells_of_shape(parse_code("(2;[a:*])"), bin).empty());
}

TEST_CASE("hom enumeration and the representable correspondence") {
    OpetopicSet pt = osets::realize(Opetope::point());
    OpetopicSet arr = osets::realize(Opetope::arrow());
    CHECK(osets::hom_oset(pt, arr).size() == 2);

    SUBCASE("cells of shape alpha are morphisms from the representable") {
        std::vector<OpetopicSet> tests = {arr, osets::realize(binary()),
                                          osets::realize(parse_code("(3;[(2;[a:[a:*]]):*,*])"))};
        for (int d = 0; d <= 2; ++d)
            for (const Opetope& alpha : enumerate_opetopes(d, 2, 2)) {
                OpetopicSet rep = osets::realize(alpha);
                for (const OpetopicSet& X : tests) {
                    auto hom = osets::hom_oset(rep, X);
                    auto cells = osets::cells_of_shape(alpha, X);
                    CHECK(hom.size() == cells.size());
                    // each cell induces the morphism sending the top class there
                    for (const Cell& c : cells) {
                        OSetMorphism f = osets::morphism_from_cell(alpha, X, c);
                        CHECK(osets::validate_morphism(rep, X, f).ok);
                        bool found = false;
                        for (const auto& g : hom)
                            if (g.map == f.map) found = true;
                        CHECK(found);
                    }
                }
            }
    }
    SUBCASE("full faithfulness numbers") {
        for (int da = 0; da <= 2; ++da)
            for (const Opetope& a : enumerate_opetopes(da, 2, 2))
                for (int db = 0; db <= 2; ++db)
                    for (const Opetope& b : enumerate_opetopes(db, 2, 2)) {
                        auto lhs = osets::hom_oset(osets::realize(a), osets::realize(b)).size();
                        auto rhs = category::hom(a, b).size();
                        CAPTURE(a.code());
                        CAPTURE(b.code());
                        CHECK(lhs == rhs);
                    }
    }
}

TEST_CASE("colimits") {
    SUBCASE("coproduct of two points") {
        Diagram d;
        d.objects = {osets::realize(Opetope::point()), osets::realize(Opetope::point())};
        auto res = osets::colimit(d);
        CHECK(cell_counts(res.colimit) == std::vector<int>{2});
        CHECK(osets::is_colimit(res.colimit, res.coprojections, d));
    }
    SUBCASE("pushout glues target to source") {
        auto d = pushout_diagram();
        auto res = osets::colimit(d);
        CHECK(cell_counts(res.colimit) == std::vector<int>{3, 2});
        CHECK(osets::is_colimit(res.colimit, res.coprojections, d));
    }
    SUBCASE("coequalizer produces the loop-framed arrow") {
        auto d = coequalizer_diagram();
        auto res = osets::colimit(d);
        CHECK(cell_counts(res.colimit) == std::vector<int>{1, 1});
        const Cell& loop = res.colimit.cells[1][0];
        CHECK(loop.boundary.at({0, 0}) == loop.boundary.at({0, 1}));
        CHECK(osets::is_colimit(res.colimit, res.coprojections, d));
    }
    SUBCASE("an extra disconnected cell breaks the universal property") {
        auto d = pushout_diagram();
        auto res = osets::colimit(d);
        OpetopicSet zplus = res.colimit;
        Cell extra;
        extra.id = "stray";
        extra.shape = Opetope::point();
        zplus.add(extra);
        zplus.sort_cells();
        CHECK_FALSE(osets::is_colimit(zplus, res.coprojections, d));
    }
    SUBCASE("a non-commuting cocone is rejected") {
        auto d = pushout_diagram();
        auto res = osets::colimit(d);
        auto bad = res.coprojections;
        // send the glued point somewhere else
        bad[0].map[0].begin()->second = res.coprojections[1].apply(0, "0.0");
        CHECK_FALSE(osets::is_colimit(res.colimit, bad, d));
    }
    SUBCASE("non-functorial diagrams are rejected") {
        auto d = pushout_diagram();
        d.relations.push_back({{0}, {1}}); // the two arrows are not equal
        CHECK_THROWS_AS(osets::colimit(d), InvalidInput);
    }
    SUBCASE("relations that hold validate") {
        Diagram d;
        d.objects = {osets::realize(Opetope::point()), osets::realize(Opetope::arrow()),
                     osets::realize(binary())};
        d.arrows.push_back(
            {0, 1, osets::realize_morphism(Opetope::point(), Opetope::arrow(), {0, 0})});
        d.arrows.push_back({1, 2, osets::realize_morphism(Opetope::arrow(), binary(), {1, 0})});
        // the direct map hits the same vertex the composite reaches
        const auto& t = category::face_table(binary());
        FaceAddress direct = t.compose({1, 0}, {0, 0});
        d.arrows.push_back({0, 2, osets::realize_morphism(Opetope::point(), binary(), direct)});
        d.relations.push_back({{0, 1}, {2}});
        CHECK(osets::validate_diagram(d).ok);
        CHECK_NOTHROW(osets::colimit(d));
    }
}

TEST_CASE("openings, niches, frames") {
    SUBCASE("exactly one 1-opening") {
        OpetopicSet two_points;
        Cell p;
        p.id = "p";
        p.shape = Opetope::point();
        Cell q = p;
        q.id = "q";
        two_points.add(p);
        two_points.add(q);
        two_points.sort_cells();
        auto ops = osets::enumerate_openings(two_points, 1, 3, 3);
        CHECK(ops.size() == 1);
        CHECK(ops[0].labels.empty());
    }
    SUBCASE("binary 2-openings label three vertex classes") {
        OpetopicSet two_points;
        for (const char* id : {"p", "q"}) {
            Cell c;
            c.id = id;
            c.shape = Opetope::point();
            two_points.add(c);
        }
        two_points.sort_cells();
        auto ops = osets::enumerate_openings(two_points, 2, 3, 3);
        int binary_count = 0;
        for (const auto& o : ops)
            if (o.shape == binary()) ++binary_count;
        CHECK(binary_count == 8);
    }
    SUBCASE("niches and frames filter consistently") {
        OpetopicSet arr = osets::realize(Opetope::arrow());
        auto ops = osets::enumerate_openings(arr, 2, 3, 3);
        for (const auto& o : ops) {
            if (!(o.shape == binary())) continue;
            auto niches = osets::to_niches(o, arr);
            for (const auto& n : niches) {
                auto frames = osets::to_frames(n, arr);
                for (const auto& f : frames) {
                    // a frame labels sources and target compatibly
                    CHECK(f.labels.size() == n.labels.size() + 1);
                }
            }
        }
        // the arrow set has one edge p -> q; a binary niche needs
        // composable source edges, impossible with distinct endpoints
        int total_niches = 0;
        for (const auto& o : ops)
            if (o.shape == binary()) total_niches += static_cast<int>(osets::to_niches(o, arr).size());
        CHECK(total_niches == 0);
    }
    SUBCASE("coequalizer loop supports a binary niche and frame") {
        auto res = osets::colimit(coequalizer_diagram());
        auto ops = osets::enumerate_openings(res.colimit, 2, 3, 3);
        int frames = 0;
        for (const auto& o : ops)
            if (o.shape == binary())
                for (const auto& n : osets::to_niches(o, res.colimit))
                    frames += static_cast<int>(osets::to_frames(n, res.colimit).size());
        CHECK(frames == 1); // the loop composed with itself, closed by the loop
    }
}
