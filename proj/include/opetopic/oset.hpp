#ifndef OPETOPIC_OSET_HPP
#define OPETOPIC_OSET_HPP

#include <map>
#include <string>
#include <vector>

#include "opetopic/category.hpp"
#include "opetopic/opetope.hpp"

namespace opetopic::osets {

using CellId = std::string;

// A k-cell: a shape plus a total boundary assignment over the shape's face
// table below dimension k.
struct Cell {
    CellId id;
    Opetope shape;
    std::map<category::FaceAddress, CellId> boundary;

    int dim() const { return shape.dim(); }
};

struct OpetopicSet {
    // dims ascending; within a dimension, cells sorted by id
    std::vector<std::vector<Cell>> cells;

    int max_dim() const { return static_cast<int>(cells.size()) - 1; }
    const Cell* find(int dim, const CellId& id) const;
    void add(Cell c);
    void sort_cells();
    long total_cells() const;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> errors;
};

// Dangling ids, shape mismatches, non-functorial boundaries.
ValidationReport validate(const OpetopicSet& X);

struct OSetMorphism {
    std::vector<std::map<CellId, CellId>> map; // per dimension

    const CellId& apply(int dim, const CellId& id) const;
};

// Totality, dimension, shape and boundary preservation.
ValidationReport validate_morphism(const OpetopicSet& X, const OpetopicSet& Y,
                                   const OSetMorphism& F);
bool is_identity_on(const OpetopicSet& X, const OSetMorphism& F);
bool is_iso_morphism(const OpetopicSet& X, const OpetopicSet& Y, const OSetMorphism& F);
OSetMorphism compose(const OSetMorphism& F, const OSetMorphism& G); // F then G
OSetMorphism identity_morphism(const OpetopicSet& X);

// The representable on alpha: one m-cell per face-table class, ids "m.c".
OpetopicSet realize(const Opetope& alpha);
// The morphism realize(x) -> realize(alpha) induced by a face class.
OSetMorphism realize_morphism(const Opetope& x, const Opetope& alpha,
                              const category::FaceAddress& h);

// Cells of X whose shape is alpha, sorted by id.
std::vector<Cell> cells_of_shape(const Opetope& alpha, const OpetopicSet& X);
// The unique morphism realize(alpha) -> X sending the top cell to c.
OSetMorphism morphism_from_cell(const Opetope& alpha, const OpetopicSet& X, const Cell& c);

struct Diagram {
    struct Arrow {
        int src = -1;
        int dst = -1;
        OSetMorphism map;
    };
    std::vector<OpetopicSet> objects;
    std::vector<Arrow> arrows;
    // pairs of composable arrow-index paths that must agree
    std::vector<std::pair<std::vector<int>, std::vector<int>>> relations;
};

// Objects valid, arrows valid and well-typed, relations satisfied.
ValidationReport validate_diagram(const Diagram& d);

struct ColimitResult {
    OpetopicSet colimit;
    std::vector<OSetMorphism> coprojections; // one per diagram object
};

// Per dimension the quotient of the disjoint union by D(u)(a) ~ a, with
// representative ids "objectIndex.cellIndex".
ColimitResult colimit(const Diagram& d);

// Brute-force universal property at desk scale: the cocone commutes and a
// unique mediating morphism exists into every test target.
bool is_colimit(const OpetopicSet& Z, const std::vector<OSetMorphism>& cocone,
                const Diagram& d, long guard = 200000);

// All morphisms X -> Y by dimension-ascending backtracking.
std::vector<OSetMorphism> hom_oset(const OpetopicSet& X, const OpetopicSet& Y,
                                   long guard = 200000);

// A k-shape with labels from X on its boundary: an opening labels dims
// <= k-2, a niche adds the source (k-1)-faces, a frame adds the target.
struct PartialLabelling {
    Opetope shape;
    std::map<category::FaceAddress, CellId> labels;
};

std::vector<PartialLabelling> enumerate_openings(const OpetopicSet& X, int k, int max_nodes,
                                                 int max_arity, long guard = 200000);
std::vector<PartialLabelling> to_niches(const PartialLabelling& opening, const OpetopicSet& X);
std::vector<PartialLabelling> to_frames(const PartialLabelling& niche, const OpetopicSet& X);

} // namespace opetopic::osets

#endif
