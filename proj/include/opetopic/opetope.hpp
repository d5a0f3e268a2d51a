#ifndef OPETOPIC_OPETOPE_HPP
#define OPETOPIC_OPETOPE_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opetopic/trees.hpp"

namespace opetopic {

class Opetope;

// A presentation of a k-opetope body (k >= 2): a tree wiring whose nodes
// carry (k-1)-opetopes and whose domain ports carry (k-2)-opetope edge
// labels. `edges` may be left empty to have the labels derived.
struct PastingDiagram {
    trees::Wiring wiring;
    std::vector<Opetope> nodes;
    std::vector<Opetope> edges; // by domain-port order
};

// The unique structural matching between two presentations of the same
// opetope: a node permutation, one matching per node label, and the
// induced relabelling of formal inputs.
struct Matching {
    std::vector<int> node_perm; // node i of a -> node node_perm[i] of b
    std::vector<Matching> labels;
    std::vector<int> leaf_perm; // formal input p of a -> formal input of b

    static Matching identity_for(const Opetope& o);
    Matching inverse() const;
    // this: a -> b, then m: b -> c.
    Matching then(const Matching& m) const;
    bool is_identity() const;

    bool operator==(const Matching&) const = default;
};

// An opetope value. Always validated and stored in canonical form: node
// numbering is depth-first from the root and formal inputs are aligned
// with the canonical numbering of the target's source faces. Equality of
// values is equality of canonical codes.
class Opetope {
public:
    static const Opetope& point();
    static const Opetope& arrow();

    int dim() const { return dim_; }
    const std::string& code() const { return code_; }

    bool has_body() const { return body_ != nullptr; }
    bool is_null_tree() const;
    const trees::Wiring& wiring() const;
    const std::vector<Opetope>& node_labels() const;
    const std::vector<Opetope>& edge_labels() const;

    // Number of source faces: 1 for the arrow, node count for dim >= 2.
    int source_arity() const;

    bool operator==(const Opetope& o) const { return code_ == o.code_; }
    bool operator!=(const Opetope& o) const { return !(*this == o); }
    bool operator<(const Opetope& o) const { return code_ < o.code_; }

private:
    friend std::pair<Opetope, Matching> make_opetope_with_witness(int, const PastingDiagram&);
    friend Opetope atom(int dim);

    int dim_ = 0;
    std::string code_;
    std::shared_ptr<const PastingDiagram> body_;
};

// Validates and canonicalizes. Throws InvalidInput ("not a tree",
// "invalid pasting", ...) on bad bodies. For dim 0 and 1 the body must be
// the empty atom (use the overload below).
Opetope make_opetope(int dim, const PastingDiagram& body);
std::pair<Opetope, Matching> make_opetope_with_witness(int dim, const PastingDiagram& body);
// dim 0 or 1.
Opetope make_opetope(int dim);

// Node labels in node order; (point) for the arrow. Throws on dim 0.
std::vector<Opetope> source_faces(const Opetope& o);

struct TargetResult {
    Opetope target;
    // formal input p of the opetope -> source index of the target
    std::vector<int> leaf_to_source;
};

// The composite of the pasting tree; lowers dimension by exactly one.
// Throws on dim 0.
Opetope target(const Opetope& o);
TargetResult target_with_map(const Opetope& o);

// The one-node (dim(x)+1)-opetope on x.
Opetope unit_on(const Opetope& x);

// The (dim(edge)+2)-opetope with the empty pasting tree on `edge`.
Opetope null_opetope(const Opetope& edge);

using CanonicalCode = std::string;
inline const CanonicalCode& canonical_code(const Opetope& o) { return o.code(); }

// Equal canonical values are isomorphic with the identity matching;
// distinct values are not isomorphic.
std::optional<Matching> iso_matching(const Opetope& a, const Opetope& b);
bool is_isomorphic(const Opetope& a, const Opetope& b);

// All opetopes of the given dimension whose every pasting tree, at every
// recursion level, has at most max_nodes nodes and max_arity node arity.
// Sorted by canonical code. `guard` caps the total count.
std::vector<Opetope> enumerate_opetopes(int dim, int max_nodes, int max_arity,
                                        long guard = 2'000'000);

Opetope parse_code(std::string_view code);

// Indented tree rendering.
std::string describe(const Opetope& o);

} // namespace opetopic

#endif
