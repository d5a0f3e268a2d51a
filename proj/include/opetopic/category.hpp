#ifndef OPETOPIC_CATEGORY_HPP
#define OPETOPIC_CATEGORY_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "opetopic/opetope.hpp"

namespace opetopic::category {

// A generating morphism of the face category: s_i and t raise dimension by
// one; iso generators stay inside a dimension and carry their matching.
struct Generator {
    enum class Kind { source = 0, target = 1, iso = 2 };

    Kind kind = Kind::iso;
    int index = -1; // source face index
    Opetope dom;
    Opetope cod;
    Matching witness; // iso only

    bool operator==(const Generator& g) const {
        return kind == g.kind && index == g.index && dom == g.dom && cod == g.cod &&
               witness == g.witness;
    }
};

Generator source_gen(const Opetope& alpha, int i);
Generator target_gen(const Opetope& alpha);
Generator identity_iso(const Opetope& alpha);

// Composable left-to-right: word[0] is applied first.
using MorphismWord = std::vector<Generator>;

// Throws InvalidInput("ill-typed word") when adjacent endpoints disagree.
void check_composable(const MorphismWord& w);
std::string word_key(const MorphismWord& w);

// s_1 .. s_m then t, with correct domains; empty for dim 0.
std::vector<Generator> generators_of(const Opetope& alpha);

// Restriction of an iso along a face generator: for g: alpha -> beta and
// gamma: x -> alpha, returns (gamma g, gamma') with gamma g the component
// iso and gamma' the transported face generator into beta.
std::pair<Generator, Generator> restrict_gen(const Generator& g, const Generator& gamma);

struct FaceAddress {
    int dim = -1;
    int cls = -1;
    auto operator<=>(const FaceAddress&) const = default;
};

// The per-dimension quotient of composable face-map words into one opetope.
class FaceTable {
public:
    struct Class {
        Opetope shape;
        MorphismWord representative;
        // boundary[d][c]: the class at dimension d of this table reached by
        // composing with class c at dimension d of face_table(shape)
        std::vector<std::vector<int>> boundary;
    };

    const Opetope& top() const { return top_; }
    int top_dim() const { return top_.dim(); }
    const std::vector<Class>& at(int dim) const { return classes_.at(dim); }
    std::vector<int> counts() const; // counts[d] = number of classes at dim d

    // Address composition: b addresses a face of the shape of a.
    FaceAddress compose(const FaceAddress& a, const FaceAddress& b) const;
    FaceAddress generator_address(const Generator& g) const;
    FaceAddress identity_address() const { return {top_dim(), 0}; }

private:
    friend const FaceTable& face_table(const Opetope&);
    Opetope top_;
    std::vector<std::vector<Class>> classes_; // by dimension 0..top_dim
};

// Memoized by canonical code.
const FaceTable& face_table(const Opetope& alpha);

// The unique normal form under the oriented one-gap rules, applied gap by
// gap. Throws on non-composable words.
MorphismWord normalize(const MorphismWord& w);

// The face-table address of the composite of w in its codomain's table.
FaceAddress class_of_word(const MorphismWord& w);
FaceAddress class_of_word_in(const MorphismWord& w, const Opetope& cod);

// Congruence of parallel words; throws InvalidInput("not parallel") on
// endpoint mismatch.
bool words_equal(const MorphismWord& w1, const MorphismWord& w2);

struct HomElement {
    FaceAddress address;
    MorphismWord representative;
};

// All morphism classes x -> alpha.
std::vector<HomElement> hom(const Opetope& x, const Opetope& alpha);

} // namespace opetopic::category

#endif
