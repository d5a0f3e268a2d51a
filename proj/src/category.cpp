#include "opetopic/category.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "opetopic/union_find.hpp"

namespace opetopic::category {

using trees::Port;

// ---------------------------------------------------------------------------
// Generators

Generator source_gen(const Opetope& alpha, int i) {
    if (alpha.dim() < 1) throw InvalidInput("no source");
    if (i < 0 || i >= alpha.source_arity()) throw InvalidInput("source index out of range");
    Generator g;
    g.kind = Generator::Kind::source;
    g.index = i;
    g.dom = source_faces(alpha)[i];
    g.cod = alpha;
    return g;
}

Generator target_gen(const Opetope& alpha) {
    if (alpha.dim() < 1) throw InvalidInput("no target");
    Generator g;
    g.kind = Generator::Kind::target;
    g.dom = target(alpha);
    g.cod = alpha;
    return g;
}

Generator identity_iso(const Opetope& alpha) {
    Generator g;
    g.kind = Generator::Kind::iso;
    g.dom = alpha;
    g.cod = alpha;
    g.witness = Matching::identity_for(alpha);
    return g;
}

std::vector<Generator> generators_of(const Opetope& alpha) {
    std::vector<Generator> out;
    if (alpha.dim() == 0) return out;
    for (int i = 0; i < alpha.source_arity(); ++i) out.push_back(source_gen(alpha, i));
    out.push_back(target_gen(alpha));
    return out;
}

void check_composable(const MorphismWord& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (!(w[i].cod == w[i + 1].dom)) throw InvalidInput("ill-typed word");
}

std::string word_key(const MorphismWord& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << ";";
        switch (w[i].kind) {
        case Generator::Kind::source: os << "s" << w[i].index; break;
        case Generator::Kind::target: os << "t"; break;
        case Generator::Kind::iso: os << (w[i].witness.is_identity() ? "1" : "g"); break;
        }
        os << "@" << w[i].cod.code();
    }
    return os.str();
}

std::pair<Generator, Generator> restrict_gen(const Generator& g, const Generator& gamma) {
    if (g.kind != Generator::Kind::iso) throw InvalidInput("restriction needs an iso");
    if (gamma.kind == Generator::Kind::iso) throw InvalidInput("restriction needs a face generator");
    if (!(gamma.cod == g.dom)) throw InvalidInput("incompatible");

    Generator component;
    component.kind = Generator::Kind::iso;
    Generator transported;
    if (gamma.kind == Generator::Kind::source) {
        const int i = gamma.index;
        const auto& perm = g.witness.node_perm;
        const int j = i < static_cast<int>(perm.size()) ? perm[i] : i;
        transported = source_gen(g.cod, j);
        component.dom = gamma.dom;
        component.cod = transported.dom;
        component.witness = i < static_cast<int>(g.witness.labels.size())
                                ? g.witness.labels[i]
                                : Matching::identity_for(gamma.dom);
    } else {
        transported = target_gen(g.cod);
        component.dom = gamma.dom;
        component.cod = transported.dom;
        component.witness = Matching::identity_for(gamma.dom);
    }
    return {component, transported};
}

// ---------------------------------------------------------------------------
// Face tables

std::vector<int> FaceTable::counts() const {
    std::vector<int> out;
    for (const auto& cs : classes_) out.push_back(static_cast<int>(cs.size()));
    return out;
}

FaceAddress FaceTable::compose(const FaceAddress& a, const FaceAddress& b) const {
    const Class& cls = classes_.at(a.dim).at(a.cls);
    if (b.dim == cls.shape.dim()) {
        if (b.cls != 0) throw InvalidInput("bad face address");
        return a;
    }
    return {b.dim, cls.boundary.at(b.dim).at(b.cls)};
}

FaceAddress FaceTable::generator_address(const Generator& g) const {
    if (!(g.cod == top_)) throw InvalidInput("generator does not map into this opetope");
    if (g.kind == Generator::Kind::source) return {top_dim() - 1, g.index};
    if (g.kind == Generator::Kind::target) return {top_dim() - 1, top_.source_arity()};
    return identity_address();
}

namespace {

struct TableBuilder {
    std::vector<Opetope> shapes;            // parts: sources then target
    std::vector<const FaceTable*> sub;      // their tables
    std::vector<std::vector<int>> offset;   // [part][dim] -> first element id
    int total = 0;

    int id_of(int part, const FaceAddress& a) const {
        return offset[part][a.dim] + a.cls;
    }
};

FaceAddress part_source_address(const FaceTable& t, int i) { return {t.top_dim() - 1, i}; }
FaceAddress part_target_address(const FaceTable& t) {
    return {t.top_dim() - 1, t.top().source_arity()};
}

} // namespace

const FaceTable& face_table(const Opetope& alpha) {
    static std::mutex mtx;
    static std::map<std::string, std::unique_ptr<FaceTable>> cache;
    {
        std::scoped_lock lk(mtx);
        auto it = cache.find(alpha.code());
        if (it != cache.end()) return *it->second;
    }

    auto table = std::make_unique<FaceTable>();
    FaceTable& t = *table;
    t.top_ = alpha;
    const int k = alpha.dim();
    t.classes_.resize(k + 1);

    FaceTable::Class topc;
    topc.shape = alpha;
    t.classes_[k].push_back(std::move(topc));

    if (k > 0) {
        TableBuilder tb;
        tb.shapes = source_faces(alpha);
        const int m = static_cast<int>(tb.shapes.size());
        TargetResult tr = target_with_map(alpha);
        tb.shapes.push_back(tr.target);
        for (const Opetope& s : tb.shapes) tb.sub.push_back(&face_table(s));
        std::vector<Generator> gens = generators_of(alpha);

        tb.offset.resize(tb.shapes.size());
        for (size_t p = 0; p < tb.shapes.size(); ++p) {
            tb.offset[p].resize(k);
            for (int d = 0; d <= k - 1; ++d) {
                tb.offset[p][d] = tb.total;
                tb.total += static_cast<int>(tb.sub[p]->at(d).size());
            }
        }

        UnionFind uf(tb.total);
        auto descend_merge = [&](int p, FaceAddress a, int q, FaceAddress b) {
            const Opetope& x = tb.sub[p]->at(a.dim).at(a.cls).shape;
            const Opetope& y = tb.sub[q]->at(b.dim).at(b.cls).shape;
            if (!(x == y)) throw InvalidInput("internal: identified faces have different shapes");
            const FaceTable& xt = face_table(x);
            for (int d = 0; d <= x.dim(); ++d)
                for (int c = 0; c < static_cast<int>(xt.at(d).size()); ++c) {
                    FaceAddress subaddr{d, c};
                    uf.unite(tb.id_of(p, tb.sub[p]->compose(a, subaddr)),
                             tb.id_of(q, tb.sub[q]->compose(b, subaddr)));
                }
        };

        if (k >= 2) {
            for (const auto& [y, ay] : alpha.wiring().map()) {
                if (y.kind == Port::Kind::node_input) {
                    FaceAddress a = part_source_address(*tb.sub[y.node], y.slot);
                    if (ay.kind == Port::Kind::node_output)
                        descend_merge(y.node, a, ay.node, part_target_address(*tb.sub[ay.node]));
                    else
                        descend_merge(y.node, a, m,
                                      part_source_address(*tb.sub[m], tr.leaf_to_source[ay.slot]));
                } else {
                    if (ay.kind == Port::Kind::node_output)
                        descend_merge(ay.node, part_target_address(*tb.sub[ay.node]), m,
                                      part_target_address(*tb.sub[m]));
                    else
                        descend_merge(m, part_source_address(*tb.sub[m], tr.leaf_to_source[ay.slot]),
                                      m, part_target_address(*tb.sub[m]));
                }
            }
        }

        // assemble classes, dimension by dimension
        for (int d = 0; d <= k - 1; ++d) {
            std::map<int, int> class_of_root;
            for (size_t p = 0; p < tb.shapes.size(); ++p) {
                for (int c = 0; c < static_cast<int>(tb.sub[p]->at(d).size()); ++c) {
                    int root = uf.find(tb.id_of(p, {d, c}));
                    const auto& source_cls = tb.sub[p]->at(d).at(c);
                    auto it = class_of_root.find(root);
                    if (it == class_of_root.end()) {
                        class_of_root.emplace(root, static_cast<int>(t.classes_[d].size()));
                        FaceTable::Class cls;
                        cls.shape = source_cls.shape;
                        cls.representative = source_cls.representative;
                        cls.representative.push_back(gens[p]);
                        t.classes_[d].push_back(std::move(cls));
                    } else if (!(t.classes_[d][it->second].shape == source_cls.shape)) {
                        throw InvalidInput("internal: face class shape clash");
                    }
                }
            }
        }

        // boundaries: walk each class back through its least element
        std::vector<std::map<int, int>> class_of_root_by_dim(k);
        for (int d = 0; d <= k - 1; ++d) {
            int next = 0;
            for (size_t p = 0; p < tb.shapes.size(); ++p)
                for (int c = 0; c < static_cast<int>(tb.sub[p]->at(d).size()); ++c) {
                    int root = uf.find(tb.id_of(p, {d, c}));
                    if (!class_of_root_by_dim[d].count(root)) class_of_root_by_dim[d][root] = next++;
                }
        }
        for (int d = 0; d <= k - 1; ++d) {
            int idx = 0;
            for (size_t p = 0; p < tb.shapes.size(); ++p)
                for (int c = 0; c < static_cast<int>(tb.sub[p]->at(d).size()); ++c) {
                    int root = uf.find(tb.id_of(p, {d, c}));
                    if (class_of_root_by_dim[d].at(root) != idx) continue;
                    FaceTable::Class& cls = t.classes_[d][idx];
                    // least element of this class: fill boundary once
                    if (cls.boundary.empty() && d > 0) {
                        const FaceTable& sht = face_table(cls.shape);
                        cls.boundary.resize(d);
                        for (int dd = 0; dd < d; ++dd)
                            for (int c2 = 0; c2 < static_cast<int>(sht.at(dd).size()); ++c2) {
                                FaceAddress reached = tb.sub[p]->compose({d, c}, {dd, c2});
                                cls.boundary[dd].push_back(
                                    class_of_root_by_dim[dd].at(uf.find(tb.id_of(p, reached))));
                            }
                    }
                    ++idx;
                }
        }
    }

    // the identity class restricts to every class of the table itself
    FaceTable::Class& topcl = t.classes_[k][0];
    topcl.boundary.resize(k);
    for (int d = 0; d < k; ++d) {
        topcl.boundary[d].resize(t.classes_[d].size());
        for (size_t c = 0; c < t.classes_[d].size(); ++c)
            topcl.boundary[d][c] = static_cast<int>(c);
    }

    std::scoped_lock lk(mtx);
    auto [it, inserted] = cache.emplace(alpha.code(), std::move(table));
    return *it->second;
}

// ---------------------------------------------------------------------------
// Rewriting

MorphismWord normalize(const MorphismWord& w) {
    check_composable(w);
    MorphismWord v = w;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < v.size(); ++i) {
            const Generator& a = v[i];
            const Generator& b = v[i + 1];
            if (a.kind != Generator::Kind::iso && b.kind == Generator::Kind::iso) {
                auto [component, transported] = restrict_gen(b, a); // rule 1
                v[i] = component;
                v[i + 1] = transported;
                changed = true;
                break;
            }
            if (a.kind == Generator::Kind::iso && b.kind == Generator::Kind::iso) {
                Generator composed; // rules 2 and 3
                composed.kind = Generator::Kind::iso;
                composed.dom = a.dom;
                composed.cod = b.cod;
                composed.witness = a.witness.then(b.witness);
                v.erase(v.begin() + i);
                v[i] = composed;
                changed = true;
                break;
            }
            if (a.kind == Generator::Kind::iso && a.witness.is_identity() &&
                b.kind != Generator::Kind::iso) {
                v.erase(v.begin() + i); // rule 4
                changed = true;
                break;
            }
        }
    }
    return v;
}

FaceAddress class_of_word_in(const MorphismWord& w, const Opetope& cod) {
    check_composable(w);
    if (!w.empty() && !(w.back().cod == cod)) throw InvalidInput("ill-typed word");
    const FaceTable& t = face_table(cod);
    FaceAddress addr = t.identity_address();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (it->kind == Generator::Kind::iso) continue;
        const Opetope& shape = t.at(addr.dim).at(addr.cls).shape;
        if (!(it->cod == shape)) throw InvalidInput("ill-typed word");
        FaceAddress g = it->kind == Generator::Kind::source
                            ? FaceAddress{shape.dim() - 1, it->index}
                            : FaceAddress{shape.dim() - 1, shape.source_arity()};
        addr = t.compose(addr, g);
    }
    return addr;
}

FaceAddress class_of_word(const MorphismWord& w) {
    check_composable(w);
    if (w.empty()) throw InvalidInput("the empty word has no codomain; use class_of_word_in");
    return class_of_word_in(w, w.back().cod);
}

bool words_equal(const MorphismWord& w1, const MorphismWord& w2) {
    check_composable(w1);
    check_composable(w2);
    if (w1.empty() && w2.empty()) return true;
    if (w1.empty() || w2.empty()) throw InvalidInput("not parallel");
    if (!(w1.front().dom == w2.front().dom) || !(w1.back().cod == w2.back().cod))
        throw InvalidInput("not parallel");
    MorphismWord n1 = normalize(w1), n2 = normalize(w2);
    if (n1 == n2) return true;
    const Opetope& cod = w1.back().cod;
    return class_of_word_in(n1, cod) == class_of_word_in(n2, cod);
}

std::vector<HomElement> hom(const Opetope& x, const Opetope& alpha) {
    std::vector<HomElement> out;
    if (x.dim() > alpha.dim()) return out;
    if (x.dim() == alpha.dim()) {
        if (x == alpha) out.push_back({{x.dim(), 0}, {}});
        return out;
    }
    const FaceTable& t = face_table(alpha);
    const auto& classes = t.at(x.dim());
    for (size_t c = 0; c < classes.size(); ++c)
        if (classes[c].shape == x)
            out.push_back({{x.dim(), static_cast<int>(c)}, classes[c].representative});
    return out;
}

} // namespace opetopic::category
