#include "opetopic/oset.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "opetopic/union_find.hpp"

namespace opetopic::osets {

using category::FaceAddress;
using category::FaceTable;
using category::face_table;

// ---------------------------------------------------------------------------
// OpetopicSet basics

const Cell* OpetopicSet::find(int dim, const CellId& id) const {
    if (dim < 0 || dim >= static_cast<int>(cells.size())) return nullptr;
    for (const Cell& c : cells[dim])
        if (c.id == id) return &c;
    return nullptr;
}

void OpetopicSet::add(Cell c) {
    int d = c.dim();
    if (d >= static_cast<int>(cells.size())) cells.resize(d + 1);
    cells[d].push_back(std::move(c));
}

void OpetopicSet::sort_cells() {
    for (auto& layer : cells)
        std::sort(layer.begin(), layer.end(),
                  [](const Cell& a, const Cell& b) { return a.id < b.id; });
}

long OpetopicSet::total_cells() const {
    long n = 0;
    for (const auto& layer : cells) n += static_cast<long>(layer.size());
    return n;
}

ValidationReport validate(const OpetopicSet& X) {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.errors.push_back(msg);
    };
    for (int d = 0; d < static_cast<int>(X.cells.size()); ++d) {
        std::set<CellId> ids;
        for (const Cell& c : X.cells[d]) {
            if (!ids.insert(c.id).second) fail("duplicate id " + c.id);
            if (c.shape.dim() != d) {
                fail("cell " + c.id + " stored at the wrong dimension");
                continue;
            }
            const FaceTable& t = face_table(c.shape);
            // totality and shapes
            bool total = true;
            for (int m = 0; m < d; ++m)
                for (int cl = 0; cl < static_cast<int>(t.at(m).size()); ++cl) {
                    auto it = c.boundary.find({m, cl});
                    if (it == c.boundary.end()) {
                        fail("cell " + c.id + " misses a boundary assignment");
                        total = false;
                        continue;
                    }
                    const Cell* b = X.find(m, it->second);
                    if (!b) {
                        fail("cell " + c.id + " has dangling boundary id " + it->second);
                        total = false;
                        continue;
                    }
                    if (!(b->shape == t.at(m)[cl].shape)) {
                        fail("cell " + c.id + " boundary shape mismatch at class " +
                             std::to_string(m) + "/" + std::to_string(cl));
                        total = false;
                    }
                }
            for (const auto& [addr, id] : c.boundary)
                if (addr.dim < 0 || addr.dim >= d || addr.cls < 0 ||
                    addr.cls >= static_cast<int>(t.at(addr.dim).size()))
                    fail("cell " + c.id + " has a boundary entry off its face table");
            if (!total) continue;
            // functoriality: the boundary of a boundary is the composed address
            for (int m = 0; m < d; ++m)
                for (int cl = 0; cl < static_cast<int>(t.at(m).size()); ++cl) {
                    const Cell* b = X.find(m, c.boundary.at({m, cl}));
                    const FaceTable& bt = face_table(b->shape);
                    for (int mm = 0; mm < m; ++mm)
                        for (int c2 = 0; c2 < static_cast<int>(bt.at(mm).size()); ++c2) {
                            FaceAddress composed = t.compose({m, cl}, {mm, c2});
                            auto sub = b->boundary.find({mm, c2});
                            if (sub == b->boundary.end()) continue; // reported on b itself
                            if (sub->second != c.boundary.at(composed))
                                fail("cell " + c.id + " has a non-functorial boundary at " +
                                     std::to_string(m) + "/" + std::to_string(cl));
                        }
                }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Morphisms

const CellId& OSetMorphism::apply(int dim, const CellId& id) const {
    if (dim < 0 || dim >= static_cast<int>(map.size()))
        throw InvalidInput("morphism undefined at dimension " + std::to_string(dim));
    auto it = map[dim].find(id);
    if (it == map[dim].end()) throw InvalidInput("morphism undefined on cell " + id);
    return it->second;
}

ValidationReport validate_morphism(const OpetopicSet& X, const OpetopicSet& Y,
                                   const OSetMorphism& F) {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.errors.push_back(msg);
    };
    for (int d = 0; d < static_cast<int>(X.cells.size()); ++d) {
        for (const Cell& c : X.cells[d]) {
            if (d >= static_cast<int>(F.map.size()) || !F.map[d].count(c.id)) {
                fail("no image for cell " + c.id);
                continue;
            }
            const CellId& im = F.map[d].at(c.id);
            const Cell* y = Y.find(d, im);
            if (!y) {
                fail("image of " + c.id + " is dangling");
                continue;
            }
            if (!(y->shape == c.shape)) {
                fail("image of " + c.id + " changes shape");
                continue;
            }
            for (const auto& [addr, bid] : c.boundary) {
                const CellId& want = y->boundary.at(addr);
                if (addr.dim >= static_cast<int>(F.map.size()) || !F.map[addr.dim].count(bid)) {
                    fail("no image for boundary cell " + bid);
                    continue;
                }
                if (F.map[addr.dim].at(bid) != want)
                    fail("morphism breaks the frame of " + c.id);
            }
        }
    }
    return rep;
}

OSetMorphism identity_morphism(const OpetopicSet& X) {
    OSetMorphism f;
    f.map.resize(X.cells.size());
    for (int d = 0; d < static_cast<int>(X.cells.size()); ++d)
        for (const Cell& c : X.cells[d]) f.map[d][c.id] = c.id;
    return f;
}

bool is_identity_on(const OpetopicSet& X, const OSetMorphism& F) {
    for (int d = 0; d < static_cast<int>(X.cells.size()); ++d)
        for (const Cell& c : X.cells[d]) {
            if (d >= static_cast<int>(F.map.size())) return false;
            auto it = F.map[d].find(c.id);
            if (it == F.map[d].end() || it->second != c.id) return false;
        }
    return true;
}

bool is_iso_morphism(const OpetopicSet& X, const OpetopicSet& Y, const OSetMorphism& F) {
    if (!validate_morphism(X, Y, F).ok) return false;
    int dmax = std::max(X.max_dim(), Y.max_dim());
    for (int d = 0; d <= dmax; ++d) {
        const auto xs = d <= X.max_dim() ? X.cells[d].size() : 0;
        const auto ys = d <= Y.max_dim() ? Y.cells[d].size() : 0;
        if (xs != ys) return false;
        std::set<CellId> images;
        if (d <= X.max_dim())
            for (const Cell& c : X.cells[d]) images.insert(F.map[d].at(c.id));
        if (images.size() != xs) return false;
    }
    return true;
}

OSetMorphism compose(const OSetMorphism& F, const OSetMorphism& G) {
    OSetMorphism h;
    h.map.resize(F.map.size());
    for (int d = 0; d < static_cast<int>(F.map.size()); ++d)
        for (const auto& [a, b] : F.map[d]) h.map[d][a] = G.apply(d, b);
    return h;
}

// ---------------------------------------------------------------------------
// Representables

namespace {

CellId class_id(int dim, int cls) { return std::to_string(dim) + "." + std::to_string(cls); }

} // namespace

OpetopicSet realize(const Opetope& alpha) {
    const FaceTable& t = face_table(alpha);
    OpetopicSet X;
    for (int d = 0; d <= alpha.dim(); ++d)
        for (int c = 0; c < static_cast<int>(t.at(d).size()); ++c) {
            Cell cell;
            cell.id = class_id(d, c);
            cell.shape = t.at(d)[c].shape;
            const FaceTable& st = face_table(cell.shape);
            for (int m = 0; m < d; ++m)
                for (int c2 = 0; c2 < static_cast<int>(st.at(m).size()); ++c2) {
                    FaceAddress reached = t.compose({d, c}, {m, c2});
                    cell.boundary[{m, c2}] = class_id(m, reached.cls);
                }
            X.add(std::move(cell));
        }
    X.sort_cells();
    return X;
}

OSetMorphism realize_morphism(const Opetope& x, const Opetope& alpha, const FaceAddress& h) {
    const FaceTable& tx = face_table(x);
    const FaceTable& ta = face_table(alpha);
    if (!(ta.at(h.dim).at(h.cls).shape == x))
        throw InvalidInput("face class does not have the stated shape");
    OSetMorphism f;
    f.map.resize(x.dim() + 1);
    for (int d = 0; d <= x.dim(); ++d)
        for (int c = 0; c < static_cast<int>(tx.at(d).size()); ++c) {
            FaceAddress image = ta.compose(h, {d, c});
            f.map[d][class_id(d, c)] = class_id(d, image.cls);
        }
    return f;
}

std::vector<Cell> cells_of_shape(const Opetope& alpha, const OpetopicSet& X) {
    std::vector<Cell> out;
    if (alpha.dim() > X.max_dim()) return out;
    for (const Cell& c : X.cells[alpha.dim()])
        if (c.shape == alpha) out.push_back(c);
    return out;
}

OSetMorphism morphism_from_cell(const Opetope& alpha, const OpetopicSet& X, const Cell& c) {
    if (!(c.shape == alpha)) throw InvalidInput("cell has a different shape");
    if (!X.find(c.dim(), c.id)) throw InvalidInput("cell does not belong to the opetopic set");
    const FaceTable& t = face_table(alpha);
    OSetMorphism f;
    f.map.resize(alpha.dim() + 1);
    f.map[alpha.dim()][class_id(alpha.dim(), 0)] = c.id;
    for (int d = 0; d < alpha.dim(); ++d)
        for (int cl = 0; cl < static_cast<int>(t.at(d).size()); ++cl)
            f.map[d][class_id(d, cl)] = c.boundary.at({d, cl});
    return f;
}

// ---------------------------------------------------------------------------
// Diagrams and colimits

ValidationReport validate_diagram(const Diagram& d) {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.errors.push_back(msg);
    };
    for (size_t i = 0; i < d.objects.size(); ++i) {
        ValidationReport r = validate(d.objects[i]);
        if (!r.ok) fail("object " + std::to_string(i) + ": " + r.errors.front());
    }
    for (size_t a = 0; a < d.arrows.size(); ++a) {
        const auto& ar = d.arrows[a];
        if (ar.src < 0 || ar.src >= static_cast<int>(d.objects.size()) || ar.dst < 0 ||
            ar.dst >= static_cast<int>(d.objects.size())) {
            fail("arrow " + std::to_string(a) + " has bad endpoints");
            continue;
        }
        ValidationReport r = validate_morphism(d.objects[ar.src], d.objects[ar.dst], ar.map);
        if (!r.ok) fail("arrow " + std::to_string(a) + ": " + r.errors.front());
    }
    for (const auto& [lhs, rhs] : d.relations) {
        auto path_ends = [&](const std::vector<int>& path, int& s, int& t) -> bool {
            if (path.empty()) return false;
            for (int a : path)
                if (a < 0 || a >= static_cast<int>(d.arrows.size())) return false;
            s = d.arrows[path.front()].src;
            t = d.arrows[path.back()].dst;
            for (size_t i = 0; i + 1 < path.size(); ++i)
                if (d.arrows[path[i]].dst != d.arrows[path[i + 1]].src) return false;
            return true;
        };
        int s1, t1, s2, t2;
        if (!path_ends(lhs, s1, t1) || !path_ends(rhs, s2, t2) || s1 != s2 || t1 != t2) {
            fail("relation is not a pair of parallel paths");
            continue;
        }
        auto compose_path = [&](const std::vector<int>& path) {
            OSetMorphism f = d.arrows[path[0]].map;
            for (size_t i = 1; i < path.size(); ++i) f = compose(f, d.arrows[path[i]].map);
            return f;
        };
        OSetMorphism f1 = compose_path(lhs), f2 = compose_path(rhs);
        for (int dd = 0; dd < static_cast<int>(d.objects[s1].cells.size()); ++dd)
            for (const Cell& c : d.objects[s1].cells[dd])
                if (f1.apply(dd, c.id) != f2.apply(dd, c.id))
                    fail("relation fails on cell " + c.id);
    }
    return rep;
}

ColimitResult colimit(const Diagram& d) {
    ValidationReport rep = validate_diagram(d);
    if (!rep.ok) throw InvalidInput("non-functorial diagram: " + rep.errors.front());

    int dmax = -1;
    for (const auto& obj : d.objects) dmax = std::max(dmax, obj.max_dim());

    ColimitResult out;
    out.coprojections.resize(d.objects.size());
    for (size_t i = 0; i < d.objects.size(); ++i)
        out.coprojections[i].map.resize(d.objects[i].cells.size());

    // per dimension: disjoint union, then union-find over the arrow relations
    std::vector<std::map<std::pair<int, CellId>, CellId>> rep_of(dmax + 1);
    for (int dim = 0; dim <= dmax; ++dim) {
        std::vector<std::pair<int, CellId>> elems; // (object, cell id)
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
            for (const auto& [a, b] : ar.map.map[dim])
                uf.unite(index.at({ar.src, a}), index.at({ar.dst, b}));
        }
        // representative: least (object index, position) pair = least element id
        for (size_t e = 0; e < elems.size(); ++e) {
            int root = uf.find(static_cast<int>(e));
            const auto& [obj, cid] = elems[root];
            // readable id: objectIndex.cellIndex within that object's layer
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

    ValidationReport zrep = validate(out.colimit);
    if (!zrep.ok) throw InvalidInput("internal: colimit failed validation: " + zrep.errors.front());
    return out;
}

// ---------------------------------------------------------------------------
// Universal property, by brute force

namespace {

bool cocone_commutes(const std::vector<OSetMorphism>& cocone, const Diagram& d,
                     const OpetopicSet& W) {
    for (size_t i = 0; i < d.objects.size(); ++i)
        if (!validate_morphism(d.objects[i], W, cocone[i]).ok) return false;
    for (const auto& ar : d.arrows) {
        for (int dim = 0; dim < static_cast<int>(d.objects[ar.src].cells.size()); ++dim)
            for (const Cell& c : d.objects[ar.src].cells[dim]) {
                if (cocone[ar.src].apply(dim, c.id) !=
                    cocone[ar.dst].apply(dim, ar.map.apply(dim, c.id)))
                    return false;
            }
    }
    return true;
}

long count_mediating(const OpetopicSet& Z, const std::vector<OSetMorphism>& zc,
                     const std::vector<OSetMorphism>& wc, const Diagram& d, const OpetopicSet& W,
                     long guard) {
    // assignments forced on coprojection images; free elsewhere
    std::map<std::pair<int, CellId>, CellId> forced;
    for (size_t i = 0; i < d.objects.size(); ++i)
        for (int dim = 0; dim < static_cast<int>(d.objects[i].cells.size()); ++dim)
            for (const Cell& c : d.objects[i].cells[dim]) {
                auto key = std::make_pair(dim, zc[i].apply(dim, c.id));
                CellId want = wc[i].apply(dim, c.id);
                auto it = forced.find(key);
                if (it != forced.end() && it->second != want) return 0;
                forced.emplace(key, want);
            }
    // dimension-ascending backtracking over the unforced cells
    std::vector<const Cell*> order;
    for (int dim = 0; dim < static_cast<int>(Z.cells.size()); ++dim)
        for (const Cell& c : Z.cells[dim]) order.push_back(&c);

    OSetMorphism f;
    f.map.resize(Z.cells.size());
    long count = 0;
    long steps = 0;
    auto rec = [&](auto&& self, size_t at) -> void {
        if (++steps > guard) throw BoundExceeded("mediating search guard exceeded");
        if (at == order.size()) {
            ++count;
            return;
        }
        const Cell& c = *order[at];
        int dim = c.dim();
        auto try_assign = [&](const Cell& w) {
            if (!(w.shape == c.shape)) return;
            for (const auto& [addr, bid] : c.boundary)
                if (f.map[addr.dim].at(bid) != w.boundary.at(addr)) return;
            f.map[dim][c.id] = w.id;
            self(self, at + 1);
            f.map[dim].erase(c.id);
        };
        auto it = forced.find({dim, c.id});
        if (it != forced.end()) {
            const Cell* w = W.find(dim, it->second);
            if (w) try_assign(*w);
            return;
        }
        if (dim <= W.max_dim())
            for (const Cell& w : W.cells[dim]) try_assign(w);
    };
    rec(rec, 0);
    return count;
}

} // namespace

bool is_colimit(const OpetopicSet& Z, const std::vector<OSetMorphism>& cocone, const Diagram& d,
                long guard) {
    if (cocone.size() != d.objects.size()) return false;
    if (!validate(Z).ok) return false;
    if (!cocone_commutes(cocone, d, Z)) return false;

    // targets: Z itself and Z with an extra disconnected point
    std::vector<std::pair<OpetopicSet, std::vector<OSetMorphism>>> targets;
    targets.emplace_back(Z, cocone);

    OpetopicSet zplus = Z;
    Cell extra;
    extra.id = "extra.0";
    extra.shape = Opetope::point();
    zplus.add(extra);
    zplus.sort_cells();
    std::vector<OSetMorphism> plus_cocone = cocone;
    targets.emplace_back(std::move(zplus), std::move(plus_cocone));

    for (auto& [W, wc] : targets) {
        if (!cocone_commutes(wc, d, W)) return false;
        if (count_mediating(Z, cocone, wc, d, W, guard) != 1) return false;
    }

    // and the coprojections must jointly cover Z: no cell may sit outside
    // the images, or mediating maps into larger sets could not be unique
    std::set<std::pair<int, CellId>> covered;
    for (size_t i = 0; i < d.objects.size(); ++i)
        for (int dim = 0; dim < static_cast<int>(d.objects[i].cells.size()); ++dim)
            for (const Cell& c : d.objects[i].cells[dim])
                covered.insert({dim, cocone[i].apply(dim, c.id)});
    for (int dim = 0; dim < static_cast<int>(Z.cells.size()); ++dim)
        for (const Cell& c : Z.cells[dim])
            if (!covered.count({dim, c.id})) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Morphism enumeration

std::vector<OSetMorphism> hom_oset(const OpetopicSet& X, const OpetopicSet& Y, long guard) {
    // High cells first: assigning a cell forces its whole boundary, which
    // prunes the search to near-linear on representables.
    std::vector<const Cell*> order;
    for (int dim = X.max_dim(); dim >= 0; --dim)
        for (const Cell& c : X.cells[dim]) order.push_back(&c);

    std::vector<OSetMorphism> out;
    std::map<std::pair<int, CellId>, CellId> assign;
    long steps = 0;
    auto rec = [&](auto&& self, size_t at) -> void {
        if (++steps > guard) throw BoundExceeded("hom enumeration guard exceeded");
        if (at == order.size()) {
            OSetMorphism f;
            f.map.resize(X.cells.size());
            for (int dim = 0; dim < static_cast<int>(X.cells.size()); ++dim)
                for (const Cell& c : X.cells[dim]) f.map[dim][c.id] = assign.at({dim, c.id});
            out.push_back(std::move(f));
            return;
        }
        const Cell& c = *order[at];
        const int dim = c.dim();
        const auto key = std::make_pair(dim, c.id);
        const bool was_forced = assign.count(key) > 0;
        std::vector<const Cell*> candidates;
        if (was_forced) {
            const Cell* y = Y.find(dim, assign.at(key));
            if (y && y->shape == c.shape) candidates.push_back(y);
        } else if (dim <= Y.max_dim()) {
            for (const Cell& y : Y.cells[dim])
                if (y.shape == c.shape) candidates.push_back(&y);
        }
        for (const Cell* y : candidates) {
            std::vector<std::pair<int, CellId>> added;
            bool ok = true;
            if (!was_forced) {
                assign[key] = y->id;
                added.push_back(key);
            }
            for (const auto& [addr, bid] : c.boundary) {
                auto bkey = std::make_pair(addr.dim, bid);
                const CellId& want = y->boundary.at(addr);
                auto bit = assign.find(bkey);
                if (bit != assign.end()) {
                    if (bit->second != want) {
                        ok = false;
                        break;
                    }
                } else {
                    assign[bkey] = want;
                    added.push_back(bkey);
                }
            }
            if (ok) self(self, at + 1);
            for (auto& k : added) assign.erase(k);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(),
              [](const OSetMorphism& a, const OSetMorphism& b) { return a.map < b.map; });
    return out;
}

// ---------------------------------------------------------------------------
// Openings, niches, frames

namespace {

// all consistent labellings of the classes at dims <= maxdim
void label_classes(const Opetope& shape, const OpetopicSet& X, int maxdim,
                   std::map<FaceAddress, CellId> base,
                   std::vector<std::map<FaceAddress, CellId>>& out, long guard) {
    const FaceTable& t = face_table(shape);
    std::vector<FaceAddress> addrs;
    for (int d = 0; d <= std::min(maxdim, shape.dim() - 1); ++d)
        for (int c = 0; c < static_cast<int>(t.at(d).size()); ++c)
            if (!base.count({d, c})) addrs.push_back({d, c});

    auto rec = [&](auto&& self, size_t at, std::map<FaceAddress, CellId>& acc) -> void {
        if (static_cast<long>(out.size()) > guard)
            throw BoundExceeded("opening enumeration guard exceeded");
        if (at == addrs.size()) {
            out.push_back(acc);
            return;
        }
        FaceAddress a = addrs[at];
        const Opetope& s = t.at(a.dim)[a.cls].shape;
        if (a.dim > X.max_dim()) return;
        for (const Cell& cand : X.cells[a.dim]) {
            if (!(cand.shape == s)) continue;
            // the candidate's own boundary must agree with labels already given
            bool ok = true;
            const FaceTable& st = face_table(s);
            for (int dd = 0; dd < s.dim() && ok; ++dd)
                for (int c2 = 0; c2 < static_cast<int>(st.at(dd).size()) && ok; ++c2) {
                    FaceAddress sub = t.compose(a, {dd, c2});
                    auto it = acc.find(sub);
                    if (it != acc.end() && it->second != cand.boundary.at({dd, c2})) ok = false;
                }
            if (!ok) continue;
            acc[a] = cand.id;
            self(self, at + 1, acc);
            acc.erase(a);
        }
    };
    rec(rec, 0, base);
}

} // namespace

std::vector<PartialLabelling> enumerate_openings(const OpetopicSet& X, int k, int max_nodes,
                                                 int max_arity, long guard) {
    if (k < 1) throw InvalidInput("openings exist from dimension 1 up");
    std::vector<PartialLabelling> out;
    for (const Opetope& shape : enumerate_opetopes(k, max_nodes, max_arity)) {
        std::vector<std::map<FaceAddress, CellId>> labellings;
        label_classes(shape, X, k - 2, {}, labellings, guard);
        for (auto& l : labellings) out.push_back({shape, std::move(l)});
    }
    return out;
}

std::vector<PartialLabelling> to_niches(const PartialLabelling& opening, const OpetopicSet& X) {
    const Opetope& shape = opening.shape;
    const int k = shape.dim();
    // sources are the classes (k-1, 0..m-1); fill them, keep the opening fixed
    std::map<FaceAddress, CellId> base = opening.labels;
    std::vector<std::map<FaceAddress, CellId>> filled;
    // enumerate labels for source classes only: use label_classes, then drop
    // labellings that added the target class
    const FaceTable& t = face_table(shape);
    const int m = shape.source_arity();
    std::vector<FaceAddress> sources;
    for (int i = 0; i < m; ++i) sources.push_back({k - 1, i});

    auto rec = [&](auto&& self, size_t at, std::map<FaceAddress, CellId>& acc) -> void {
        if (at == sources.size()) {
            filled.push_back(acc);
            return;
        }
        FaceAddress a = sources[at];
        const Opetope& s = t.at(a.dim)[a.cls].shape;
        if (a.dim > X.max_dim()) return;
        for (const Cell& cand : X.cells[a.dim]) {
            if (!(cand.shape == s)) continue;
            bool ok = true;
            const FaceTable& st = face_table(s);
            for (int dd = 0; dd < s.dim() && ok; ++dd)
                for (int c2 = 0; c2 < static_cast<int>(st.at(dd).size()) && ok; ++c2) {
                    FaceAddress sub = t.compose(a, {dd, c2});
                    auto it = acc.find(sub);
                    if (it != acc.end() && it->second != cand.boundary.at({dd, c2})) ok = false;
                }
            if (!ok) continue;
            acc[a] = cand.id;
            self(self, at + 1, acc);
            acc.erase(a);
        }
    };
    rec(rec, 0, base);

    std::vector<PartialLabelling> out;
    for (auto& l : filled) out.push_back({shape, std::move(l)});
    return out;
}

std::vector<PartialLabelling> to_frames(const PartialLabelling& niche, const OpetopicSet& X) {
    const Opetope& shape = niche.shape;
    const int k = shape.dim();
    const FaceTable& t = face_table(shape);
    FaceAddress taddr{k - 1, shape.source_arity()};
    const Opetope& ts = t.at(taddr.dim)[taddr.cls].shape;
    std::vector<PartialLabelling> out;
    if (k - 1 > X.max_dim()) return out;
    for (const Cell& cand : X.cells[k - 1]) {
        if (!(cand.shape == ts)) continue;
        bool ok = true;
        const FaceTable& st = face_table(ts);
        for (int dd = 0; dd < ts.dim() && ok; ++dd)
            for (int c2 = 0; c2 < static_cast<int>(st.at(dd).size()) && ok; ++c2) {
                FaceAddress sub = t.compose(taddr, {dd, c2});
                auto it = niche.labels.find(sub);
                if (it != niche.labels.end() && it->second != cand.boundary.at({dd, c2})) ok = false;
            }
        if (!ok) continue;
        PartialLabelling frame = niche;
        frame.labels[taddr] = cand.id;
        out.push_back(std::move(frame));
    }
    return out;
}

} // namespace opetopic::osets
