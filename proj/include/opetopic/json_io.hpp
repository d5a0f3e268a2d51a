#ifndef OPETOPIC_JSON_IO_HPP
#define OPETOPIC_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "opetopic/category.hpp"
#include "opetopic/opetope.hpp"
#include "opetopic/oset.hpp"
#include "opetopic/trees.hpp"

namespace opetopic::io {

using json = nlohmann::ordered_json;

// {"arities":[...], "map":[[port,port],...]}, ports as
// {"kind":..., "node":i, "slot":b} with only the applicable fields,
// map sorted by domain port.
json wiring_to_json(const trees::Wiring& w);
trees::Wiring wiring_from_json(const json& j);

// {"dim":k} for atoms, else {"dim":k, "tree":{"wiring":..., "nodes":[...],
// "edges":[code,...]}}.
json opetope_to_json(const Opetope& o);
Opetope opetope_from_json(const json& j);

// {"k":[{"class":c,"shape":code,"boundary":{"m/c":idx,...}},...], ...}
// with dimensions descending.
json face_table_to_json(const category::FaceTable& t);

// {"codomain":opetope, "word":[{"kind","index","at"},...]} listed from the
// domain up to the codomain.
json word_to_json(const category::MorphismWord& w);
category::MorphismWord word_from_json(const json& j);

json hom_to_json(const std::vector<category::HomElement>& hom, const Opetope& cod);

// {"cells":{"0":[{"id","shape","boundary":{"m/c":"id"}},...],...}}
json oset_to_json(const osets::OpetopicSet& X);
osets::OpetopicSet oset_from_json(const json& j);

// {"map":{"0":{"a":"b",...},...}}
json morphism_to_json(const osets::OSetMorphism& f);
osets::OSetMorphism morphism_from_json(const json& j);

// {"objects":[...], "arrows":[{"src","dst","map"},...],
//  "relations":[[[arrow indices],[arrow indices]],...]}
json diagram_to_json(const osets::Diagram& d);
osets::Diagram diagram_from_json(const json& j);

json labelling_to_json(const osets::PartialLabelling& p);

// graphviz renderings; node labels are canonical codes truncated to 24
// characters plus a stable hash suffix
std::string wiring_dot(const trees::Wiring& w);
std::string opetope_dot(const Opetope& o);

} // namespace opetopic::io

#endif
