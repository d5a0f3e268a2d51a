#include "opetopic/json_io.hpp"

#include <sstream>

namespace opetopic::io {

using trees::Port;
using trees::Wiring;

// ---------------------------------------------------------------------------
// Wirings

namespace {

json port_to_json(const Port& p) {
    json j;
    switch (p.kind) {
    case Port::Kind::node_input:
        j["kind"] = "node-input";
        j["node"] = p.node;
        j["slot"] = p.slot;
        break;
    case Port::Kind::node_output:
        j["kind"] = "node-output";
        j["node"] = p.node;
        break;
    case Port::Kind::formal_input:
        j["kind"] = "formal-input";
        j["slot"] = p.slot;
        break;
    case Port::Kind::formal_output:
        j["kind"] = "formal-output";
        break;
    }
    return j;
}

Port port_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "node-input") return Port::node_input(j.at("node").get<int>(), j.at("slot").get<int>());
    if (kind == "node-output") return Port::node_output(j.at("node").get<int>());
    if (kind == "formal-input") return Port::formal_input(j.at("slot").get<int>());
    if (kind == "formal-output") return Port::formal_output();
    throw InvalidInput("unknown port kind " + kind);
}

std::string stable_hash_hex(const std::string& s) {
    // FNV-1a, platform independent
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(h & 0xffffffffu));
    return buf;
}

std::string truncated_label(const std::string& code) {
    if (code.size() <= 24) return code;
    return code.substr(0, 24) + "~" + stable_hash_hex(code);
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

json wiring_to_json(const Wiring& w) {
    json j;
    j["arities"] = w.profile().arities;
    json map = json::array();
    for (const auto& [d, c] : w.map()) map.push_back(json::array({port_to_json(d), port_to_json(c)}));
    j["map"] = std::move(map);
    return j;
}

Wiring wiring_from_json(const json& j) {
    trees::NodeProfile prof{j.at("arities").get<std::vector<int>>()};
    std::vector<std::pair<Port, Port>> pairs;
    for (const json& e : j.at("map"))
        pairs.emplace_back(port_from_json(e.at(0)), port_from_json(e.at(1)));
    return Wiring::from_pairs(std::move(prof), std::move(pairs));
}

// ---------------------------------------------------------------------------
// Opetopes

json opetope_to_json(const Opetope& o) {
    json j;
    j["dim"] = o.dim();
    if (o.has_body()) {
        json tree;
        tree["wiring"] = wiring_to_json(o.wiring());
        json nodes = json::array();
        for (const Opetope& n : o.node_labels()) nodes.push_back(opetope_to_json(n));
        tree["nodes"] = std::move(nodes);
        json edges = json::array();
        for (const Opetope& e : o.edge_labels()) edges.push_back(e.code());
        tree["edges"] = std::move(edges);
        j["tree"] = std::move(tree);
    }
    return j;
}

Opetope opetope_from_json(const json& j) {
    if (j.is_string()) return parse_code(j.get<std::string>());
    if (j.contains("code")) return parse_code(j.at("code").get<std::string>());
    const int dim = j.at("dim").get<int>();
    if (!j.contains("tree")) {
        if (dim > 1) throw InvalidInput("opetopes above dimension 1 need a pasting tree");
        return make_opetope(dim);
    }
    const json& tree = j.at("tree");
    PastingDiagram pd;
    pd.wiring = wiring_from_json(tree.at("wiring"));
    for (const json& n : tree.at("nodes")) pd.nodes.push_back(opetope_from_json(n));
    if (tree.contains("edges"))
        for (const json& e : tree.at("edges")) pd.edges.push_back(parse_code(e.get<std::string>()));
    return make_opetope(dim, pd);
}

// ---------------------------------------------------------------------------
// Face tables, words, hom sets

json face_table_to_json(const category::FaceTable& t) {
    json j;
    for (int d = t.top_dim(); d >= 0; --d) {
        json classes = json::array();
        for (int c = 0; c < static_cast<int>(t.at(d).size()); ++c) {
            const auto& cls = t.at(d)[c];
            json e;
            e["class"] = c;
            e["shape"] = cls.shape.code();
            json boundary = json::object();
            const auto& st = category::face_table(cls.shape);
            for (int dd = 0; dd < d; ++dd)
                for (int c2 = 0; c2 < static_cast<int>(st.at(dd).size()); ++c2) {
                    std::string key = std::to_string(dd) + "/" + std::to_string(c2);
                    boundary[key] = t.compose({d, c}, {dd, c2}).cls;
                }
            e["boundary"] = std::move(boundary);
            classes.push_back(std::move(e));
        }
        j[std::to_string(d)] = std::move(classes);
    }
    return j;
}

json word_to_json(const category::MorphismWord& w) {
    json j;
    if (w.empty()) throw InvalidInput("cannot serialize an empty word without its codomain");
    j["codomain"] = opetope_to_json(w.back().cod);
    json gens = json::array();
    for (const auto& g : w) {
        json e;
        switch (g.kind) {
        case category::Generator::Kind::source:
            e["kind"] = "source";
            e["index"] = g.index;
            break;
        case category::Generator::Kind::target:
            e["kind"] = "target";
            break;
        case category::Generator::Kind::iso:
            e["kind"] = "iso";
            break;
        }
        e["at"] = g.cod.code();
        gens.push_back(std::move(e));
    }
    j["word"] = std::move(gens);
    return j;
}

category::MorphismWord word_from_json(const json& j) {
    Opetope cod = opetope_from_json(j.at("codomain"));
    std::vector<json> records;
    for (const json& e : j.at("word")) records.push_back(e);
    category::MorphismWord w(records.size());
    Opetope at = cod;
    for (int i = static_cast<int>(records.size()) - 1; i >= 0; --i) {
        const json& e = records[i];
        if (e.contains("at") && e.at("at").get<std::string>() != at.code())
            throw InvalidInput("word record does not match its codomain");
        const std::string kind = e.at("kind").get<std::string>();
        if (kind == "source")
            w[i] = category::source_gen(at, e.at("index").get<int>());
        else if (kind == "target")
            w[i] = category::target_gen(at);
        else if (kind == "iso")
            w[i] = category::identity_iso(at);
        else
            throw InvalidInput("unknown generator kind " + kind);
        at = w[i].dom;
    }
    return w;
}

json hom_to_json(const std::vector<category::HomElement>& hom, const Opetope& cod) {
    json j = json::array();
    for (const auto& h : hom) {
        json e;
        e["dim"] = h.address.dim;
        e["class"] = h.address.cls;
        if (h.representative.empty()) {
            e["word"] = json::array();
        } else {
            e["word"] = word_to_json(h.representative).at("word");
        }
        (void)cod;
        j.push_back(std::move(e));
    }
    return j;
}

// ---------------------------------------------------------------------------
// Opetopic sets

json oset_to_json(const osets::OpetopicSet& X) {
    json cells = json::object();
    for (int d = 0; d < static_cast<int>(X.cells.size()); ++d) {
        json layer = json::array();
        for (const osets::Cell& c : X.cells[d]) {
            json e;
            e["id"] = c.id;
            e["shape"] = c.shape.code();
            json boundary = json::object();
            for (const auto& [addr, bid] : c.boundary)
                boundary[std::to_string(addr.dim) + "/" + std::to_string(addr.cls)] = bid;
            e["boundary"] = std::move(boundary);
            layer.push_back(std::move(e));
        }
        cells[std::to_string(d)] = std::move(layer);
    }
    json j;
    j["cells"] = std::move(cells);
    return j;
}

namespace {

category::FaceAddress address_from_key(const std::string& key) {
    auto slash = key.find('/');
    if (slash == std::string::npos) throw InvalidInput("bad face address key " + key);
    return {std::stoi(key.substr(0, slash)), std::stoi(key.substr(slash + 1))};
}

} // namespace

osets::OpetopicSet oset_from_json(const json& j) {
    osets::OpetopicSet X;
    const json& cells = j.at("cells");
    for (auto it = cells.begin(); it != cells.end(); ++it) {
        const int dim = std::stoi(it.key());
        for (const json& e : it.value()) {
            osets::Cell c;
            c.id = e.at("id").get<std::string>();
            c.shape = parse_code(e.at("shape").get<std::string>());
            if (c.shape.dim() != dim)
                throw InvalidInput("cell " + c.id + " listed at the wrong dimension");
            if (e.contains("boundary"))
                for (auto b = e.at("boundary").begin(); b != e.at("boundary").end(); ++b)
                    c.boundary[address_from_key(b.key())] = b.value().get<std::string>();
            X.add(std::move(c));
        }
    }
    X.sort_cells();
    return X;
}

json morphism_to_json(const osets::OSetMorphism& f) {
    json map = json::object();
    for (int d = 0; d < static_cast<int>(f.map.size()); ++d) {
        json layer = json::object();
        for (const auto& [a, b] : f.map[d]) layer[a] = b;
        map[std::to_string(d)] = std::move(layer);
    }
    json j;
    j["map"] = std::move(map);
    return j;
}

osets::OSetMorphism morphism_from_json(const json& j) {
    osets::OSetMorphism f;
    const json& map = j.contains("map") ? j.at("map") : j;
    for (auto it = map.begin(); it != map.end(); ++it) {
        const int dim = std::stoi(it.key());
        if (dim >= static_cast<int>(f.map.size())) f.map.resize(dim + 1);
        for (auto e = it.value().begin(); e != it.value().end(); ++e)
            f.map[dim][e.key()] = e.value().get<std::string>();
    }
    return f;
}

json diagram_to_json(const osets::Diagram& d) {
    json j;
    json objects = json::array();
    for (const auto& o : d.objects) objects.push_back(oset_to_json(o));
    j["objects"] = std::move(objects);
    json arrows = json::array();
    for (const auto& a : d.arrows) {
        json e;
        e["src"] = a.src;
        e["dst"] = a.dst;
        e["map"] = morphism_to_json(a.map).at("map");
        arrows.push_back(std::move(e));
    }
    j["arrows"] = std::move(arrows);
    json relations = json::array();
    for (const auto& [lhs, rhs] : d.relations) relations.push_back(json::array({lhs, rhs}));
    j["relations"] = std::move(relations);
    return j;
}

osets::Diagram diagram_from_json(const json& j) {
    osets::Diagram d;
    for (const json& o : j.at("objects")) d.objects.push_back(oset_from_json(o));
    if (j.contains("arrows"))
        for (const json& a : j.at("arrows"))
            d.arrows.push_back({a.at("src").get<int>(), a.at("dst").get<int>(),
                                morphism_from_json(a.at("map"))});
    if (j.contains("relations"))
        for (const json& r : j.at("relations"))
            d.relations.emplace_back(r.at(0).get<std::vector<int>>(),
                                     r.at(1).get<std::vector<int>>());
    return d;
}

json labelling_to_json(const osets::PartialLabelling& p) {
    json j;
    j["shape"] = p.shape.code();
    json labels = json::object();
    for (const auto& [addr, id] : p.labels)
        labels[std::to_string(addr.dim) + "/" + std::to_string(addr.cls)] = id;
    j["labels"] = std::move(labels);
    return j;
}

// ---------------------------------------------------------------------------
// DOT

std::string wiring_dot(const Wiring& w) {
    std::ostringstream os;
    os << "digraph wiring {\n  rankdir=BT;\n";
    for (int i = 0; i < w.profile().node_count(); ++i)
        os << "  n" << i << " [shape=box,label=\"N" << i << " (" << w.profile().arities[i]
           << ")\"];\n";
    os << "  formal [shape=plaintext,label=\"-\"];\n";
    auto vertex = [](const Port& p) {
        return p.kind == Port::Kind::node_input || p.kind == Port::Kind::node_output
                   ? "n" + std::to_string(p.node)
                   : std::string("formal");
    };
    for (const auto& [d, c] : w.map())
        os << "  " << vertex(c) << " -> " << vertex(d) << " [label=\"" << trees::to_string(d)
           << "=" << trees::to_string(c) << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string opetope_dot(const Opetope& o) {
    if (!o.has_body()) {
        std::ostringstream os;
        os << "digraph opetope {\n  a0 [label=\"" << o.code() << "\"];\n}\n";
        return os.str();
    }
    std::ostringstream os;
    os << "digraph opetope {\n  rankdir=BT;\n";
    for (int i = 0; i < static_cast<int>(o.node_labels().size()); ++i)
        os << "  n" << i << " [shape=box,label=\"" << dot_escape(truncated_label(o.node_labels()[i].code()))
           << "\"];\n";
    os << "  formal [shape=plaintext,label=\"" << dot_escape(truncated_label(o.code())) << "\"];\n";
    auto vertex = [](const Port& p) {
        return p.kind == Port::Kind::node_input || p.kind == Port::Kind::node_output
                   ? "n" + std::to_string(p.node)
                   : std::string("formal");
    };
    const auto& edges = o.edge_labels();
    size_t e = 0;
    for (const auto& [d, c] : o.wiring().map()) {
        os << "  " << vertex(c) << " -> " << vertex(d) << " [label=\""
           << dot_escape(truncated_label(edges[e].code())) << "\"];\n";
        ++e;
    }
    os << "}\n";
    return os.str();
}

} // namespace opetopic::io
