#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opetopic/json_io.hpp"
#include "opetopic/verify.hpp"

namespace py = pybind11;
using namespace opetopic;

namespace {

Opetope from_any(const std::string& code_or_json) {
    if (!code_or_json.empty() && code_or_json.front() == '{')
        return io::opetope_from_json(io::json::parse(code_or_json));
    return parse_code(code_or_json);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "opetopes, their face category, and opetopic sets at desk scale";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<BoundExceeded>(m, "BoundExceeded", PyExc_RuntimeError);

    m.def(
        "enumerate",
        [](int dim, int max_nodes, int max_arity) {
            std::vector<std::string> out;
            for (const Opetope& o : enumerate_opetopes(dim, max_nodes, max_arity))
                out.push_back(o.code());
            return out;
        },
        py::arg("dim"), py::arg("max_nodes") = 3, py::arg("max_arity") = 3,
        "canonical codes of all opetopes within the bounds, sorted");

    m.def(
        "opetope_json",
        [](const std::string& code) { return io::opetope_to_json(parse_code(code)).dump(); },
        py::arg("code"), "full JSON form of the opetope with this canonical code");

    m.def(
        "code_of", [](const std::string& json_text) { return from_any(json_text).code(); },
        py::arg("opetope"), "canonical code of an opetope given as JSON or code");

    m.def(
        "source_codes",
        [](const std::string& opetope) {
            std::vector<std::string> out;
            for (const Opetope& s : source_faces(from_any(opetope))) out.push_back(s.code());
            return out;
        },
        py::arg("opetope"));

    m.def(
        "target_code", [](const std::string& opetope) { return target(from_any(opetope)).code(); },
        py::arg("opetope"));

    m.def(
        "face_counts",
        [](const std::string& opetope) {
            return category::face_table(from_any(opetope)).counts();
        },
        py::arg("opetope"), "face class counts indexed by dimension, ascending");

    m.def(
        "face_table_json",
        [](const std::string& opetope) {
            return io::face_table_to_json(category::face_table(from_any(opetope))).dump();
        },
        py::arg("opetope"));

    m.def(
        "hom_count",
        [](const std::string& x, const std::string& alpha) {
            return static_cast<int>(category::hom(from_any(x), from_any(alpha)).size());
        },
        py::arg("x"), py::arg("alpha"), "number of morphism classes x -> alpha");

    m.def(
        "normalize_word",
        [](const std::string& word_json) {
            auto w = io::word_from_json(io::json::parse(word_json));
            return io::word_to_json(category::normalize(w)).dump();
        },
        py::arg("word"), "normal form of a morphism word given as JSON");

    m.def(
        "realize_json",
        [](const std::string& opetope) {
            return io::oset_to_json(osets::realize(from_any(opetope))).dump();
        },
        py::arg("opetope"), "the representable opetopic set");

    m.def(
        "colimit_json",
        [](const std::string& diagram_json) {
            osets::Diagram d = io::diagram_from_json(io::json::parse(diagram_json));
            osets::ColimitResult res = osets::colimit(d);
            if (!osets::is_colimit(res.colimit, res.coprojections, d))
                throw InvalidInput("universal property self-check failed");
            io::json j;
            j["colimit"] = io::oset_to_json(res.colimit);
            io::json co = io::json::array();
            for (const auto& f : res.coprojections) co.push_back(io::morphism_to_json(f));
            j["coprojections"] = std::move(co);
            return j.dump();
        },
        py::arg("diagram"), "colimit of a diagram of opetopic sets, with coprojections");

    m.def(
        "check",
        [](const std::string& only, std::uint64_t seed) {
            verify::Bounds b;
            b.seed = seed;
            std::vector<std::tuple<std::string, bool, std::string>> out;
            for (const auto& r : verify::run_checks(b, only))
                out.emplace_back(r.check, r.pass, r.witness);
            return out;
        },
        py::arg("only") = "", py::arg("seed") = 1,
        "run verification checks; returns (name, pass, witness) triples");

    m.def(
        "render_dot", [](const std::string& opetope) { return io::opetope_dot(from_any(opetope)); },
        py::arg("opetope"));
}
