#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "opetopic/json_io.hpp"
#include "opetopic/verify.hpp"

using namespace opetopic;
using io::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidInput(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return j;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << text;
        if (text.empty() || text.back() != '\n') out << "\n";
    }
}

struct CommonOpts {
    std::string format = "text";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    cmd->add_option("--out", opts.out, "write output to this file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"opetopes, their face category, and opetopic sets at desk scale"};
    app.require_subcommand(1);

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "list canonical opetopes within bounds");
    int dim = 2, max_nodes = 3, max_arity = 3;
    CommonOpts enum_opts;
    enumerate->add_option("--dim", dim, "dimension")->required();
    enumerate->add_option("--max-nodes", max_nodes, "per-level node bound");
    enumerate->add_option("--max-arity", max_arity, "per-level arity bound");
    add_common(enumerate, enum_opts);

    // faces
    auto* faces = app.add_subcommand("faces", "face table of an opetope");
    std::string faces_file;
    CommonOpts faces_opts;
    faces->add_option("file", faces_file, "opetope JSON file")->required();
    add_common(faces, faces_opts);

    // target
    auto* target_cmd = app.add_subcommand("target", "composite of the pasting tree");
    std::string target_file;
    CommonOpts target_opts;
    target_cmd->add_option("file", target_file, "opetope JSON file")->required();
    add_common(target_cmd, target_opts);

    // hom
    auto* hom_cmd = app.add_subcommand("hom", "morphism classes x -> alpha");
    std::string hom_x, hom_alpha;
    CommonOpts hom_opts;
    hom_cmd->add_option("x", hom_x, "lower opetope JSON file")->required();
    hom_cmd->add_option("alpha", hom_alpha, "higher opetope JSON file")->required();
    add_common(hom_cmd, hom_opts);

    // normalize
    auto* normalize_cmd = app.add_subcommand("normalize", "normal form of a morphism word");
    std::string word_file;
    CommonOpts norm_opts;
    normalize_cmd->add_option("file", word_file, "word JSON file")->required();
    add_common(normalize_cmd, norm_opts);

    // realize
    auto* realize_cmd = app.add_subcommand("realize", "the representable opetopic set");
    std::string realize_file;
    CommonOpts realize_opts;
    realize_cmd->add_option("file", realize_file, "opetope JSON file")->required();
    add_common(realize_cmd, realize_opts);

    // colim
    auto* colim_cmd = app.add_subcommand("colim", "colimit of a diagram of opetopic sets");
    std::string colim_file;
    CommonOpts colim_opts;
    colim_cmd->add_option("file", colim_file, "diagram JSON file")->required();
    add_common(colim_cmd, colim_opts);

    // openings
    auto* openings_cmd = app.add_subcommand("openings", "openings of an opetopic set");
    std::string openings_file;
    int openings_dim = 2;
    bool want_niches = false, want_frames = false;
    CommonOpts open_opts;
    openings_cmd->add_option("file", openings_file, "opetopic set JSON file")->required();
    openings_cmd->add_option("--dim", openings_dim, "opening dimension");
    openings_cmd->add_option("--max-nodes", max_nodes, "shape bound");
    openings_cmd->add_option("--max-arity", max_arity, "shape bound");
    openings_cmd->add_flag("--niches", want_niches, "also list niches");
    openings_cmd->add_flag("--frames", want_frames, "also list frames");
    add_common(openings_cmd, open_opts);

    // check
    auto* check_cmd = app.add_subcommand("check", "run the verification suite");
    verify::Bounds bounds;
    std::string only, mutate_name;
    std::string check_out;
    check_cmd->add_option("--only", only, "run checks whose name starts with this prefix");
    check_cmd->add_option("--mutate", mutate_name, "inject a colimit defect")
        ->check(CLI::IsMember({"colim-skip-merge", "colim-extra-cell", "colim-wrong-frame"}));
    check_cmd->add_option("--seed", bounds.seed, "seed for the sampled instances");
    check_cmd->add_option("--max-dim", bounds.max_dim, "instance pool dimension bound");
    check_cmd->add_option("--max-nodes", bounds.max_nodes, "instance pool node bound");
    check_cmd->add_option("--max-arity", bounds.max_arity, "instance pool arity bound");
    check_cmd->add_option("--diagrams", bounds.seeded_diagrams, "seeded diagram count");
    check_cmd->add_option("--morphisms", bounds.seeded_morphisms, "seeded morphism count");
    check_cmd->add_option("--out", check_out, "write the JSON-lines report here");

    // render
    auto* render_cmd = app.add_subcommand("render", "DOT rendering of a pasting tree");
    std::string render_file;
    CommonOpts render_opts;
    render_cmd->add_option("file", render_file, "opetope JSON file")->required();
    add_common(render_cmd, render_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*enumerate) {
            auto all = enumerate_opetopes(dim, max_nodes, max_arity);
            if (enum_opts.format == "json") {
                json j = json::array();
                for (const Opetope& o : all) {
                    json e;
                    e["code"] = o.code();
                    e["sources"] = o.source_arity();
                    e["nodes"] = o.has_body() ? static_cast<int>(o.node_labels().size()) : 0;
                    j.push_back(std::move(e));
                }
                emit(j.dump(), enum_opts.out);
            } else {
                std::ostringstream os;
                os << all.size() << " opetopes of dimension " << dim << "\n";
                for (const Opetope& o : all)
                    os << "  " << o.code() << "  (sources " << o.source_arity() << ")\n";
                emit(os.str(), enum_opts.out);
            }
        } else if (*faces) {
            Opetope o = io::opetope_from_json(load_json(faces_file));
            const auto& t = category::face_table(o);
            if (faces_opts.format == "json") {
                emit(io::face_table_to_json(t).dump(), faces_opts.out);
            } else {
                std::ostringstream os;
                os << "face table of " << o.code() << "\n";
                auto counts = t.counts();
                os << "counts:";
                for (int d = o.dim(); d >= 0; --d) os << " " << counts[d];
                os << "  (dims " << o.dim() << "..0)\n";
                for (int d = o.dim(); d >= 0; --d)
                    for (int c = 0; c < static_cast<int>(t.at(d).size()); ++c)
                        os << "  " << d << "/" << c << "  " << t.at(d)[c].shape.code() << "\n";
                emit(os.str(), faces_opts.out);
            }
        } else if (*target_cmd) {
            Opetope o = io::opetope_from_json(load_json(target_file));
            Opetope t = target(o);
            if (target_opts.format == "json")
                emit(io::opetope_to_json(t).dump(), target_opts.out);
            else
                emit(describe(t), target_opts.out);
        } else if (*hom_cmd) {
            Opetope x = io::opetope_from_json(load_json(hom_x));
            Opetope alpha = io::opetope_from_json(load_json(hom_alpha));
            auto classes = category::hom(x, alpha);
            if (hom_opts.format == "json") {
                emit(io::hom_to_json(classes, alpha).dump(), hom_opts.out);
            } else {
                std::ostringstream os;
                os << classes.size() << " morphism classes " << x.code() << " -> " << alpha.code()
                   << "\n";
                for (const auto& h : classes)
                    os << "  " << h.address.dim << "/" << h.address.cls << "  "
                       << category::word_key(h.representative) << "\n";
                emit(os.str(), hom_opts.out);
            }
        } else if (*normalize_cmd) {
            auto w = io::word_from_json(load_json(word_file));
            auto n = category::normalize(w);
            emit(io::word_to_json(n).dump(), norm_opts.out);
        } else if (*realize_cmd) {
            Opetope o = io::opetope_from_json(load_json(realize_file));
            emit(io::oset_to_json(osets::realize(o)).dump(), realize_opts.out);
        } else if (*colim_cmd) {
            osets::Diagram d = io::diagram_from_json(load_json(colim_file));
            osets::ColimitResult res = osets::colimit(d);
            json j;
            j["colimit"] = io::oset_to_json(res.colimit);
            json co = json::array();
            for (const auto& f : res.coprojections) co.push_back(io::morphism_to_json(f));
            j["coprojections"] = std::move(co);
            emit(j.dump(), colim_opts.out);
            if (!osets::is_colimit(res.colimit, res.coprojections, d)) {
                std::cerr << "universal property self-check failed\n";
                return 1;
            }
        } else if (*openings_cmd) {
            osets::OpetopicSet X = io::oset_from_json(load_json(openings_file));
            auto report = osets::validate(X);
            if (!report.ok) throw InvalidInput("invalid opetopic set: " + report.errors.front());
            auto ops = osets::enumerate_openings(X, openings_dim, max_nodes, max_arity);
            json j;
            json jo = json::array();
            for (const auto& o : ops) jo.push_back(io::labelling_to_json(o));
            j["openings"] = std::move(jo);
            if (want_niches || want_frames) {
                json jn = json::array(), jf = json::array();
                for (const auto& o : ops)
                    for (const auto& n : osets::to_niches(o, X)) {
                        jn.push_back(io::labelling_to_json(n));
                        if (want_frames)
                            for (const auto& f : osets::to_frames(n, X))
                                jf.push_back(io::labelling_to_json(f));
                    }
                if (want_niches || want_frames) j["niches"] = std::move(jn);
                if (want_frames) j["frames"] = std::move(jf);
            }
            if (open_opts.format == "json") {
                emit(j.dump(), open_opts.out);
            } else {
                std::ostringstream os;
                os << j["openings"].size() << " openings at dimension " << openings_dim << "\n";
                if (j.contains("niches")) os << j["niches"].size() << " niches\n";
                if (j.contains("frames")) os << j["frames"].size() << " frames\n";
                emit(os.str(), open_opts.out);
            }
        } else if (*check_cmd) {
            verify::ColimitMutation mutation = verify::ColimitMutation::none;
            if (mutate_name == "colim-skip-merge") mutation = verify::ColimitMutation::skip_merge;
            if (mutate_name == "colim-extra-cell") mutation = verify::ColimitMutation::extra_cell;
            if (mutate_name == "colim-wrong-frame") mutation = verify::ColimitMutation::wrong_frame;
            auto reports = verify::run_checks(bounds, only, mutation);
            if (reports.empty()) {
                std::cerr << "no checks match --only " << only << "\n";
                return 2;
            }
            std::ostringstream lines;
            bool all = true;
            std::printf("%-28s %-6s %9s  %s\n", "check", "state", "ms", "instance");
            for (const auto& r : reports) {
                all = all && r.pass;
                std::printf("%-28s %-6s %9.1f  %s\n", r.check.c_str(), r.pass ? "pass" : "FAIL",
                            r.elapsed_ms, r.instance.c_str());
                if (!r.pass) std::printf("%-28s   counterexample: %s\n", "", r.witness.c_str());
                lines << verify::report_json_line(r) << "\n";
            }
            if (!check_out.empty()) {
                std::ofstream out(check_out, std::ios::binary);
                out << lines.str();
            }
            return all ? 0 : 1;
        } else if (*render_cmd) {
            json j = load_json(render_file);
            if (j.contains("arities"))
                emit(io::wiring_dot(io::wiring_from_json(j)), render_opts.out);
            else
                emit(io::opetope_dot(io::opetope_from_json(j)), render_opts.out);
        }
    } catch (const BoundExceeded& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
