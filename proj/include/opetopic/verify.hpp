#ifndef OPETOPIC_VERIFY_HPP
#define OPETOPIC_VERIFY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opetopic/category.hpp"
#include "opetopic/opetope.hpp"
#include "opetopic/oset.hpp"
#include "opetopic/trees.hpp"

namespace opetopic::verify {

// Published bound table. cmd_check with no flags runs exactly these.
struct Bounds {
    int tree_ports = 7;        // exhaustive tree/wiring sweeps
    int max_dim = 3;           // opetope instance pool
    int max_nodes = 3;         // per-level tree nodes in the pool
    int max_arity = 3;         // per-level node arity in the pool
    int one_gap_steps = 8;     // j + m for rewriting sweeps
    int pair_word_len = 5;     // words_equal vs congruence closure
    int max_cells = 60;        // total cells in generated opetopic sets
    int max_diagram_objects = 4;
    int seeded_diagrams = 50;
    int seeded_morphisms = 50;
    std::uint64_t seed = 1;
};

struct CheckReport {
    std::string check;
    std::string instance;
    bool pass = false;
    std::string witness; // counterexample on failure, witness summary on success
    double elapsed_ms = 0.0;
};

// --- tree oracles -----------------------------------------------------------

// Builds the undirected multigraph on the real nodes and checks acyclicity
// by depth-first search. Independent of has_closed_loop.
bool oracle_acyclic(const trees::Wiring& w);

// --- opetope oracles --------------------------------------------------------

// Exhaustive search for structural matchings, never consulting canonical
// codes: tries every node permutation and leaf relabelling, recursing into
// the labels. Throws BoundExceeded when more than `cap` matchings exist.
std::vector<Matching> oracle_matchings(const Opetope& a, const Opetope& b, int cap = 16);

// Exhaustive enumeration by raw wiring search with pairwise oracle_matchings
// de-duplication; returns one representative per isomorphism class.
std::vector<Opetope> oracle_enumerate(int dim, int max_nodes, int max_arity, long guard = 200000);

// --- category oracles -------------------------------------------------------

// All composable face-generator words into alpha, closed under one-step
// Relation-2 rewrites to a fixpoint; the partition per source dimension.
// Keys are printable word descriptions.
struct WordPartition {
    // per dimension: blocks of word keys
    std::map<int, std::vector<std::vector<std::string>>> blocks;
    // word key -> block index within its dimension
    std::map<std::string, int> block_of;
};
WordPartition oracle_face_quotient(const Opetope& alpha, long guard = 2000000);

// Every reduction sequence of `w`, explored exhaustively. Returns the set of
// reachable normal forms and the longest reduction path length.
struct ReductionFan {
    std::vector<category::MorphismWord> normal_forms;
    int longest_path = 0;
};
ReductionFan oracle_normalize(const category::MorphismWord& w, long guard = 2000000);

// --- presheaf evidence ------------------------------------------------------

enum class ColimitMutation { none, skip_merge, extra_cell, wrong_frame };

// The colimit construction with an optional injected defect, for mutation
// tests of is_colimit.
osets::ColimitResult mutated_colimit(const osets::Diagram& d, ColimitMutation m);

std::vector<CheckReport> run_presheaf_evidence(const Bounds& b,
                                               ColimitMutation mutate = ColimitMutation::none);

// --- suite ------------------------------------------------------------------

// All check families; `only` filters by report-name prefix.
std::vector<CheckReport> run_checks(const Bounds& b, const std::string& only = "",
                                    ColimitMutation mutate = ColimitMutation::none);

std::string report_json_line(const CheckReport& r);

} // namespace opetopic::verify

#endif
