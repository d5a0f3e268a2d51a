#ifndef OPETOPIC_TREES_HPP
#define OPETOPIC_TREES_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "opetopic/error.hpp"

namespace opetopic::trees {

// Arities (m_0, ..., m_{k-1}) of the k nodes of a tree, in node order.
struct NodeProfile {
    std::vector<int> arities;

    int node_count() const { return static_cast<int>(arities.size()); }
    int total_inputs() const;
    // l = (sum m_i) - k + 1; throws InvalidInput when negative.
    int leaf_count() const;

    auto operator<=>(const NodeProfile&) const = default;
};

// A port of the wiring. All indices are 0-based.
//   node_input(i, b) : input slot b of node i
//   node_output(i)   : the output of node i
//   formal_input(j)  : leaf j (input j of the formal node N)
//   formal_output    : the root receiver (output of N)
struct Port {
    enum class Kind { node_input = 0, node_output = 1, formal_input = 2, formal_output = 3 };

    Kind kind = Kind::formal_output;
    int node = -1; // node_input / node_output
    int slot = -1; // node_input / formal_input

    static Port node_input(int i, int b) { return {Kind::node_input, i, b}; }
    static Port node_output(int i) { return {Kind::node_output, i, -1}; }
    static Port formal_input(int j) { return {Kind::formal_input, -1, j}; }
    static Port formal_output() { return {Kind::formal_output, -1, -1}; }

    auto operator<=>(const Port&) const = default;
};

std::string to_string(const Port& p);

// A bijection
//   {node inputs} + {formal output}  -->  {node outputs} + {formal inputs}
// over a node profile. Domain ports are kept sorted.
class Wiring {
public:
    // Validates that `pairs` is a bijection of exactly the right shape.
    static Wiring from_pairs(NodeProfile profile, std::vector<std::pair<Port, Port>> pairs);

    const NodeProfile& profile() const { return profile_; }
    const std::vector<std::pair<Port, Port>>& map() const { return map_; }

    int domain_size() const { return static_cast<int>(map_.size()); }
    // Image of a domain port; throws InvalidInput when absent.
    Port image(const Port& p) const;
    // Unique preimage of a codomain port.
    Port preimage(const Port& p) const;

    auto operator<=>(const Wiring&) const = default;

private:
    NodeProfile profile_;
    std::vector<std::pair<Port, Port>> map_; // sorted by domain port
};

// Combed tree (planar tree, leaf permutation rho, node ordering tau).
// Planar positions are numbered in depth-first preorder from the root,
// slots visited left to right; `nodes` is empty for the null tree.
struct CombedTree {
    struct Slot {
        bool leaf = false;
        int index = -1; // child position, or leaf traversal number
        auto operator<=>(const Slot&) const = default;
    };
    struct Node {
        std::vector<Slot> slots;
        auto operator<=>(const Node&) const = default;
    };

    std::vector<Node> nodes;
    std::vector<int> node_order; // tau: position -> node index of the profile
    std::vector<int> leaf_perm;  // rho: leaf traversal number -> formal input index

    int node_count() const { return static_cast<int>(nodes.size()); }
    int leaf_count() const { return static_cast<int>(leaf_perm.size()); }

    auto operator<=>(const CombedTree&) const = default;
};

// An edge label: a named morphism with stated endpoint objects. The domain
// port carries `cod` and its image carries `dom`.
struct EdgeLabel {
    std::string morphism;
    std::string dom;
    std::string cod;

    auto operator<=>(const EdgeLabel&) const = default;
};

struct LabelledWiring {
    Wiring wiring;
    std::vector<EdgeLabel> labels; // one per domain port, in domain-port order
};

using PortObjects = std::map<Port, std::string>;

int leaf_count(const NodeProfile& profile);

// Closed-loop criterion: a non-empty node sequence t_1..t_n with
// alpha(x_{t_j b_j}) = x_{t_{j-1}} cyclically. Follows the functional
// graph of output consumers.
bool has_closed_loop(const Wiring& w);

bool is_tree(const Wiring& w);

Wiring encode(const CombedTree& t, const NodeProfile& profile);
// Decodes a tree wiring into the canonically numbered combed tree.
// Throws InvalidInput when the wiring has a closed loop.
CombedTree decode(const Wiring& w);

// All tree wirings over the profile, deterministically sorted.
// Guarded by max_ports >= (sum m_i) + 1.
std::vector<Wiring> enumerate_wirings(const NodeProfile& profile, int max_ports = 8);

// Attaches edge labels, checking both endpoints of every edge against the
// stated port objects.
LabelledWiring attach_labels(const Wiring& w, const std::vector<EdgeLabel>& labels,
                             const PortObjects& objects);

} // namespace opetopic::trees

#endif
