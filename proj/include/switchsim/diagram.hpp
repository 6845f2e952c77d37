#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "switchsim/perm.hpp"

namespace switchsim {

/*
 * Wiring diagram for one interference term of a switch of depolarising
 * channels, evaluated purely combinatorially: closed loops each contribute a
 * factor of d, and the term transmits information exactly when the diagram
 * connects the input leg to the output leg on the ket side.
 *
 * Endpoint naming scheme (fixed so golden diagrams can be written by hand in
 * tests):
 *
 *   (side, slot, port)  with side in {Left, Right}, slot in 0..N,
 *                       port in {Top, Bottom}.
 *
 *   - Slots 1..N are the channel boxes, slot 1 nearest the output. On the
 *     Left (ket) column the box of channel i sits at slot pi^{-1}(i); on the
 *     Right (bra) column at slot pi'^{-1}(i). A depolarising box separates
 *     vertically, leaving an independent Top and Bottom endpoint.
 *   - Slot 0 carries the four open legs: (side, 0, Top) is the system output
 *     leg of that column, (side, 0, Bottom) the system input (state) leg.
 *
 * Edges come in two families, one of each per box endpoint:
 *   - caps: the Kraus-index wires of channel i join its two columns,
 *     tops to tops and bottoms to bottoms;
 *   - segments: vertical wires (side, a, Bottom) -- (side, a+1, Top) within a
 *     column, plus the leg hookups (side, 0, Top) -- (side, 1, Top) and
 *     (side, N, Bottom) -- (side, 0, Bottom).
 *
 * The modified diagram additionally joins the two output legs and the two
 * input legs, closing the graph; its loop count equals the cycle count of the
 * pair permutation build_c_pair(pi, pi').
 */

enum class Side { Left, Right };
enum class Port { Top, Bottom };

struct Endpoint {
    Side side;
    int slot;
    Port port;

    bool operator==(const Endpoint& o) const {
        return side == o.side && slot == o.slot && port == o.port;
    }
};

inline std::string to_string(const Endpoint& e) {
    std::string s = e.side == Side::Left ? "L" : "R";
    s += std::to_string(e.slot);
    s += e.port == Port::Top ? "T" : "B";
    return s;
}

class WiringDiagram {
public:
    WiringDiagram(int num_channels, bool closed)
        : n_(num_channels), closed_(closed), adj_(4 * (num_channels + 1)) {
        if (n_ < 1) throw std::invalid_argument("WiringDiagram: need at least one channel");
    }

    int num_channels() const { return n_; }
    bool closed() const { return closed_; }

    int endpoint_id(const Endpoint& e) const {
        if (e.slot < 0 || e.slot > n_) throw std::out_of_range("WiringDiagram: slot out of range");
        return (e.slot * 2 + (e.port == Port::Bottom ? 1 : 0)) * 2 +
               (e.side == Side::Right ? 1 : 0);
    }

    Endpoint endpoint_of(int id) const {
        const Side side = (id & 1) ? Side::Right : Side::Left;
        const Port port = ((id >> 1) & 1) ? Port::Bottom : Port::Top;
        return Endpoint{side, id >> 2, port};
    }

    void add_edge(const Endpoint& a, const Endpoint& b) {
        const int ia = endpoint_id(a), ib = endpoint_id(b);
        adj_[ia].push_back(ib);
        adj_[ib].push_back(ia);
    }

    int degree(const Endpoint& e) const {
        return static_cast<int>(adj_[endpoint_id(e)].size());
    }

    /// All edges, each once, in canonical (id, id) order.
    std::vector<std::pair<Endpoint, Endpoint>> edges() const {
        std::vector<std::pair<int, int>> raw;
        for (int a = 0; a < static_cast<int>(adj_.size()); ++a)
            for (int b : adj_[a])
                if (a <= b) raw.emplace_back(a, b);
        std::sort(raw.begin(), raw.end());
        std::vector<std::pair<Endpoint, Endpoint>> out;
        out.reserve(raw.size());
        for (const auto& [a, b] : raw) out.emplace_back(endpoint_of(a), endpoint_of(b));
        return out;
    }

    /// Component labels over endpoints; isolated endpoints keep label -1.
    std::vector<int> components() const {
        std::vector<int> label(adj_.size(), -1);
        int next = 0;
        for (std::size_t start = 0; start < adj_.size(); ++start) {
            if (label[start] >= 0 || adj_[start].empty()) continue;
            std::vector<int> stack{static_cast<int>(start)};
            while (!stack.empty()) {
                const int v = stack.back();
                stack.pop_back();
                if (label[v] >= 0) continue;
                label[v] = next;
                for (int w : adj_[v]) stack.push_back(w);
            }
            ++next;
        }
        return label;
    }

    const std::vector<std::vector<int>>& adjacency() const { return adj_; }

private:
    int n_;
    bool closed_;
    std::vector<std::vector<int>> adj_;
};

/// Unmodified diagram for the ordered pair (pi, pi'): four open legs at
/// slot 0, everything else degree two.
inline WiringDiagram build_diagram(const Permutation& pi, const Permutation& pi_prime) {
    if (pi.size() != pi_prime.size())
        throw std::invalid_argument("build_diagram: size mismatch");
    const int n = pi.size();
    WiringDiagram dg(n, false);

    const Permutation left_slot = inverse(pi);
    const Permutation right_slot = inverse(pi_prime);
    for (int ch = 1; ch <= n; ++ch) {
        const int ls = left_slot.image_of(ch);
        const int rs = right_slot.image_of(ch);
        dg.add_edge({Side::Left, ls, Port::Top}, {Side::Right, rs, Port::Top});
        dg.add_edge({Side::Left, ls, Port::Bottom}, {Side::Right, rs, Port::Bottom});
    }
    for (Side side : {Side::Left, Side::Right}) {
        dg.add_edge({side, 0, Port::Top}, {side, 1, Port::Top});
        for (int a = 1; a < n; ++a)
            dg.add_edge({side, a, Port::Bottom}, {side, a + 1, Port::Top});
        dg.add_edge({side, n, Port::Bottom}, {side, 0, Port::Bottom});
    }
    return dg;
}

/// Close the four open legs: output legs joined across columns, input legs
/// joined across columns.
inline WiringDiagram modify_diagram(const WiringDiagram& dg) {
    if (dg.closed()) throw std::invalid_argument("modify_diagram: diagram already closed");
    WiringDiagram out(dg.num_channels(), true);
    for (const auto& [a, b] : dg.edges()) out.add_edge(a, b);
    out.add_edge({Side::Left, 0, Port::Top}, {Side::Right, 0, Port::Top});
    out.add_edge({Side::Left, 0, Port::Bottom}, {Side::Right, 0, Port::Bottom});
    return out;
}

/// Number of connected components in which every endpoint has degree two,
/// i.e. the closed loops. For a modified diagram this is every component.
inline int count_loops(const WiringDiagram& dg) {
    const auto label = dg.components();
    const auto& adj = dg.adjacency();
    int max_label = -1;
    for (int l : label) max_label = std::max(max_label, l);
    std::vector<bool> is_loop(max_label + 1, true);
    for (std::size_t v = 0; v < adj.size(); ++v)
        if (label[v] >= 0 && adj[v].size() != 2) is_loop[label[v]] = false;
    int loops = 0;
    for (bool b : is_loop) loops += b ? 1 : 0;
    return loops;
}

/// True when the ket-side output leg and ket-side input leg lie in one
/// component of the unmodified diagram (the term acts as a multiple of the
/// identity channel rather than tracing its input away).
inline bool is_information_transmitting(const WiringDiagram& dg) {
    if (dg.closed())
        throw std::invalid_argument("is_information_transmitting: needs an open diagram");
    const auto label = dg.components();
    const int out_leg = dg.endpoint_id({Side::Left, 0, Port::Top});
    const int in_leg = dg.endpoint_id({Side::Left, 0, Port::Bottom});
    return label[out_leg] >= 0 && label[out_leg] == label[in_leg];
}

/// GraphViz dump, endpoints named by the (side, slot, port) scheme.
inline std::string to_graphviz(const WiringDiagram& dg) {
    std::ostringstream os;
    os << "graph wiring {\n";
    for (const auto& [a, b] : dg.edges())
        os << "  \"" << to_string(a) << "\" -- \"" << to_string(b) << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace switchsim
