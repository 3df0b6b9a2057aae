// SPDX-License-Identifier: Apache-2.0
//
// The three-layer wiretap network attached to an (L, N, m) problem: a
// source s feeds L intermediate nodes over edges of capacity R_l, every
// m-subset of intermediates feeds one user over unbounded edges, and the
// eavesdropper may tap any N of the source edges.
#pragma once

#include "smdc/rate_region.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace smdc::wiretap {

/// Edge capacity: a nonnegative rational or unbounded.
struct Capacity {
    bool unbounded = false;
    Rational value = 0;

    static Capacity finite(Rational v) { return {false, std::move(v)}; }
    static Capacity infinite() { return {true, 0}; }
};

struct Edge {
    std::size_t tail = 0;
    std::size_t head = 0;
    Capacity capacity;
};

/// Directed graph with exact capacities.
class FlowGraph {
public:
    explicit FlowGraph(std::size_t nodes) : nodes_(nodes) {}

    std::size_t add_node();
    void add_edge(std::size_t tail, std::size_t head, Capacity capacity);

    std::size_t node_count() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Edmonds-Karp maximum flow; nullopt when unbounded.
    std::optional<Rational> max_flow(std::size_t source, std::size_t sink) const;

private:
    std::size_t nodes_;
    std::vector<Edge> edges_;
};

class WiretapNetwork {
public:
    /// Throws InvalidParameterError unless N < m <= L, rates has L
    /// nonnegative entries.
    WiretapNetwork(std::size_t L, std::size_t N, std::size_t m, region::RateTuple rates);

    std::size_t L() const { return L_; }
    std::size_t N() const { return N_; }
    std::size_t m() const { return m_; }
    const region::RateTuple& rates() const { return rates_; }

    /// Node ids: source 0, intermediate l at 1 + l, user u at 1 + L + u.
    std::size_t source_node() const { return 0; }
    std::size_t intermediate_node(std::size_t l) const { return 1 + l; }
    std::size_t user_node(std::size_t u) const { return 1 + L_ + u; }

    /// Each user's m intermediates, lexicographic order of m-subsets.
    const std::vector<std::vector<std::size_t>>& users() const { return users_; }
    /// Each wiretap set as the encoders whose source edges are tapped.
    const std::vector<std::vector<std::size_t>>& wiretap_sets() const { return wiretap_sets_; }

    const FlowGraph& graph() const { return graph_; }

    /// One edge per line: "tail head capacity", capacity "inf" if unbounded.
    std::string edge_list() const;

private:
    std::size_t L_;
    std::size_t N_;
    std::size_t m_;
    region::RateTuple rates_;
    std::vector<std::vector<std::size_t>> users_;
    std::vector<std::vector<std::size_t>> wiretap_sets_;
    FlowGraph graph_;
};

WiretapNetwork build(std::size_t L, std::size_t N, std::size_t m, region::RateTuple rates);

/// Max-flow value from s to user u. Throws if the generic flow disagrees
/// with the closed form sum_{l in u} R_l.
Rational mincut_to_user(const WiretapNetwork& net, std::size_t user);

/// Min cut from s to the tapped edge set (after edge splitting), checked
/// against the closed form sum_{l in A} R_l.
Rational mincut_to_wiretap(const WiretapNetwork& net, std::size_t wiretap_set);

/// Closed forms alone, for comparison.
Rational closed_form_user_cut(const WiretapNetwork& net, std::size_t user);
Rational closed_form_wiretap_cut(const WiretapNetwork& net, std::size_t wiretap_set);

/// min over users u and wiretap sets A of mincut(s,u) - mincut(s,A).
Rational achievable_secrecy_rate(const WiretapNetwork& net);

/// Sufficient admissibility test: H_source <= achievable secrecy rate.
bool admissible_by_separation(std::size_t L, std::size_t N, std::size_t m, const region::RateTuple& rates,
                              const Rational& source_entropy);

}  // namespace smdc::wiretap
