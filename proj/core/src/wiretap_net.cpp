// SPDX-License-Identifier: Apache-2.0
#include "smdc/wiretap_net.hpp"

#include "smdc/errors.hpp"

#include <deque>
#include <sstream>

namespace smdc::wiretap {

std::size_t FlowGraph::add_node() { return nodes_++; }

void FlowGraph::add_edge(std::size_t tail, std::size_t head, Capacity capacity) {
    if (tail >= nodes_ || head >= nodes_) throw InvalidParameterError("edge endpoint out of range");
    if (!capacity.unbounded && capacity.value < 0) throw InvalidParameterError("negative edge capacity");
    edges_.push_back({tail, head, std::move(capacity)});
}

std::optional<Rational> FlowGraph::max_flow(std::size_t source, std::size_t sink) const {
    if (source >= nodes_ || sink >= nodes_) throw InvalidParameterError("flow endpoint out of range");
    if (source == sink) throw InvalidParameterError("source and sink coincide");

    // Residual arcs in pairs: arc 2i forward, 2i+1 backward.
    struct Arc {
        std::size_t head;
        bool unbounded;
        Rational residual;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<std::size_t>> out(nodes_);
    for (const auto& e : edges_) {
        out[e.tail].push_back(arcs.size());
        arcs.push_back({e.head, e.capacity.unbounded, e.capacity.value});
        out[e.head].push_back(arcs.size());
        arcs.push_back({e.tail, false, 0});
    }
    auto usable = [&](const Arc& a) { return a.unbounded || a.residual > 0; };

    Rational total = 0;
    while (true) {
        std::vector<std::optional<std::size_t>> via(nodes_);
        std::vector<bool> seen(nodes_, false);
        std::deque<std::size_t> queue{source};
        seen[source] = true;
        while (!queue.empty() && !seen[sink]) {
            const std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t a : out[v]) {
                if (!usable(arcs[a]) || seen[arcs[a].head]) continue;
                seen[arcs[a].head] = true;
                via[arcs[a].head] = a;
                queue.push_back(arcs[a].head);
            }
        }
        if (!seen[sink]) return total;
        std::optional<Rational> bottleneck;
        for (std::size_t v = sink; v != source;) {
            const std::size_t a = *via[v];
            if (!arcs[a].unbounded && (!bottleneck || arcs[a].residual < *bottleneck)) bottleneck = arcs[a].residual;
            v = arcs[a ^ 1].head;
        }
        if (!bottleneck) return std::nullopt;
        for (std::size_t v = sink; v != source;) {
            const std::size_t a = *via[v];
            if (!arcs[a].unbounded) arcs[a].residual -= *bottleneck;
            if (!arcs[a ^ 1].unbounded) arcs[a ^ 1].residual += *bottleneck;
            v = arcs[a ^ 1].head;
        }
        total += *bottleneck;
    }
}

WiretapNetwork::WiretapNetwork(std::size_t L, std::size_t N, std::size_t m, region::RateTuple rates)
    : L_(L), N_(N), m_(m), rates_(std::move(rates)), graph_(0) {
    if (!(N < m && m <= L))
        throw InvalidParameterError("wiretap network requires N < m <= L, got (" + std::to_string(L) + "," +
                                    std::to_string(N) + "," + std::to_string(m) + ")");
    if (rates_.size() != L) throw InvalidParameterError("wiretap network needs one rate per encoder");
    for (const auto& r : rates_.entries) {
        if (r < 0) throw InvalidParameterError("rates must be nonnegative");
    }
    users_ = region::subsets(L, m);
    if (N > 0) wiretap_sets_ = region::subsets(L, N);
    graph_ = FlowGraph(1 + L + users_.size());
    for (std::size_t l = 0; l < L; ++l) graph_.add_edge(source_node(), intermediate_node(l), Capacity::finite(rates_[l]));
    for (std::size_t u = 0; u < users_.size(); ++u) {
        for (std::size_t l : users_[u]) graph_.add_edge(intermediate_node(l), user_node(u), Capacity::infinite());
    }
}

std::string WiretapNetwork::edge_list() const {
    auto name = [&](std::size_t v) {
        if (v == source_node()) return std::string("s");
        if (v <= L_) return "e" + std::to_string(v);
        return "u" + std::to_string(v - L_);
    };
    std::ostringstream os;
    for (const auto& e : graph_.edges()) {
        os << name(e.tail) << ' ' << name(e.head) << ' ' << (e.capacity.unbounded ? "inf" : to_string(e.capacity.value))
           << '\n';
    }
    return os.str();
}

WiretapNetwork build(std::size_t L, std::size_t N, std::size_t m, region::RateTuple rates) {
    return WiretapNetwork(L, N, m, std::move(rates));
}

Rational closed_form_user_cut(const WiretapNetwork& net, std::size_t user) {
    Rational sum = 0;
    for (std::size_t l : net.users().at(user)) sum += net.rates()[l];
    return sum;
}

Rational closed_form_wiretap_cut(const WiretapNetwork& net, std::size_t wiretap_set) {
    Rational sum = 0;
    for (std::size_t l : net.wiretap_sets().at(wiretap_set)) sum += net.rates()[l];
    return sum;
}

namespace {

Rational checked(std::optional<Rational> flow, const Rational& closed, const std::string& what) {
    if (!flow) throw InternalError(what + ": max flow is unbounded");
    if (*flow != closed)
        throw InternalError(what + ": max flow " + to_string(*flow) + " disagrees with closed form " + to_string(closed));
    return *flow;
}

}  // namespace

Rational mincut_to_user(const WiretapNetwork& net, std::size_t user) {
    if (user >= net.users().size()) throw InvalidParameterError("user index out of range");
    return checked(net.graph().max_flow(net.source_node(), net.user_node(user)), closed_form_user_cut(net, user),
                   "user " + std::to_string(user + 1));
}

Rational mincut_to_wiretap(const WiretapNetwork& net, std::size_t wiretap_set) {
    if (wiretap_set >= net.wiretap_sets().size()) throw InvalidParameterError("wiretap set index out of range");
    const auto& tapped = net.wiretap_sets()[wiretap_set];
    // Split every tapped edge (s, l) through a new node t_l and collect the
    // t_l into a super-sink.
    FlowGraph g(net.graph().node_count());
    const std::size_t sink = g.add_node();
    for (const auto& e : net.graph().edges()) {
        bool is_tapped = false;
        for (std::size_t l : tapped) is_tapped |= e.tail == net.source_node() && e.head == net.intermediate_node(l);
        if (!is_tapped) {
            g.add_edge(e.tail, e.head, e.capacity);
            continue;
        }
        const std::size_t mid = g.add_node();
        g.add_edge(e.tail, mid, e.capacity);
        g.add_edge(mid, e.head, Capacity::infinite());
        g.add_edge(mid, sink, Capacity::infinite());
    }
    return checked(g.max_flow(net.source_node(), sink), closed_form_wiretap_cut(net, wiretap_set),
                   "wiretap set " + std::to_string(wiretap_set + 1));
}

Rational achievable_secrecy_rate(const WiretapNetwork& net) {
    std::optional<Rational> min_user;
    for (std::size_t u = 0; u < net.users().size(); ++u) {
        const Rational c = mincut_to_user(net, u);
        if (!min_user || c < *min_user) min_user = c;
    }
    Rational max_tap = 0;
    for (std::size_t a = 0; a < net.wiretap_sets().size(); ++a) {
        const Rational c = mincut_to_wiretap(net, a);
        if (c > max_tap) max_tap = c;
    }
    // The minimum over (u, A) pairs separates into min_u - max_A.
    return *min_user - max_tap;
}

bool admissible_by_separation(std::size_t L, std::size_t N, std::size_t m, const region::RateTuple& rates,
                              const Rational& source_entropy) {
    return source_entropy <= achievable_secrecy_rate(build(L, N, m, rates));
}

}  // namespace smdc::wiretap
