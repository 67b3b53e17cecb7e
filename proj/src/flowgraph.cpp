#include "mevlens/flowgraph.hpp"

namespace mevlens {

TokenFlowGraph TokenFlowGraph::init(const std::vector<Swap>& swaps) {
    TokenFlowGraph g;
    g.edges_ = swaps;
    for (std::size_t i = 0; i < g.edges_.size(); ++i) {
        const Swap& s = g.edges_[i];
        g.nodes_.insert(s.token_in);
        g.nodes_.insert(s.token_out);
        g.adjacency_[s.token_in].push_back(i);
    }
    return g;
}

const std::vector<std::size_t>& TokenFlowGraph::out_edges(const Address& token) const {
    static const std::vector<std::size_t> empty;
    auto it = adjacency_.find(token);
    return it == adjacency_.end() ? empty : it->second;
}

bool exists_cycle(const TokenFlowGraph& g) {
    enum class Color { white, grey, black };
    std::map<Address, Color> color;
    for (const auto& n : g.nodes()) color[n] = Color::white;

    // Iterative DFS; grey-node re-entry is a back edge.
    for (const auto& start : g.nodes()) {
        if (color[start] != Color::white) continue;
        std::vector<std::pair<Address, std::size_t>> stack;
        stack.push_back({start, 0});
        color[start] = Color::grey;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            const auto& out = g.out_edges(node);
            if (next >= out.size()) {
                color[node] = Color::black;
                stack.pop_back();
                continue;
            }
            const Swap& edge = g.edges()[out[next++]];
            Color c = color[edge.token_out];
            if (c == Color::grey) return true;
            if (c == Color::white) {
                color[edge.token_out] = Color::grey;
                stack.push_back({edge.token_out, 0});
            }
        }
    }
    return false;
}

namespace {

struct RouteSearch {
    const TokenFlowGraph& g;
    const Address& sink;
    const RouteLimits& limits;
    RouteSet* out;
    std::vector<std::size_t> path;
    std::set<Address> visited;

    bool dfs(const Address& node) {
        if (node == sink) {
            if (out->routes.size() >= limits.max_routes) {
                out->truncated = true;
                return false;
            }
            Route r;
            r.hops = path;
            r.source = g.edges()[path.front()].token_in;
            r.sink = sink;
            out->routes.push_back(std::move(r));
            return true;
        }
        if (static_cast<int>(path.size()) >= limits.max_hops) return true;
        for (std::size_t edge_id : g.out_edges(node)) {
            const Swap& edge = g.edges()[edge_id];
            if (visited.count(edge.token_out)) continue;
            visited.insert(edge.token_out);
            path.push_back(edge_id);
            bool keep_going = dfs(edge.token_out);
            path.pop_back();
            visited.erase(edge.token_out);
            if (!keep_going) return false;
        }
        return true;
    }
};

}  // namespace

RouteSet enumerate_routes(const TokenFlowGraph& g, const Address& in_token, const Address& out_token,
                          const RouteLimits& limits) {
    RouteSet result;
    if (in_token == out_token) return result;
    if (!g.nodes().count(in_token) || !g.nodes().count(out_token)) return result;
    RouteSearch search{g, out_token, limits, &result, {}, {in_token}};
    search.dfs(in_token);
    return result;
}

std::optional<ExchangeOutcome> exchange_token(const Address& in_token, const Address& out_token,
                                              const TokenFlowGraph& g, const U256& ex_input,
                                              const RouteLimits& limits) {
    RouteSet routes = enumerate_routes(g, in_token, out_token, limits);
    if (routes.routes.empty()) return std::nullopt;
    std::optional<U256> best;
    for (const auto& route : routes.routes) {
        Int numerator = Int(ex_input);
        Int denominator = 1;
        for (std::size_t edge_id : route.hops) {
            const Swap& edge = g.edges()[edge_id];
            numerator *= Int(edge.amount_out);
            denominator *= Int(edge.amount_in);
        }
        U256 out = U256(numerator / denominator);  // one floor per route
        if (!best || out > *best) best = out;
    }
    return ExchangeOutcome{*best, routes.truncated};
}

}  // namespace mevlens
