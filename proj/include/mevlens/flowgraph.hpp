#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "mevlens/registry.hpp"

namespace mevlens {

struct RouteLimits {
    int max_hops = 6;
    std::size_t max_routes = 10000;
};

struct Route {
    std::vector<std::size_t> hops;  // edge ids, chained token_out -> token_in
    Address source;
    Address sink;
};

struct RouteSet {
    std::vector<Route> routes;
    bool truncated = false;  // enumeration hit the route cap
};

struct ExchangeOutcome {
    U256 amount;
    bool truncated = false;
};

// Directed multigraph: nodes are tokens, one edge per swap with embedded
// amounts. Parallel edges are kept distinct. Immutable after construction.
class TokenFlowGraph {
  public:
    static TokenFlowGraph init(const std::vector<Swap>& swaps);

    const std::vector<Swap>& edges() const { return edges_; }
    const std::set<Address>& nodes() const { return nodes_; }
    const std::vector<std::size_t>& out_edges(const Address& token) const;

  private:
    std::vector<Swap> edges_;
    std::set<Address> nodes_;
    std::map<Address, std::vector<std::size_t>> adjacency_;
};

bool exists_cycle(const TokenFlowGraph& g);

// All simple paths from in_token to out_token, depth-first in edge insertion
// order, capped by the limits. Hitting the route cap sets `truncated` rather
// than failing.
RouteSet enumerate_routes(const TokenFlowGraph& g, const Address& in_token, const Address& out_token,
                          const RouteLimits& limits);

// Converts ex_input through every enumerated route with exact rational
// per-hop rates (single floor division at the end of each route) and returns
// the maximum. nullopt when no route exists.
std::optional<ExchangeOutcome> exchange_token(const Address& in_token, const Address& out_token,
                                              const TokenFlowGraph& g, const U256& ex_input,
                                              const RouteLimits& limits);

}  // namespace mevlens
