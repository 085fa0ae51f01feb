#pragma once

#include <optional>
#include <vector>

#include "bdp/graph.hpp"
#include "bdp/rational.hpp"

namespace bdp {

// The set of points q a returning agent can still visit: the "ellipsoid"
// E(u, v, B) = { q : d(u,v) + d(v,q) + d(q,u) <= B } (tour u -> v -> q -> u).
// A ball of radius r around c is the degenerate case E(c, c, 2r).
//
// Linear-size representation: the fully reachable vertices plus, per edge, a
// short sorted list of disjoint closed offset intervals. For edges that do
// not carry u or v in their interior these are anchored at the endpoints (at
// most one frontier value per side, the paper's representation); an edge
// holding an origin point in its interior may additionally carry one island
// interval around it.
class ReachSet {
public:
    struct Interval {
        Rational lo, hi; // offsets from the edge's u endpoint, lo <= hi
    };

    // Throws Error(EmptyReach) when d(u,v) > B or v is unreachable from u.
    static ReachSet ellipsoid(DistanceOracle& oracle, const Point& u, const Point& v,
                              const Rational& budget);
    static ReachSet ball(DistanceOracle& oracle, const Point& center, const Rational& radius);

    const Graph& graph() const { return *g_; }
    bool contains(const Point& p) const;
    bool vertex_reachable(VertexId v) const { return vertex_in_[static_cast<size_t>(v)]; }
    // Reachable stretches of the edge. Width-zero stretches that would sit
    // exactly on an endpoint are omitted (see vertex_reachable for those).
    const std::vector<Interval>& edge_intervals(EdgeId e) const { return edge_iv_[static_cast<size_t>(e)]; }

    // Largest distance-from-`from` (an endpoint of e) over all reachable
    // points of edge e, or nullopt when no point of the edge is reachable.
    std::optional<Rational> furthest_offset_from(EdgeId e, VertexId from) const;

private:
    const Graph* g_ = nullptr;
    std::vector<bool> vertex_in_;
    std::vector<std::vector<Interval>> edge_iv_;
};

// A deterministic common point of two reach sets over the same graph, or
// nullopt when they are disjoint. Preference order: smallest shared fully
// reachable vertex id, else the midpoint of the first overlapping pair of
// edge sub-intervals in edge id order.
std::optional<Point> intersect_witness(const ReachSet& a, const ReachSet& b);

} // namespace bdp
