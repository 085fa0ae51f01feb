#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bdp/rational.hpp"

namespace bdp {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

// Undirected weighted multigraph. Parallel edges are allowed, self-loops are
// not, weights are strictly positive rationals. Immutable once built; every
// query below is a pure function of (graph, arguments), so concurrent readers
// need no locking.
class Graph {
public:
    struct Edge {
        VertexId u, v;   // normalized so u < v; offsets are measured from u
        Rational w;
    };

    Graph() : n_(0) {}
    Graph(VertexId vertex_count, std::vector<Edge> edges);

    static Graph build(VertexId vertex_count,
                       const std::vector<std::tuple<VertexId, VertexId, Rational>>& edges);

    VertexId vertex_count() const { return n_; }
    EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
    const Edge& edge(EdgeId e) const;
    const std::vector<Edge>& edges() const { return edges_; }

    // (neighbour vertex, edge id) pairs, sorted by (vertex, edge id) so that
    // deterministic tie-breaking falls out of plain iteration order.
    const std::vector<std::pair<VertexId, EdgeId>>& adjacent(VertexId v) const;

    void check_vertex(VertexId v) const;

private:
    VertexId n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj_;
};

// A location on the graph: either a vertex or a point strictly inside an
// edge, at `offset` from the edge's endpoint with the smaller vertex id.
// Construct through Point::vertex / make_point so equal locations always
// compare equal (offset 0 / w collapse to the endpoints).
class Point {
public:
    Point() : edge_(-1), vertex_(0) {}

    static Point vertex(VertexId v) {
        Point p;
        p.vertex_ = v;
        return p;
    }
    // Unchecked raw constructor; prefer make_point(graph, e, off).
    static Point interior(EdgeId e, Rational off) {
        Point p;
        p.edge_ = e;
        p.off_ = std::move(off);
        return p;
    }

    bool is_vertex() const { return edge_ < 0; }
    VertexId vertex_id() const { return vertex_; }
    EdgeId edge_id() const { return edge_; }
    const Rational& offset() const { return off_; }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.is_vertex() != b.is_vertex()) return false;
        if (a.is_vertex()) return a.vertex_ == b.vertex_;
        return a.edge_ == b.edge_ && a.off_ == b.off_;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

    std::string str() const;

private:
    EdgeId edge_;      // < 0 when the point is a vertex
    VertexId vertex_;
    Rational off_;
};

// Strict weak order for Point keys in std::map/std::set: vertices first by
// id, then interior points by (edge, offset).
struct PointLess {
    bool operator()(const Point& a, const Point& b) const {
        if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
        if (a.is_vertex()) return a.vertex_id() < b.vertex_id();
        if (a.edge_id() != b.edge_id()) return a.edge_id() < b.edge_id();
        return a.offset() < b.offset();
    }
};

// Canonicalizing constructor: offset 0 or w collapses to the endpoint vertex;
// out-of-range offsets throw Error(InvalidPoint).
Point make_point(const Graph& g, EdgeId e, const Rational& offset);

// Throws unless p names a vertex/edge of g with an in-range interior offset.
void check_point(const Graph& g, const Point& p);

// A walk between two points: a chain of edge traversals, each covering the
// stretch of one edge between offsets `from` and `to` (offsets from the
// edge's u endpoint; direction is from -> to). Consecutive atoms meet at a
// shared endpoint vertex. An empty atom list is the zero-length walk.
struct Walk {
    struct Atom {
        EdgeId edge;
        Rational from, to;
    };

    Point start, end;
    std::vector<Atom> atoms;
    Rational length;
};

// Per-source shortest-path answers, lazily computed and cached. The cache is
// an explicit mutable object owned by one caller (solvers allocate their own);
// Graph itself stays free of interior mutability.
class DistanceOracle {
public:
    explicit DistanceOracle(const Graph& g) : g_(&g) {}

    const Graph& graph() const { return *g_; }

    // Shortest distances from a source vertex; nullopt is "unreachable".
    const std::vector<std::optional<Rational>>& from_vertex(VertexId source);

    std::optional<Rational> vertex_distance(VertexId a, VertexId b);
    std::optional<Rational> point_distance(const Point& a, const Point& b);

    // Shortest walk from a to b, deterministic: among all shortest walks it
    // realizes the lexicographically smallest visited-vertex sequence (the
    // zero-or-direct interior route, whose sequence is empty, wins ties), and
    // smallest edge ids break remaining parallel-edge ties.
    // Throws Error(Unreachable) when no walk exists.
    Walk shortest_walk(const Point& a, const Point& b);

private:
    const Graph* g_;
    std::unordered_map<VertexId, std::vector<std::optional<Rational>>> cache_;
};

// One-shot conveniences (allocate a throwaway oracle).
std::optional<Rational> point_distance(const Graph& g, const Point& a, const Point& b);
Walk shortest_walk(const Graph& g, const Point& a, const Point& b);

// The point at arc length `dist` along w (0 = start, length = end).
// Throws Error(DistanceOutOfRange) when dist < 0 or dist > length.
Point point_along_walk(const Graph& g, const Walk& w, const Rational& dist);

} // namespace bdp
