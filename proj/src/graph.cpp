#include "bdp/graph.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "bdp/error.hpp"

namespace bdp {

Graph::Graph(VertexId vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)), adj_(static_cast<size_t>(std::max<VertexId>(vertex_count, 0))) {
    if (vertex_count < 0) fail(ErrorCode::VertexOutOfRange, "negative vertex count");
    for (size_t i = 0; i < edges_.size(); ++i) {
        Edge& e = edges_[i];
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            fail(ErrorCode::VertexOutOfRange, "edge " + std::to_string(i) + " endpoint out of range");
        if (e.u == e.v) fail(ErrorCode::SelfLoop, "edge " + std::to_string(i));
        if (!(e.w > Rational(0)))
            fail(ErrorCode::NonPositiveWeight, "edge " + std::to_string(i) + " weight " + e.w.str());
        if (e.u > e.v) std::swap(e.u, e.v);
        adj_[e.u].emplace_back(e.v, static_cast<EdgeId>(i));
        adj_[e.v].emplace_back(e.u, static_cast<EdgeId>(i));
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

Graph Graph::build(VertexId vertex_count,
                   const std::vector<std::tuple<VertexId, VertexId, Rational>>& edges) {
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (const auto& [u, v, w] : edges) es.push_back(Edge{u, v, w});
    return Graph(vertex_count, std::move(es));
}

const Graph::Edge& Graph::edge(EdgeId e) const {
    if (e < 0 || e >= edge_count()) fail(ErrorCode::EdgeOutOfRange, "edge id " + std::to_string(e));
    return edges_[static_cast<size_t>(e)];
}

const std::vector<std::pair<VertexId, EdgeId>>& Graph::adjacent(VertexId v) const {
    check_vertex(v);
    return adj_[static_cast<size_t>(v)];
}

void Graph::check_vertex(VertexId v) const {
    if (v < 0 || v >= n_) fail(ErrorCode::VertexOutOfRange, "vertex id " + std::to_string(v));
}

std::string Point::str() const {
    if (is_vertex()) return "v" + std::to_string(vertex_);
    return "e" + std::to_string(edge_) + "@" + off_.str();
}

Point make_point(const Graph& g, EdgeId e, const Rational& offset) {
    const Graph::Edge& ed = g.edge(e);
    if (offset.is_negative() || offset > ed.w)
        fail(ErrorCode::InvalidPoint, "offset " + offset.str() + " outside edge of length " + ed.w.str());
    if (offset.is_zero()) return Point::vertex(ed.u);
    if (offset == ed.w) return Point::vertex(ed.v);
    return Point::interior(e, offset);
}

void check_point(const Graph& g, const Point& p) {
    if (p.is_vertex()) {
        g.check_vertex(p.vertex_id());
        return;
    }
    const Graph::Edge& ed = g.edge(p.edge_id());
    if (!(p.offset() > Rational(0)) || !(p.offset() < ed.w))
        fail(ErrorCode::InvalidPoint, "interior offset " + p.offset().str() + " not inside edge " +
                                          std::to_string(p.edge_id()));
}

namespace {

// (vertex it anchors to, distance from the point to that vertex)
using Anchor = std::pair<VertexId, Rational>;

std::vector<Anchor> anchors_of(const Graph& g, const Point& p) {
    if (p.is_vertex()) return {{p.vertex_id(), Rational(0)}};
    const Graph::Edge& e = g.edge(p.edge_id());
    return {{e.u, p.offset()}, {e.v, e.w - p.offset()}};
}

} // namespace

const std::vector<std::optional<Rational>>& DistanceOracle::from_vertex(VertexId source) {
    g_->check_vertex(source);
    auto it = cache_.find(source);
    if (it != cache_.end()) return it->second;

    std::vector<std::optional<Rational>> dist(static_cast<size_t>(g_->vertex_count()));
    using Item = std::pair<Rational, VertexId>;
    auto cmp = [](const Item& a, const Item& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    dist[static_cast<size_t>(source)] = Rational(0);
    heap.emplace(Rational(0), source);
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        const auto& dv = dist[static_cast<size_t>(v)];
        if (!dv || *dv != d) continue; // stale entry
        for (const auto& [w, e] : g_->adjacent(v)) {
            Rational nd = d + g_->edge(e).w;
            auto& dw = dist[static_cast<size_t>(w)];
            if (!dw || nd < *dw) {
                dw = nd;
                heap.emplace(std::move(nd), w);
            }
        }
    }
    return cache_.emplace(source, std::move(dist)).first->second;
}

std::optional<Rational> DistanceOracle::vertex_distance(VertexId a, VertexId b) {
    g_->check_vertex(b);
    return from_vertex(a)[static_cast<size_t>(b)];
}

std::optional<Rational> DistanceOracle::point_distance(const Point& a, const Point& b) {
    check_point(*g_, a);
    check_point(*g_, b);
    std::optional<Rational> best;
    if (!a.is_vertex() && !b.is_vertex() && a.edge_id() == b.edge_id())
        best = (a.offset() - b.offset()).abs();
    for (const auto& [va, ca] : anchors_of(*g_, a)) {
        const auto& dist = from_vertex(va);
        for (const auto& [vb, cb] : anchors_of(*g_, b)) {
            const auto& d = dist[static_cast<size_t>(vb)];
            if (!d) continue;
            Rational total = ca + *d + cb;
            if (!best || total < *best) best = std::move(total);
        }
    }
    return best;
}

namespace {

// Lexicographically smallest shortest vertex path from a to b, reconstructed
// forward against distances-to-b: at each vertex take the smallest (vertex,
// edge) pair that stays tight. Returns the visited vertices and the edges
// taken. Caller guarantees reachability.
void lex_shortest_vertex_path(const Graph& g, DistanceOracle& oracle, VertexId a, VertexId b,
                              std::vector<VertexId>& verts, std::vector<EdgeId>& edges) {
    const auto& dist_b = oracle.from_vertex(b);
    verts = {a};
    edges.clear();
    VertexId cur = a;
    while (cur != b) {
        const Rational& remaining = *dist_b[static_cast<size_t>(cur)];
        bool advanced = false;
        for (const auto& [w, e] : g.adjacent(cur)) {
            const auto& dw = dist_b[static_cast<size_t>(w)];
            if (!dw) continue;
            if (*dw + g.edge(e).w == remaining) {

                verts.push_back(w);
                edges.push_back(e);
                cur = w;
                advanced = true;
                break;
            }
        }
        if (!advanced) fail(ErrorCode::InvariantViolation, "shortest path reconstruction stuck");
    }
}

struct Route {
    Rational length;
    std::vector<VertexId> signature; // visited vertex sequence; empty = direct
    bool direct = false;
    // via-route bookkeeping (unused when direct)
    Anchor from, to;
    std::vector<VertexId> verts;
    std::vector<EdgeId> edges;
};

bool route_less(const Route& x, const Route& y) {
    if (x.length != y.length) return x.length < y.length;
    return std::lexicographical_compare(x.signature.begin(), x.signature.end(),
                                        y.signature.begin(), y.signature.end());
}

} // namespace

Walk DistanceOracle::shortest_walk(const Point& a, const Point& b) {
    check_point(*g_, a);
    check_point(*g_, b);
    Walk w;
    w.start = a;
    w.end = b;
    w.length = Rational(0);
    if (a == b) return w;

    std::optional<Route> best;
    if (!a.is_vertex() && !b.is_vertex() && a.edge_id() == b.edge_id()) {
        Route r;
        r.length = (a.offset() - b.offset()).abs();
        r.direct = true;
        best = std::move(r);
    }
    for (const auto& anchor_a : anchors_of(*g_, a)) {
        const auto& dist = from_vertex(anchor_a.first);
        for (const auto& anchor_b : anchors_of(*g_, b)) {
            const auto& d = dist[static_cast<size_t>(anchor_b.first)];
            if (!d) continue;
            Route r;
            r.length = anchor_a.second + *d + anchor_b.second;
            r.from = anchor_a;
            r.to = anchor_b;
            if (best && best->length < r.length) continue; // skip path reconstruction
            lex_shortest_vertex_path(*g_, *this, anchor_a.first, anchor_b.first, r.verts, r.edges);
            r.signature = r.verts;
            if (!best || route_less(r, *best)) best = std::move(r);
        }
    }
    if (!best) fail(ErrorCode::Unreachable, "no walk between " + a.str() + " and " + b.str());

    const Route& r = *best;
    w.length = r.length;
    if (r.direct) {
        w.atoms.push_back({a.edge_id(), a.offset(), b.offset()});
        return w;
    }
    if (!a.is_vertex()) {
        const Graph::Edge& e = g_->edge(a.edge_id());
        w.atoms.push_back({a.edge_id(), a.offset(), r.from.first == e.u ? Rational(0) : e.w});
    }
    VertexId cur = r.from.first;
    for (size_t i = 0; i < r.edges.size(); ++i) {
        const Graph::Edge& e = g_->edge(r.edges[i]);
        if (cur == e.u)
            w.atoms.push_back({r.edges[i], Rational(0), e.w});
        else
            w.atoms.push_back({r.edges[i], e.w, Rational(0)});
        cur = r.verts[i + 1];
    }
    if (!b.is_vertex()) {
        const Graph::Edge& e = g_->edge(b.edge_id());
        w.atoms.push_back({b.edge_id(), r.to.first == e.u ? Rational(0) : e.w, b.offset()});
    }
    return w;
}

std::optional<Rational> point_distance(const Graph& g, const Point& a, const Point& b) {
    DistanceOracle oracle(g);
    return oracle.point_distance(a, b);
}

Walk shortest_walk(const Graph& g, const Point& a, const Point& b) {
    DistanceOracle oracle(g);
    return oracle.shortest_walk(a, b);
}

Point point_along_walk(const Graph& g, const Walk& w, const Rational& dist) {
    if (dist.is_negative() || dist > w.length)
        fail(ErrorCode::DistanceOutOfRange, "arc length " + dist.str() + " outside walk of length " + w.length.str());
    if (dist.is_zero()) return w.start;
    Rational remaining = dist;
    for (const auto& atom : w.atoms) {
        Rational len = (atom.to - atom.from).abs();
        if (remaining <= len) {
            Rational off = atom.from < atom.to ? atom.from + remaining : atom.from - remaining;
            return make_point(g, atom.edge, off);
        }
        remaining -= len;
    }
    return w.end;
}

} // namespace bdp
