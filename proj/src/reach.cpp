#include "bdp/reach.hpp"

#include <algorithm>

#include "bdp/error.hpp"

namespace bdp {

namespace {

// d(p, x) restricted to one edge is the minimum of at most three convex
// piecewise-linear terms of offset x: leave through either endpoint, or walk
// straight to p when p sits inside this very edge.
struct Term {
    enum Kind { Ascending, Descending, Vee } kind;
    Rational c;  // constant part
    Rational x0; // vee center (unused otherwise)

    Rational value(const Rational& x, const Rational& w) const {
        switch (kind) {
            case Ascending: return c + x;
            case Descending: return c + (w - x);
            case Vee: return c + (x - x0).abs();
        }
        return c;
    }
};

// Distances from point p to every vertex: min over p's anchor vertices.
std::vector<std::optional<Rational>> point_to_vertices(DistanceOracle& oracle, const Point& p) {
    const Graph& g = oracle.graph();
    std::vector<std::optional<Rational>> out(static_cast<size_t>(g.vertex_count()));
    auto fold = [&](VertexId anchor, const Rational& cost) {
        const auto& dist = oracle.from_vertex(anchor);
        for (size_t i = 0; i < out.size(); ++i) {
            if (!dist[i]) continue;
            Rational d = cost + *dist[i];
            if (!out[i] || d < *out[i]) out[i] = std::move(d);
        }
    };
    if (p.is_vertex()) {
        fold(p.vertex_id(), Rational(0));
    } else {
        const Graph::Edge& e = g.edge(p.edge_id());
        fold(e.u, p.offset());
        fold(e.v, e.w - p.offset());
    }
    return out;
}

std::vector<Term> edge_terms(const Graph& g, EdgeId e, const Point& p,
                             const std::vector<std::optional<Rational>>& dp) {
    const Graph::Edge& ed = g.edge(e);
    std::vector<Term> ts;
    if (const auto& da = dp[static_cast<size_t>(ed.u)]) ts.push_back({Term::Ascending, *da, Rational(0)});
    if (const auto& db = dp[static_cast<size_t>(ed.v)]) ts.push_back({Term::Descending, *db, Rational(0)});
    if (!p.is_vertex() && p.edge_id() == e) ts.push_back({Term::Vee, Rational(0), p.offset()});
    return ts;
}

// Solve t1(x) + t2(x) <= bound on [0, w]; the sum is convex piecewise linear,
// so the answer is one closed interval (possibly empty).
std::optional<ReachSet::Interval> convex_sublevel(const Term& t1, const Term& t2,
                                                  const Rational& bound, const Rational& w) {
    std::vector<Rational> xs{Rational(0)};
    if (t1.kind == Term::Vee) xs.push_back(t1.x0);
    if (t2.kind == Term::Vee) xs.push_back(t2.x0);
    xs.push_back(w);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::optional<ReachSet::Interval> out;
    auto extend = [&](const Rational& lo, const Rational& hi) {
        if (!out) {
            out = ReachSet::Interval{lo, hi};
        } else {
            out->lo = min(out->lo, lo);
            out->hi = max(out->hi, hi);
        }
    };
    auto f = [&](const Rational& x) { return t1.value(x, w) + t2.value(x, w); };
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rational& p = xs[i];
        const Rational& q = xs[i + 1];
        Rational fp = f(p), fq = f(q);
        bool inp = fp <= bound, inq = fq <= bound;
        if (inp && inq) {
            extend(p, q);
        } else if (inp || inq) {
            // single crossing on a linear piece
            Rational x = p + (bound - fp) * (q - p) / (fq - fp);
            if (inp)
                extend(p, x);
            else
                extend(x, q);
        }
    }
    return out;
}

void merge_intervals(std::vector<ReachSet::Interval>& iv) {
    std::sort(iv.begin(), iv.end(), [](const ReachSet::Interval& a, const ReachSet::Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
    });
    std::vector<ReachSet::Interval> out;
    for (const auto& i : iv) {
        if (!out.empty() && i.lo <= out.back().hi)
            out.back().hi = max(out.back().hi, i.hi);
        else
            out.push_back(i);
    }
    iv = std::move(out);
}

} // namespace

ReachSet ReachSet::ellipsoid(DistanceOracle& oracle, const Point& u, const Point& v,
                             const Rational& budget) {
    const Graph& g = oracle.graph();
    check_point(g, u);
    check_point(g, v);
    auto duv = oracle.point_distance(u, v);
    if (!duv || *duv > budget)
        fail(ErrorCode::EmptyReach, "base tour " + (duv ? duv->str() : std::string("unreachable")) +
                                        " exceeds budget " + budget.str());
    Rational slack = budget - *duv; // points q need d(q,u) + d(q,v) <= slack

    ReachSet r;
    r.g_ = &g;
    auto du = point_to_vertices(oracle, u);
    auto dv = point_to_vertices(oracle, v);

    r.vertex_in_.assign(static_cast<size_t>(g.vertex_count()), false);
    for (VertexId p = 0; p < g.vertex_count(); ++p) {
        const auto& a = du[static_cast<size_t>(p)];
        const auto& b = dv[static_cast<size_t>(p)];
        if (a && b && *a + *b <= slack) r.vertex_in_[static_cast<size_t>(p)] = true;
    }

    r.edge_iv_.resize(static_cast<size_t>(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Rational& w = g.edge(e).w;
        std::vector<Interval> iv;
        for (const Term& t1 : edge_terms(g, e, u, du))
            for (const Term& t2 : edge_terms(g, e, v, dv))
                if (auto i = convex_sublevel(t1, t2, slack, w)) iv.push_back(*i);
        merge_intervals(iv);
        // A width-zero interval sitting on an endpoint is just that endpoint,
        // which the vertex set already records; keep interior singletons.
        iv.erase(std::remove_if(iv.begin(), iv.end(),
                                [&](const Interval& i) {
                                    return i.lo == i.hi &&
                                           (i.lo.is_zero() || i.lo == w);
                                }),
                 iv.end());
        r.edge_iv_[static_cast<size_t>(e)] = std::move(iv);
    }
    return r;
}

ReachSet ReachSet::ball(DistanceOracle& oracle, const Point& center, const Rational& radius) {
    return ellipsoid(oracle, center, center, radius + radius);
}

bool ReachSet::contains(const Point& p) const {
    check_point(*g_, p);
    if (p.is_vertex()) return vertex_in_[static_cast<size_t>(p.vertex_id())];
    for (const auto& iv : edge_iv_[static_cast<size_t>(p.edge_id())])
        if (iv.lo <= p.offset() && p.offset() <= iv.hi) return true;
    return false;
}

std::optional<Rational> ReachSet::furthest_offset_from(EdgeId e, VertexId from) const {
    const Graph::Edge& ed = g_->edge(e);
    const auto& iv = edge_iv_[static_cast<size_t>(e)];
    if (iv.empty()) return std::nullopt;
    if (from == ed.u) return iv.back().hi;
    if (from == ed.v) return ed.w - iv.front().lo;
    fail(ErrorCode::InvalidPoint, "vertex " + std::to_string(from) + " is not an endpoint of edge " +
                                      std::to_string(e));
}

std::optional<Point> intersect_witness(const ReachSet& a, const ReachSet& b) {
    if (&a.graph() != &b.graph())
        fail(ErrorCode::MismatchedGraphs, "reach sets over different graphs");
    const Graph& g = a.graph();
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (a.vertex_reachable(v) && b.vertex_reachable(v)) return Point::vertex(v);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ia = a.edge_intervals(e);
        const auto& ib = b.edge_intervals(e);
        size_t i = 0, j = 0;
        while (i < ia.size() && j < ib.size()) {
            const Rational& lo = max(ia[i].lo, ib[j].lo);
            const Rational& hi = min(ia[i].hi, ib[j].hi);
            if (lo <= hi) {
                Rational mid = (lo + hi) / Rational(2);
                return make_point(g, e, mid);
            }
            if (ia[i].hi < ib[j].hi)
                ++i;
            else
                ++j;
        }
    }
    return std::nullopt;
}

} // namespace bdp
