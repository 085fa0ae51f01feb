#include "bdp/fixed_order.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "bdp/error.hpp"
#include "bdp/reach.hpp"

namespace bdp {
namespace {

void check_order(const Instance& inst, const std::vector<int>& order) {
    std::set<int> seen;
    for (int id : order) {
        if (id < 0 || id >= static_cast<int>(inst.agents.size()))
            fail(ErrorCode::InvalidOrder, "agent " + std::to_string(id) + " does not exist");
        if (!seen.insert(id).second)
            fail(ErrorCode::InvalidOrder, "agent " + std::to_string(id) + " listed twice");
    }
}

struct Provenance {
    int pos; // position in the order of the turn that created the mark
    int agent;
    Point pickup;
};

struct MarkState {
    std::vector<char> vertex;                             // marked flags
    std::map<EdgeId, std::pair<VertexId, Rational>> edge; // frontier depth per edge
    std::map<Point, Provenance, PointLess> origin;        // append-only, first writer wins

    Point edge_mark_point(const Graph& g, EdgeId e) const {
        const auto& [from, depth] = edge.at(e);
        const Graph::Edge& ed = g.edge(e);
        return Point::interior(e, from == ed.u ? depth : ed.w - depth);
    }
};

Schedule reconstruct(const Instance& inst, const MarkState& st, int last_pos, int last_agent,
                     const Point& last_pickup) {
    Schedule rev;
    rev.push_back({last_agent, last_pickup, inst.target});
    Point cur = last_pickup;
    int cur_pos = last_pos;
    while (cur != inst.source) {
        auto it = st.origin.find(cur);
        if (it == st.origin.end())
            fail(ErrorCode::InvariantViolation, "mark " + cur.str() + " has no provenance");
        if (it->second.pos >= cur_pos)
            fail(ErrorCode::InvariantViolation, "provenance chain does not move backwards");
        rev.push_back({it->second.agent, it->second.pickup, cur});
        cur = it->second.pickup;
        cur_pos = it->second.pos;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

SolveResult fixed_order_impl(const Instance& inst, const std::vector<int>& order,
                             DistanceOracle& oracle, FixedOrderTrace* trace) {
    const Graph& g = inst.graph;
    SolveResult res;
    res.solver = "fixed-order";
    if (inst.source == inst.target) {
        res.decision = Decision::Feasible;
        res.schedule = Schedule{};
        return res;
    }

    MarkState st;
    st.vertex.assign(static_cast<size_t>(g.vertex_count()), 0);

    for (int pos = 0; pos < static_cast<int>(order.size()); ++pos) {
        const int id = order[static_cast<size_t>(pos)];
        const Agent& agent = inst.agents[static_cast<size_t>(id)];

        // Pickup candidates are frozen before the turn: an agent cannot
        // chain two hops of its own. Mark points are pairwise distinct, so
        // comparing against the source is the only dedup needed.
        std::vector<Point> pickups;
        pickups.push_back(inst.source);
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (st.vertex[static_cast<size_t>(v)]) {
                Point p = Point::vertex(v);
                if (p != inst.source) pickups.push_back(p);
            }
        for (const auto& [e, fm] : st.edge) {
            (void)fm;
            Point p = st.edge_mark_point(g, e);
            if (p != inst.source) pickups.push_back(p);
        }

        for (const Point& l : pickups) {
            auto dpl = oracle.point_distance(agent.at, l);
            if (!dpl || *dpl > agent.budget) continue;
            ReachSet reach = inst.variant == Variant::Returning
                                 ? ReachSet::ellipsoid(oracle, agent.at, l, agent.budget)
                                 : ReachSet::ball(oracle, l, agent.budget - *dpl);

            if (reach.contains(inst.target)) {
                res.decision = Decision::Feasible;
                res.schedule = reconstruct(inst, st, pos, id, l);
                return res;
            }

            // Fully reachable vertices first; edge frontiers anchor on them.
            for (VertexId v = 0; v < g.vertex_count(); ++v)
                if (reach.vertex_reachable(v) && !st.vertex[static_cast<size_t>(v)]) {
                    st.vertex[static_cast<size_t>(v)] = 1;
                    st.origin.emplace(Point::vertex(v), Provenance{pos, id, l});
                }
            // A frontier is only worth keeping while the far endpoint is out
            // of reach; drop marks on edges that are now covered on both sides.
            for (auto it = st.edge.begin(); it != st.edge.end();) {
                const Graph::Edge& ed = g.edge(it->first);
                if (st.vertex[static_cast<size_t>(ed.u)] && st.vertex[static_cast<size_t>(ed.v)])
                    it = st.edge.erase(it);
                else
                    ++it;
            }
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                const Graph::Edge& ed = g.edge(e);
                bool um = st.vertex[static_cast<size_t>(ed.u)];
                bool vm = st.vertex[static_cast<size_t>(ed.v)];
                if (um == vm) continue; // both covered: dominated; neither: no anchor
                VertexId from = um ? ed.u : ed.v;
                // Deepest reachable point measured from the marked side,
                // detached stretches included (the message can be parked there).
                auto depth = reach.furthest_offset_from(e, from);
                if (!depth || depth->is_zero() || *depth == ed.w) continue;
                auto it = st.edge.find(e);
                if (it == st.edge.end())
                    st.edge.emplace(e, std::make_pair(from, *depth));
                else if (it->second.first == from && it->second.second < *depth)
                    it->second = {from, *depth};
                else
                    continue;
                st.origin.emplace(st.edge_mark_point(g, e), Provenance{pos, id, l});
            }
        }

        if (static_cast<size_t>(std::count(st.vertex.begin(), st.vertex.end(), 1)) +
                st.edge.size() >
            static_cast<size_t>(g.vertex_count() + g.edge_count()))
            fail(ErrorCode::InvariantViolation, "mark count exceeded n + m");

        if (trace) {
            FixedOrderTrace::Step step;
            for (VertexId v = 0; v < g.vertex_count(); ++v)
                if (st.vertex[static_cast<size_t>(v)]) step.marked_vertices.push_back(v);
            for (const auto& [e, fm] : st.edge)
                step.edge_marks.emplace_back(e, fm.first, fm.second);
            trace->steps.push_back(std::move(step));
        }
    }

    res.decision = Decision::Infeasible;
    return res;
}

} // namespace

const char* grid_decision_name(GridDecision d) {
    switch (d) {
    case GridDecision::Feasible: return "feasible";
    case GridDecision::Infeasible: return "infeasible";
    case GridDecision::Boundary: return "boundary";
    }
    return "?";
}

SolveResult solve_fixed_order(const Instance& inst, const std::vector<int>& order,
                              FixedOrderTrace* trace) {
    check_instance(inst);
    check_order(inst, order);
    DistanceOracle oracle(inst.graph);
    return fixed_order_impl(inst, order, oracle, trace);
}

SolveResult solve_exact(const Instance& inst, int max_agents) {
    check_instance(inst);
    const int k = static_cast<int>(inst.agents.size());
    if (k > max_agents)
        fail(ErrorCode::TooManyAgents, std::to_string(k) +
                                           " agents exceed the exact-solver limit of " +
                                           std::to_string(max_agents));

    SolveResult res;
    res.solver = "exact";
    if (inst.source == inst.target) {
        res.decision = Decision::Feasible;
        res.schedule = Schedule{};
        return res;
    }
    if (k == 0) {
        res.decision = Decision::Infeasible;
        return res;
    }

    DistanceOracle oracle(inst.graph); // shared across all permutations
    std::vector<int> order(static_cast<size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    do {
        SolveResult sub = fixed_order_impl(inst, order, oracle, nullptr);
        if (sub.decision == Decision::Feasible) {
            sub.solver = "exact";
            return sub;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    res.decision = Decision::Infeasible;
    return res;
}

GridDecision brute_force_grid(const Instance& inst, const std::vector<int>& order,
                              const Rational& grid_step) {
    check_instance(inst);
    check_order(inst, order);
    if (grid_step.sign() <= 0)
        fail(ErrorCode::InvariantViolation, "grid step must be positive");
    const Graph& g = inst.graph;

    // Handover candidates: vertices, grid multiples inside every edge, the
    // two delivery endpoints, and the agents' own starts.
    std::set<Point, PointLess> cset;
    for (VertexId v = 0; v < g.vertex_count(); ++v) cset.insert(Point::vertex(v));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Rational& w = g.edge(e).w;
        for (Rational off = grid_step; off < w; off += grid_step)
            cset.insert(make_point(g, e, off));
    }
    cset.insert(inst.source);
    cset.insert(inst.target);
    for (const Agent& a : inst.agents) cset.insert(a.at);
    std::vector<Point> cand(cset.begin(), cset.end());
    const size_t nc = cand.size();

    std::map<Point, size_t, PointLess> idx;
    for (size_t i = 0; i < nc; ++i) idx.emplace(cand[i], i);

    // Exact pairwise candidate distances via vertex anchors (plus the direct
    // stretch when two interior candidates share an edge).
    DistanceOracle oracle(g);
    std::vector<std::vector<std::pair<VertexId, Rational>>> anc(nc);
    for (size_t i = 0; i < nc; ++i) {
        if (cand[i].is_vertex()) {
            anc[i].emplace_back(cand[i].vertex_id(), Rational(0));
        } else {
            const Graph::Edge& ed = g.edge(cand[i].edge_id());
            anc[i].emplace_back(ed.u, cand[i].offset());
            anc[i].emplace_back(ed.v, ed.w - cand[i].offset());
        }
    }
    std::vector<std::vector<std::optional<Rational>>> dist(
        nc, std::vector<std::optional<Rational>>(nc));
    for (size_t i = 0; i < nc; ++i) {
        dist[i][i] = Rational(0);
        for (size_t j = i + 1; j < nc; ++j) {
            std::optional<Rational> best;
            for (const auto& [va, ca] : anc[i]) {
                const auto& row = oracle.from_vertex(va);
                for (const auto& [vb, cb] : anc[j]) {
                    if (!row[static_cast<size_t>(vb)]) continue;
                    Rational d = ca + *row[static_cast<size_t>(vb)] + cb;
                    if (!best || d < *best) best = std::move(d);
                }
            }
            if (!cand[i].is_vertex() && !cand[j].is_vertex() &&
                cand[i].edge_id() == cand[j].edge_id()) {
                Rational d = (cand[i].offset() - cand[j].offset()).abs();
                if (!best || d < *best) best = std::move(d);
            }
            dist[i][j] = best;
            dist[j][i] = std::move(best);
        }
    }

    const size_t si = idx.at(inst.source);
    const size_t ti = idx.at(inst.target);
    auto sweep = [&](const Rational& slack) {
        std::vector<char> in(nc, 0);
        in[si] = 1;
        if (in[ti]) return true;
        for (int id : order) {
            const Agent& agent = inst.agents[static_cast<size_t>(id)];
            const size_t pi = idx.at(agent.at);
            const Rational budget = agent.budget + slack;
            // One leg per agent: pickups come from the set as it stood when
            // the turn began, never from the agent's own drops.
            const std::vector<char> snap = in;
            for (size_t l = 0; l < nc; ++l) {
                if (!snap[l] || !dist[pi][l] || *dist[pi][l] > budget) continue;
                const Rational& base = *dist[pi][l];
                for (size_t c = 0; c < nc; ++c) {
                    if (in[c] || !dist[l][c]) continue;
                    Rational tour = base + *dist[l][c];
                    if (inst.variant == Variant::Returning) {
                        if (!dist[c][pi]) continue;
                        tour += *dist[c][pi];
                    }
                    if (tour <= budget) in[c] = 1;
                }
            }
            if (in[ti]) return true;
        }
        return in[ti] != 0;
    };

    if (sweep(Rational(0))) return GridDecision::Feasible;
    if (sweep(grid_step + grid_step)) return GridDecision::Boundary;
    return GridDecision::Infeasible;
}

} // namespace bdp
