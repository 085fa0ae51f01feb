#include "bdp/tree_solver.hpp"

#include <algorithm>
#include <queue>

#include "bdp/error.hpp"

namespace bdp {
namespace {

void require_tree(const Graph& g) {
    const int n = g.vertex_count();
    if (g.edge_count() != n - 1)
        fail(ErrorCode::NotATree, "graph has " + std::to_string(g.edge_count()) +
                                      " edges, a tree on " + std::to_string(n) +
                                      " vertices has " + std::to_string(n - 1));
    // n-1 edges + connected <=> tree.
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack = {0};
    seen[0] = 1;
    int found = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (auto [w, e] : g.adjacent(v))
            if (!seen[w]) {
                seen[w] = 1;
                ++found;
                stack.push_back(w);
            }
    }
    if (found != n)
        fail(ErrorCode::NotATree, "graph is disconnected (" +
                                      std::to_string(found) + " of " +
                                      std::to_string(n) + " vertices reached)");
}

}  // namespace

LineInstance project_to_line(const Instance& inst) {
    check_instance(inst);
    if (inst.variant != Variant::Returning)
        fail(ErrorCode::VariantUnsupported,
             "line projection only models returning agents");
    require_tree(inst.graph);

    DistanceOracle oracle(inst.graph);
    LineInstance line;
    auto dst = oracle.point_distance(inst.source, inst.target);
    line.target = *dst;  // trees are connected, distance always exists
    if (inst.source != inst.target)
        line.axis = oracle.shortest_walk(inst.source, inst.target);

    for (size_t i = 0; i < inst.agents.size(); ++i) {
        const Agent& a = inst.agents[i];
        Rational ds = *oracle.point_distance(inst.source, a.at);
        Rational dt = *oracle.point_distance(inst.target, a.at);
        // On a tree the detour to the axis and the position along it fall
        // out of the two anchor distances.
        Rational off_axis = (ds + dt - line.target) / Rational(2);
        Rational coord = (ds - dt + line.target) / Rational(2);
        Rational reduced = a.budget - Rational(2) * off_axis;
        if (reduced.is_negative()) {
            line.excluded.push_back(
                {static_cast<int>(i),
                 "needs " + (Rational(2) * off_axis).str() +
                     " to reach the s-t path and return, budget " +
                     a.budget.str()});
            continue;
        }
        line.agents.push_back({static_cast<int>(i), coord, reduced});
    }
    return line;
}

CoverSolution greedy_cover(const LineInstance& line) {
    CoverSolution sol;
    sol.cursor.push_back(Rational(0));
    Rational cur(0);

    // Sweep agents in by left endpoint; keep the active ones on a min-heap
    // by right endpoint (ties: smallest index). Interval endpoints are
    // materialized once up front: recomputing l()/r() inside the comparators
    // costs a division and two allocations per call and dominates at large k.
    const size_t k = line.agents.size();
    std::vector<Rational> half_of(k), l_of(k), r_of(k);
    for (size_t i = 0; i < k; ++i) {
        half_of[i] = line.agents[i].reduced_budget / Rational(2);
        l_of[i] = line.agents[i].position - half_of[i];
        r_of[i] = line.agents[i].position + half_of[i];
    }
    sol.steps.reserve(k);
    sol.cursor.reserve(k + 1);
    std::vector<int> by_l(k);
    for (size_t i = 0; i < k; ++i) by_l[i] = static_cast<int>(i);
    std::sort(by_l.begin(), by_l.end(), [&](int a, int b) {
        int c = l_of[a].compare(l_of[b]);
        if (c != 0) return c < 0;
        return line.agents[a].index < line.agents[b].index;
    });
    auto worse = [&](int a, int b) {
        int c = r_of[a].compare(r_of[b]);
        if (c != 0) return c > 0;
        return line.agents[a].index > line.agents[b].index;
    };
    std::priority_queue<int, std::vector<int>, decltype(worse)> heap(worse);

    size_t next = 0;
    while (cur < line.target) {
        while (next < k && l_of[by_l[next]] <= cur) {
            // Intervals entirely behind the cursor are dead on arrival; the
            // cursor only moves right, so they never need to enter the heap.
            if (r_of[by_l[next]] > cur) heap.push(by_l[next]);
            ++next;
        }
        while (!heap.empty() && r_of[heap.top()] <= cur) heap.pop();
        if (heap.empty()) {
            sol.feasible = false;
            return sol;
        }
        const int pos = heap.top();
        heap.pop();
        Rational advanced = min(r_of[pos], cur + half_of[pos]);
        sol.steps.push_back({line.agents[pos].index, advanced - half_of[pos], advanced});
        cur = advanced;
        sol.cursor.push_back(cur);
    }
    sol.feasible = true;
    return sol;
}

SolveResult solve_tree(const Instance& inst) {
    LineInstance line = project_to_line(inst);
    CoverSolution cover = greedy_cover(line);
    SolveResult res;
    res.solver = "tree";
    if (!cover.feasible) {
        res.decision = Decision::Infeasible;
        return res;
    }
    res.decision = Decision::Feasible;
    Schedule sched;
    for (size_t r = 0; r < cover.steps.size(); ++r) {
        // Hand over exactly at the cursor: the message never moves backwards
        // and each leg stays within the agent's interval, hence its budget.
        Rational from = cover.cursor[r];
        Rational to = min(cover.cursor[r + 1], line.target);
        sched.push_back({cover.steps[r].agent,
                         point_along_walk(inst.graph, *line.axis, from),
                         point_along_walk(inst.graph, *line.axis, to)});
    }
    res.schedule = std::move(sched);
    return res;
}

}  // namespace bdp
