#include "doctest.h"

#include <algorithm>
#include <functional>
#include <set>

#include "bdp/error.hpp"
#include "bdp/fixed_order.hpp"
#include "bdp/validate.hpp"
#include "testutil.hpp"

using namespace bdp;
using testutil::Q;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::None;
}

// Single edge s--t of weight 4, one agent on each end, budget 4 each. Only
// the s-side agent can move the message first; the order decides everything.
Instance relay_edge() {
    Instance inst;
    inst.graph = testutil::graph(2, {{0, 1, Q(4)}});
    inst.source = Point::vertex(0);
    inst.target = Point::vertex(1);
    inst.agents.push_back({Point::vertex(0), Q(4)});
    inst.agents.push_back({Point::vertex(1), Q(4)});
    return inst;
}

// Agents must appear in the schedule in the same relative order they were
// processed in, each at most once.
void check_order_consistent(const Schedule& sched, const std::vector<int>& order) {
    std::vector<int> pos_of(64, -1);
    for (size_t i = 0; i < order.size(); ++i) pos_of[static_cast<size_t>(order[i])] = static_cast<int>(i);
    int last = -1;
    for (const Leg& leg : sched) {
        REQUIRE(pos_of[static_cast<size_t>(leg.agent)] >= 0);
        CHECK(pos_of[static_cast<size_t>(leg.agent)] > last);
        last = pos_of[static_cast<size_t>(leg.agent)];
    }
}

void shuffle_order(testutil::Rng& rng, std::vector<int>& order) {
    for (size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.next(i)]);
}

} // namespace

TEST_CASE("single-edge relay depends on the agent order") {
    Instance inst = relay_edge();

    SUBCASE("helpful order: the s-agent walks the message to the midpoint") {
        FixedOrderTrace trace;
        SolveResult res = solve_fixed_order(inst, {0, 1}, &trace);
        REQUIRE(res.decision == Decision::Feasible);
        CHECK(res.solver == "fixed-order");
        REQUIRE(res.schedule.has_value());
        REQUIRE(res.schedule->size() == 2);
        CHECK((*res.schedule)[0].agent == 0);
        CHECK((*res.schedule)[0].pickup == Point::vertex(0));
        CHECK((*res.schedule)[0].dropoff == Point::interior(0, Q(2)));
        CHECK((*res.schedule)[1].agent == 1);
        CHECK((*res.schedule)[1].pickup == Point::interior(0, Q(2)));
        CHECK((*res.schedule)[1].dropoff == Point::vertex(1));

        ValidationReport rep = validate(inst, *res.schedule, Q(1));
        CHECK(rep.ok);
        CHECK(rep.leg_cost == std::vector<Rational>{Q(4), Q(4)});

        // After agent 0's turn: s is marked, plus the frontier 2 deep into
        // the edge, measured from vertex 0.
        REQUIRE(trace.steps.size() == 1);
        CHECK(trace.steps[0].marked_vertices == std::vector<VertexId>{0});
        REQUIRE(trace.steps[0].edge_marks.size() == 1);
        CHECK(std::get<0>(trace.steps[0].edge_marks[0]) == 0);
        CHECK(std::get<1>(trace.steps[0].edge_marks[0]) == 0);
        CHECK(std::get<2>(trace.steps[0].edge_marks[0]) == Q(2));
    }

    SUBCASE("unhelpful order: the t-agent moves first and can do nothing") {
        SolveResult res = solve_fixed_order(inst, {1, 0});
        CHECK(res.decision == Decision::Infeasible);
        CHECK_FALSE(res.schedule.has_value());
    }

    SUBCASE("exact solver finds the helpful permutation") {
        SolveResult res = solve_exact(inst);
        REQUIRE(res.decision == Decision::Feasible);
        CHECK(res.solver == "exact");
        CHECK(validate(inst, *res.schedule, Q(1)).ok);
    }

    SUBCASE("mirrored instance measures the frontier from the far endpoint") {
        Instance m = relay_edge();
        std::swap(m.source, m.target); // now s = vertex 1, t = vertex 0
        std::swap(m.agents[0].at, m.agents[1].at);
        FixedOrderTrace trace;
        SolveResult res = solve_fixed_order(m, {0, 1}, &trace);
        REQUIRE(res.decision == Decision::Feasible);
        REQUIRE(trace.steps.size() >= 1);
        REQUIRE(trace.steps[0].edge_marks.size() == 1);
        CHECK(std::get<1>(trace.steps[0].edge_marks[0]) == 1); // from vertex 1
        CHECK(std::get<2>(trace.steps[0].edge_marks[0]) == Q(2));
        CHECK(validate(m, *res.schedule, Q(1)).ok);
    }
}

TEST_CASE("grid oracle on the single-edge relay") {
    Instance inst = relay_edge();
    CHECK(brute_force_grid(inst, {0, 1}, Q(1, 2)) == GridDecision::Feasible);
    CHECK(brute_force_grid(inst, {1, 0}, Q(1, 2)) == GridDecision::Infeasible);

    SUBCASE("perturbed budgets push the only handover off-grid") {
        inst.agents[0].budget = Q(4) + Q(1, 1000);
        inst.agents[1].budget = Q(4) - Q(1, 1000);
        // The only feasible handover is at offset 2 + 1/2000; the DP finds
        // it, the grid oracle honestly abstains.
        CHECK(solve_fixed_order(inst, {0, 1}).decision == Decision::Feasible);
        CHECK(brute_force_grid(inst, {0, 1}, Q(1, 2)) == GridDecision::Boundary);
    }

    SUBCASE("decision names") {
        CHECK(std::string(grid_decision_name(GridDecision::Feasible)) == "feasible");
        CHECK(std::string(grid_decision_name(GridDecision::Infeasible)) == "infeasible");
        CHECK(std::string(grid_decision_name(GridDecision::Boundary)) == "boundary");
    }

    SUBCASE("grid step must be positive") {
        CHECK(code_of([&] { brute_force_grid(inst, {0, 1}, Q(0)); }) ==
              ErrorCode::InvariantViolation);
        CHECK(code_of([&] { brute_force_grid(inst, {0, 1}, Q(-1, 2)); }) ==
              ErrorCode::InvariantViolation);
    }
}

TEST_CASE("degenerate inputs and argument validation") {
    Instance inst = relay_edge();

    SUBCASE("invalid orders") {
        CHECK(code_of([&] { solve_fixed_order(inst, {0, 0}); }) == ErrorCode::InvalidOrder);
        CHECK(code_of([&] { solve_fixed_order(inst, {2}); }) == ErrorCode::InvalidOrder);
        CHECK(code_of([&] { solve_fixed_order(inst, {-1}); }) == ErrorCode::InvalidOrder);
    }

    SUBCASE("nobody to carry") {
        inst.agents.clear();
        SolveResult res = solve_exact(inst);
        CHECK(res.decision == Decision::Infeasible);
        CHECK(solve_fixed_order(inst, {}).decision == Decision::Infeasible);
    }

    SUBCASE("source equals target is trivially done, even with no agents") {
        inst.target = inst.source;
        inst.agents.clear();
        SolveResult res = solve_exact(inst);
        REQUIRE(res.decision == Decision::Feasible);
        CHECK(res.schedule->empty());

        Instance interior = relay_edge();
        interior.source = Point::interior(0, Q(3, 2));
        interior.target = Point::interior(0, Q(3, 2));
        CHECK(solve_fixed_order(interior, {0, 1}).decision == Decision::Feasible);
    }

    SUBCASE("agent-count limit") {
        for (int i = 0; i < 5; ++i) inst.agents.push_back({Point::vertex(0), Q(0)});
        REQUIRE(inst.agents.size() == 7);
        CHECK(code_of([&] { solve_exact(inst); }) == ErrorCode::TooManyAgents);
        CHECK(solve_exact(inst, 7).decision == Decision::Feasible); // raised limit
    }
}

TEST_CASE("an agent that never helps does not change the decision") {
    Instance inst = relay_edge();
    // A zero-budget bystander in the middle of the edge.
    inst.agents.push_back({Point::interior(0, Q(1)), Q(0)});

    CHECK(solve_fixed_order(inst, {0, 1, 2}).decision == Decision::Feasible);
    CHECK(solve_fixed_order(inst, {0, 2, 1}).decision == Decision::Feasible);
    CHECK(solve_fixed_order(inst, {2, 0, 1}).decision == Decision::Feasible);
    CHECK(solve_fixed_order(inst, {1, 2, 0}).decision == Decision::Infeasible);
    CHECK(solve_fixed_order(inst, {2, 1, 0}).decision == Decision::Infeasible);

    // Same with a far-away agent whose budget cannot reach anything useful.
    Instance far = relay_edge();
    far.graph = testutil::graph(3, {{0, 1, Q(4)}, {1, 2, Q(10)}});
    far.agents.push_back({Point::vertex(2), Q(1)});
    CHECK(solve_fixed_order(far, {0, 2, 1}).decision == Decision::Feasible);
    CHECK(solve_fixed_order(far, {2, 1, 0}).decision == Decision::Infeasible);
}

TEST_CASE("permutation closure: a zero-budget agent never changes solve_exact") {
    testutil::Rng rng(2026'08'05);
    for (int it = 0; it < 30; ++it) {
        Graph g = testutil::random_tree(rng, 4 + static_cast<int>(rng.next(3)), 2, 2);
        Instance inst = testutil::random_vertex_instance(rng, std::move(g), 3, 4, 2);
        Decision base = solve_exact(inst).decision;
        Instance padded = inst;
        padded.agents.push_back(
            {Point::vertex(static_cast<VertexId>(rng.next(padded.graph.vertex_count()))), Q(0)});
        CHECK(solve_exact(padded).decision == base);
    }
}

TEST_CASE("mark bookkeeping invariants along random runs") {
    testutil::Rng rng(611);
    for (int it = 0; it < 60; ++it) {
        Variant variant = it % 2 == 0 ? Variant::Returning : Variant::NonReturning;
        Graph g = testutil::random_graph(rng, 5 + static_cast<int>(rng.next(3)),
                                         static_cast<int>(rng.next(3)), 3, 2);
        Instance inst = testutil::random_vertex_instance(rng, std::move(g), 4, 5, 2, variant);
        std::vector<int> order(inst.agents.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        shuffle_order(rng, order);

        FixedOrderTrace trace;
        solve_fixed_order(inst, order, &trace);

        const Graph& gr = inst.graph;
        std::set<VertexId> prev_marked;
        for (const auto& step : trace.steps) {
            // Cardinality bound: at most one mark per vertex plus one per edge.
            CHECK(step.marked_vertices.size() + step.edge_marks.size() <=
                  static_cast<size_t>(gr.vertex_count() + gr.edge_count()));

            // Vertex marks only grow.
            std::set<VertexId> marked(step.marked_vertices.begin(), step.marked_vertices.end());
            CHECK(std::includes(marked.begin(), marked.end(), prev_marked.begin(),
                                prev_marked.end()));
            prev_marked = marked;

            std::set<EdgeId> seen_edges;
            for (const auto& [e, from, depth] : step.edge_marks) {
                CHECK(seen_edges.insert(e).second); // at most one mark per edge
                const Graph::Edge& ed = gr.edge(e);
                CHECK((from == ed.u || from == ed.v));
                CHECK(marked.count(from) == 1); // anchored on a marked vertex
                VertexId other = from == ed.u ? ed.v : ed.u;
                CHECK(marked.count(other) == 0); // dropped once both ends covered
                CHECK(depth > Q(0));
                CHECK(depth < ed.w);
            }
        }

        // Frontier depth never shrinks while the mark survives, and a mark
        // only vanishes because the far endpoint got covered.
        for (size_t s = 1; s < trace.steps.size(); ++s) {
            std::set<VertexId> marked(trace.steps[s].marked_vertices.begin(),
                                      trace.steps[s].marked_vertices.end());
            for (const auto& [e, from, depth] : trace.steps[s - 1].edge_marks) {
                bool found = false;
                for (const auto& [e2, from2, depth2] : trace.steps[s].edge_marks)
                    if (e2 == e) {
                        found = true;
                        CHECK(from2 == from);
                        CHECK(depth2 >= depth);
                    }
                if (!found) {
                    const Graph::Edge& ed = inst.graph.edge(e);
                    CHECK(marked.count(ed.u) == 1);
                    CHECK(marked.count(ed.v) == 1);
                }
            }
        }
    }
}

TEST_CASE("fixed-order decisions agree with the grid oracle on tiny instances") {
    testutil::Rng rng(4242);
    int feasible = 0, infeasible = 0, boundary = 0;
    for (int it = 0; it < 60; ++it) {
        Variant variant = it % 2 == 0 ? Variant::Returning : Variant::NonReturning;
        Graph g = testutil::random_graph(rng, 4 + static_cast<int>(rng.next(3)),
                                         static_cast<int>(rng.next(2)), 2, 2);
        Instance inst = testutil::random_vertex_instance(rng, std::move(g), 3, 4, 2, variant);
        std::vector<int> order(inst.agents.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        shuffle_order(rng, order);

        SolveResult res = solve_fixed_order(inst, order);
        GridDecision grid = brute_force_grid(inst, order, Q(1, 8));

        if (grid == GridDecision::Boundary) {
            ++boundary;
            continue; // the oracle abstains
        }
        if (res.decision == Decision::Feasible) {
            ++feasible;
            CHECK(grid == GridDecision::Feasible);
            ValidationReport rep = validate(inst, *res.schedule, Q(1));
            CHECK(rep.ok);
            check_order_consistent(*res.schedule, order);
        } else {
            ++infeasible;
            CHECK(grid == GridDecision::Infeasible);
        }
    }
    // The suite must exercise both outcomes to mean anything.
    CHECK(feasible >= 10);
    CHECK(infeasible >= 10);
    CHECK(feasible + infeasible + boundary == 60);
}

TEST_CASE("documented blind spots: islands the mark structure cannot hold") {
    // Non-Returning with an interior source: agent 0 can park the message
    // inside the edge (a reach island), agent 1 can finish from there, but
    // no vertex ever becomes marked, so the solver under-approximates.
    Instance nr;
    nr.graph = testutil::graph(2, {{0, 1, Q(10)}});
    nr.variant = Variant::NonReturning;
    nr.source = Point::interior(0, Q(5));
    nr.target = Point::vertex(1);
    nr.agents.push_back({Point::vertex(0), Q(7)});
    nr.agents.push_back({Point::vertex(1), Q(6)});

    Schedule hand = {{0, nr.source, Point::interior(0, Q(7))},
                     {1, Point::interior(0, Q(7)), nr.target}};
    CHECK(validate(nr, hand, Q(1)).ok); // a real schedule exists...
    CHECK(solve_fixed_order(nr, {0, 1}).decision == Decision::Infeasible);
    CHECK(solve_exact(nr).decision == Decision::Infeasible);
    // ...and the grid oracle sees it.
    CHECK(brute_force_grid(nr, {0, 1}, Q(1, 2)) == GridDecision::Feasible);

    // Returning with an agent starting inside an edge: same effect, the
    // round trip around its own position forms an island.
    Instance ret;
    ret.graph = testutil::graph(2, {{0, 1, Q(10)}});
    ret.source = Point::interior(0, Q(5));
    ret.target = Point::vertex(1);
    ret.agents.push_back({Point::interior(0, Q(5)), Q(4)});
    ret.agents.push_back({Point::vertex(1), Q(6)});

    Schedule hand2 = {{0, ret.source, Point::interior(0, Q(7))},
                      {1, Point::interior(0, Q(7)), ret.target}};
    CHECK(validate(ret, hand2, Q(1)).ok);
    CHECK(solve_exact(ret).decision == Decision::Infeasible);
    CHECK(brute_force_grid(ret, {0, 1}, Q(1, 2)) == GridDecision::Feasible);
}

TEST_CASE("exact solver matches the grid oracle over full permutation sets") {
    // Order-free comparison: the instance is truly feasible iff SOME order
    // works; mirror that on the oracle side by trying every permutation.
    testutil::Rng rng(777);
    for (int it = 0; it < 25; ++it) {
        Variant variant = it % 2 == 0 ? Variant::Returning : Variant::NonReturning;
        Graph g = testutil::random_tree(rng, 4 + static_cast<int>(rng.next(2)), 2, 2);
        Instance inst = testutil::random_vertex_instance(rng, std::move(g), 3, 4, 2, variant);

        SolveResult res = solve_exact(inst);

        std::vector<int> order(inst.agents.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end());
        bool grid_feasible = false, grid_boundary = false;
        do {
            GridDecision d = brute_force_grid(inst, order, Q(1, 8));
            if (d == GridDecision::Feasible) grid_feasible = true;
            if (d == GridDecision::Boundary) grid_boundary = true;
        } while (std::next_permutation(order.begin(), order.end()) && !grid_feasible);

        if (res.decision == Decision::Feasible)
            CHECK((grid_feasible || grid_boundary));
        else
            CHECK_FALSE(grid_feasible);
    }
}
