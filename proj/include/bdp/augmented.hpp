#pragma once

#include <optional>
#include <vector>

#include "bdp/instance.hpp"
#include "bdp/rational.hpp"
#include "bdp/reach.hpp"

namespace bdp {

// Pairwise-intersection structure over a family of reach sets: one node per
// set, an edge iff the two sets share a point, annotated with the
// deterministic witness from intersect_witness (contained in both sets).
struct IntersectionGraph {
    struct Edge {
        int to;
        Point witness;
    };
    std::vector<std::vector<Edge>> adj; // symmetric; adj[i] ascending by `to`
};

IntersectionGraph build_intersection_graph(const std::vector<ReachSet>& sets);

// One-leg schedule by the lowest-indexed agent that can deliver alone
// (p -> s -> t, plus the trip home when Returning), or nullopt.
std::optional<Schedule> check_single_agent(const Instance& inst);

// Audit record for an augmented relay: the agents in relay order, the
// handover points h_0 = s, ..., h_l = t, the transfer points the emitted
// schedule actually uses (equal to the handovers for the 2-augmented
// solver), per-agent waypoint itineraries, and per-agent certified cost
// bounds. The emitted legs never cost more than the bounds, and
// gamma = max_i bounds[i] / B_i.
struct AugmentedPlan {
    std::vector<int> relay;
    std::vector<Point> handovers;
    std::vector<Point> transfers;
    std::vector<std::vector<Point>> itineraries;
    std::vector<Rational> bounds;
    Rational gamma = 1;
};

// Relay along a fewest-balls path between B(s,0) and B(t,0) through the
// agents' balls B(p_i, B_i/2): AugmentedFeasible with gamma = 2 (each agent
// walks p -> h_{i-1} -> h_i -> p, cost at most 2 B_i), Feasible with
// gamma = 1 when a single agent suffices, or CertifiedInfeasible — no ball
// path means no schedule exists under the ORIGINAL budgets. Returning only
// (VariantUnsupported otherwise).
SolveResult solve_2_augmented(const Instance& inst, AugmentedPlan* plan = nullptr);

// Budget-balanced relay: guesses the first and last agents (a, b) over all
// ordered pairs, routes through E(p_a, s, B_a), the other agents' balls, and
// E(p_b, t, B_b), then shifts each handover fractionally along the canonical
// shortest walk toward the less-loaded neighbour so the overshoot of a and b
// propagates to the middle. Agents a and b stay within their original
// budgets at the pure-handover relay; the emitted schedule certifies
// gamma = 1 + ((l-2)/l) * max adjacent budget ratio (= 2 - 2/l for uniform
// budgets). Zero-budget agents cannot move the message and are ignored.
// Returning only; single-agent-feasible instances short-circuit at
// gamma = 1; otherwise fewer than two agents raises NeedTwoAgents.
SolveResult solve_balanced_augmented(const Instance& inst, AugmentedPlan* plan = nullptr);

} // namespace bdp
