#pragma once

#include <tuple>
#include <vector>

#include "bdp/graph.hpp"
#include "bdp/instance.hpp"
#include "bdp/rational.hpp"

namespace bdp {

// Snapshot of the mark state after each completed agent turn: the vertices
// the message can provably sit on, plus per edge at most one interior
// frontier (edge, marked endpoint it is measured from, distance into the
// edge). Used by tests to check the n + m bound and monotone growth.
struct FixedOrderTrace {
    struct Step {
        std::vector<VertexId> marked_vertices;
        std::vector<std::tuple<EdgeId, VertexId, Rational>> edge_marks;
    };
    std::vector<Step> steps;
};

// Processes the agents in the given order; each may carry the message one
// hop (pickup at the source or any mark, drop anywhere its budget reaches)
// or sit out. Feasible the moment the target becomes reachable; the schedule
// is rebuilt from mark provenance and validates at gamma = 1.
//
// Sound for every input. Complete — guaranteed to find a schedule whenever
// one exists for this order — when all agents start at vertices (Returning),
// or when the source is a vertex (Non-Returning). Outside those regimes an
// agent can park the message inside an edge at positions the mark structure
// cannot represent (a reach "island" touching no marked endpoint), and the
// solver may answer Infeasible for a feasible order.
//
// Throws InvalidOrder on duplicate or unknown agent ids.
SolveResult solve_fixed_order(const Instance& inst, const std::vector<int>& order,
                              FixedOrderTrace* trace = nullptr);

// Tries every permutation of all agents in lexicographic order and returns
// the first feasible fixed-order result (skipping inside a permutation
// subsumes subsets). Throws TooManyAgents when k exceeds max_agents.
SolveResult solve_exact(const Instance& inst, int max_agents = 6);

enum class GridDecision { Feasible, Infeasible, Boundary };

const char* grid_decision_name(GridDecision d);

// Independent check for tiny instances: exhaustively relays the message
// between handover candidates (vertices, grid multiples of grid_step along
// every edge, source, target, agent starts) in the given agent order.
//   Feasible:   a candidate-only schedule fits the exact budgets.
//   Boundary:   none fits exactly, but budgets inflated by 2 * grid_step
//               admit one — the true optimum may hide between grid points,
//               so the oracle abstains.
//   Infeasible: even inflated budgets admit none. Snapping any real
//               schedule's handovers to the grid costs at most 2 * grid_step
//               per agent, so this verdict is sound.
GridDecision brute_force_grid(const Instance& inst, const std::vector<int>& order,
                              const Rational& grid_step);

}  // namespace bdp
