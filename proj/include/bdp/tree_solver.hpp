#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bdp/graph.hpp"
#include "bdp/instance.hpp"
#include "bdp/rational.hpp"

namespace bdp {

// An agent projected onto the source-target axis: `position` is its
// coordinate (source at 0), `reduced_budget` is what remains after walking
// to the axis and back. The agent can ferry the message anywhere inside
// [l(), r()].
struct LineAgent {
    int index;
    Rational position;
    Rational reduced_budget;

    Rational l() const { return position - reduced_budget / Rational(2); }
    Rational r() const { return position + reduced_budget / Rational(2); }
};

struct ExcludedAgent {
    int index;
    std::string reason;
};

// The one-dimensional shadow of a tree instance: cover [0, target] with
// agent intervals. `axis` is the tree walk realizing the coordinates; it is
// absent for synthetic line instances built directly in tests.
struct LineInstance {
    Rational target;
    std::vector<LineAgent> agents;
    std::vector<ExcludedAgent> excluded;
    std::optional<Walk> axis;
};

// One greedy round: the chosen agent covers [hi - B'/2, hi], and the cursor
// moves to hi.
struct CoverStep {
    int agent;
    Rational lo, hi;
};

struct CoverSolution {
    bool feasible = false;
    std::vector<CoverStep> steps;
    std::vector<Rational> cursor;  // cursor trace, starting at 0
};

// Flattens a Returning tree instance onto the s-t axis. Agents whose budget
// cannot pay the round trip to the axis are excluded with a reason.
// Throws NotATree / VariantUnsupported.
LineInstance project_to_line(const Instance& inst);

// Sweeps left to right, always picking the eligible agent whose reach ends
// first (ties: smallest index). Feasible iff the cursor reaches the target.
CoverSolution greedy_cover(const LineInstance& line);

// Exact decision + schedule for Returning delivery on trees. Feasible
// schedules hand over exactly at the cursor positions, so they chain and
// stay within the original budgets (validator passes at gamma = 1).
SolveResult solve_tree(const Instance& inst);

}  // namespace bdp
