#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bdp/graph.hpp"
#include "bdp/rational.hpp"

namespace bdp {

// Returning agents must get back to their start after dropping the message;
// non-returning agents may end anywhere.
enum class Variant { Returning, NonReturning };

inline const char* variant_name(Variant v) {
    return v == Variant::Returning ? "returning" : "non-returning";
}

struct Agent {
    Point at;
    Rational budget; // >= 0
};

// A delivery problem: who starts where with how much energy, and the message
// that has to travel from source to target.
struct Instance {
    Graph graph;
    Point source, target;
    Variant variant = Variant::Returning;
    std::vector<Agent> agents;
};

// Throws on malformed points, negative budgets, etc.
void check_instance(const Instance& inst);

// One agent carrying the message from pickup to dropoff.
struct Leg {
    int agent;
    Point pickup, dropoff;
};

using Schedule = std::vector<Leg>;

enum class Decision { Feasible, Infeasible, CertifiedInfeasible, AugmentedFeasible };

inline const char* decision_name(Decision d) {
    switch (d) {
        case Decision::Feasible: return "feasible";
        case Decision::Infeasible: return "infeasible";
        case Decision::CertifiedInfeasible: return "certified-infeasible";
        case Decision::AugmentedFeasible: return "augmented-feasible";
    }
    return "?";
}

struct SolveResult {
    Decision decision = Decision::Infeasible;
    Rational gamma = Rational(1);      // factor the schedule is certified for
    std::optional<Schedule> schedule;  // present for the two feasible decisions
    std::string solver;
};

} // namespace bdp
