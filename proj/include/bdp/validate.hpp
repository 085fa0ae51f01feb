#pragma once

#include <string>
#include <vector>

#include "bdp/instance.hpp"
#include "bdp/rational.hpp"

namespace bdp {

enum class ViolationKind {
    BudgetExceeded,
    ChainBroken,
    SourceMismatch,
    TargetMismatch,
    DuplicateAgent,
};

const char* violation_kind_name(ViolationKind k);

struct Violation {
    int leg;  // index into the schedule; -1 when no leg is to blame
    ViolationKind kind;
    std::string details;
};

struct ValidationReport {
    bool ok = false;  // ok <=> violations empty
    std::vector<Rational> leg_cost;  // -1 marks a leg with an unreachable hop
    std::vector<Violation> violations;
};

// Checks that the legs hand the message from source to target without gaps
// and that each leg's cheapest itinerary fits in gamma times the agent's
// budget (returning legs include the trip home; boundary equality passes).
// Throws UnknownAgent for out-of-range agent ids and InvalidGamma for
// gamma < 1; everything else is reported as a violation, not an error.
ValidationReport validate(const Instance& inst, const Schedule& sched,
                          const Rational& gamma);

}  // namespace bdp
