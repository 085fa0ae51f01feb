#include "bdp/validate.hpp"

#include <optional>
#include <set>

#include "bdp/error.hpp"
#include "bdp/graph.hpp"

namespace bdp {

const char* violation_kind_name(ViolationKind k) {
    switch (k) {
    case ViolationKind::BudgetExceeded: return "budget-exceeded";
    case ViolationKind::ChainBroken: return "chain-broken";
    case ViolationKind::SourceMismatch: return "source-mismatch";
    case ViolationKind::TargetMismatch: return "target-mismatch";
    case ViolationKind::DuplicateAgent: return "duplicate-agent";
    }
    return "?";
}

ValidationReport validate(const Instance& inst, const Schedule& sched,
                          const Rational& gamma) {
    check_instance(inst);
    if (gamma < Rational(1))
        fail(ErrorCode::InvalidGamma, "gamma " + gamma.str() + " < 1");

    ValidationReport rep;
    auto blame = [&rep](int leg, ViolationKind kind, std::string details) {
        rep.violations.push_back({leg, kind, std::move(details)});
    };

    const int k = static_cast<int>(inst.agents.size());
    for (size_t j = 0; j < sched.size(); ++j) {
        const Leg& leg = sched[j];
        if (leg.agent < 0 || leg.agent >= k)
            fail(ErrorCode::UnknownAgent,
                 "leg " + std::to_string(j) + " names agent " +
                     std::to_string(leg.agent) + " of " + std::to_string(k));
        check_point(inst.graph, leg.pickup);
        check_point(inst.graph, leg.dropoff);
    }

    std::set<int> seen;
    for (size_t j = 0; j < sched.size(); ++j)
        if (!seen.insert(sched[j].agent).second)
            blame(static_cast<int>(j), ViolationKind::DuplicateAgent,
                  "agent " + std::to_string(sched[j].agent) +
                      " already carried an earlier leg");

    // Custody chain: source -> leg_0 -> ... -> leg_last -> target.
    if (sched.empty()) {
        if (inst.source != inst.target)
            blame(-1, ViolationKind::TargetMismatch,
                  "empty schedule but target " + inst.target.str() +
                      " differs from source " + inst.source.str());
    } else {
        if (sched.front().pickup != inst.source)
            blame(0, ViolationKind::SourceMismatch,
                  "first pickup " + sched.front().pickup.str() +
                      " is not the source " + inst.source.str());
        for (size_t j = 1; j < sched.size(); ++j)
            if (sched[j].pickup != sched[j - 1].dropoff)
                blame(static_cast<int>(j), ViolationKind::ChainBroken,
                      "pickup " + sched[j].pickup.str() +
                          " does not continue from previous dropoff " +
                          sched[j - 1].dropoff.str());
        if (sched.back().dropoff != inst.target)
            blame(static_cast<int>(sched.size()) - 1,
                  ViolationKind::TargetMismatch,
                  "last dropoff " + sched.back().dropoff.str() +
                      " is not the target " + inst.target.str());
    }

    // Energy: each leg is costed at its cheapest itinerary.
    DistanceOracle oracle(inst.graph);
    for (size_t j = 0; j < sched.size(); ++j) {
        const Leg& leg = sched[j];
        const Agent& agent = inst.agents[leg.agent];
        std::optional<Rational> cost;
        auto to_pickup = oracle.point_distance(agent.at, leg.pickup);
        auto carry = oracle.point_distance(leg.pickup, leg.dropoff);
        if (to_pickup && carry) {
            cost = *to_pickup + *carry;
            if (inst.variant == Variant::Returning) {
                auto home = oracle.point_distance(leg.dropoff, agent.at);
                if (home)
                    *cost += *home;
                else
                    cost.reset();
            }
        }
        if (!cost) {
            rep.leg_cost.push_back(Rational(-1));
            blame(static_cast<int>(j), ViolationKind::BudgetExceeded,
                  "agent " + std::to_string(leg.agent) +
                      " cannot reach its leg (disconnected)");
            continue;
        }
        rep.leg_cost.push_back(*cost);
        if (*cost > gamma * agent.budget)
            blame(static_cast<int>(j), ViolationKind::BudgetExceeded,
                  "agent " + std::to_string(leg.agent) + " spends " +
                      cost->str() + " > " + (gamma * agent.budget).str() +
                      " allowed");
    }

    rep.ok = rep.violations.empty();
    return rep;
}

}  // namespace bdp
