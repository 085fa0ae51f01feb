#include "bdp/instance.hpp"

#include "bdp/error.hpp"

namespace bdp {

void check_instance(const Instance& inst) {
    check_point(inst.graph, inst.source);
    check_point(inst.graph, inst.target);
    for (size_t i = 0; i < inst.agents.size(); ++i) {
        check_point(inst.graph, inst.agents[i].at);
        if (inst.agents[i].budget.is_negative())
            fail(ErrorCode::InvariantViolation,
                 "agent " + std::to_string(i) + " has negative budget " +
                     inst.agents[i].budget.str());
    }
}

}  // namespace bdp
