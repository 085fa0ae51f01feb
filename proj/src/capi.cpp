#include "bdp.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "bdp/augmented.hpp"
#include "bdp/error.hpp"
#include "bdp/fixed_order.hpp"
#include "bdp/gadget.hpp"
#include "bdp/gen.hpp"
#include "bdp/instance.hpp"
#include "bdp/io.hpp"
#include "bdp/tree_solver.hpp"
#include "bdp/validate.hpp"

struct bdp_instance {
    bdp::Instance v;
};
struct bdp_result {
    bdp::SolveResult v;
};
struct bdp_report {
    bdp::ValidationReport rep;
    bdp::Rational gamma;
};
struct bdp_gadget {
    bdp::GadgetInstance v;
};

namespace {

thread_local std::string g_last_error;

int set_error(int code, const std::string& message) {
    g_last_error = message;
    return code;
}

// Runs `fn`, translating exceptions into negative codes + thread-local text.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const bdp::Error& e) {
        return set_error(-static_cast<int>(e.code()), e.what());
    } catch (const std::exception& e) {
        return set_error(BDP_E_UNKNOWN, e.what());
    } catch (...) {
        return set_error(BDP_E_UNKNOWN, "unknown failure");
    }
}

int require(bool ok, const char* what) {
    return ok ? BDP_OK : set_error(BDP_E_ARGUMENT, what);
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int emit_string(const std::string& s, char** out) {
    *out = copy_string(s);
    return *out ? BDP_OK : set_error(BDP_E_UNKNOWN, "out of memory");
}

int variant_from_int(int variant, bdp::Variant* out) {
    if (variant == BDP_VARIANT_RETURNING) {
        *out = bdp::Variant::Returning;
        return BDP_OK;
    }
    if (variant == BDP_VARIANT_NON_RETURNING) {
        *out = bdp::Variant::NonReturning;
        return BDP_OK;
    }
    return set_error(BDP_E_ARGUMENT, "unknown variant value");
}

int gen_common(const bdp::GenOptions& opt, bool tree, bdp_instance** out) {
    return guarded([&] {
        auto inst = tree ? bdp::gen_random_tree(opt) : bdp::gen_random_graph(opt);
        *out = new bdp_instance{std::move(inst)};
        return BDP_OK;
    });
}

}  // namespace

extern "C" {

const char* bdp_last_error(void) { return g_last_error.c_str(); }

void bdp_string_free(char* s) { std::free(s); }

/* --- instances --------------------------------------------------------- */

int bdp_instance_parse(const char* json_text, bdp_instance** out) {
    if (int rc = require(json_text && out, "json_text and out must not be NULL")) return rc;
    return guarded([&] {
        *out = new bdp_instance{bdp::parse_instance(json_text)};
        return BDP_OK;
    });
}

int bdp_instance_emit(const bdp_instance* inst, char** out_json) {
    if (int rc = require(inst && out_json, "inst and out_json must not be NULL")) return rc;
    return guarded([&] { return emit_string(bdp::emit_instance(inst->v), out_json); });
}

int bdp_instance_agent_count(const bdp_instance* inst) {
    if (int rc = require(inst != nullptr, "inst must not be NULL")) return rc;
    return static_cast<int>(inst->v.agents.size());
}

int bdp_instance_variant(const bdp_instance* inst) {
    if (int rc = require(inst != nullptr, "inst must not be NULL")) return rc;
    return inst->v.variant == bdp::Variant::Returning ? BDP_VARIANT_RETURNING
                                                      : BDP_VARIANT_NON_RETURNING;
}

int bdp_instance_set_variant(bdp_instance* inst, int variant) {
    if (int rc = require(inst != nullptr, "inst must not be NULL")) return rc;
    bdp::Variant v;
    if (int rc = variant_from_int(variant, &v)) return rc;
    inst->v.variant = v;
    return BDP_OK;
}

int bdp_instance_uniformize(const bdp_instance* inst, const char* budget,
                            bdp_instance** out) {
    if (int rc = require(inst && budget && out, "inst, budget and out must not be NULL"))
        return rc;
    return guarded([&] {
        *out = new bdp_instance{
            bdp::uniformize_budgets(inst->v, bdp::Rational::parse(budget))};
        return BDP_OK;
    });
}

void bdp_instance_free(bdp_instance* inst) { delete inst; }

/* --- solving ------------------------------------------------------------ */

int bdp_solve(const bdp_instance* inst, const char* algo, const int* order,
              int order_len, bdp_result** out) {
    if (int rc = require(inst && algo && out, "inst, algo and out must not be NULL"))
        return rc;
    if (int rc = require(order_len >= 0 && (order_len == 0 || order),
                         "order must be provided when order_len > 0"))
        return rc;
    return guarded([&]() -> int {
        const std::string name(algo);
        bdp::SolveResult res;
        if (name == "tree") {
            res = bdp::solve_tree(inst->v);
        } else if (name == "aug2") {
            res = bdp::solve_2_augmented(inst->v);
        } else if (name == "balanced") {
            res = bdp::solve_balanced_augmented(inst->v);
        } else if (name == "fixed-order") {
            res = bdp::solve_fixed_order(inst->v, std::vector<int>(order, order + order_len));
        } else if (name == "exact") {
            res = bdp::solve_exact(inst->v);
        } else {
            return set_error(BDP_E_ARGUMENT, "unknown algorithm \"" + name + "\"");
        }
        *out = new bdp_result{std::move(res)};
        return BDP_OK;
    });
}

int bdp_result_decision(const bdp_result* res) {
    if (int rc = require(res != nullptr, "res must not be NULL")) return rc;
    switch (res->v.decision) {
        case bdp::Decision::Feasible: return BDP_DECISION_FEASIBLE;
        case bdp::Decision::Infeasible: return BDP_DECISION_INFEASIBLE;
        case bdp::Decision::CertifiedInfeasible: return BDP_DECISION_CERTIFIED_INFEASIBLE;
        case bdp::Decision::AugmentedFeasible: return BDP_DECISION_AUGMENTED_FEASIBLE;
    }
    return set_error(BDP_E_UNKNOWN, "corrupt decision");
}

int bdp_result_gamma(const bdp_result* res, char** out_text) {
    if (int rc = require(res && out_text, "res and out_text must not be NULL")) return rc;
    return guarded([&] { return emit_string(res->v.gamma.str(), out_text); });
}

int bdp_result_emit(const bdp_result* res, char** out_json) {
    if (int rc = require(res && out_json, "res and out_json must not be NULL")) return rc;
    return guarded([&] { return emit_string(bdp::emit_result(res->v), out_json); });
}

void bdp_result_free(bdp_result* res) { delete res; }

/* --- validation ---------------------------------------------------------- */

int bdp_validate(const bdp_instance* inst, const char* result_json,
                 const char* gamma, bdp_report** out) {
    if (int rc = require(inst && result_json && out,
                         "inst, result_json and out must not be NULL"))
        return rc;
    return guarded([&]() -> int {
        bdp::Rational g = gamma ? bdp::Rational::parse(gamma) : bdp::Rational(1);
        bdp::SolveResult res = bdp::parse_result(result_json, &inst->v.graph);
        const bdp::Schedule empty;
        const bdp::Schedule& sched = res.schedule ? *res.schedule : empty;
        *out = new bdp_report{bdp::validate(inst->v, sched, g), g};
        return BDP_OK;
    });
}

int bdp_report_ok(const bdp_report* rep) {
    if (int rc = require(rep != nullptr, "rep must not be NULL")) return rc;
    return rep->rep.ok ? 1 : 0;
}

int bdp_report_emit(const bdp_report* rep, char** out_json) {
    if (int rc = require(rep && out_json, "rep and out_json must not be NULL")) return rc;
    return guarded(
        [&] { return emit_string(bdp::emit_report(rep->rep, rep->gamma), out_json); });
}

void bdp_report_free(bdp_report* rep) { delete rep; }

/* --- seeded generators ---------------------------------------------------- */

int bdp_gen_tree(uint64_t seed, int vertices, int max_agents, long max_num,
                 long max_den, int variant, bdp_instance** out) {
    if (int rc = require(out != nullptr, "out must not be NULL")) return rc;
    bdp::GenOptions opt;
    opt.seed = seed;
    opt.vertices = vertices;
    opt.max_agents = max_agents;
    opt.max_num = max_num;
    opt.max_den = max_den;
    if (int rc = variant_from_int(variant, &opt.variant)) return rc;
    return gen_common(opt, true, out);
}

int bdp_gen_graph(uint64_t seed, int vertices, int extra_edges, int max_agents,
                  long max_num, long max_den, int variant, bdp_instance** out) {
    if (int rc = require(out != nullptr, "out must not be NULL")) return rc;
    bdp::GenOptions opt;
    opt.seed = seed;
    opt.vertices = vertices;
    opt.extra_edges = extra_edges;
    opt.max_agents = max_agents;
    opt.max_num = max_num;
    opt.max_den = max_den;
    if (int rc = variant_from_int(variant, &opt.variant)) return rc;
    return gen_common(opt, false, out);
}

/* --- reduction gadgets ----------------------------------------------------- */

int bdp_gadget_build(const char* dimacs, const char* epsilon, int variant,
                     bdp_gadget** out) {
    if (int rc = require(dimacs && out, "dimacs and out must not be NULL")) return rc;
    bdp::Variant v;
    if (int rc = variant_from_int(variant, &v)) return rc;
    return guarded([&] {
        bdp::Cnf f = bdp::parse_dimacs(dimacs);
        auto gadget = epsilon
                          ? bdp::build_augmented_gadget(f, bdp::Rational::parse(epsilon), v)
                          : bdp::build_basic_gadget(f, v);
        *out = new bdp_gadget{std::move(gadget)};
        return BDP_OK;
    });
}

int bdp_gadget_instance(const bdp_gadget* gad, bdp_instance** out) {
    if (int rc = require(gad && out, "gad and out must not be NULL")) return rc;
    return guarded([&] {
        *out = new bdp_instance{gad->v.instance};
        return BDP_OK;
    });
}

int bdp_gadget_rolemap(const bdp_gadget* gad, char** out_json) {
    if (int rc = require(gad && out_json, "gad and out_json must not be NULL")) return rc;
    return guarded([&] { return emit_string(bdp::emit_rolemap(gad->v), out_json); });
}

int bdp_gadget_witness(const bdp_gadget* gad, const unsigned char* assignment,
                       int len, bdp_result** out) {
    if (int rc = require(gad && out && (assignment || len == 0),
                         "gad, assignment and out must not be NULL"))
        return rc;
    return guarded([&] {
        std::vector<bool> a(assignment, assignment + len);
        bdp::SolveResult res;
        res.decision = bdp::Decision::Feasible;
        res.gamma = bdp::Rational(1);
        res.schedule = bdp::schedule_from_assignment(gad->v, a);
        res.solver = "gadget-witness";
        *out = new bdp_result{std::move(res)};
        return BDP_OK;
    });
}

void bdp_gadget_free(bdp_gadget* gad) { delete gad; }

}  // extern "C"
