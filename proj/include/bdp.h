#ifndef BDP_H
#define BDP_H

/*
 * C interface to the budgeted-delivery solver library.
 *
 * Every function returns 0 (BDP_OK) on success or a negative error code; the
 * matching human-readable message is available from bdp_last_error() on the
 * same thread. Out-parameters are written only on success. Strings returned
 * through char** are heap-allocated and must be released with
 * bdp_string_free(); handles must be released with their *_free function.
 *
 * All numeric data crosses this boundary as exact decimal rational strings
 * ("3", "-5/2") or as JSON documents using the same encoding.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Error codes. Stable: new codes may be appended, existing values never
 * change. */
enum {
    BDP_OK = 0,
    BDP_E_NON_POSITIVE_WEIGHT = -1,
    BDP_E_SELF_LOOP = -2,
    BDP_E_VERTEX_OUT_OF_RANGE = -3,
    BDP_E_EDGE_OUT_OF_RANGE = -4,
    BDP_E_INVALID_POINT = -5,
    BDP_E_DISTANCE_OUT_OF_RANGE = -6,
    BDP_E_UNREACHABLE = -7,
    BDP_E_EMPTY_REACH = -8,
    BDP_E_MISMATCHED_GRAPHS = -9,
    BDP_E_NOT_A_TREE = -10,
    BDP_E_VARIANT_UNSUPPORTED = -11,
    BDP_E_INVALID_ORDER = -12,
    BDP_E_TOO_MANY_AGENTS = -13,
    BDP_E_NEED_TWO_AGENTS = -14,
    BDP_E_UNKNOWN_AGENT = -15,
    BDP_E_INVALID_GAMMA = -16,
    BDP_E_MALFORMED_CNF = -17,
    BDP_E_EPSILON_OUT_OF_RANGE = -18,
    BDP_E_UNSATISFIED_CLAUSE = -19,
    BDP_E_AMBIGUOUS_ROUTE = -20,
    BDP_E_BUDGET_TOO_SMALL = -21,
    BDP_E_PARSE = -22,
    BDP_E_INVARIANT = -23,
    BDP_E_ARGUMENT = -98, /* null pointer or bad enum value at this boundary */
    BDP_E_UNKNOWN = -99   /* unexpected internal failure */
};

/* Values returned by bdp_result_decision(). */
enum {
    BDP_DECISION_FEASIBLE = 0,
    BDP_DECISION_INFEASIBLE = 1,
    BDP_DECISION_CERTIFIED_INFEASIBLE = 2,
    BDP_DECISION_AUGMENTED_FEASIBLE = 3
};

/* Problem variants. */
enum { BDP_VARIANT_RETURNING = 0, BDP_VARIANT_NON_RETURNING = 1 };

typedef struct bdp_instance bdp_instance;
typedef struct bdp_result bdp_result;
typedef struct bdp_report bdp_report;
typedef struct bdp_gadget bdp_gadget;

/* Message for the most recent failure on this thread; never NULL. */
const char* bdp_last_error(void);

/* Releases a string returned through a char** out-parameter. */
void bdp_string_free(char* s);

/* --- instances ------------------------------------------------------- */

/* Parses a "bdp-instance/1" JSON document and checks every invariant. */
int bdp_instance_parse(const char* json_text, bdp_instance** out);

/* Serializes to the canonical JSON form (sorted keys, lowest terms). */
int bdp_instance_emit(const bdp_instance* inst, char** out_json);

/* Number of agents, or a negative error code. */
int bdp_instance_agent_count(const bdp_instance* inst);

/* The instance's BDP_VARIANT_* value, or a negative error code. */
int bdp_instance_variant(const bdp_instance* inst);

/* Forces the variant flag, e.g. to reinterpret a parsed document. */
int bdp_instance_set_variant(bdp_instance* inst, int variant);

/* Rebuilds the instance so every agent has budget `budget` (a rational
 * string), compensating with pendant edges; feasibility is unchanged. */
int bdp_instance_uniformize(const bdp_instance* inst, const char* budget,
                            bdp_instance** out);

void bdp_instance_free(bdp_instance* inst);

/* --- solving --------------------------------------------------------- */

/* algo names: "tree"        exact on trees (Returning variant)
 *             "aug2"        2-augmented relay (Returning variant)
 *             "balanced"    balanced-overrun relay (Returning variant)
 *             "fixed-order" exact for one fixed agent order (pass `order`)
 *             "exact"       exact over all orders of at most 6 agents
 * `order`/`order_len` are used only by "fixed-order": the agent indices in
 * pickup order. Pass NULL/0 otherwise. */
int bdp_solve(const bdp_instance* inst, const char* algo, const int* order,
              int order_len, bdp_result** out);

/* One of the BDP_DECISION_* values, or a negative error code. */
int bdp_result_decision(const bdp_result* res);

/* The certified augmentation factor as a rational string. */
int bdp_result_gamma(const bdp_result* res, char** out_text);

/* Serializes to a canonical "bdp-result/1" JSON document. */
int bdp_result_emit(const bdp_result* res, char** out_json);

void bdp_result_free(bdp_result* res);

/* --- validation ------------------------------------------------------ */

/* Checks the schedule inside a "bdp-result/1" document against `inst` with
 * per-agent budgets scaled by `gamma` (rational string >= 1, NULL = "1").
 * Succeeds whenever the check ran; inspect bdp_report_ok for the verdict. */
int bdp_validate(const bdp_instance* inst, const char* result_json,
                 const char* gamma, bdp_report** out);

/* 1 when the schedule is valid, 0 when violations were found. */
int bdp_report_ok(const bdp_report* rep);

/* Serializes to a canonical "bdp-report/1" JSON document. */
int bdp_report_emit(const bdp_report* rep, char** out_json);

void bdp_report_free(bdp_report* rep);

/* --- seeded generators ------------------------------------------------ */

/* Deterministic: identical arguments produce identical instances. Agent
 * count is drawn from [1, max_agents]; budgets may be zero. */
int bdp_gen_tree(uint64_t seed, int vertices, int max_agents, long max_num,
                 long max_den, int variant, bdp_instance** out);

/* As above plus `extra_edges` edges beyond the spanning tree. */
int bdp_gen_graph(uint64_t seed, int vertices, int extra_edges, int max_agents,
                  long max_num, long max_den, int variant, bdp_instance** out);

/* --- reduction gadgets ------------------------------------------------ */

/* Compiles a DIMACS CNF (clauses of 1-3 distinct variables) into a delivery
 * instance whose feasible schedules correspond to satisfying assignments.
 * epsilon: NULL selects the basic construction; a rational string selects
 * the augmented construction resisting augmentation below (2 - eps) for the
 * Returning variant or (3 - eps) for Non-Returning. */
int bdp_gadget_build(const char* dimacs, const char* epsilon, int variant,
                     bdp_gadget** out);

/* Copies the compiled delivery instance out of the gadget. */
int bdp_gadget_instance(const bdp_gadget* gad, bdp_instance** out);

/* Serializes agent roles and construction parameters ("bdp-rolemap/1"). */
int bdp_gadget_rolemap(const bdp_gadget* gad, char** out_json);

/* Builds the witness schedule for an assignment (assignment[i] != 0 sets
 * variable i true; len must equal the variable count). The result is
 * feasible with gamma 1, or BDP_E_UNSATISFIED_CLAUSE when the assignment
 * leaves a clause unsatisfied. */
int bdp_gadget_witness(const bdp_gadget* gad, const unsigned char* assignment,
                       int len, bdp_result** out);

void bdp_gadget_free(bdp_gadget* gad);

#ifdef __cplusplus
}
#endif

#endif /* BDP_H */
