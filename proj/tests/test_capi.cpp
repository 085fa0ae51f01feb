// Exercises the C boundary the way an external caller would: everything
// through bdp.h, no internal headers.

#include <string>

#include "bdp.h"
#include "doctest.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    bdp_string_free(s);
    return out;
}

// v0 --2-- v1 --2-- v2, message end to end, one agent.
std::string line_doc(const char* at, const char* budget,
                     const char* variant = "returning") {
    std::string doc = R"({
      "version": "bdp-instance/1",
      "vertices": 3,
      "edges": [[0, 1, "2"], [1, 2, "2"]],
      "variant": ")";
    doc += variant;
    doc += R"(",
      "source": 0,
      "target": 2,
      "agents": [{"at": )";
    doc += at;
    doc += R"(, "budget": ")";
    doc += budget;
    doc += R"("}]
    })";
    return doc;
}

struct Parsed {
    bdp_instance* p = nullptr;
    explicit Parsed(const std::string& doc) {
        REQUIRE(bdp_instance_parse(doc.c_str(), &p) == BDP_OK);
    }
    ~Parsed() { bdp_instance_free(p); }
};

} // namespace

TEST_CASE("instances parse, emit canonically, and expose their fields") {
    Parsed inst(line_doc("1", "4"));
    CHECK(bdp_instance_agent_count(inst.p) == 1);
    CHECK(bdp_instance_variant(inst.p) == BDP_VARIANT_RETURNING);

    char* first = nullptr;
    REQUIRE(bdp_instance_emit(inst.p, &first) == BDP_OK);
    std::string canonical = take(first);

    // The canonical form is a fixed point of parse-then-emit.
    Parsed again(canonical);
    char* second = nullptr;
    REQUIRE(bdp_instance_emit(again.p, &second) == BDP_OK);
    CHECK(take(second) == canonical);

    REQUIRE(bdp_instance_set_variant(inst.p, BDP_VARIANT_NON_RETURNING) == BDP_OK);
    CHECK(bdp_instance_variant(inst.p) == BDP_VARIANT_NON_RETURNING);
    CHECK(bdp_instance_set_variant(inst.p, 7) == BDP_E_ARGUMENT);
    CHECK(bdp_instance_set_variant(nullptr, 0) == BDP_E_ARGUMENT);

    bdp_instance* out = nullptr;
    CHECK(bdp_instance_parse("{ not json", &out) == BDP_E_PARSE);
    CHECK(std::string(bdp_last_error()).size() > 0);
    CHECK(bdp_instance_parse(nullptr, &out) == BDP_E_ARGUMENT);
    CHECK(bdp_instance_parse("{}", nullptr) == BDP_E_ARGUMENT);

    // Structural checks surface the same codes as the native layer.
    std::string negative = line_doc("1", "4");
    negative.replace(negative.find("\"2\""), 3, "\"-2\"");
    CHECK(bdp_instance_parse(negative.c_str(), &out) == BDP_E_NON_POSITIVE_WEIGHT);
    CHECK(bdp_instance_agent_count(nullptr) == BDP_E_ARGUMENT);
}

TEST_CASE("every algorithm solves through the boundary") {
    Parsed easy(line_doc("0", "12"));

    for (const char* algo : {"tree", "exact"}) {
        bdp_result* res = nullptr;
        REQUIRE(bdp_solve(easy.p, algo, nullptr, 0, &res) == BDP_OK);
        CHECK(bdp_result_decision(res) == BDP_DECISION_FEASIBLE);
        char* gamma = nullptr;
        REQUIRE(bdp_result_gamma(res, &gamma) == BDP_OK);
        CHECK(take(gamma) == "1");
        bdp_result_free(res);
    }

    // One agent parked at the middle must double its budget to span the line.
    Parsed middle(line_doc("1", "4"));
    bdp_result* aug = nullptr;
    REQUIRE(bdp_solve(middle.p, "aug2", nullptr, 0, &aug) == BDP_OK);
    CHECK(bdp_result_decision(aug) == BDP_DECISION_AUGMENTED_FEASIBLE);
    char* gamma = nullptr;
    REQUIRE(bdp_result_gamma(aug, &gamma) == BDP_OK);
    CHECK(take(gamma) == "2");
    bdp_result_free(aug);

    // The balanced relay spreads the overrun, and its schedule validates at
    // exactly the gamma it reports.
    std::string chain = R"({
      "version": "bdp-instance/1",
      "vertices": 4,
      "edges": [[0, 1, "2"], [1, 2, "2"], [2, 3, "2"]],
      "variant": "returning",
      "source": 0,
      "target": 3,
      "agents": [{"at": 0, "budget": "4"}, {"at": 2, "budget": "4"},
                 {"at": 3, "budget": "4"}]
    })";
    Parsed relay(chain);
    bdp_result* bal = nullptr;
    REQUIRE(bdp_solve(relay.p, "balanced", nullptr, 0, &bal) == BDP_OK);
    CHECK(bdp_result_decision(bal) == BDP_DECISION_AUGMENTED_FEASIBLE);
    char* bal_gamma = nullptr;
    REQUIRE(bdp_result_gamma(bal, &bal_gamma) == BDP_OK);
    std::string g = take(bal_gamma);
    char* bal_json = nullptr;
    REQUIRE(bdp_result_emit(bal, &bal_json) == BDP_OK);
    std::string bal_doc = take(bal_json);
    bdp_result_free(bal);
    bdp_report* rep = nullptr;
    REQUIRE(bdp_validate(relay.p, bal_doc.c_str(), g.c_str(), &rep) == BDP_OK);
    CHECK(bdp_report_ok(rep) == 1);
    bdp_report_free(rep);

    int order[] = {0};
    bdp_result* fixed = nullptr;
    REQUIRE(bdp_solve(easy.p, "fixed-order", order, 1, &fixed) == BDP_OK);
    CHECK(bdp_result_decision(fixed) == BDP_DECISION_FEASIBLE);
    bdp_result_free(fixed);

    int twice[] = {0, 0};
    bdp_result* bad = nullptr;
    CHECK(bdp_solve(easy.p, "fixed-order", twice, 2, &bad) == BDP_E_INVALID_ORDER);
    CHECK(bdp_solve(easy.p, "quantum", nullptr, 0, &bad) == BDP_E_ARGUMENT);
    CHECK(std::string(bdp_last_error()).find("quantum") != std::string::npos);
    CHECK(bdp_solve(nullptr, "tree", nullptr, 0, &bad) == BDP_E_ARGUMENT);

    Parsed starved(line_doc("1", "1"));
    bdp_result* none = nullptr;
    REQUIRE(bdp_solve(starved.p, "exact", nullptr, 0, &none) == BDP_OK);
    CHECK(bdp_result_decision(none) == BDP_DECISION_INFEASIBLE);
    bdp_result_free(none);

    std::string triangle = R"({
      "version": "bdp-instance/1",
      "vertices": 3,
      "edges": [[0, 1, "1"], [1, 2, "1"], [0, 2, "1"]],
      "variant": "returning",
      "source": 0,
      "target": 2,
      "agents": [{"at": 0, "budget": "4"}]
    })";
    Parsed cyc(triangle);
    CHECK(bdp_solve(cyc.p, "tree", nullptr, 0, &bad) == BDP_E_NOT_A_TREE);
}

TEST_CASE("validation round trips and flags tampering") {
    Parsed inst(line_doc("0", "8"));
    bdp_result* res = nullptr;
    REQUIRE(bdp_solve(inst.p, "tree", nullptr, 0, &res) == BDP_OK);
    REQUIRE(bdp_result_decision(res) == BDP_DECISION_FEASIBLE);
    char* res_json = nullptr;
    REQUIRE(bdp_result_emit(res, &res_json) == BDP_OK);
    std::string doc = take(res_json);
    bdp_result_free(res);

    bdp_report* rep = nullptr;
    REQUIRE(bdp_validate(inst.p, doc.c_str(), nullptr, &rep) == BDP_OK);
    CHECK(bdp_report_ok(rep) == 1);
    char* rep_json = nullptr;
    REQUIRE(bdp_report_emit(rep, &rep_json) == BDP_OK);
    CHECK(take(rep_json).find("\"ok\": true") != std::string::npos);
    bdp_report_free(rep);

    // The same schedule against a starved copy of the instance fails, and the
    // report says why.
    Parsed starved(line_doc("0", "1"));
    bdp_report* fail = nullptr;
    REQUIRE(bdp_validate(starved.p, doc.c_str(), nullptr, &fail) == BDP_OK);
    CHECK(bdp_report_ok(fail) == 0);
    char* fail_json = nullptr;
    REQUIRE(bdp_report_emit(fail, &fail_json) == BDP_OK);
    CHECK(take(fail_json).find("budget-exceeded") != std::string::npos);
    bdp_report_free(fail);

    // Stretching the budgets enough rescues it.
    bdp_report* ok8 = nullptr;
    REQUIRE(bdp_validate(starved.p, doc.c_str(), "8", &ok8) == BDP_OK);
    CHECK(bdp_report_ok(ok8) == 1);
    bdp_report_free(ok8);

    bdp_report* bad = nullptr;
    CHECK(bdp_validate(inst.p, doc.c_str(), "1/2", &bad) == BDP_E_INVALID_GAMMA);
    CHECK(bdp_validate(inst.p, "{ nope", nullptr, &bad) == BDP_E_PARSE);
    CHECK(bdp_validate(nullptr, doc.c_str(), nullptr, &bad) == BDP_E_ARGUMENT);
}

TEST_CASE("generators are deterministic across calls") {
    auto emit_tree = [](uint64_t seed) {
        bdp_instance* inst = nullptr;
        REQUIRE(bdp_gen_tree(seed, 9, 3, 8, 4, BDP_VARIANT_RETURNING, &inst) == BDP_OK);
        char* text = nullptr;
        REQUIRE(bdp_instance_emit(inst, &text) == BDP_OK);
        bdp_instance_free(inst);
        return take(text);
    };
    CHECK(emit_tree(5) == emit_tree(5));
    CHECK(emit_tree(5) != emit_tree(6));

    bdp_instance* graph = nullptr;
    REQUIRE(bdp_gen_graph(5, 9, 3, 2, 8, 4, BDP_VARIANT_NON_RETURNING, &graph) ==
            BDP_OK);
    CHECK(bdp_instance_variant(graph) == BDP_VARIANT_NON_RETURNING);
    bdp_instance_free(graph);

    bdp_instance* bad = nullptr;
    CHECK(bdp_gen_tree(1, 0, 3, 8, 4, BDP_VARIANT_RETURNING, &bad) == BDP_E_INVARIANT);
    CHECK(bdp_gen_tree(1, 5, 3, 8, 4, 9, &bad) == BDP_E_ARGUMENT);
}

TEST_CASE("gadgets compile, witness, and reject unsatisfiable assignments") {
    const char* dimacs = "p cnf 2 2\n1 -2 0\n2 0\n";
    bdp_gadget* gad = nullptr;
    REQUIRE(bdp_gadget_build(dimacs, nullptr, BDP_VARIANT_RETURNING, &gad) == BDP_OK);

    bdp_instance* inst = nullptr;
    REQUIRE(bdp_gadget_instance(gad, &inst) == BDP_OK);
    CHECK(bdp_instance_agent_count(inst) > 2);

    char* roles = nullptr;
    REQUIRE(bdp_gadget_rolemap(gad, &roles) == BDP_OK);
    std::string rolemap = take(roles);
    CHECK(rolemap.find("bdp-rolemap/1") != std::string::npos);
    CHECK(rolemap.find("separating") != std::string::npos);

    // v1=true, v2=true satisfies both clauses; the witness validates with no
    // stretching at all.
    unsigned char sat[] = {1, 1};
    bdp_result* wit = nullptr;
    REQUIRE(bdp_gadget_witness(gad, sat, 2, &wit) == BDP_OK);
    CHECK(bdp_result_decision(wit) == BDP_DECISION_FEASIBLE);
    char* wit_json = nullptr;
    REQUIRE(bdp_result_emit(wit, &wit_json) == BDP_OK);
    std::string wdoc = take(wit_json);
    bdp_result_free(wit);
    bdp_report* rep = nullptr;
    REQUIRE(bdp_validate(inst, wdoc.c_str(), "1", &rep) == BDP_OK);
    CHECK(bdp_report_ok(rep) == 1);
    bdp_report_free(rep);

    // v2=false starves the second clause.
    unsigned char unsat[] = {1, 0};
    bdp_result* none = nullptr;
    CHECK(bdp_gadget_witness(gad, unsat, 2, &none) == BDP_E_UNSATISFIED_CLAUSE);
    CHECK(bdp_gadget_witness(gad, sat, 1, &none) < 0); // wrong assignment length
    bdp_instance_free(inst);
    bdp_gadget_free(gad);

    bdp_gadget* aug = nullptr;
    REQUIRE(bdp_gadget_build(dimacs, "1", BDP_VARIANT_RETURNING, &aug) == BDP_OK);
    bdp_gadget_free(aug);
    CHECK(bdp_gadget_build(dimacs, "3", BDP_VARIANT_RETURNING, &aug) ==
          BDP_E_EPSILON_OUT_OF_RANGE);
    CHECK(bdp_gadget_build("p cnf 1 1\n1 1 0\n", nullptr, BDP_VARIANT_RETURNING,
                           &aug) == BDP_E_MALFORMED_CNF);
    CHECK(bdp_gadget_build("hello", nullptr, BDP_VARIANT_RETURNING, &aug) ==
          BDP_E_PARSE);
    CHECK(bdp_gadget_build(dimacs, "1", 5, &aug) == BDP_E_ARGUMENT);
}

TEST_CASE("budget uniformization keeps decisions while levelling budgets") {
    std::string doc = R"({
      "version": "bdp-instance/1",
      "vertices": 3,
      "edges": [[0, 1, "2"], [1, 2, "2"]],
      "variant": "returning",
      "source": 0,
      "target": 2,
      "agents": [{"at": 0, "budget": "8"}, {"at": 2, "budget": "2"}]
    })";
    Parsed inst(doc);

    bdp_instance* flat = nullptr;
    REQUIRE(bdp_instance_uniformize(inst.p, "8", &flat) == BDP_OK);
    char* text = nullptr;
    REQUIRE(bdp_instance_emit(flat, &text) == BDP_OK);
    std::string emitted = take(text);
    CHECK(emitted.find("\"budget\": \"2\"") == std::string::npos);

    bdp_result* before = nullptr;
    bdp_result* after = nullptr;
    REQUIRE(bdp_solve(inst.p, "exact", nullptr, 0, &before) == BDP_OK);
    REQUIRE(bdp_solve(flat, "exact", nullptr, 0, &after) == BDP_OK);
    CHECK(bdp_result_decision(before) == bdp_result_decision(after));
    bdp_result_free(before);
    bdp_result_free(after);
    bdp_instance_free(flat);

    bdp_instance* bad = nullptr;
    CHECK(bdp_instance_uniformize(inst.p, "4", &bad) == BDP_E_BUDGET_TOO_SMALL);
    CHECK(bdp_instance_uniformize(inst.p, "junk", &bad) == BDP_E_PARSE);
    CHECK(bdp_instance_uniformize(nullptr, "8", &bad) == BDP_E_ARGUMENT);
}
