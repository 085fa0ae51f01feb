#include "bdp/io.hpp"

#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "bdp/error.hpp"

namespace bdp {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::ParseError, e.what());
    }
}

void expect_version(const json& doc, const char* tag) {
    if (!doc.is_object())
        fail(ErrorCode::ParseError, "document must be a JSON object");
    auto it = doc.find("version");
    if (it == doc.end() || !it->is_string() || it->get<std::string>() != tag)
        fail(ErrorCode::ParseError, std::string("expected a \"") + tag + "\" document");
}

const json& field(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end())
        fail(ErrorCode::ParseError, std::string("missing field \"") + name + "\"");
    return *it;
}

Rational rational_from(const json& j, const char* where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string())
        fail(ErrorCode::ParseError, std::string(where) + ": expected a rational string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
        fail(ErrorCode::ParseError, std::string(where) + ": " + e.what());
    }
}

json point_to_json(const Point& p) {
    if (p.is_vertex()) return p.vertex_id();
    return json::array({p.edge_id(), p.offset().str()});
}

Point point_from(const json& j, const char* where, const Graph* g) {
    if (j.is_number_integer()) {
        long v = j.get<long>();
        if (v < 0 || (g && v >= g->vertex_count()))
            fail(ErrorCode::ParseError, std::string(where) + ": vertex id out of range");
        return Point::vertex(static_cast<VertexId>(v));
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer()) {
        auto e = static_cast<EdgeId>(j[0].get<long>());
        Rational off = rational_from(j[1], where);
        if (g) return make_point(*g, e, off);  // canonicalizes and range-checks
        return Point::interior(e, off);
    }
    fail(ErrorCode::ParseError,
         std::string(where) + ": point must be a vertex id or [edge, \"offset\"]");
}

Variant variant_from(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "returning") return Variant::Returning;
        if (s == "non-returning") return Variant::NonReturning;
    }
    fail(ErrorCode::ParseError, "variant must be \"returning\" or \"non-returning\"");
}

Decision decision_from(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        for (Decision d : {Decision::Feasible, Decision::Infeasible,
                           Decision::CertifiedInfeasible, Decision::AugmentedFeasible})
            if (s == decision_name(d)) return d;
    }
    fail(ErrorCode::ParseError, "unknown decision");
}

bool carries_schedule(Decision d) {
    return d == Decision::Feasible || d == Decision::AugmentedFeasible;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

Instance parse_instance(const std::string& text) {
    json doc = parse_json(text);
    expect_version(doc, "bdp-instance/1");

    const json& jn = field(doc, "vertices");
    if (!jn.is_number_integer() || jn.get<long>() < 0)
        fail(ErrorCode::ParseError, "vertices: expected a non-negative integer");
    const json& je = field(doc, "edges");
    if (!je.is_array()) fail(ErrorCode::ParseError, "edges: expected an array");
    std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
    for (const json& row : je) {
        if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() ||
            !row[1].is_number_integer())
            fail(ErrorCode::ParseError, "edges: expected [u, v, \"weight\"] rows");
        edges.emplace_back(static_cast<VertexId>(row[0].get<long>()),
                           static_cast<VertexId>(row[1].get<long>()),
                           rational_from(row[2], "edges"));
    }

    Instance inst;
    inst.graph = Graph::build(static_cast<VertexId>(jn.get<long>()), edges);
    inst.variant = variant_from(field(doc, "variant"));
    inst.source = point_from(field(doc, "source"), "source", &inst.graph);
    inst.target = point_from(field(doc, "target"), "target", &inst.graph);
    const json& ja = field(doc, "agents");
    if (!ja.is_array()) fail(ErrorCode::ParseError, "agents: expected an array");
    for (const json& row : ja) {
        if (!row.is_object())
            fail(ErrorCode::ParseError, "agents: expected {at, budget} objects");
        inst.agents.push_back({point_from(field(row, "at"), "agents.at", &inst.graph),
                               rational_from(field(row, "budget"), "agents.budget")});
    }
    check_instance(inst);
    return inst;
}

std::string emit_instance(const Instance& inst) {
    json doc;
    doc["version"] = "bdp-instance/1";
    doc["vertices"] = inst.graph.vertex_count();
    json edges = json::array();
    for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) {
        const auto& ed = inst.graph.edge(e);
        edges.push_back(json::array({ed.u, ed.v, ed.w.str()}));
    }
    doc["edges"] = std::move(edges);
    doc["variant"] = variant_name(inst.variant);
    doc["source"] = point_to_json(inst.source);
    doc["target"] = point_to_json(inst.target);
    json agents = json::array();
    for (const Agent& a : inst.agents)
        agents.push_back(json{{"at", point_to_json(a.at)}, {"budget", a.budget.str()}});
    doc["agents"] = std::move(agents);
    return dump(doc);
}

SolveResult parse_result(const std::string& text, const Graph* bind) {
    json doc = parse_json(text);
    expect_version(doc, "bdp-result/1");

    SolveResult res;
    res.decision = decision_from(field(doc, "decision"));
    res.gamma = rational_from(field(doc, "gamma"), "gamma");
    if (doc.contains("diagnostics") && doc["diagnostics"].is_object()) {
        auto it = doc["diagnostics"].find("solver");
        if (it != doc["diagnostics"].end() && it->is_string())
            res.solver = it->get<std::string>();
    }

    const bool want = carries_schedule(res.decision);
    if (doc.contains("schedule") != want)
        fail(ErrorCode::ParseError,
             want ? "feasible results must carry a schedule"
                  : "infeasible results must not carry a schedule");
    if (want) {
        const json& js = doc["schedule"];
        if (!js.is_array()) fail(ErrorCode::ParseError, "schedule: expected an array");
        Schedule sched;
        for (const json& row : js) {
            if (!row.is_object() || !row.contains("agent") ||
                !row["agent"].is_number_integer())
                fail(ErrorCode::ParseError,
                     "schedule: expected {agent, pickup, dropoff} objects");
            sched.push_back({static_cast<int>(row["agent"].get<long>()),
                             point_from(field(row, "pickup"), "schedule.pickup", bind),
                             point_from(field(row, "dropoff"), "schedule.dropoff", bind)});
        }
        res.schedule = std::move(sched);
    }
    return res;
}

std::string emit_result(const SolveResult& res) {
    const bool want = carries_schedule(res.decision);
    if (want != res.schedule.has_value())
        fail(ErrorCode::InvariantViolation,
             "schedule must be present exactly for feasible decisions");
    json doc;
    doc["version"] = "bdp-result/1";
    doc["decision"] = decision_name(res.decision);
    doc["gamma"] = res.gamma.str();
    doc["diagnostics"] = json{{"solver", res.solver}};
    if (want) {
        json legs = json::array();
        for (const Leg& leg : *res.schedule)
            legs.push_back(json{{"agent", leg.agent},
                                {"pickup", point_to_json(leg.pickup)},
                                {"dropoff", point_to_json(leg.dropoff)}});
        doc["schedule"] = std::move(legs);
    }
    return dump(doc);
}

std::string emit_report(const ValidationReport& rep, const Rational& gamma) {
    json doc;
    doc["version"] = "bdp-report/1";
    doc["ok"] = rep.ok;
    doc["gamma"] = gamma.str();
    json costs = json::array();
    for (const Rational& c : rep.leg_cost) costs.push_back(c.str());
    doc["leg_costs"] = std::move(costs);
    json violations = json::array();
    for (const Violation& v : rep.violations)
        violations.push_back(json{{"leg", v.leg},
                                  {"kind", violation_kind_name(v.kind)},
                                  {"details", v.details}});
    doc["violations"] = std::move(violations);
    return dump(doc);
}

std::string emit_rolemap(const GadgetInstance& g) {
    json doc;
    doc["version"] = "bdp-rolemap/1";
    doc["variant"] = variant_name(g.params.variant);
    doc["augmented"] = g.params.augmented;
    doc["zeta"] = g.params.zeta.str();
    doc["delta"] = g.params.delta.str();
    doc["epsilon"] = g.params.epsilon.str();
    doc["chain_length"] = g.params.chain_length.str();
    doc["tube_count"] = g.tube_count;
    doc["chain_levels"] = g.chain_levels;
    json roles = json::array();
    for (const AgentRole& r : g.roles) {
        json row;
        switch (r.kind) {
            case AgentRole::Kind::Variable:
                row = {{"kind", "variable"}, {"variable", r.variable}};
                break;
            case AgentRole::Kind::Clause:
                row = {{"kind", "clause"}, {"clause", r.clause}, {"node", r.node}};
                break;
            case AgentRole::Kind::Separating:
                row = {{"kind", "separating"}, {"tube", r.tube}, {"member", r.member}};
                break;
        }
        roles.push_back(std::move(row));
    }
    doc["roles"] = std::move(roles);
    return dump(doc);
}

}  // namespace bdp
