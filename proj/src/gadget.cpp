#include "bdp/gadget.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bdp/error.hpp"
#include "bdp/reach.hpp"
#include "bdp/validate.hpp"

namespace bdp {
namespace {

Rational pow2(long j) {
    Rational r(1);
    for (long i = 0; i < j; ++i) r *= 2;
    return r;
}

TubeSpec raw_tube(const Rational& delta, Variant variant) {
    TubeSpec t;
    t.length = delta;
    if (variant == Variant::Returning) {
        t.agents = {TubeAgent{delta / 4, delta}, TubeAgent{delta * Rational(3, 4), delta}};
        t.handover = delta / 2;
    } else {
        t.agents = {TubeAgent{delta / 3, delta * Rational(2, 3)},
                    TubeAgent{delta / 2, delta * Rational(5, 6)}};
        t.handover = delta / 3;
    }
    return t;
}

// Reach set of an agent for "where could it drop a message": returning agents
// must get home, so their range is a ball of half the budget.
ReachSet agent_reach(DistanceOracle& oracle, const Point& at, const Rational& budget,
                     Variant variant) {
    return ReachSet::ball(oracle, at,
                          variant == Variant::Returning ? budget / 2 : budget);
}

// Certifies the four tube properties on a padded standalone segment: edge 1
// of a three-edge path is the tube, edges 0 and 2 are overhang probes.
void certify_tube(const TubeSpec& t, Variant variant) {
    const Rational& d = t.length;
    for (const TubeAgent& a : t.agents) {
        if (a.budget > d)
            fail(ErrorCode::InvariantViolation, "tube agent budget exceeds the tube length");
        if (a.offset.sign() <= 0 || a.offset >= d)
            fail(ErrorCode::InvariantViolation, "tube agent must sit strictly inside the tube");
    }
    Graph g = Graph::build(4, {{0, 1, d}, {1, 2, d}, {2, 3, d}});
    DistanceOracle oracle(g);
    const Rational cap = d / 3;
    for (const TubeAgent& a : t.agents) {
        ReachSet r = agent_reach(oracle, make_point(g, 1, a.offset), a.budget, variant);
        auto left = r.furthest_offset_from(0, 1);
        auto right = r.furthest_offset_from(2, 2);
        if ((left && *left > cap) || (right && *right > cap))
            fail(ErrorCode::InvariantViolation,
                 "tube agent can leave the segment by more than a third of its length");
    }
    Instance relay;
    relay.graph = g;
    relay.variant = variant;
    relay.source = Point::vertex(1);
    relay.target = Point::vertex(2);
    relay.agents = {{make_point(g, 1, t.agents[0].offset), t.agents[0].budget},
                    {make_point(g, 1, t.agents[1].offset), t.agents[1].budget}};
    Point h = make_point(g, 1, t.handover);
    Schedule sched{{0, Point::vertex(1), h}, {1, h, Point::vertex(2)}};
    if (!validate(relay, sched, Rational(1)).ok)
        fail(ErrorCode::InvariantViolation, "tube agents cannot relay across the segment");
}

// Certifies the chain properties on a padded standalone segment: even with
// tripled budgets no contained agent escapes by more than 3*delta, and the
// original budgets relay the message end to end.
void certify_chain(const ChainSpec& c, const Rational& min_length, Variant variant) {
    if (c.length < min_length)
        fail(ErrorCode::InvariantViolation, "chain is shorter than requested");
    const int n = static_cast<int>(c.tubes.size());
    const Rational pad = c.delta * 4;
    std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
    edges.emplace_back(0, 1, pad);
    for (int i = 0; i < n; ++i) edges.emplace_back(i + 1, i + 2, c.tubes[static_cast<size_t>(i)].length);
    edges.emplace_back(n + 1, n + 2, pad);
    Graph g = Graph::build(n + 3, edges);
    DistanceOracle oracle(g);

    const Rational cap = c.delta * 3;
    for (int i = 0; i < n; ++i)
        for (const TubeAgent& a : c.tubes[static_cast<size_t>(i)].agents) {
            ReachSet r = agent_reach(oracle, make_point(g, i + 1, a.offset), a.budget * 3, variant);
            auto left = r.furthest_offset_from(0, 1);
            auto right = r.furthest_offset_from(n + 1, static_cast<VertexId>(n + 1));
            if ((left && *left > cap) || (right && *right > cap))
                fail(ErrorCode::InvariantViolation,
                     "a tripled-budget chain agent escapes by more than three tube lengths");
        }

    Instance relay;
    relay.graph = g;
    relay.variant = variant;
    relay.source = Point::vertex(1);
    relay.target = Point::vertex(static_cast<VertexId>(n + 1));
    Schedule sched;
    for (int i = 0; i < n; ++i) {
        const TubeSpec& t = c.tubes[static_cast<size_t>(i)];
        relay.agents.push_back({make_point(g, i + 1, t.agents[0].offset), t.agents[0].budget});
        relay.agents.push_back({make_point(g, i + 1, t.agents[1].offset), t.agents[1].budget});
        Point h = make_point(g, i + 1, t.handover);
        sched.push_back({2 * i, Point::vertex(i + 1), h});
        sched.push_back({2 * i + 1, h, Point::vertex(i + 2)});
    }
    if (!validate(relay, sched, Rational(1)).ok)
        fail(ErrorCode::InvariantViolation, "chain agents cannot relay across the segment");
}

// ---------------------------------------------------------------------------
// Gadget builder.
// ---------------------------------------------------------------------------

struct PendingTubeAgent {
    EdgeId edge;
    bool forward;
    Rational offset, budget;
};

struct Builder {
    const Cnf& f;
    GadgetParams params;
    Rational var_budget, clause_budget;
    std::vector<TubeSpec> separator;  // tubes of one separator run (1 basic, many augmented)

    VertexId nv = 0;
    std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
    std::vector<std::array<PendingTubeAgent, 2>> tube_pending;
    std::vector<EdgeId> tube_edge;
    std::vector<std::tuple<int, int, VertexId>> connectors;  // (clause, slot, path vertex)
    GadgetInstance out;

    explicit Builder(const Cnf& formula) : f(formula) {}

    VertexId fresh(const PathOwner* owner) {
        VertexId v = nv++;
        if (owner) out.vertex_owner[v] = *owner;
        return v;
    }

    EdgeId add_edge(VertexId a, VertexId b, const Rational& w, const PathOwner* owner) {
        EdgeId e = static_cast<EdgeId>(edges.size());
        edges.emplace_back(a, b, w);
        if (owner) out.edge_owner[e] = *owner;
        return e;
    }

    // Lays the separator tubes from `from` to `to` (fresh if to < 0), pushing
    // Tube pieces into `sink` and intermediate vertices into `pts`.
    VertexId run_separator(std::vector<PathPiece>& sink, std::vector<Point>* pts, VertexId from,
                           VertexId to, const PathOwner& owner) {
        VertexId cur = from;
        for (size_t i = 0; i < separator.size(); ++i) {
            bool last = i + 1 == separator.size();
            VertexId nxt = last && to >= 0 ? to : fresh(&owner);
            EdgeId e = add_edge(cur, nxt, separator[i].length, &owner);
            long ordinal = static_cast<long>(tube_pending.size());
            const TubeSpec& spec = separator[i];
            std::array<PendingTubeAgent, 2> pend;
            for (int m = 0; m < 2; ++m)
                pend[static_cast<size_t>(m)] = {e, cur < nxt, spec.agents[static_cast<size_t>(m)].offset,
                                                spec.agents[static_cast<size_t>(m)].budget};
            tube_pending.push_back(pend);
            tube_edge.push_back(e);
            out.tube_specs.push_back(spec);
            PathPiece pc;
            pc.kind = PathPiece::Kind::Tube;
            pc.edge = e;
            pc.forward = cur < nxt;
            pc.tube = ordinal;
            sink.push_back(pc);
            if (pts) pts->push_back(Point::vertex(nxt));
            cur = nxt;
        }
        return cur;
    }

    // Clause-node slots adjacent to a literal position (basic layout): the
    // first node serves positions 0 and 1, the second positions 1 and 2.
    std::vector<int> adjacent_slots(int clause, int position) const {
        size_t sz = f.clauses[static_cast<size_t>(clause)].literals.size();
        if (sz == 1) return {};
        if (sz == 2) return {0};
        if (position == 0) return {0};
        if (position == 1) return {0, 1};
        return {1};
    }

    void build_paths() {
        const int x = f.num_vars;
        // literal occurrences per variable and side, in clause-index order
        std::vector<std::array<std::vector<std::pair<int, int>>, 2>> lits(
            static_cast<size_t>(x));
        for (size_t ci = 0; ci < f.clauses.size(); ++ci)
            for (size_t pos = 0; pos < f.clauses[ci].literals.size(); ++pos) {
                const Literal& l = f.clauses[ci].literals[pos];
                // negated literals sit on the "true" path (they are the false
                // ones when the variable is set true), positive on "false"
                lits[static_cast<size_t>(l.var)][l.negated ? 0 : 1].push_back(
                    {static_cast<int>(ci), static_cast<int>(pos)});
            }

        nv = static_cast<VertexId>(x + 1);  // variable nodes 0..x
        out.paths.resize(static_cast<size_t>(x));
        out.pieces.resize(static_cast<size_t>(x));
        out.clause_nodes.resize(f.clauses.size());

        for (int var = 0; var < x; ++var)
            for (int side = 0; side < 2; ++side) {
                const PathOwner owner{var, side == 0};
                auto& pieces = out.pieces[static_cast<size_t>(var)][static_cast<size_t>(side)];
                auto& pts = out.paths[static_cast<size_t>(var)][static_cast<size_t>(side)];
                const VertexId start = var, end = var + 1;
                pts.push_back(Point::vertex(start));

                VertexId u = fresh(&owner);
                EdgeId lead = add_edge(start, u, params.zeta, &owner);
                PathPiece pc;
                pc.kind = PathPiece::Kind::VariableGap;
                pc.edge = lead;
                pc.forward = start < u;
                pieces.push_back(pc);
                pts.push_back(Point::vertex(u));
                VertexId cur = u;

                const auto& occ = lits[static_cast<size_t>(var)][static_cast<size_t>(side)];
                for (size_t r = 0; r <= occ.size(); ++r) {
                    cur = run_separator(pieces, &pts, cur, r == occ.size() ? end : -1, owner);
                    if (r == occ.size()) break;
                    auto [ci, pos] = occ[r];
                    out.literal_nodes[{var, ci}] = Point::vertex(cur);
                    bool arc_here = params.augmented &&
                                    f.clauses[static_cast<size_t>(ci)].literals.size() == 3 &&
                                    pos == 1;
                    if (!arc_here) {
                        VertexId g2 = fresh(&owner);
                        EdgeId ge = add_edge(cur, g2, params.zeta, &owner);
                        PathPiece gp;
                        gp.kind = PathPiece::Kind::ClauseGap;
                        gp.edge = ge;
                        gp.forward = cur < g2;
                        gp.clause = ci;
                        gp.position = pos;
                        pieces.push_back(gp);
                        for (int slot : adjacent_slots(ci, pos)) connectors.emplace_back(ci, slot, cur);
                        pts.push_back(Point::vertex(g2));
                        cur = g2;
                    } else {
                        cur = build_arc(pieces, pts, cur, var, ci, pos, owner);
                    }
                }
            }
    }

    // Splits the gap after a doubly-reachable literal node into two parallel
    // arcs: inner = gap segment then chain, outer = chain then gap segment.
    VertexId build_arc(std::vector<PathPiece>& pieces, std::vector<Point>& pts, VertexId entry,
                       int var, int clause, int position, const PathOwner& owner) {
        ArcInfo arc;
        arc.clause = clause;
        arc.var = var;
        arc.entry = entry;

        VertexId mid = fresh(&owner);
        EdgeId inner_gap = add_edge(entry, mid, params.zeta, &owner);
        PathPiece gp;
        gp.kind = PathPiece::Kind::ClauseGap;
        gp.edge = inner_gap;
        gp.forward = entry < mid;
        gp.clause = clause;
        gp.position = position;
        arc.inner.push_back(gp);
        arc.inner_junction = mid;
        pts.push_back(Point::vertex(mid));
        VertexId exit = run_separator(arc.inner, &pts, mid, -1, owner);
        arc.exit = exit;

        VertexId outer_junction = run_separator(arc.outer, nullptr, entry, -1, owner);
        arc.outer_junction = outer_junction;
        EdgeId outer_gap = add_edge(outer_junction, exit, params.zeta, &owner);
        gp.edge = outer_gap;
        gp.forward = outer_junction < exit;
        arc.outer.push_back(gp);

        connectors.emplace_back(clause, 0, entry);
        connectors.emplace_back(clause, 1, outer_junction);

        PathPiece choice;
        choice.kind = PathPiece::Kind::ArcChoice;
        choice.edge = -1;
        choice.clause = clause;
        choice.position = position;
        choice.arc = static_cast<int>(out.arcs.size());
        pieces.push_back(choice);
        out.arcs.push_back(std::move(arc));
        return exit;
    }

    void place_agents_and_finish(Variant variant) {
        // clause nodes last so connectors can be resolved in one sweep
        for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
            size_t want = f.clauses[ci].literals.size() >= 3 ? 2
                          : f.clauses[ci].literals.size() == 2 ? 1
                                                               : 0;
            for (size_t s = 0; s < want; ++s)
                out.clause_nodes[ci].nodes.push_back(fresh(nullptr));
        }
        for (const auto& [ci, slot, vert] : connectors)
            add_edge(vert, out.clause_nodes[static_cast<size_t>(ci)]
                               .nodes[static_cast<size_t>(slot)],
                     Rational(1), nullptr);

        Graph g = Graph::build(nv, edges);

        Instance inst;
        inst.variant = variant;
        inst.source = Point::vertex(0);
        inst.target = Point::vertex(f.num_vars);
        for (int var = 0; var < f.num_vars; ++var) {
            inst.agents.push_back({Point::vertex(var), var_budget});
            AgentRole role;
            role.kind = AgentRole::Kind::Variable;
            role.variable = var;
            out.roles.push_back(role);
        }
        for (size_t ci = 0; ci < f.clauses.size(); ++ci)
            for (VertexId node : out.clause_nodes[ci].nodes) {
                out.clause_nodes[ci].agents.push_back(static_cast<int>(inst.agents.size()));
                inst.agents.push_back({Point::vertex(node), clause_budget});
                AgentRole role;
                role.kind = AgentRole::Kind::Clause;
                role.clause = static_cast<int>(ci);
                role.node = node;
                out.roles.push_back(role);
            }
        for (size_t t = 0; t < tube_pending.size(); ++t) {
            std::array<int, 2> pair_ids{};
            for (int m = 0; m < 2; ++m) {
                const PendingTubeAgent& p = tube_pending[t][static_cast<size_t>(m)];
                const Rational& w = g.edge(p.edge).w;
                Point at = make_point(g, p.edge, p.forward ? p.offset : w - p.offset);
                pair_ids[static_cast<size_t>(m)] = static_cast<int>(inst.agents.size());
                inst.agents.push_back({at, p.budget});
                AgentRole role;
                role.kind = AgentRole::Kind::Separating;
                role.tube = static_cast<long>(t);
                role.member = m;
                out.roles.push_back(role);
            }
            out.tube_agents.push_back(pair_ids);
        }
        inst.graph = std::move(g);
        check_instance(inst);
        out.instance = std::move(inst);
        out.params = params;
        out.tube_count = static_cast<long>(tube_pending.size());
    }

    // Proves on the built instance that no separating agent can intrude more
    // than delta/3 past its residential tube (and cannot stray anywhere else).
    void certify_separation() {
        const Graph& g = out.instance.graph;
        DistanceOracle oracle(g);
        for (size_t t = 0; t < out.tube_agents.size(); ++t) {
            const EdgeId te = tube_edge[t];
            const Rational cap = out.tube_specs[t].length / 3;
            const auto& ted = g.edge(te);
            for (int agent_id : out.tube_agents[t]) {
                const Agent& ag = out.instance.agents[static_cast<size_t>(agent_id)];
                ReachSet r = agent_reach(oracle, ag.at, ag.budget, out.params.variant);
                for (VertexId v = 0; v < g.vertex_count(); ++v)
                    if (r.vertex_reachable(v) && v != ted.u && v != ted.v)
                        fail(ErrorCode::InvariantViolation,
                             "separating agent reaches a vertex outside its tube");
                for (EdgeId e = 0; e < g.edge_count(); ++e) {
                    if (e == te) continue;
                    const auto& ed = g.edge(e);
                    bool adjacent = false;
                    for (VertexId j : {ted.u, ted.v})
                        if (ed.u == j || ed.v == j) {
                            adjacent = true;
                            auto depth = r.furthest_offset_from(e, j);
                            if (depth && *depth > cap)
                                fail(ErrorCode::InvariantViolation,
                                     "separating agent intrudes past the excursion bound");
                        }
                    if (!adjacent && r.furthest_offset_from(e, ed.u).has_value())
                        fail(ErrorCode::InvariantViolation,
                             "separating agent reaches a non-adjacent edge");
                }
            }
        }
    }
};

}  // namespace

void check_cnf(const Cnf& f) {
    if (f.num_vars < 0) fail(ErrorCode::MalformedCnf, "negative variable count");
    for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
        const auto& lits = f.clauses[ci].literals;
        if (lits.empty() || lits.size() > 3)
            fail(ErrorCode::MalformedCnf,
                 "clause " + std::to_string(ci) + " must have one to three literals");
        std::set<int> seen;
        for (const Literal& l : lits) {
            if (l.var < 0 || l.var >= f.num_vars)
                fail(ErrorCode::MalformedCnf, "clause " + std::to_string(ci) +
                                                  " references a variable out of range");
            if (!seen.insert(l.var).second)
                fail(ErrorCode::MalformedCnf,
                     "clause " + std::to_string(ci) + " mentions a variable twice");
        }
    }
}

Cnf parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    long vars = -1, clause_count = -1;
    while (in >> tok) {
        if (tok == "c" || tok[0] == 'c') {
            std::getline(in, tok);
            continue;
        }
        if (tok == "p") {
            std::string kind;
            if (!(in >> kind) || kind != "cnf")
                fail(ErrorCode::ParseError, "expected 'p cnf' header");
            if (!(in >> vars >> clause_count) || vars < 0 || clause_count < 0)
                fail(ErrorCode::ParseError, "malformed 'p cnf' header");
            break;
        }
        fail(ErrorCode::ParseError, "unexpected token '" + tok + "' before the header");
    }
    if (vars < 0) fail(ErrorCode::ParseError, "missing 'p cnf' header");

    Cnf f;
    f.num_vars = static_cast<int>(vars);
    Clause cur;
    while (in >> tok) {
        if (tok == "c") {
            std::getline(in, tok);
            continue;
        }
        if (tok == "%") break;
        long val = 0;
        try {
            size_t used = 0;
            val = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "expected a literal, got '" + tok + "'");
        }
        if (val == 0) {
            f.clauses.push_back(cur);
            cur.literals.clear();
        } else {
            long v = val < 0 ? -val : val;
            cur.literals.push_back({static_cast<int>(v) - 1, val < 0});
        }
    }
    if (!cur.literals.empty())
        fail(ErrorCode::ParseError, "last clause is not terminated with 0");
    if (static_cast<long>(f.clauses.size()) != clause_count)
        fail(ErrorCode::ParseError, "clause count does not match the header");
    check_cnf(f);
    return f;
}

TubeSpec make_delta_tube(const Rational& delta, Variant variant) {
    if (delta.sign() <= 0)
        fail(ErrorCode::InvariantViolation, "tube length must be positive");
    TubeSpec t = raw_tube(delta, variant);
    certify_tube(t, variant);
    return t;
}

ChainSpec make_chain(const Rational& min_length, const Rational& delta, Variant variant) {
    if (delta.sign() <= 0)
        fail(ErrorCode::InvariantViolation, "tube length must be positive");
    if (min_length <= delta)
        fail(ErrorCode::InvariantViolation, "chain must be longer than a single tube");
    ChainSpec c;
    c.delta = delta;
    long levels = 0;
    Rational top = delta * 6;
    while (top < min_length) {
        top *= 2;
        ++levels;
    }
    c.levels = levels;
    std::vector<TubeSpec> by_level;
    by_level.reserve(static_cast<size_t>(levels) + 1);
    for (long j = 0; j <= levels; ++j)
        by_level.push_back(make_delta_tube(delta * pow2(j), variant));
    c.length = Rational(0);
    auto block = [&](long j) {
        for (int i = 0; i < 6; ++i) {
            c.tubes.push_back(by_level[static_cast<size_t>(j)]);
            c.length += by_level[static_cast<size_t>(j)].length;
        }
    };
    for (long j = 0; j <= levels; ++j) block(j);
    for (long j = levels - 1; j >= 0; --j) block(j);
    certify_chain(c, min_length, variant);
    return c;
}

GadgetInstance build_basic_gadget(const Cnf& f, Variant variant) {
    check_cnf(f);
    Builder b(f);
    b.params.zeta = Rational(1, 8);
    b.params.delta = b.params.zeta * Rational(4, 3);
    b.params.variant = variant;
    b.params.augmented = false;
    const Rational& zeta = b.params.zeta;
    if (variant == Variant::Returning) {
        b.var_budget = zeta * 2;
        b.clause_budget = (Rational(1) + zeta) * 2;
        // carrying the message from one literal node over a clause node to the
        // next costs at least twice 2*(1-zeta/3)... the cheap certificate: the
        // round trip over two unit edges already exceeds the budget
        if (!((Rational(1) - zeta) * 4 > b.clause_budget))
            fail(ErrorCode::InvariantViolation, "clause agents could cross their clause node");
    } else {
        b.var_budget = zeta;
        b.clause_budget = Rational(1) + zeta;
        if (!((Rational(1) - zeta) * 3 > b.clause_budget))
            fail(ErrorCode::InvariantViolation, "clause agents could cross their clause node");
    }
    if (!(b.params.delta / 3 < zeta / 2))
        fail(ErrorCode::InvariantViolation,
             "separating agents could meet in the middle of a gap segment");
    b.separator = {make_delta_tube(b.params.delta, variant)};
    b.build_paths();
    b.place_agents_and_finish(variant);
    b.certify_separation();
    return std::move(b.out);
}

GadgetInstance build_augmented_gadget(const Cnf& f, const Rational& epsilon, Variant variant) {
    check_cnf(f);
    const Rational hi = variant == Variant::Returning ? Rational(1) : Rational(2);
    if (epsilon.sign() <= 0 || epsilon > hi)
        fail(ErrorCode::EpsilonOutOfRange,
             "epsilon must be in (0, " + hi.str() + "] for this variant");
    Builder b(f);
    b.params.zeta = epsilon / (Rational(6) - epsilon);
    b.params.delta = b.params.zeta / 9;
    b.params.chain_length = Rational(9);
    b.params.epsilon = epsilon;
    b.params.variant = variant;
    b.params.augmented = true;
    const Rational& zeta = b.params.zeta;
    const Rational gamma = (variant == Variant::Returning ? Rational(2) : Rational(3)) - epsilon;
    if (variant == Variant::Returning) {
        b.var_budget = zeta * 2;
        b.clause_budget = (Rational(1) + zeta) * 2;
        if (!(gamma * b.clause_budget < (Rational(1) - zeta / 3) * 4))
            fail(ErrorCode::InvariantViolation,
                 "an augmented clause agent could cross its clause node");
    } else {
        b.var_budget = zeta;
        b.clause_budget = Rational(1) + zeta;
        if (!(gamma * b.clause_budget < (Rational(1) - zeta / 3) * 3))
            fail(ErrorCode::InvariantViolation,
                 "an augmented clause agent could cross its clause node");
    }
    // chains must dwarf the augmented range of variable and clause agents
    if (!(gamma * std::max(b.var_budget, b.clause_budget) * 2 < b.params.chain_length))
        fail(ErrorCode::InvariantViolation, "chains are too short to separate augmented agents");
    ChainSpec chain = make_chain(b.params.chain_length, b.params.delta, variant);
    b.separator = chain.tubes;
    b.out.chain_levels = chain.levels;
    b.build_paths();
    b.place_agents_and_finish(variant);
    return std::move(b.out);
}

Schedule schedule_from_assignment(const GadgetInstance& g, const std::vector<bool>& assignment) {
    const int x = static_cast<int>(g.paths.size());
    if (static_cast<int>(assignment.size()) != x)
        fail(ErrorCode::InvariantViolation, "assignment length must match the variable count");

    // collect the clause gaps along the route, then match helper agents
    std::map<int, std::vector<int>> needs;
    for (int var = 0; var < x; ++var)
        for (const PathPiece& pc : g.pieces[static_cast<size_t>(var)][assignment[static_cast<size_t>(var)] ? 0 : 1])
            if (pc.kind == PathPiece::Kind::ClauseGap || pc.kind == PathPiece::Kind::ArcChoice)
                needs[pc.clause].push_back(pc.position);

    std::map<std::pair<int, int>, int> helper;  // (clause, position) -> node slot
    for (auto& [ci, positions] : needs) {
        const auto& nodes = g.clause_nodes[static_cast<size_t>(ci)].nodes;
        std::vector<char> used(nodes.size(), 0);
        std::sort(positions.begin(), positions.end());
        auto take = [&](int pos, std::vector<int> slots) {
            for (int s : slots)
                if (s < static_cast<int>(nodes.size()) && !used[static_cast<size_t>(s)]) {
                    used[static_cast<size_t>(s)] = 1;
                    helper[{ci, pos}] = s;
                    return;
                }
            fail(ErrorCode::UnsatisfiedClause,
                 "clause " + std::to_string(ci) + " has all its literals false");
        };
        const bool three = nodes.size() == 2;
        for (int pos : positions)
            if (pos != 1) take(pos, {three && pos == 2 ? 1 : 0});
        for (int pos : positions)
            if (pos == 1) take(pos, three ? std::vector<int>{0, 1} : std::vector<int>{0});
    }

    const Graph& graph = g.instance.graph;
    Schedule out;
    auto ends = [&](const PathPiece& pc) {
        const auto& ed = graph.edge(pc.edge);
        return pc.forward ? std::pair<VertexId, VertexId>{ed.u, ed.v}
                          : std::pair<VertexId, VertexId>{ed.v, ed.u};
    };
    std::function<void(const std::vector<PathPiece>&, int)> emit =
        [&](const std::vector<PathPiece>& pieces, int var) {
            for (const PathPiece& pc : pieces) {
                if (pc.kind == PathPiece::Kind::ArcChoice) {
                    const ArcInfo& arc = g.arcs[static_cast<size_t>(pc.arc)];
                    int slot = helper.at({pc.clause, pc.position});
                    emit(slot == 0 ? arc.inner : arc.outer, var);
                    continue;
                }
                auto [from, to] = ends(pc);
                if (pc.kind == PathPiece::Kind::VariableGap) {
                    out.push_back({var, Point::vertex(from), Point::vertex(to)});
                } else if (pc.kind == PathPiece::Kind::ClauseGap) {
                    int slot = helper.at({pc.clause, pc.position});
                    int agent = g.clause_nodes[static_cast<size_t>(pc.clause)]
                                    .agents[static_cast<size_t>(slot)];
                    out.push_back({agent, Point::vertex(from), Point::vertex(to)});
                } else {
                    const TubeSpec& spec = g.tube_specs[static_cast<size_t>(pc.tube)];
                    const Rational& w = spec.length;
                    Point h = make_point(graph, pc.edge,
                                         pc.forward ? spec.handover : w - spec.handover);
                    const auto& pair_ids = g.tube_agents[static_cast<size_t>(pc.tube)];
                    out.push_back({pair_ids[0], Point::vertex(from), h});
                    out.push_back({pair_ids[1], h, Point::vertex(to)});
                }
            }
        };
    for (int var = 0; var < x; ++var)
        emit(g.pieces[static_cast<size_t>(var)][assignment[static_cast<size_t>(var)] ? 0 : 1], var);
    return out;
}

std::vector<bool> assignment_from_schedule(const GadgetInstance& g, const Schedule& sched) {
    const int x = static_cast<int>(g.paths.size());
    std::vector<char> saw_true(static_cast<size_t>(x), 0), saw_false(static_cast<size_t>(x), 0);
    auto mark = [&](const Point& p) {
        const PathOwner* owner = nullptr;
        if (p.is_vertex()) {
            auto it = g.vertex_owner.find(p.vertex_id());
            if (it != g.vertex_owner.end()) owner = &it->second;
        } else {
            auto it = g.edge_owner.find(p.edge_id());
            if (it != g.edge_owner.end()) owner = &it->second;
        }
        if (!owner) return;
        (owner->positive ? saw_true : saw_false)[static_cast<size_t>(owner->var)] = 1;
    };
    for (const Leg& leg : sched) {
        mark(leg.pickup);
        mark(leg.dropoff);
    }
    std::vector<bool> a(static_cast<size_t>(x));
    for (int i = 0; i < x; ++i) {
        if (saw_true[static_cast<size_t>(i)] && saw_false[static_cast<size_t>(i)])
            fail(ErrorCode::AmbiguousRoute,
                 "legs touch both paths of variable " + std::to_string(i));
        a[static_cast<size_t>(i)] = saw_true[static_cast<size_t>(i)] != 0;
    }
    return a;
}

Instance uniformize_budgets(const Instance& inst, const Rational& budget) {
    check_instance(inst);
    for (const Agent& a : inst.agents)
        if (a.budget > budget)
            fail(ErrorCode::BudgetTooSmall, "an agent's budget exceeds the uniform target");

    const Graph& g = inst.graph;
    std::map<EdgeId, std::set<Rational>> cuts;
    for (const Agent& a : inst.agents)
        if (a.budget < budget && !a.at.is_vertex())
            cuts[a.at.edge_id()].insert(a.at.offset());

    VertexId nv = g.vertex_count();
    std::map<std::pair<EdgeId, Rational>, VertexId> cut_vertex;
    std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
    struct SegInfo {
        std::vector<Rational> bounds;
        std::vector<EdgeId> ids;
        std::vector<char> fwd;
    };
    std::vector<SegInfo> seg(static_cast<size_t>(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        SegInfo& si = seg[static_cast<size_t>(e)];
        si.bounds.push_back(Rational(0));
        VertexId prev = ed.u;
        auto it = cuts.find(e);
        if (it != cuts.end())
            for (const Rational& c : it->second) {
                VertexId cv = nv++;
                cut_vertex[{e, c}] = cv;
                si.ids.push_back(static_cast<EdgeId>(edges.size()));
                si.fwd.push_back(prev < cv);
                edges.emplace_back(prev, cv, c - si.bounds.back());
                si.bounds.push_back(c);
                prev = cv;
            }
        si.ids.push_back(static_cast<EdgeId>(edges.size()));
        si.fwd.push_back(prev < ed.v);
        edges.emplace_back(prev, ed.v, ed.w - si.bounds.back());
        si.bounds.push_back(ed.w);
    }

    std::vector<VertexId> tip(inst.agents.size(), -1);
    for (size_t i = 0; i < inst.agents.size(); ++i) {
        const Agent& a = inst.agents[i];
        if (a.budget == budget) continue;
        VertexId anchor = a.at.is_vertex() ? a.at.vertex_id()
                                           : cut_vertex.at({a.at.edge_id(), a.at.offset()});
        Rational len = inst.variant == Variant::Returning ? (budget - a.budget) / 2
                                                          : budget - a.budget;
        tip[i] = nv++;
        edges.emplace_back(anchor, tip[i], len);
    }

    Graph ng = Graph::build(nv, edges);
    auto remap = [&](const Point& p) {
        if (p.is_vertex()) return p;
        auto cv = cut_vertex.find({p.edge_id(), p.offset()});
        if (cv != cut_vertex.end()) return Point::vertex(cv->second);
        const SegInfo& si = seg[static_cast<size_t>(p.edge_id())];
        size_t k = static_cast<size_t>(
                       std::upper_bound(si.bounds.begin(), si.bounds.end(), p.offset()) -
                       si.bounds.begin()) - 1;
        Rational rel = p.offset() - si.bounds[k];
        Rational w = si.bounds[k + 1] - si.bounds[k];
        return make_point(ng, si.ids[k], si.fwd[k] ? rel : w - rel);
    };

    Instance out;
    out.variant = inst.variant;
    out.source = remap(inst.source);
    out.target = remap(inst.target);
    for (size_t i = 0; i < inst.agents.size(); ++i)
        out.agents.push_back({tip[i] >= 0 ? Point::vertex(tip[i]) : remap(inst.agents[i].at), budget});
    out.graph = std::move(ng);
    check_instance(out);
    return out;
}

}  // namespace bdp
