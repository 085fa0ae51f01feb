#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bdp/instance.hpp"
#include "bdp/rational.hpp"

namespace bdp {

// ---------------------------------------------------------------------------
// CNF formulas (the input language of the hardness-instance compiler).
// ---------------------------------------------------------------------------

struct Literal {
    int var = 0;  // 0-based variable index
    bool negated = false;
};

struct Clause {
    std::vector<Literal> literals;  // 1 to 3, at most one per variable
};

struct Cnf {
    int num_vars = 0;
    std::vector<Clause> clauses;
};

// Throws MalformedCnf unless every clause has 1-3 literals, each variable
// index is in range, and no clause mentions a variable twice.
void check_cnf(const Cnf& f);

// DIMACS CNF: optional comment lines ("c ..."), a "p cnf <vars> <clauses>"
// header, then whitespace-separated signed 1-based literals with 0 ending
// each clause. Clause count must match the header. Throws ParseError on
// syntax problems and MalformedCnf if the parsed formula breaks the
// invariants above.
Cnf parse_dimacs(const std::string& text);

// ---------------------------------------------------------------------------
// Tubes and chains: self-certifying separator segments.
// ---------------------------------------------------------------------------

// Parameters a compiled instance was built with. zeta is the weight of the
// gap segments only dedicated agents can bridge, delta the separator tube
// length. Augmented instances additionally carry the chain length bound and
// the epsilon that produced zeta = epsilon/(6-epsilon), delta = zeta/9.
struct GadgetParams {
    Rational zeta, delta;
    Rational chain_length;  // 0 for the basic construction
    Rational epsilon;       // 0 for the basic construction
    Variant variant = Variant::Returning;
    bool augmented = false;
};

struct TubeAgent {
    Rational offset;  // from the tube's left (travel) end
    Rational budget;
};

// A length-delta segment housing two agents that can relay a message across
// it but cannot leave it by more than delta/3 on either side. `handover` is
// the offset where the left agent drops and the right agent picks up.
struct TubeSpec {
    Rational length;
    std::array<TubeAgent, 2> agents;
    Rational handover;
};

// Builds the tube for the variant and certifies all four defining properties
// at build time (length, budget caps, excursion bound via reach sets on a
// padded standalone segment, relay via the validator). Throws
// InvariantViolation if delta <= 0 or any certification fails.
TubeSpec make_delta_tube(const Rational& delta, Variant variant);

// A concatenation of tube blocks: six delta-tubes, six 2*delta-tubes, ... up
// to six 2^levels*delta-tubes, then back down symmetrically (2*levels + 1
// blocks). levels is minimal with 6 * 2^levels * delta >= min_length.
struct ChainSpec {
    Rational delta;
    Rational length;  // total, >= the requested minimum
    long levels = 0;
    std::vector<TubeSpec> tubes;  // left to right
};

// Builds and certifies a chain: total length >= min_length; no contained
// agent, even with its budget tripled, can leave the segment by more than
// 3*delta; the agents relay a message across at their original budgets.
// Throws InvariantViolation on bad arguments or a failed certification.
ChainSpec make_chain(const Rational& min_length, const Rational& delta, Variant variant);

// ---------------------------------------------------------------------------
// Compiled instances.
// ---------------------------------------------------------------------------

struct AgentRole {
    enum class Kind { Variable, Clause, Separating };
    Kind kind = Kind::Separating;
    int variable = -1;   // Variable agents: which variable they set
    int clause = -1;     // Clause agents: which clause they serve
    VertexId node = -1;  // Clause agents: the clause node they start on
    long tube = -1;      // Separating agents: tube ordinal (build order)
    int member = -1;     // Separating agents: 0 = left, 1 = right in the tube
};

// One piece of a variable path, in travel order. VariableGap is the leading
// zeta-segment (bridged by the variable agent), ClauseGap a zeta-segment
// after a literal node (bridged by a dispatched clause agent), Tube a
// separator tube (its two agents relay). ArcChoice stands for a pair of
// parallel arcs in the augmented construction; the actual pieces live in
// GadgetInstance::arcs and the arm is chosen at schedule time.
struct PathPiece {
    enum class Kind { VariableGap, ClauseGap, Tube, ArcChoice };
    Kind kind = Kind::Tube;
    EdgeId edge = 0;      // carrying edge (meaningless for ArcChoice)
    bool forward = true;  // travel direction equals the edge's u -> v direction
    long tube = -1;       // Tube: ordinal into tube_agents / tube_specs
    int clause = -1;      // ClauseGap / ArcChoice: clause index
    int position = -1;    // ClauseGap / ArcChoice: literal position in clause
    int arc = -1;         // ArcChoice: index into GadgetInstance::arcs
};

// Two parallel arcs replacing the gap segment of a literal node reachable
// from both nodes of a three-literal clause. The inner arm starts with the
// gap segment (entry vertex reachable from the clause's first node) followed
// by a chain; the outer arm is a chain followed by the gap segment (its
// junction reachable from the clause's second node).
struct ArcInfo {
    int clause = -1;
    int var = -1;
    VertexId entry = -1;           // on the main path; start of both arms
    VertexId exit = -1;            // on the main path; end of both arms
    VertexId inner_junction = -1;  // end of the inner arm's gap segment
    VertexId outer_junction = -1;  // start of the outer arm's gap segment
    std::vector<PathPiece> inner, outer;  // pieces in travel order
};

// Which variable path an edge or interior vertex belongs to.
struct PathOwner {
    int var = -1;
    bool positive = false;  // true: the path taken when the variable is true
};

// A delivery instance compiled from a CNF, plus everything needed to move
// between assignments and schedules and to inspect the construction.
// Feasible delivery schedules correspond exactly to satisfying assignments.
struct GadgetInstance {
    Instance instance;
    GadgetParams params;

    // Agent order: variable agents (by variable), clause agents (by clause,
    // node order), separating agents (by tube ordinal, left member first).
    std::vector<AgentRole> roles;

    // Per variable: the ordered vertices of its two parallel paths, from v_i
    // to v_{i+1} inclusive; [0] is the path routing "true", [1] "false".
    // Where an arc pair splits the path, the listing follows the inner arm.
    std::vector<std::array<std::vector<Point>, 2>> paths;

    // (variable, clause) -> the literal node on the corresponding path.
    std::map<std::pair<int, int>, Point> literal_nodes;

    // Per variable: travel-ordered pieces of both paths; same indexing as
    // `paths`.
    std::vector<std::array<std::vector<PathPiece>, 2>> pieces;

    // Clause node vertices and the agents stationed on them, per clause.
    // Three-literal clauses have two nodes (first serves literal positions
    // 0-1, second positions 1-2), two-literal clauses one, single-literal
    // clauses none.
    struct ClauseNodes {
        std::vector<VertexId> nodes;
        std::vector<int> agents;
    };
    std::vector<ClauseNodes> clause_nodes;

    std::vector<ArcInfo> arcs;                  // augmented instances only
    std::vector<std::array<int, 2>> tube_agents;  // per tube ordinal
    std::vector<TubeSpec> tube_specs;             // per tube ordinal

    std::map<EdgeId, PathOwner> edge_owner;      // path and arc edges
    std::map<VertexId, PathOwner> vertex_owner;  // strictly-interior vertices

    long tube_count = 0;
    long chain_levels = -1;  // levels of every embedded chain; -1 if no chains
};

// Compiles a CNF into a delivery instance whose message can cross each
// variable section only along one of two parallel paths (fixing the
// variable) and whose gap segments can only be bridged by the right agents:
// the instance is feasible exactly when the formula is satisfiable. Budgets
// for the Returning variant are 2*zeta (variable agents), 2*(1+zeta) (clause
// agents); Non-Returning halves them to zeta and 1+zeta. zeta = 1/8,
// delta = 4*zeta/3. Structural inequalities and separator excursion bounds
// are asserted at build time. Throws MalformedCnf for invalid formulas.
GadgetInstance build_basic_gadget(const Cnf& f, Variant variant);

// The robust variant: separator tubes become chains (min length 9,
// delta = zeta/9) whose confinement survives budget augmentation below a
// factor 3, and gap segments reachable from two clause nodes split into two
// parallel arcs so the two clause agents can no longer meet. zeta =
// epsilon/(6-epsilon); accepts 0 < epsilon <= 1 (Returning) or
// 0 < epsilon <= 2 (Non-Returning), else throws EpsilonOutOfRange.
GadgetInstance build_augmented_gadget(const Cnf& f, const Rational& epsilon, Variant variant);

// The witness schedule for a satisfying assignment: routes the message along
// p_{i,true} iff assignment[i], has the variable agent bridge the leading
// gap, tube agents relay, and dispatches clause agents to the gap segments
// of false literals along the route. Validates at gamma = 1 on the gadget
// instance. Throws UnsatisfiedClause(i) iff some clause i has all its
// literals false under the assignment (it then needs more helpers than it
// owns), InvariantViolation if the assignment length is wrong.
Schedule schedule_from_assignment(const GadgetInstance& g, const std::vector<bool>& assignment);

// Reads an assignment back off a schedule: variable i is true iff some leg
// pickup or dropoff lies strictly inside p_{i,true}. The schedule must be
// valid for the gadget instance (this function only reads it). Throws
// AmbiguousRoute if both paths of one variable carry leg endpoints.
std::vector<bool> assignment_from_schedule(const GadgetInstance& g, const Schedule& sched);

// Equalizes budgets without changing feasibility: every agent with budget
// below `budget` moves to the tip of a fresh pendant edge whose length burns
// exactly the surplus ((B-B_i)/2 returning, B-B_i non-returning). Interior
// agent positions get their edge subdivided; all points are remapped.
// Throws BudgetTooSmall if some agent's budget exceeds `budget`.
Instance uniformize_budgets(const Instance& inst, const Rational& budget);

}  // namespace bdp
