#include "bdp/augmented.hpp"

#include <algorithm>
#include <deque>
#include <initializer_list>
#include <optional>

#include "bdp/error.hpp"

namespace bdp {
namespace {

// Lexicographically smallest fewest-node path start -> goal, or nullopt.
// Distances are computed from the goal so the path can be grown from the
// start by always taking the smallest-id neighbour one step closer.
std::optional<std::vector<int>> lex_shortest_path(const IntersectionGraph& ig, int start,
                                                  int goal) {
    std::vector<int> dist(ig.adj.size(), -1);
    std::deque<int> queue{goal};
    dist[static_cast<size_t>(goal)] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (const auto& e : ig.adj[static_cast<size_t>(u)])
            if (dist[static_cast<size_t>(e.to)] < 0) {
                dist[static_cast<size_t>(e.to)] = dist[static_cast<size_t>(u)] + 1;
                queue.push_back(e.to);
            }
    }
    if (dist[static_cast<size_t>(start)] < 0) return std::nullopt;
    std::vector<int> path{start};
    for (int cur = start; cur != goal;) {
        for (const auto& e : ig.adj[static_cast<size_t>(cur)])
            if (dist[static_cast<size_t>(e.to)] == dist[static_cast<size_t>(cur)] - 1) {
                cur = e.to;
                break;
            }
        path.push_back(cur);
    }
    return path;
}

const Point& witness_of(const IntersectionGraph& ig, int u, int v) {
    for (const auto& e : ig.adj[static_cast<size_t>(u)])
        if (e.to == v) return e.witness;
    fail(ErrorCode::InvariantViolation, "relay crosses a non-edge of the intersection graph");
}

// Waypoint list with consecutive duplicates collapsed.
std::vector<Point> waypoints(std::initializer_list<Point> pts) {
    std::vector<Point> out;
    for (const Point& p : pts)
        if (out.empty() || out.back() != p) out.push_back(p);
    return out;
}

SolveResult trivial_delivery(const char* solver) {
    SolveResult res;
    res.solver = solver;
    res.decision = Decision::Feasible;
    res.schedule = Schedule{};
    return res;
}

SolveResult single_agent_result(const Instance& inst, Schedule single, const char* solver,
                                AugmentedPlan* plan) {
    SolveResult res;
    res.solver = solver;
    res.decision = Decision::Feasible;
    res.schedule = single;
    if (plan) {
        const int id = single.front().agent;
        const Agent& ag = inst.agents[static_cast<size_t>(id)];
        plan->relay = {id};
        plan->handovers = {inst.source, inst.target};
        plan->transfers = plan->handovers;
        plan->itineraries = {inst.variant == Variant::Returning
                                 ? waypoints({ag.at, inst.source, inst.target, ag.at})
                                 : waypoints({ag.at, inst.source, inst.target})};
        plan->bounds = {ag.budget};
        plan->gamma = 1;
    }
    return res;
}

} // namespace

IntersectionGraph build_intersection_graph(const std::vector<ReachSet>& sets) {
    IntersectionGraph ig;
    ig.adj.resize(sets.size());
    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i + 1; j < sets.size(); ++j)
            if (auto w = intersect_witness(sets[i], sets[j])) {
                ig.adj[i].push_back({static_cast<int>(j), *w});
                ig.adj[j].push_back({static_cast<int>(i), *w});
            }
    return ig;
}

std::optional<Schedule> check_single_agent(const Instance& inst) {
    check_instance(inst);
    DistanceOracle oracle(inst.graph);
    auto carry = oracle.point_distance(inst.source, inst.target);
    if (!carry) return std::nullopt;
    for (size_t i = 0; i < inst.agents.size(); ++i) {
        const Agent& ag = inst.agents[i];
        auto fetch = oracle.point_distance(ag.at, inst.source);
        if (!fetch) continue;
        Rational need = *fetch + *carry;
        if (inst.variant == Variant::Returning) {
            auto home = oracle.point_distance(inst.target, ag.at);
            if (!home) continue;
            need += *home;
        }
        if (need <= ag.budget)
            return Schedule{{static_cast<int>(i), inst.source, inst.target}};
    }
    return std::nullopt;
}

SolveResult solve_2_augmented(const Instance& inst, AugmentedPlan* plan) {
    check_instance(inst);
    if (inst.variant != Variant::Returning)
        fail(ErrorCode::VariantUnsupported,
             "the 2-augmented relay is defined for the Returning variant");
    if (inst.source == inst.target) return trivial_delivery("aug2");
    if (auto single = check_single_agent(inst))
        return single_agent_result(inst, *single, "aug2", plan);

    SolveResult res;
    res.solver = "aug2";
    const int k = static_cast<int>(inst.agents.size());
    DistanceOracle oracle(inst.graph);
    std::vector<ReachSet> sets;
    sets.reserve(static_cast<size_t>(k) + 2);
    for (const Agent& ag : inst.agents)
        sets.push_back(ReachSet::ball(oracle, ag.at, ag.budget / 2));
    sets.push_back(ReachSet::ball(oracle, inst.source, Rational(0)));
    sets.push_back(ReachSet::ball(oracle, inst.target, Rational(0)));

    IntersectionGraph ig = build_intersection_graph(sets);
    auto path = lex_shortest_path(ig, k, k + 1);
    if (!path) {
        res.decision = Decision::CertifiedInfeasible;
        return res;
    }

    std::vector<int> relay(path->begin() + 1, path->end() - 1);
    const size_t l = relay.size();
    std::vector<Point> hand(l + 1, inst.source);
    hand[l] = inst.target;
    for (size_t j = 1; j < l; ++j)
        hand[j] = witness_of(ig, relay[j - 1], relay[j]);

    Schedule sched;
    for (size_t i = 0; i < l; ++i)
        sched.push_back({relay[i], hand[i], hand[i + 1]});
    res.decision = Decision::AugmentedFeasible;
    res.gamma = 2;
    res.schedule = sched;
    if (plan) {
        plan->relay = relay;
        plan->handovers = hand;
        plan->transfers = hand;
        plan->itineraries.clear();
        plan->bounds.clear();
        for (size_t i = 0; i < l; ++i) {
            const Point& home = inst.agents[static_cast<size_t>(relay[i])].at;
            plan->itineraries.push_back(waypoints({home, hand[i], hand[i + 1], home}));
            plan->bounds.push_back(inst.agents[static_cast<size_t>(relay[i])].budget * 2);
        }
        plan->gamma = 2;
    }
    return res;
}

SolveResult solve_balanced_augmented(const Instance& inst, AugmentedPlan* plan) {
    check_instance(inst);
    if (inst.variant != Variant::Returning)
        fail(ErrorCode::VariantUnsupported,
             "the balanced relay is defined for the Returning variant");
    if (inst.source == inst.target) return trivial_delivery("balanced");
    if (auto single = check_single_agent(inst))
        return single_agent_result(inst, *single, "balanced", plan);
    if (inst.agents.size() < 2)
        fail(ErrorCode::NeedTwoAgents, "the balanced relay needs at least two agents");

    SolveResult res;
    res.solver = "balanced";
    const int k = static_cast<int>(inst.agents.size());
    DistanceOracle oracle(inst.graph);
    const Graph& g = inst.graph;

    std::vector<int> active; // zero-budget agents cannot move the message
    for (int i = 0; i < k; ++i)
        if (inst.agents[static_cast<size_t>(i)].budget.sign() > 0) active.push_back(i);

    // Reach sets: every active agent gets a ball; candidates for the first
    // (last) role additionally get the fetch-from-s (deliver-to-t) ellipsoid
    // when their budget pays for the direct trip there.
    std::vector<std::optional<ReachSet>> ball(static_cast<size_t>(k));
    std::vector<std::optional<ReachSet>> from_s(static_cast<size_t>(k));
    std::vector<std::optional<ReachSet>> to_t(static_cast<size_t>(k));
    for (int i : active) {
        const Agent& ag = inst.agents[static_cast<size_t>(i)];
        ball[static_cast<size_t>(i)] = ReachSet::ball(oracle, ag.at, ag.budget / 2);
        auto ds = oracle.point_distance(ag.at, inst.source);
        if (ds && *ds <= ag.budget)
            from_s[static_cast<size_t>(i)] = ReachSet::ellipsoid(oracle, ag.at, inst.source, ag.budget);
        auto dt = oracle.point_distance(ag.at, inst.target);
        if (dt && *dt <= ag.budget)
            to_t[static_cast<size_t>(i)] = ReachSet::ellipsoid(oracle, ag.at, inst.target, ag.budget);
    }

    // Witness tables, so the (a, b) loop only assembles adjacency.
    auto table = [&] {
        return std::vector<std::vector<std::optional<Point>>>(
            static_cast<size_t>(k), std::vector<std::optional<Point>>(static_cast<size_t>(k)));
    };
    auto wbb = table(), was = table(), wbt = table(), wab = table();
    for (int i : active)
        for (int j : active) {
            if (i < j)
                wbb[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    wbb[static_cast<size_t>(j)][static_cast<size_t>(i)] = intersect_witness(
                        *ball[static_cast<size_t>(i)], *ball[static_cast<size_t>(j)]);
            if (i == j) continue;
            if (from_s[static_cast<size_t>(i)])
                was[static_cast<size_t>(i)][static_cast<size_t>(j)] = intersect_witness(
                    *from_s[static_cast<size_t>(i)], *ball[static_cast<size_t>(j)]);
            if (to_t[static_cast<size_t>(i)])
                wbt[static_cast<size_t>(i)][static_cast<size_t>(j)] = intersect_witness(
                    *to_t[static_cast<size_t>(i)], *ball[static_cast<size_t>(j)]);
            if (from_s[static_cast<size_t>(i)] && to_t[static_cast<size_t>(j)])
                wab[static_cast<size_t>(i)][static_cast<size_t>(j)] = intersect_witness(
                    *from_s[static_cast<size_t>(i)], *to_t[static_cast<size_t>(j)]);
        }

    struct Best {
        size_t l = 0;
        Rational gamma;
        int a = -1, b = -1;
        std::vector<int> path;
    } best;

    auto budget_of = [&](int i) { return inst.agents[static_cast<size_t>(i)].budget; };

    for (int a : active) {
        if (!from_s[static_cast<size_t>(a)]) continue;
        for (int b : active) {
            if (b == a || !to_t[static_cast<size_t>(b)]) continue;
            auto pair_witness = [&](int i, int j) -> const std::optional<Point>& {
                if (i == a) return j == b ? wab[static_cast<size_t>(a)][static_cast<size_t>(b)]
                                          : was[static_cast<size_t>(a)][static_cast<size_t>(j)];
                if (j == a) return i == b ? wab[static_cast<size_t>(a)][static_cast<size_t>(b)]
                                          : was[static_cast<size_t>(a)][static_cast<size_t>(i)];
                if (i == b) return wbt[static_cast<size_t>(b)][static_cast<size_t>(j)];
                if (j == b) return wbt[static_cast<size_t>(b)][static_cast<size_t>(i)];
                return wbb[static_cast<size_t>(i)][static_cast<size_t>(j)];
            };
            IntersectionGraph ig;
            ig.adj.resize(static_cast<size_t>(k));
            for (size_t x = 0; x < active.size(); ++x)
                for (size_t y = x + 1; y < active.size(); ++y) {
                    int i = active[x], j = active[y];
                    if (const auto& w = pair_witness(i, j)) {
                        ig.adj[static_cast<size_t>(i)].push_back({j, *w});
                        ig.adj[static_cast<size_t>(j)].push_back({i, *w});
                    }
                }
            auto path = lex_shortest_path(ig, a, b);
            if (!path) continue;

            const size_t l = path->size();
            Rational frac(static_cast<long>(l) - 2, static_cast<long>(l));
            Rational gamma(1);
            for (size_t i = 1; i <= l; ++i) { // 1-based relay position
                const Rational B = budget_of((*path)[i - 1]);
                Rational bound;
                if (i == 1)
                    bound = B + frac * budget_of((*path)[1]);
                else if (i == l)
                    bound = B + frac * budget_of((*path)[l - 2]);
                else if (l % 2 == 1 && 2 * i == l + 1)
                    bound = (Rational(1) + frac) * B;
                else if (2 * i <= l)
                    bound = B + frac * std::max(B, budget_of((*path)[i]));
                else
                    bound = B + frac * std::max(budget_of((*path)[i - 2]), B);
                gamma = std::max(gamma, bound / B);
            }
            if (best.a < 0 || l < best.l || (l == best.l && gamma < best.gamma)) {
                best = {l, gamma, a, b, *path};
            }
        }
    }

    if (best.a < 0) {
        res.decision = Decision::CertifiedInfeasible;
        return res;
    }

    // Materialize the winning relay.
    const std::vector<int>& relay = best.path;
    const size_t l = best.l;
    const Rational frac(static_cast<long>(l) - 2, static_cast<long>(l));
    auto winner_witness = [&](int i, int j) -> const Point& {
        const std::optional<Point>* w;
        if (i == best.a)
            w = j == best.b ? &wab[static_cast<size_t>(i)][static_cast<size_t>(j)]
                            : &was[static_cast<size_t>(i)][static_cast<size_t>(j)];
        else if (j == best.a)
            w = i == best.b ? &wab[static_cast<size_t>(j)][static_cast<size_t>(i)]
                            : &was[static_cast<size_t>(j)][static_cast<size_t>(i)];
        else if (i == best.b)
            w = &wbt[static_cast<size_t>(i)][static_cast<size_t>(j)];
        else if (j == best.b)
            w = &wbt[static_cast<size_t>(j)][static_cast<size_t>(i)];
        else
            w = &wbb[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (!w->has_value())
            fail(ErrorCode::InvariantViolation, "relay crosses sets with no witness");
        return **w;
    };

    std::vector<Point> hand(l + 1, inst.source);
    hand[l] = inst.target;
    for (size_t j = 1; j < l; ++j)
        hand[j] = winner_witness(relay[j - 1], relay[j]);

    auto home_of = [&](size_t pos) -> const Point& { // 1-based relay position
        return inst.agents[static_cast<size_t>(relay[pos - 1])].at;
    };

    // Transfer points: each handover is shifted along the canonical walk
    // toward the neighbour that has budget to spare. Junction j sits between
    // relay positions j and j+1.
    std::vector<Point> tr(l + 1, inst.source);
    tr[l] = inst.target;
    for (size_t j = 1; j < l; ++j) {
        if (2 * j == l) {
            tr[j] = hand[j];
            continue;
        }
        const Point& toward = 2 * j < l ? home_of(j + 1) : home_of(j);
        Walk walk = oracle.shortest_walk(hand[j], toward);
        const Rational frac_j = 2 * j < l
                                    ? Rational(static_cast<long>(l - 2 * j), static_cast<long>(l))
                                    : Rational(static_cast<long>(2 * j - l), static_cast<long>(l));
        tr[j] = point_along_walk(g, walk, frac_j * walk.length);
    }

    Schedule sched;
    for (size_t i = 1; i <= l; ++i)
        sched.push_back({relay[i - 1], tr[i - 1], tr[i]});

    res.decision = Decision::AugmentedFeasible;
    res.gamma = best.gamma;
    res.schedule = sched;
    if (plan) {
        plan->relay = relay;
        plan->handovers = hand;
        plan->transfers = tr;
        plan->itineraries.clear();
        plan->bounds.clear();
        for (size_t i = 1; i <= l; ++i) {
            const Point& p = home_of(i);
            const Rational B = budget_of(relay[i - 1]);
            if (i == 1) {
                plan->itineraries.push_back(waypoints({p, inst.source, hand[1], tr[1], p}));
                plan->bounds.push_back(B + frac * budget_of(relay[1]));
            } else if (i == l) {
                plan->itineraries.push_back(waypoints({p, tr[l - 1], hand[l - 1], inst.target, p}));
                plan->bounds.push_back(B + frac * budget_of(relay[l - 2]));
            } else if (l % 2 == 1 && 2 * i == l + 1) {
                plan->itineraries.push_back(waypoints({p, tr[i - 1], p, tr[i], p}));
                plan->bounds.push_back((Rational(1) + frac) * B);
            } else if (2 * i <= l) {
                plan->itineraries.push_back(waypoints({p, tr[i - 1], p, hand[i], tr[i], p}));
                plan->bounds.push_back(B + frac * std::max(B, budget_of(relay[i])));
            } else {
                plan->itineraries.push_back(waypoints({p, tr[i - 1], p, tr[i], p}));
                plan->bounds.push_back(B + frac * std::max(budget_of(relay[i - 2]), B));
            }
        }
        plan->gamma = best.gamma;
    }
    return res;
}

} // namespace bdp
