#include "bdp/gen.hpp"

#include <random>
#include <tuple>
#include <vector>

#include "bdp/error.hpp"

namespace bdp {
namespace {

// Engine output is reduced with plain modulo: slightly biased but identical
// everywhere, which matters more than uniformity for reproducible fixtures.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next(std::uint64_t bound) { return eng() % bound; }
    long pick(long lo, long hi) {
        return lo + static_cast<long>(next(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    Rational positive(long max_num, long max_den) {
        long d = pick(1, max_den);
        return Rational(pick(1, max_num * d), d);
    }
    Rational nonnegative(long max_num, long max_den) {
        long d = pick(1, max_den);
        return Rational(pick(0, max_num * d), d);
    }
};

void check_options(const GenOptions& opt) {
    if (opt.vertices < 1 || opt.max_agents < 1 || opt.max_num < 1 ||
        opt.max_den < 1 || opt.extra_edges < 0)
        fail(ErrorCode::InvariantViolation, "generator options out of range");
}

Instance finish(Rng& rng, Graph g, const GenOptions& opt) {
    Instance inst;
    inst.graph = std::move(g);
    inst.variant = opt.variant;
    const auto n = static_cast<std::uint64_t>(inst.graph.vertex_count());
    inst.source = Point::vertex(static_cast<VertexId>(rng.next(n)));
    inst.target = Point::vertex(static_cast<VertexId>(rng.next(n)));
    int k = static_cast<int>(rng.next(static_cast<std::uint64_t>(opt.max_agents))) + 1;
    for (int i = 0; i < k; ++i)
        inst.agents.push_back({Point::vertex(static_cast<VertexId>(rng.next(n))),
                               rng.nonnegative(opt.max_num, opt.max_den)});
    check_instance(inst);
    return inst;
}

std::vector<std::tuple<VertexId, VertexId, Rational>> spanning_tree(Rng& rng,
                                                                    const GenOptions& opt) {
    std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
    for (VertexId i = 1; i < opt.vertices; ++i)
        edges.emplace_back(static_cast<VertexId>(rng.next(static_cast<std::uint64_t>(i))), i,
                           rng.positive(opt.max_num, opt.max_den));
    return edges;
}

}  // namespace

Instance gen_random_tree(const GenOptions& opt) {
    check_options(opt);
    Rng rng(opt.seed);
    return finish(rng, Graph::build(opt.vertices, spanning_tree(rng, opt)), opt);
}

Instance gen_random_graph(const GenOptions& opt) {
    check_options(opt);
    Rng rng(opt.seed);
    auto edges = spanning_tree(rng, opt);
    const auto n = static_cast<std::uint64_t>(opt.vertices);
    for (int j = 0; j < opt.extra_edges && opt.vertices >= 2; ++j) {
        auto u = static_cast<VertexId>(rng.next(n));
        auto v = static_cast<VertexId>(rng.next(n));
        if (u == v) v = (v + 1) % opt.vertices;
        edges.emplace_back(u, v, rng.positive(opt.max_num, opt.max_den));
    }
    return finish(rng, Graph::build(opt.vertices, edges), opt);
}

}  // namespace bdp
