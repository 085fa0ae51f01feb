#pragma once

#include <cstdint>

#include "bdp/instance.hpp"

namespace bdp {

// Knobs for the seeded instance generators. The same options and seed always
// produce the same instance, bit for bit, on every platform.
struct GenOptions {
    std::uint64_t seed = 1;
    int vertices = 8;
    int extra_edges = 0;  // edges beyond the spanning tree (gen_random_graph)
    int max_agents = 3;   // agent count is drawn from [1, max_agents]
    long max_num = 8;     // numerator bound for weights and budgets
    long max_den = 4;     // denominator bound for weights and budgets
    Variant variant = Variant::Returning;
};

// Random tree: vertex i > 0 hangs off a uniformly chosen earlier vertex.
// Source, target and all agents sit on vertices; budgets may be zero.
Instance gen_random_tree(const GenOptions& opt);

// Random connected graph: the same tree plus `extra_edges` non-loop edges.
Instance gen_random_graph(const GenOptions& opt);

}  // namespace bdp
