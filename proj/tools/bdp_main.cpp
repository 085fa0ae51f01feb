// Command-line driver. Talks to the solver library exclusively through the
// C interface in bdp.h.
//
// Exit codes: 0 = feasible / valid schedule, 1 = infeasible / invalid
// schedule, 2 = usage or processing error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "bdp.h"

namespace {

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitError = 2;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
}

[[noreturn]] void die(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(kExitError);
}

void check(int rc) {
    if (rc < 0) die(bdp_last_error());
}

// RAII wrappers over the C handles.
struct InstanceHandle {
    bdp_instance* p = nullptr;
    ~InstanceHandle() { bdp_instance_free(p); }
};
struct ResultHandle {
    bdp_result* p = nullptr;
    ~ResultHandle() { bdp_result_free(p); }
};
struct ReportHandle {
    bdp_report* p = nullptr;
    ~ReportHandle() { bdp_report_free(p); }
};
struct GadgetHandle {
    bdp_gadget* p = nullptr;
    ~GadgetHandle() { bdp_gadget_free(p); }
};

std::string take_string(char* s) {
    std::string out = s ? s : "";
    bdp_string_free(s);
    return out;
}

int parse_variant(const std::string& name) {
    if (name == "returning") return BDP_VARIANT_RETURNING;
    if (name == "non-returning") return BDP_VARIANT_NON_RETURNING;
    die("variant must be \"returning\" or \"non-returning\"");
}

const char* decision_text(int decision) {
    switch (decision) {
        case BDP_DECISION_FEASIBLE: return "feasible";
        case BDP_DECISION_INFEASIBLE: return "infeasible";
        case BDP_DECISION_CERTIFIED_INFEASIBLE: return "certified-infeasible";
        case BDP_DECISION_AUGMENTED_FEASIBLE: return "augmented-feasible";
    }
    return "?";
}

bool feasible_decision(int decision) {
    return decision == BDP_DECISION_FEASIBLE || decision == BDP_DECISION_AUGMENTED_FEASIBLE;
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string algo = "auto";
    std::string input, output, order_text, variant;
};

// Dispatch rule shared by solve and bench: try the tree solver, fall back to
// exhaustive search for small crews, then to the balanced relay.
int solve_auto(bdp_instance* inst, std::string* chosen, bdp_result** out) {
    *chosen = "tree";
    int rc = bdp_solve(inst, "tree", nullptr, 0, out);
    if (rc == BDP_E_NOT_A_TREE || rc == BDP_E_VARIANT_UNSUPPORTED) {
        if (bdp_instance_agent_count(inst) <= 6) {
            *chosen = "exact";
            rc = bdp_solve(inst, "exact", nullptr, 0, out);
        } else if (bdp_instance_variant(inst) == BDP_VARIANT_RETURNING) {
            *chosen = "balanced";
            rc = bdp_solve(inst, "balanced", nullptr, 0, out);
        }
    }
    return rc;
}

int run_solve(const SolveArgs& a) {
    InstanceHandle inst;
    check(bdp_instance_parse(read_input(a.input).c_str(), &inst.p));
    if (!a.variant.empty())
        check(bdp_instance_set_variant(inst.p, parse_variant(a.variant)));

    std::vector<int> order;
    if (!a.order_text.empty()) {
        std::stringstream ss(a.order_text);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) order.push_back(std::stoi(tok));
    }

    auto start = std::chrono::steady_clock::now();
    ResultHandle res;
    std::string chosen = a.algo;
    if (a.algo == "auto" && order.empty()) {
        check(solve_auto(inst.p, &chosen, &res.p));
    } else {
        if (a.algo == "auto") chosen = "fixed-order"; // --order implies it
        check(bdp_solve(inst.p, chosen.c_str(), order.empty() ? nullptr : order.data(),
                        static_cast<int>(order.size()), &res.p));
    }
    std::fprintf(stderr, "solve[%s]: %.2f ms\n", chosen.c_str(), ms_since(start));

    char* text = nullptr;
    check(bdp_result_emit(res.p, &text));
    write_output(take_string(text), a.output);

    int decision = bdp_result_decision(res.p);
    check(decision);
    return feasible_decision(decision) ? kExitFeasible : kExitInfeasible;
}

struct ValidateArgs {
    std::string instance, schedule, gamma = "1", output;
};

int run_validate(const ValidateArgs& a) {
    InstanceHandle inst;
    check(bdp_instance_parse(read_input(a.instance).c_str(), &inst.p));
    ReportHandle rep;
    check(bdp_validate(inst.p, read_input(a.schedule).c_str(), a.gamma.c_str(), &rep.p));
    char* text = nullptr;
    check(bdp_report_emit(rep.p, &text));
    write_output(take_string(text), a.output);
    int ok = bdp_report_ok(rep.p);
    check(ok);
    return ok ? kExitFeasible : kExitInfeasible;
}

struct GenArgs {
    std::uint64_t seed = 1;
    int vertices = 8, extra = 2, agents = 3;
    long max_num = 8, max_den = 4;
    std::string variant = "returning", output;
};

int run_gen(const GenArgs& a, bool tree) {
    InstanceHandle inst;
    int v = parse_variant(a.variant);
    check(tree ? bdp_gen_tree(a.seed, a.vertices, a.agents, a.max_num, a.max_den, v,
                              &inst.p)
               : bdp_gen_graph(a.seed, a.vertices, a.extra, a.agents, a.max_num,
                               a.max_den, v, &inst.p));
    char* text = nullptr;
    check(bdp_instance_emit(inst.p, &text));
    write_output(take_string(text), a.output);
    return kExitFeasible;
}

struct GadgetArgs {
    std::string cnf, epsilon = "1", variant = "returning";
    bool augmented = false;
    std::string witness, witness_out, roles_out, output;
};

int run_gadget(const GadgetArgs& a) {
    GadgetHandle gadget;
    check(bdp_gadget_build(read_input(a.cnf).c_str(),
                           a.augmented ? a.epsilon.c_str() : nullptr,
                           parse_variant(a.variant), &gadget.p));

    InstanceHandle inst;
    check(bdp_gadget_instance(gadget.p, &inst.p));
    char* text = nullptr;
    check(bdp_instance_emit(inst.p, &text));
    write_output(take_string(text), a.output);

    if (!a.roles_out.empty()) {
        char* roles = nullptr;
        check(bdp_gadget_rolemap(gadget.p, &roles));
        write_output(take_string(roles), a.roles_out);
    }

    if (!a.witness.empty()) {
        std::vector<unsigned char> bits;
        for (char c : a.witness) {
            if (c == ',' || c == ' ') continue;
            if (c != '0' && c != '1') die("witness must be a string of 0s and 1s");
            bits.push_back(c == '1' ? 1 : 0);
        }
        ResultHandle wit;
        check(bdp_gadget_witness(gadget.p, bits.data(), static_cast<int>(bits.size()),
                                 &wit.p));
        char* wtext = nullptr;
        check(bdp_result_emit(wit.p, &wtext));
        write_output(take_string(wtext), a.witness_out);
    }
    return kExitFeasible;
}

struct BenchArgs {
    std::string suite, algo = "auto";
    int threads = 0;  // 0: use BDP_THREADS or 1
};

struct BenchRow {
    std::string name, line;
    bool failed = false;
};

void bench_one(const std::filesystem::path& file, const std::string& algo, BenchRow* row) {
    row->name = file.filename().string();
    try {
        std::string text = read_input(file.string());
        InstanceHandle inst;
        if (bdp_instance_parse(text.c_str(), &inst.p) < 0) {
            row->line = row->name + " error " + bdp_last_error();
            row->failed = true;
            return;
        }
        std::string chosen = algo;
        auto start = std::chrono::steady_clock::now();
        ResultHandle res;
        int rc = algo == "auto" ? solve_auto(inst.p, &chosen, &res.p)
                                : bdp_solve(inst.p, algo.c_str(), nullptr, 0, &res.p);
        if (rc < 0) {
            row->line = row->name + " error " + bdp_last_error();
            row->failed = true;
            return;
        }
        double elapsed = ms_since(start);
        char* gamma = nullptr;
        if (bdp_result_gamma(res.p, &gamma) < 0) {
            row->line = row->name + " error " + bdp_last_error();
            row->failed = true;
            return;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f", elapsed);
        row->line = row->name + " " + chosen + " " +
                    decision_text(bdp_result_decision(res.p)) + " gamma=" +
                    take_string(gamma) + " " + buf + "ms";
    } catch (const std::exception& e) {
        row->line = row->name + " error " + e.what();
        row->failed = true;
    }
}

int run_bench(const BenchArgs& a) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.suite))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) die("no .json instances under " + a.suite);

    int threads = a.threads;
    if (threads <= 0) {
        const char* env = std::getenv("BDP_THREADS");
        threads = env ? std::max(1, std::atoi(env)) : 1;
    }
    threads = std::min<int>(threads, static_cast<int>(files.size()));

    std::vector<BenchRow> rows(files.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1))
            bench_one(files[i], a.algo, &rows[i]);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    bool any_failed = false;
    for (const BenchRow& row : rows) {  // deterministic: file-name order
        std::cout << row.line << "\n";
        any_failed = any_failed || row.failed;
    }
    return any_failed ? kExitError : kExitFeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"budgeted message delivery: solve, validate, generate, bench"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "solve an instance file");
    solve->add_option("--algo", solve_args.algo,
                      "tree | aug2 | balanced | fixed-order | exact | auto (default)");
    solve->add_option("-i,--input", solve_args.input, "instance document (- for stdin)")
        ->required();
    solve->add_option("--order", solve_args.order_text,
                      "comma-separated agent order (fixed-order only)");
    solve->add_option("--variant", solve_args.variant,
                      "override the instance variant: returning | non-returning");
    solve->add_option("-o,--output", solve_args.output, "result file (default stdout)");

    ValidateArgs val_args;
    CLI::App* val = app.add_subcommand("validate", "check a schedule against an instance");
    val->add_option("-i,--input", val_args.instance, "instance document")->required();
    val->add_option("-r,-s,--result,--schedule", val_args.schedule,
                    "result document carrying the schedule")
        ->required();
    val->add_option("--gamma", val_args.gamma, "budget stretch factor (default 1)");
    val->add_option("-o,--output", val_args.output, "report file (default stdout)");

    CLI::App* gen = app.add_subcommand("gen", "generate instances");
    gen->require_subcommand(1);
    GenArgs tree_args;
    CLI::App* gtree = gen->add_subcommand("random-tree", "seeded random tree instance");
    GenArgs graph_args;
    CLI::App* ggraph =
        gen->add_subcommand("random-graph", "seeded random connected graph instance");
    for (auto [sub, args] : {std::pair{gtree, &tree_args}, std::pair{ggraph, &graph_args}}) {
        sub->add_option("--seed", args->seed, "generator seed (default 1)");
        sub->add_option("-n,--vertices", args->vertices, "vertex count (default 8)");
        sub->add_option("--agents", args->agents, "maximum agent count (default 3)");
        sub->add_option("--max-num", args->max_num, "numerator bound (default 8)");
        sub->add_option("--max-den", args->max_den, "denominator bound (default 4)");
        sub->add_option("--variant", args->variant, "returning | non-returning");
        sub->add_option("-o,--output", args->output, "instance file (default stdout)");
    }
    ggraph->add_option("--extra", graph_args.extra,
                       "edges beyond the spanning tree (default 2)");

    GadgetArgs gad_args;
    CLI::App* gad = gen->add_subcommand("gadget", "compile a CNF into a delivery instance");
    gad->add_option("-i,--cnf,--input", gad_args.cnf, "DIMACS CNF file (- for stdin)")
        ->required();
    auto* aug = gad->add_flag("--augmented", gad_args.augmented,
                              "build the augmentation-resistant construction");
    gad->add_option("--epsilon", gad_args.epsilon,
                    "augmented resistance margin (default 1)")
        ->needs(aug);
    gad->add_option("--variant", gad_args.variant, "returning | non-returning");
    auto* wit = gad->add_option("--witness", gad_args.witness,
                                "assignment bits; emits the witness schedule");
    auto* wout = gad->add_option("--witness-out", gad_args.witness_out,
                                 "file for the witness result document");
    wit->needs(wout);
    wout->needs(wit);
    gad->add_option("--roles-out", gad_args.roles_out, "file for the agent role map");
    gad->add_option("-o,--output", gad_args.output, "instance file (default stdout)");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "time solves over a directory of instances");
    bench->add_option("-d,--suite,--dir", bench_args.suite, "directory of *.json instances")
        ->required();
    bench->add_option("--algo", bench_args.algo,
                      "algorithm, or \"auto\" (tree, then exact/balanced)");
    bench->add_option("--threads", bench_args.threads,
                      "worker threads (default: BDP_THREADS or 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);  // prints usage errors to stderr, help to stdout
        return rc == 0 ? 0 : kExitError;
    }

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (val->parsed()) return run_validate(val_args);
        if (gtree->parsed()) return run_gen(tree_args, true);
        if (ggraph->parsed()) return run_gen(graph_args, false);
        if (gad->parsed()) return run_gadget(gad_args);
        if (bench->parsed()) return run_bench(bench_args);
    } catch (const std::exception& e) {
        die(e.what());
    }
    return kExitError;
}
