// Drives the installed command-line binary as a subprocess. The test runner
// passes its location in the BDP_CLI environment variable.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

// Runs a shell command, capturing stdout; stderr is dropped unless the
// command redirects it.
RunResult run(const std::string& cmd) {
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int rc = pclose(pipe);
    REQUIRE(WIFEXITED(rc));
    r.status = WEXITSTATUS(rc);
    return r;
}

std::string cli() {
    const char* env = std::getenv("BDP_CLI");
    REQUIRE_MESSAGE(env != nullptr, "BDP_CLI must point at the CLI binary");
    return std::string("'") + env + "'";
}

struct TempDir {
    std::filesystem::path dir;
    explicit TempDir(const std::string& tag) {
        dir = std::filesystem::temp_directory_path() /
              ("bdp_cli_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir, ec);
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string line_instance(const char* budget) {
    std::string doc = R"({
      "version": "bdp-instance/1",
      "vertices": 3,
      "edges": [[0, 1, "2"], [1, 2, "2"]],
      "variant": "returning",
      "source": 0,
      "target": 2,
      "agents": [{"at": 0, "budget": ")";
    doc += budget;
    doc += "\"}]\n}";
    return doc;
}

} // namespace

TEST_CASE("solve reports decisions in its exit code and keeps timing off stdout") {
    TempDir tmp("solve");
    write_file(tmp.path("easy.json"), line_instance("8"));
    write_file(tmp.path("starved.json"), line_instance("1"));

    RunResult ok = run(cli() + " solve --algo tree -i " + tmp.path("easy.json"));
    CHECK(ok.status == 0);
    CHECK(ok.out.find("\"decision\": \"feasible\"") != std::string::npos);
    CHECK(ok.out.find("ms") == std::string::npos); // result documents stay canonical

    // The timing line goes to stderr instead. The subshell keeps the helper's
    // own stderr redirect from clobbering the swap.
    RunResult timing = run("( " + cli() + " solve --algo tree -i " +
                           tmp.path("easy.json") + " 2>&1 1>/dev/null )");
    CHECK(timing.out.find("solve[tree]") != std::string::npos);
    CHECK(timing.out.find("ms") != std::string::npos);

    RunResult infeasible =
        run(cli() + " solve --algo tree -i " + tmp.path("starved.json"));
    CHECK(infeasible.status == 1);
    CHECK(infeasible.out.find("\"decision\": \"infeasible\"") != std::string::npos);

    // -o writes the same document to a file.
    RunResult to_file = run(cli() + " solve --algo tree -i " + tmp.path("easy.json") +
                            " -o " + tmp.path("res.json"));
    CHECK(to_file.status == 0);
    CHECK(read_file(tmp.path("res.json")) == ok.out);

    RunResult ordered = run(cli() + " solve --algo fixed-order --order 0 -i " +
                            tmp.path("easy.json"));
    CHECK(ordered.status == 0);

    // --algo defaults to auto, which picks the tree solver here; the emitted
    // document is identical to the explicit run. --order alone implies
    // fixed-order.
    RunResult implicit = run("( " + cli() + " solve -i " + tmp.path("easy.json") +
                             " 2>&1 1>/dev/null )");
    CHECK(implicit.status == 0);
    CHECK(implicit.out.find("solve[tree]") != std::string::npos);
    CHECK(run(cli() + " solve -i " + tmp.path("easy.json")).out == ok.out);
    RunResult implied_order =
        run("( " + cli() + " solve --order 0 -i " + tmp.path("easy.json") +
            " 2>&1 1>/dev/null )");
    CHECK(implied_order.out.find("solve[fixed-order]") != std::string::npos);
}

TEST_CASE("usage and processing errors exit with status two") {
    TempDir tmp("errors");
    CHECK(run(cli() + " solve").status == 2);                   // missing required
    CHECK(run(cli() + " frobnicate").status == 2);              // unknown subcommand
    CHECK(run(cli() + " solve --algo tree -i /nonexistent.json").status == 2);
    write_file(tmp.path("bad.json"), "{ not json");
    CHECK(run(cli() + " solve --algo tree -i " + tmp.path("bad.json")).status == 2);
    CHECK(run(cli() + " gen random-tree --variant sideways").status == 2);
}

TEST_CASE("validate accepts solver output and flags tampered schedules") {
    TempDir tmp("validate");
    write_file(tmp.path("inst.json"), line_instance("8"));
    REQUIRE(run(cli() + " solve --algo tree -i " + tmp.path("inst.json") + " -o " +
                tmp.path("res.json"))
                .status == 0);

    RunResult ok = run(cli() + " validate -i " + tmp.path("inst.json") + " -s " +
                       tmp.path("res.json"));
    CHECK(ok.status == 0);
    CHECK(ok.out.find("\"ok\": true") != std::string::npos);

    // Replaying the schedule against a starved instance breaks the budget.
    write_file(tmp.path("starved.json"), line_instance("1"));
    RunResult bad = run(cli() + " validate -i " + tmp.path("starved.json") + " -s " +
                        tmp.path("res.json"));
    CHECK(bad.status == 1);
    CHECK(bad.out.find("budget-exceeded") != std::string::npos);

    // ... unless gamma stretches the budgets enough.
    RunResult stretched = run(cli() + " validate --gamma 8 -i " +
                              tmp.path("starved.json") + " -s " + tmp.path("res.json"));
    CHECK(stretched.status == 0);

    // -r is an alias for -s: the thing checked is a result document.
    CHECK(run(cli() + " validate -i " + tmp.path("inst.json") + " -r " +
              tmp.path("res.json"))
              .status == 0);
}

TEST_CASE("generators are reproducible from the command line") {
    TempDir tmp("gen");
    std::string cmd = cli() + " gen random-tree --seed 11 --vertices 7 --agents 3";
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    RunResult c = run(cmd + "1"); // seed 111
    CHECK(c.out != a.out);

    RunResult g = run(cli() + " gen random-graph --seed 3 --vertices 6 --extra 2");
    CHECK(g.status == 0);
    CHECK(g.out.find("\"version\": \"bdp-instance/1\"") != std::string::npos);
}

TEST_CASE("gadget compilation feeds witnesses straight back into validate") {
    TempDir tmp("gadget");
    write_file(tmp.path("f.cnf"), "p cnf 2 2\n1 -2 0\n2 0\n");

    RunResult built = run(cli() + " gen gadget --cnf " + tmp.path("f.cnf") +
                          " --witness 11 --witness-out " + tmp.path("wit.json") +
                          " --roles-out " + tmp.path("roles.json") + " -o " +
                          tmp.path("inst.json"));
    REQUIRE(built.status == 0);
    CHECK(read_file(tmp.path("roles.json")).find("separating") != std::string::npos);

    RunResult ok = run(cli() + " validate -i " + tmp.path("inst.json") + " -s " +
                       tmp.path("wit.json"));
    CHECK(ok.status == 0);

    // -i names the CNF input, matching the other subcommands.
    CHECK(run(cli() + " gen gadget -i " + tmp.path("f.cnf")).status == 0);

    // An unsatisfying assignment has no witness to extract.
    RunResult unsat = run(cli() + " gen gadget --cnf " + tmp.path("f.cnf") +
                          " --witness 10 --witness-out " + tmp.path("no.json") +
                          " -o /dev/null");
    CHECK(unsat.status == 2);

    // --witness without --witness-out is a usage error.
    CHECK(run(cli() + " gen gadget --cnf " + tmp.path("f.cnf") + " --witness 11")
              .status == 2);

    // The augmented construction flows through the same pipeline.
    RunResult aug = run(cli() + " gen gadget --cnf " + tmp.path("f.cnf") +
                        " --augmented --epsilon 1 --witness 11 --witness-out " +
                        tmp.path("awit.json") + " -o " + tmp.path("aug.json"));
    REQUIRE(aug.status == 0);
    CHECK(run(cli() + " validate -i " + tmp.path("aug.json") + " -s " +
              tmp.path("awit.json"))
              .status == 0);
}

TEST_CASE("bench prints one line per instance in file-name order") {
    TempDir tmp("bench");
    std::string gen = cli() + " gen random-tree --vertices 6 --agents 2 ";
    REQUIRE(run(gen + "--seed 1 -o " + tmp.path("a1.json")).status == 0);
    REQUIRE(run(gen + "--seed 2 -o " + tmp.path("b2.json")).status == 0);
    REQUIRE(run(cli() + " gen random-graph --seed 3 --vertices 5 --extra 1 --agents 2 -o " +
                tmp.path("c3.json"))
                .status == 0);
    write_file(tmp.path("notes.txt"), "not an instance\n"); // ignored: wrong extension

    RunResult bench = run(cli() + " bench -d " + tmp.dir.string()); // -d == --suite
    REQUIRE(bench.status == 0);

    std::vector<std::string> lines;
    std::istringstream in(bench.out);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) lines.push_back(line);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].rfind("a1.json tree ", 0) == 0);
    CHECK(lines[1].rfind("b2.json tree ", 0) == 0);
    CHECK(lines[2].rfind("c3.json exact ", 0) == 0); // auto falls back off the tree path
    for (const std::string& line : lines) {
        CHECK(line.find("gamma=") != std::string::npos);
        CHECK(line.find("ms") != std::string::npos);
    }

    // Multi-threaded runs keep the same deterministic ordering.
    RunResult threaded = run(cli() + " bench --threads 3 --suite " + tmp.dir.string());
    CHECK(threaded.status == 0);
    // Timings differ between runs; compare everything up to the timing column.
    auto strip = [](const std::string& text) {
        std::string kept;
        std::istringstream lines_in(text);
        for (std::string line; std::getline(lines_in, line);)
            kept += line.substr(0, line.rfind(' ')) + "\n";
        return kept;
    };
    CHECK(strip(threaded.out) == strip(bench.out));

    CHECK(run(cli() + " bench --suite " + tmp.path("missing_dir")).status == 2);
}
