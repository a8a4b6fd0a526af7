#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "primearcs/cli.hpp"
#include "primearcs/json_io.hpp"

using namespace primearcs;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "primearcs");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = primearcs::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Runs the installed binary with an environment prefix and captures stdout.
std::string shell(const std::string& env, const std::string& args) {
    std::string cmd = env + " " + PRIMEARCS_CLI_PATH + " " + args;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    CHECK(pclose(pipe) == 0);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / ("primearcs_cli_" + name); }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("seq build then coverage") {
    for (const char* c : {"1/2", "1/4"}) {
        auto path = tmp(std::string("greedy_") + (c[2] == '2' ? "2" : "4") + ".json");
        auto b = invoke({"seq", "build", "--method", "greedy", "--bound", "100", "--c", c, "--out", path.string()});
        REQUIRE(b.code == 0);
        CHECK(b.out.empty());
        auto seq = load_sequence(path);
        CHECK(seq == greedy_sequence(100, Rational::parse(c)));

        auto r = invoke({"coverage", "--seq", path.string(), "--x", "1", "--y", "100"});
        REQUIRE(r.code == 0);
        auto j = json::parse(r.out);
        CHECK(j["uncovered"] == uncovered_measure(seq, 1, 100).str());
        CHECK(j["uncovered"].get<std::string>().find('/') != std::string::npos);
        fs::remove(path);
    }
}

TEST_CASE("sievelab --exact equals the enumeration average") {
    Rational total = 0;
    for (std::uint64_t a3 = 0; a3 < 3; ++a3)
        for (std::uint64_t a5 = 0; a5 < 5; ++a5)
            for (std::uint64_t a7 = 0; a7 < 7; ++a7) {
                std::vector<Arc> arcs{arc_of(3, a3, Rational(1, 2)), arc_of(5, a5, Rational(1, 2)),
                                      arc_of(7, a7, Rational(1, 2))};
                total += uncovered_measure(arcs);
            }
    total = total / Rational(105);
    CHECK(total == Rational(16, 35));
    auto r = invoke({"sievelab", "--x", "2", "--y", "7", "--c", "1/2", "--exact"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["expectation_exact"] == total.str());
    auto csv = invoke({"sievelab", "--x", "2", "--y", "7", "--c", "1/2", "--exact", "--format", "csv"});
    CHECK(csv.out == "quantity,value\nexpectation_exact,16/35\n");
}

TEST_CASE("errors are one line, nonzero, and write nothing") {
    auto out = tmp("never.json");
    fs::remove(out);
    auto bad = invoke({"seq", "build", "--method", "greedy", "--bound", "50", "--c", "3/4", "--out", out.string()});
    CHECK(bad.code != 0);
    CHECK(bad.err == "error: c must be in (0,1/2]\n");
    CHECK(bad.out.empty());
    CHECK_FALSE(fs::exists(out));

    auto missing = invoke({"coverage", "--seq", tmp("absent.json").string(), "--x", "1", "--y", "10"});
    CHECK(missing.code != 0);
    CHECK(missing.err == "error: sequence file not found\n");

    auto budget = invoke({"seq", "build", "--method", "blocks", "--epsilons", "1/1000000", "--c", "1/100", "--bound",
                       "100", "--out", out.string()});
    CHECK(budget.code != 0);
    CHECK(budget.err == "error: budget exhausted at block 1\n");
    CHECK_FALSE(fs::exists(out));

    auto junk = invoke({"sievelab", "--x", "2", "--y", "7", "--c", "abc", "--exact"});
    CHECK(junk.code != 0);
    CHECK(junk.err == "error: c must be in (0,1/2]\n");

    auto parse = invoke({"primes"});
    CHECK(parse.code != 0);
    CHECK(parse.err.rfind("error: ", 0) == 0);
    CHECK(parse.err.find('\n') == parse.err.size() - 1);
}

TEST_CASE("blocks through the CLI carry their schedule") {
    auto path = tmp("blocks.json");
    auto r = invoke({"seq", "build", "--method", "blocks", "--epsilons", "1/2,1/2,1/2", "--c", "1/2", "--bound",
                  "100000", "--out", path.string()});
    REQUIRE(r.code == 0);
    auto j = json::parse(slurp(path));
    REQUIRE(j["blocks"].size() == 3);
    auto seq = load_sequence(path);
    for (const auto& b : j["blocks"]) {
        Rational got = uncovered_measure(seq, b["start"].get<std::uint64_t>(), b["end"].get<std::uint64_t>());
        CHECK(b["achieved_uncovered"] == got.str());
        CHECK(got <= Rational(1, 2));
    }
    fs::remove(path);
}

TEST_CASE("RunConfig runs match the parsed command line") {
    primearcs::cli::RunConfig cfg;
    cfg.subcommand = primearcs::cli::Subcommand::fracparts;
    cfg.c = "1/4";
    cfg.x_named = "golden";
    cfg.eta = "1e-12";
    cfg.bound = 5000;
    std::ostringstream out, err;
    CHECK(primearcs::cli::run(cfg, out, err) == 0);
    auto r = invoke({"fracparts", "--x-named", "golden", "--eta", "1e-12", "--c", "1/4", "--bound", "5000"});
    CHECK(out.str() == r.out);
    CHECK(err.str().empty());
}

TEST_CASE("CSV outputs start with a header row") {
    auto seq = tmp("csv_seq.json");
    REQUIRE(invoke({"seq", "build", "--method", "random", "--bound", "500", "--c", "1/4", "--seed", "3", "--out",
                 seq.string()})
                .code == 0);
    const std::string s = seq.string();
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
        {{"primes", "--bound", "100", "--format", "csv"}, "bound,pi"},
        {{"primes", "--bound", "100", "--list", "--format", "csv"}, "p"},
        {{"coverage", "--seq", s, "--x", "1", "--y", "500", "--format", "csv"}, "x,y,covered,uncovered"},
        {{"sievelab", "--seq", s, "--x", "1", "--y", "100", "--format", "csv"}, "quantity,value"},
        {{"hits", "--seq", s, "--x", "1/3", "--bound", "500", "--format", "csv"}, "p,distance_num,distance_den,hit,ambiguous"},
        {{"fracparts", "--x", "2/7", "--c", "1/4", "--bound", "500", "--format", "csv"},
         "p,distance_num,distance_den,hit,ambiguous"},
        {{"ergodic", "--seq", s, "--x", "0.3", "--y", "0.7123", "--primes-up-to", "500"}, "p,a_p,d,abs_s,is_hit,method"},
        {{"ergodic", "--seq", s, "--x", "0.3", "--y", "0.7123", "--primes-up-to", "500", "--sparse", "geometric"},
         "p,a_p,d,abs_s,is_hit,method"},
    };
    for (const auto& [args, header] : cases) {
        auto r = invoke(args);
        INFO(args[0]);
        REQUIRE(r.code == 0);
        CHECK(first_line(r.out) == header);
    }
    auto hits = invoke({"hits", "--seq", s, "--x", "1/3", "--bound", "500", "--format", "csv"});
    CHECK(std::count(hits.out.begin(), hits.out.end(), '\n') == 1 + 95);
    auto sparse = invoke({"ergodic", "--seq", s, "--x", "0.3", "--y", "0.7", "--primes-up-to", "500", "--sparse", "psi:log"});
    CHECK(sparse.code == 0);
    auto bad = invoke({"ergodic", "--seq", s, "--x", "0.3", "--y", "0.7", "--primes-up-to", "500", "--sparse", "psi:cube"});
    CHECK(bad.code != 0);
    fs::remove(seq);
}

TEST_CASE("sievelab JSON shapes") {
    auto seq = tmp("shape_seq.json");
    REQUIRE(invoke({"seq", "build", "--method", "random", "--bound", "200", "--c", "1/2", "--out", seq.string()}).code == 0);
    auto r = invoke({"sievelab", "--seq", seq.string(), "--x", "1", "--y", "200", "--mc", "20", "--seed", "4"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    const auto& mc = j["monte_carlo"];
    CHECK(mc["trials"] == 20);
    CHECK(mc["seed"] == 4);
    CHECK(mc.contains("mean"));
    CHECK(mc.contains("stderr"));
    CHECK(j["report"]["alpha"].is_string());
    auto empty = invoke({"sievelab", "--seq", seq.string(), "--x", "200", "--y", "210"});
    REQUIRE(empty.code == 0);
    CHECK(json::parse(empty.out)["report"]["markov_bound"] == "inf");
    fs::remove(seq);
}

TEST_CASE("byte-identical output across reruns and thread counts") {
    const std::vector<std::string> runs{
        "seq build --method random --bound 20000 --c 1/3 --seed 99",
        "sievelab --x 2 --y 400 --c 1/4 --mc 300 --seed 17",
        "sievelab --x 2 --y 400 --c 1/4 --mc 300 --seed 17 --format csv",
        "fracparts --x-named sqrt2 --c 1/4 --bound 20000 --rows",
    };
    for (const auto& args : runs) {
        std::string one = shell("PRIMEARCS_THREADS=1", args);
        std::string four = shell("PRIMEARCS_THREADS=4", args);
        std::string again = shell("PRIMEARCS_THREADS=4", args);
        CHECK(!one.empty());
        CHECK(one == four);
        CHECK(four == again);
    }
}
