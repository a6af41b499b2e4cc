// Drives the built CLI binary (path in $PILLAI_CLI) and checks the exit-code
// contract: 0 success, 1 I/O or parse, 2 hypothesis failure, 64 usage.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <string>

namespace {

std::string cli() {
    const char* p = std::getenv("PILLAI_CLI");
    REQUIRE(p != nullptr);
    return p;
}

std::string data(const char* name) { return std::string(PILLAI_TEST_DATA) + "/" + name; }

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = cli() + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int st = pclose(pipe);
    int code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return {code, out};
}

}  // namespace

TEST_CASE("analyze: success and report shape") {
    auto r = run("analyze " + data("fib.json"));
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["label"] == "fibonacci");
    CHECK(j["thresholds"]["N0"] == 2);
}

TEST_CASE("analyze: hypothesis failure exits 2") {
    auto r = run("analyze " + data("alternating.json"));
    CHECK(r.exit_code == 2);
}

TEST_CASE("analyze: missing file exits 1") {
    auto r = run("analyze /no/such/file.json");
    CHECK(r.exit_code == 1);
}

TEST_CASE("independence subcommand") {
    CHECK(run("independence " + data("fib.json") + " " + data("trib.json")).exit_code == 0);
    auto r = run("independence " + data("pow2.json") + " " + data("pow4.json"));
    CHECK(r.exit_code == 2);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "fail");
}

TEST_CASE("bound subcommand") {
    auto r = run("bound " + data("fib.json") + " " + data("trib.json"));
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["final"]["bound"].get<std::string>().size() > 10);
    CHECK(run("bound " + data("pow2.json") + " " + data("pow4.json")).exit_code == 2);
    CHECK(run("bound " + data("fib.json") + " " + data("fib.json")).exit_code == 2);
}

TEST_CASE("search subcommand with ranges and formats") {
    auto r = run("search " + data("fib.json") + " " + data("trib.json") + " --n 2:60 --m 2:50");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["multi_represented"].size() >= 10);
    auto csv = run("--format csv search " + data("fib.json") + " " + data("trib.json") +
                   " --n 2:10 --m 2:10");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("c,n,m\n", 0) == 0);
    // empty range is a usage error
    CHECK(run("search " + data("fib.json") + " " + data("trib.json") + " --n 2:1 --m 2:10")
              .exit_code == 64);
    // unknown flags are usage errors
    CHECK(run("search " + data("fib.json") + " " + data("trib.json") + " --bogus 1").exit_code ==
          64);
    CHECK(run("frobnicate").exit_code == 64);
}

TEST_CASE("verify subcommand") {
    auto good = run("verify " + data("fib.json") + " " + data("trib.json") +
                    " --n 2:200 --m 2:150 --expected " + data("expected_C.txt"));
    CHECK(good.exit_code == 0);
    auto j = nlohmann::json::parse(good.out);
    CHECK(j["pass"] == true);
    // wrong expectations: nonzero exit
    auto bad = run("verify " + data("fib.json") + " " + data("trib.json") +
                   " --n 2:20 --m 2:20 --expected " + data("expected_C.txt"));
    CHECK(bad.exit_code != 0);
    CHECK(run("verify " + data("fib.json") + " " + data("trib.json") +
              " --n 2:20 --m 2:20 --expected /no/file.txt")
              .exit_code == 1);
}

TEST_CASE("deterministic output across runs and threads") {
    std::string base = "search " + data("fib.json") + " " + data("trib.json") + " --n 2:80 --m 2:70";
    auto a = run(base);
    auto b = run(base);
    auto c = run("--threads 4 " + base);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
}
