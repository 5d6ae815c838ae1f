#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct RunResult {
    int code;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

RunResult run(const std::string& args, const std::string& env = "") {
    std::string out_path = "/tmp/mm_cli_test_out.txt";
    std::string cmd = env + (env.empty() ? "" : " ") + MM_CLI_PATH + " " + args +
                      " >" + out_path + " 2>/tmp/mm_cli_test_err.txt";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out_path)};
}

std::string strip_wall_ms(const std::string& text) {
    std::istringstream is(text);
    std::ostringstream os;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find("wall_ms") != std::string::npos) continue;
        os << line << "\n";
    }
    return os.str();
}

} // namespace

TEST_CASE("eval returns the measure as json") {
    auto r = run("eval x-2");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["command"] == "eval");
    CHECK(j["input"] == "x-2");
    CHECK(std::abs(j["value"].get<double>() - std::log(2.0)) < 1e-10);
    CHECK(j.contains("seed"));
    CHECK(j.contains("wall_ms"));
}

TEST_CASE("parse failures exit with 2") {
    CHECK(run("eval 1+*x").code == 2);
    CHECK(run("supnorm '1+('").code == 2);
    std::string err = slurp("/tmp/mm_cli_test_err.txt");
    CHECK(err.find("parse error at position") != std::string::npos);
}

TEST_CASE("verify single identities") {
    auto r = run("verify --id rel_eq22");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["pass"] == true);

    CHECK(run("verify --id nope").code == 2);
    CHECK(run("verify").code == 2);
    CHECK(run("verify --id rel_eq22 --method bogus").code == 2);
}

TEST_CASE("gmm closed vs order statistic") {
    auto r = run("gmm --family golden --n 1 --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(std::abs(j["value"].get<double>() - 0.4812118250596035) < 1e-8);
    CHECK(j["pass"] == true);
    CHECK(run("gmm --family nope").code == 2);
}

TEST_CASE("limit table in csv") {
    auto r = run("limit --family 1mx --max-n 5 --format csv");
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line ==
          "command,input,value,error,closed_form,pass,seed,samples,wall_ms");
    int rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        CHECK(line.rfind("limit,", 0) == 0);
        CHECK(line.find("true") != std::string::npos);
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("relations subcommand passes") {
    auto r = run("relations --format plain");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("supnorm reports the argmax") {
    auto r = run("supnorm 1-x --format plain");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("argmax theta") != std::string::npos);
    CHECK(r.out.find("value = 2") != std::string::npos);
}

TEST_CASE("list knows the registry") {
    auto r = run("list --format plain");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("smyth_xyz") != std::string::npos);
    CHECK(r.out.find("gmm_golden_2") != std::string::npos);
    auto js = run("list");
    json arr = json::parse(js.out);
    CHECK(arr.is_array());
    CHECK(arr.size() >= 10);
}

TEST_CASE("fixed seed gives byte-identical output") {
    auto a = run("eval 1+x+y --method direct --seed 5 --samples 100000 "
                 "--output /tmp/mm_cli_a.json");
    auto b = run("eval 1+x+y --method direct --seed 5 --samples 100000 "
                 "--output /tmp/mm_cli_b.json");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(strip_wall_ms(slurp("/tmp/mm_cli_a.json")) ==
          strip_wall_ms(slurp("/tmp/mm_cli_b.json")));

    auto c = run("eval 1+x+y --method direct --seed 6 --samples 100000 "
                 "--output /tmp/mm_cli_c.json");
    REQUIRE(c.code == 0);
    CHECK(strip_wall_ms(slurp("/tmp/mm_cli_a.json")) !=
          strip_wall_ms(slurp("/tmp/mm_cli_c.json")));
}

TEST_CASE("MM_SEED provides the default seed") {
    auto r = run("eval 1+x+y --method direct --samples 50000", "MM_SEED=7");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["seed"] == 7);
    // explicit --seed wins
    auto s = run("eval 1+x+y --method direct --samples 50000 --seed 3",
                 "MM_SEED=7");
    json k = json::parse(s.out);
    CHECK(k["seed"] == 3);
}
