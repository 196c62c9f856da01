#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "unitsum/report.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const char* bin = std::getenv("UNITSUM_CLI");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("rewrite") {
    const Run r = run("rewrite --word 0");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "output (empty)"));
    const Run t = run("rewrite --word 3,-3,2,1 --trace");
    CHECK(t.code == 0);
    CHECK(contains(t.out, "value preserved: yes"));
}

TEST_CASE("expand") {
    const Run r = run("expand --field q-sqrt-1-zeta4 --alpha 1,-1,0,0");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "e^-1"));
    CHECK(contains(r.out, "identity=ok distinct=ok coefficients=ok"));
}

TEST_CASE("verify tables") {
    const Run r = run("verify-tables --table 2");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "4/4 rows match"));
}

TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("bogus").code == 2);
    CHECK(run("analyze").code == 2);
    CHECK(run("analyze --field nope").code == 2);
    CHECK(run("verify-tables --table 4").code == 2);
    CHECK(run("expand --field q-sqrt-1-zeta4 --alpha 1,2").code == 2);
    CHECK(run("analyze --field q-sqrt-1-zeta4 --precision 8").code == 2);
}

TEST_CASE("json report round trip") {
    const Run r = run("analyze --field q-sqrt-2-zeta3 --json -");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["data"]["C"] == 6);
    CHECK(doc["data"]["dug"] == true);
    CHECK(unitsum::dump_canonical(doc) == r.out);
}

TEST_CASE("covering") {
    const Run r = run("covering --field q-sqrt-17-16zeta3 --w 1 --exact");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "-> fail"));
    CHECK(contains(r.out, "not_covered"));
    const Run c = run("catalog");
    CHECK(c.code == 0);
    CHECK(contains(c.out, "X4-X+1"));
}
