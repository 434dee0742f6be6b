#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qzeta/ranklab.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int rc = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("qzeta-cli-test-" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

/// Runs the CLI through the shell; `env` is prepended verbatim (e.g. "QZETA_CACHE=x").
Run run(const std::string& args, const std::string& env = "") {
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = "env -u QZETA_CACHE " + env + " '" QZETA_CLI_PATH "' " + args + " 2>'" + err.string() + "'";
    Run r;
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) {
        r.out.append(buf, n);
    }
    const int status = ::pclose(p);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
}

const char* const kRankTable =
    "weight\t2\t3\t4\t5\t6\t7\t8\n"
    "d_k\t1\t1\t1\t2\t2\t3\t4\n"
    "rank A_k\t1\t1\t2\t3\t6\t9\t18\n"
    "By cyclic and Ohno\t1\t1\t2\t3\t6\t9\t18\n"
    "sum d_j\t1\t2\t3\t5\t7\t10\t14\n"
    "rank A_<=k\t1\t2\t4\t7\t11\t18\t27\n"
    "sum rank A_j\t1\t2\t4\t7\t13\t22\t40\n";

}  // namespace

TEST_CASE("expand prints coefficient rows") {
    Run r = run("expand --index '(2)' --order 6");
    CHECK(r.rc == 0);
    CHECK(r.out == "1 3 4 7 6 12\n");
    CHECK(r.err.empty());

    r = run("expand --index '(5,1)' --order 13");
    CHECK(r.rc == 0);
    CHECK(r.out == "0 0 0 0 0 0 0 1 1 6 6 23 22\n");

    // default order 13; sigma(n) computed by hand
    CHECK(run("expand --index '(2)'").out == "1 3 4 7 6 12 8 15 13 18 12 28 14\n");
    CHECK(run("expand --index '(3,1)' --order 13").out == "0 0 0 1 1 6 5 15 18 31 30 70 55\n");
    // (1-q)^2 times sigma-series, through q^4: 1, 3-2, 4-6+1, 7-8+3
    CHECK(run("expand --index '(2)' --order 4 --raw").out == "1 1 -1 2\n");
    CHECK(run("expand --index '(3,1)' --order 5 --format json").out ==
          R"({"index":[3,1],"kind":"modified","trunc":5,"coeffs":["0","0","0","0","1","1"],"engine_version":"qzeta-1"})"
          "\n");
}

TEST_CASE("expand usage errors") {
    Run r = run("expand --index '(1,2)'");
    CHECK(r.rc == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("index not admissible") != std::string::npos);
    CHECK(run("expand --index '(3,x)'").rc == 2);
    CHECK(run("expand").rc == 2);
    CHECK(run("expand --index '(2)' --format xml").rc == 2);
    CHECK(run("").rc == 2);
    CHECK(run("frobnicate").rc == 2);
    CHECK(run("--help").rc == 0);
}

TEST_CASE("verify subcommands") {
    Run r = run("verify ohno --index '(3)' --l 1 --order 60");
    CHECK(r.rc == 0);
    CHECK(r.out == "ohno (3) l=1 order=60: pass (residual 0 through q^60)\n");
    r = run("verify cyclic --index '(2,1)' --order 40");
    CHECK(r.rc == 0);
    CHECK(r.out == "cyclic (2,1) order=40: pass (residual 0 through q^40)\n");
    r = run("verify ohno-zagier --weight 4 --order 25");
    CHECK(r.rc == 0);
    CHECK(r.out == "OhnoZagier weight=4 raw order=25: pass (residual 0 through q^25)\n");
    CHECK(run("verify ohno-zagier --weight 4 --order 25 --modified").out ==
          "OhnoZagier weight=4 modified order=25: pass (residual 0 through q^25)\n");
    CHECK(run("verify lemma --index '(1,2,1)' --order 30").out ==
          "lemma (1,2,1) order=30: pass (residual 0 through q^30)\n");
    CHECK(run("verify duality --index '(4,1)'").out == "duality (4,1) order=40: pass (residual 0 through q^40)\n");
    CHECK(run("verify qhyp --weight 5 --tdeg 8 --order 15").out ==
          "QHypergeometric weight=5 tdeg=8 order=15: pass (residual 0 through q^15)\n");
    CHECK(run("verify log-product --sdeg 4 --order 25").out ==
          "LogProduct sdeg=4 order=25: pass (residual 0 through q^25)\n");
    CHECK(run("verify qdiff --index '(2,1)' --tdeg 6 --order 20").out == "QDifference (2,1) tdeg=6 order=20: pass\n");

    CHECK(run("verify cyclic").rc == 2);
    CHECK(run("verify cyclic --index '(1,1)'").rc == 2);
    CHECK(run("verify ohno --index '(1,2)' --l 1").rc == 2);
    CHECK(run("verify ohno-zagier").rc == 2);
    CHECK(run("verify nonsense --index '(2)'").rc == 2);
}

TEST_CASE("a corrupted cache entry surfaces as a residual") {
    const fs::path dir = scratch() / "corrupt";
    fs::remove_all(dir);
    REQUIRE(run("--cache-dir '" + dir.string() + "' verify cyclic --index '(2,1)'").rc == 0);
    const fs::path file = dir / "weight-4.jsonl";
    std::string text = slurp(file);
    const std::string good = R"("index":[3,1],"kind":"modified","trunc":40,"coeffs":["0","0","0","0","1","1")";
    const std::size_t at = text.find(good);
    REQUIRE(at != std::string::npos);
    text.replace(at + good.size() - 2, 1, "2");
    std::ofstream(file) << text;

    const Run r = run("--cache-dir '" + dir.string() + "' verify cyclic --index '(2,1)'");
    CHECK(r.rc == 1);
    CHECK(r.out == "cyclic (2,1) order=40: FAIL at q^5 (coefficient 1)\n");
}

TEST_CASE("rank table") {
    Run r = run("table rank --max-weight 8");
    CHECK(r.rc == 0);
    CHECK(r.out == kRankTable);
    CHECK(run("table rank").out == kRankTable);
    CHECK(run("table rank --max-weight 3").out ==
          "weight\t2\t3\nd_k\t1\t1\nrank A_k\t1\t1\nBy cyclic and Ohno\t1\t1\nsum d_j\t1\t2\nrank A_<=k\t1\t2\n"
          "sum rank A_j\t1\t2\n");
    r = run("table rank --max-weight 9");
    CHECK(r.rc == 2);
    CHECK(r.err.find("--extended") != std::string::npos);
    CHECK(run("table rank --max-weight 1").rc == 2);
    CHECK(run("table rank --max-weight 11 --extended").rc == 2);
    CHECK(run("table other").rc == 2);
}

TEST_CASE("mine") {
    Run r = run("mine --weight 2");
    CHECK(r.rc == 0);
    CHECK(r.out == "kernel dimension: 0\n");

    const fs::path out = scratch() / "w3.jsonl";
    r = run("mine --weight 3 --verify-order 50 --out '" + out.string() + "'");
    CHECK(r.rc == 0);
    CHECK(r.out == "kernel dimension: 1\n3 | [((2,1), 1), ((3), -1)] | verified_to=50\n");
    CHECK(slurp(out) == R"({"terms":[{"index":[2,1],"coeff":1},{"index":[3],"coeff":-1}],"verified_to":50})"
                        "\n");

    // too few rows: spurious kernel vectors fail re-verification
    r = run("mine --weight 6 --rows 4 --verify-order 60");
    CHECK(r.rc == 3);
    CHECK(r.out.rfind("kernel dimension: 16\n", 0) == 0);
    CHECK(r.err.find("failed re-verification") != std::string::npos);

    CHECK(run("mine --weight 4 --rows 30 --verify-order 10").rc == 2);
    CHECK(run("mine --weight 1").rc == 2);
}

TEST_CASE("mixed mining writes parseable certificates") {
    const fs::path out = scratch() / "w6.jsonl";
    const Run r = run("mine --weight 6 --mixed --verify-order 100 --out '" + out.string() + "'");
    CHECK(r.rc == 0);
    CHECK(r.out.rfind("kernel dimension: 20\n", 0) == 0);
    std::ifstream in(out);
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.at("verified_to") == 100);
        CHECK(!j.at("terms").empty());
        ++count;
    }
    CHECK(count == 20);
}

TEST_CASE("cold and warm cache runs agree") {
    const fs::path dir = scratch() / "warm";
    fs::remove_all(dir);
    const std::string flag = "--cache-dir '" + dir.string() + "' ";
    const Run none = run("table rank --max-weight 6");
    const Run cold = run(flag + "table rank --max-weight 6");
    CHECK(fs::exists(dir / "weight-6.jsonl"));
    const std::string stored = slurp(dir / "weight-6.jsonl");
    const Run warm = run(flag + "table rank --max-weight 6");
    CHECK(cold.rc == 0);
    CHECK(none.out == cold.out);
    CHECK(cold.out == warm.out);
    CHECK(warm.err.empty());
    CHECK(slurp(dir / "weight-6.jsonl") == stored);

    // the environment variable names the same directory; the stored (4,2)
    // keeps the higher order the table run needed
    const Run env = run("expand --index '(4,2)' --order 13", "QZETA_CACHE='" + dir.string() + "'");
    CHECK(env.rc == 0);
    CHECK(env.out == run("expand --index '(4,2)' --order 13").out);
    CHECK(slurp(dir / "weight-6.jsonl").find(R"({"index":[4,2],"kind":"modified","trunc":20,)") != std::string::npos);

    // a stale stamp is ignored with a warning and the entry is recomputed
    const fs::path f = dir / "weight-2.jsonl";
    std::ofstream(f) << R"({"index":[2],"kind":"modified","trunc":6,"coeffs":["0","9","9","9","9","9","9"],"engine_version":"stale"})"
                     << "\n";
    const Run stale = run(flag + "expand --index '(2)' --order 6");
    CHECK(stale.out == "1 3 4 7 6 12\n");
    CHECK(stale.err.find("engine_version stale ignored") != std::string::npos);
    CHECK(slurp(f).find("\"stale\"") == std::string::npos);
}

TEST_CASE("IO failures exit 4") {
    const fs::path file = scratch() / "not-a-dir";
    std::ofstream(file) << "x";
    const Run r = run("--cache-dir '" + file.string() + "' expand --index '(2)'");
    CHECK(r.rc == 4);
    CHECK(run("mine --weight 3 --out '" + (scratch() / "missing" / "x.jsonl").string() + "'").rc == 4);
}

TEST_CASE("extended rank table") {
    const Run r = run("table rank --max-weight 10 --extended");
    CHECK(r.rc == 0);
    CHECK(r.out ==
          "weight\t2\t3\t4\t5\t6\t7\t8\t9\t10\n"
          "d_k\t1\t1\t1\t2\t2\t3\t4\t5\t7\n"
          "rank A_k\t1\t1\t2\t3\t6\t9\t18\t29\t54\n"
          "By cyclic and Ohno\t1\t1\t2\t3\t6\t9\t18\t30\t56\n"
          "sum d_j\t1\t2\t3\t5\t7\t10\t14\t19\t26\n"
          "rank A_<=k\t1\t2\t4\t7\t11\t18\t27\t42\t63\n"
          "sum rank A_j\t1\t2\t4\t7\t13\t22\t40\t69\t123\n");
}

TEST_CASE("extended weight-9 mining") {
    const fs::path out = scratch() / "w9.jsonl";
    const Run r = run("mine --weight 9 --verify-order 269 --out '" + out.string() + "'");
    CHECK(r.rc == 0);
    CHECK(r.out.rfind("kernel dimension: 99\n", 0) == 0);
    std::vector<qzeta::Relation> kernel;
    std::ifstream in(out);
    std::string line;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        qzeta::Relation rel;
        for (const auto& t : j.at("terms")) {
            rel.terms.emplace_back(qzeta::Index(t.at("index").get<std::vector<int>>()),
                                   qzeta::Integer(t.at("coeff").get<long>()));
        }
        rel.verified_to = j.at("verified_to").get<std::size_t>();
        CHECK(rel.verified_to == 269);
        kernel.push_back(rel);
    }
    REQUIRE(kernel.size() == 99);
    using qzeta::Index;
    const std::vector<std::pair<Index, qzeta::Integer>> relation = {
        {Index{7, 2}, 4},        {Index{6, 3}, 6},        {Index{5, 4}, -1},       {Index{4, 5}, -1},
        {Index{6, 2, 1}, -6},    {Index{6, 1, 2}, -6},    {Index{5, 3, 1}, -2},    {Index{5, 2, 2}, -7},
        {Index{5, 1, 3}, -3},    {Index{4, 4, 1}, 2},     {Index{4, 3, 2}, -1},    {Index{3, 5, 1}, 1},
        {Index{3, 2, 4}, 1},     {Index{2, 5, 2}, -3},    {Index{5, 2, 1, 1}, 2},  {Index{5, 1, 2, 1}, 2},
        {Index{5, 1, 1, 2}, 2},  {Index{3, 3, 1, 2}, 1},  {Index{3, 2, 3, 1}, -1}, {Index{3, 2, 2, 2}, -4},
        {Index{3, 2, 1, 3}, -1}, {Index{2, 2, 3, 2}, -2}, {Index{2, 1, 3, 3}, 1}};
    CHECK(qzeta::in_span(kernel, relation));
}
