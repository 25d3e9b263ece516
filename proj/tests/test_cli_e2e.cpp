// End-to-end checks of the installed CLI binary (path via STREAMBENCH_CLI).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli() {
    const char* path = std::getenv("STREAMBENCH_CLI");
    REQUIRE_MESSAGE(path != nullptr, "STREAMBENCH_CLI must point at the binary");
    return path;
}

int run(const std::string& args) {
    const std::string cmd = cli() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("run produces both CSVs and exits 0") {
    const int code = run(
        "run --dataset synth:hyperplane,seed=1,n=1000 --classifier nb --reps 2 "
        "--timeline-out /tmp/sb_t1.csv --summary-out /tmp/sb_s1.csv");
    CHECK(code == 0);
    const std::string timeline = slurp("/tmp/sb_t1.csv");
    const std::string summary = slurp("/tmp/sb_s1.csv");
    CHECK(timeline.rfind("classifier,dataset,seed,elements,macro_f1,memory_bytes\n", 0) == 0);
    CHECK(summary.rfind("classifier,dataset,reps,", 0) == 0);
    CHECK(timeline.find("\nnb,") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical timelines") {
    const std::string base =
        "run --dataset synth:randomtree,seed=9,n=2000 --classifier mf "
        "--params trees=3,mem_kb=100 --reps 2 --seed 11 ";
    CHECK(run(base + "--timeline-out /tmp/sb_t2a.csv --summary-out /tmp/sb_s2a.csv") == 0);
    CHECK(run(base + "--timeline-out /tmp/sb_t2b.csv --summary-out /tmp/sb_s2b.csv") == 0);
    CHECK(slurp("/tmp/sb_t2a.csv") == slurp("/tmp/sb_t2b.csv"));
    CHECK(!slurp("/tmp/sb_t2a.csv").empty());
}

TEST_CASE("unknown classifier or dataset ids exit with code 2") {
    CHECK(run("run --dataset synth:hyperplane,n=100 --classifier nosuch") == 2);
    CHECK(run("run --dataset synth:nosuch,n=100 --classifier nb") == 2);
    CHECK(run("run --dataset /tmp/sb_missing_file.csv --classifier nb") == 2);
}

TEST_CASE("malformed CSV rows exit with the data-error code and name the line") {
    std::ofstream out("/tmp/sb_bad.csv");
    out << "f0,label\n0.5,0\nnot_a_number,1\n";
    out.close();
    const std::string cmd = cli() +
        std::string(" run --dataset /tmp/sb_bad.csv --classifier nb 2>/tmp/sb_bad_err.txt >/dev/null");
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 1);
    const std::string err = slurp("/tmp/sb_bad_err.txt");
    CHECK(err.find(":3:") != std::string::npos);
}

TEST_CASE("gen materializes a dataset that run can consume") {
    CHECK(run("gen --dataset synth:randomrbf,seed=4,n=600 --out /tmp/sb_gen.csv") == 0);
    const std::string content = slurp("/tmp/sb_gen.csv");
    CHECK(content.rfind("f0,f1,f2,label\n", 0) == 0);
    CHECK(run("run --dataset /tmp/sb_gen.csv --classifier nb "
              "--timeline-out /tmp/sb_t3.csv --summary-out /tmp/sb_s3.csv") == 0);
}

TEST_CASE("tune emits a grid CSV and reports the best point") {
    const int code = run(
        "tune --dataset synth:hyperplane,seed=2,n=800 --classifier mf "
        "--params trees=2,mem_kb=50 --grid budget=0.5:2 --grid-out /tmp/sb_grid.csv");
    CHECK(code == 0);
    const std::string grid = slurp("/tmp/sb_grid.csv");
    CHECK(grid.rfind("classifier,dataset,params,final_macro_f1\n", 0) == 0);
    std::istringstream in(grid);
    std::string line;
    int rows = 0;
    std::getline(in, line);  // header
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("drift flag shifts the second half of the stream") {
    CHECK(run("run --dataset synth:hyperplane,seed=1,n=1000 --classifier nb "
              "--drift position=mid,shift=1 --timeline-out /tmp/sb_t4.csv "
              "--summary-out /tmp/sb_s4.csv") == 0);
    // a no-op drift is a usage error
    CHECK(run("run --dataset synth:hyperplane,seed=1,n=1000 --classifier nb "
              "--drift position=mid,shift=2") == 2);
}
