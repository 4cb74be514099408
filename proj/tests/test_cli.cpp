#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "geraf/distance.hpp"
#include "geraf/io.hpp"

using namespace geraf;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "geraf_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliRun run_cli(const std::string& args) {
    const fs::path out_file = work_dir() / "stdout.txt";
    const std::string cmd = std::string(GERAF_CLI_PATH) + " " + args + " > " +
                            out_file.string() + " 2> " + (work_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    CliRun run;
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream buf;
    buf << in.rdbuf();
    run.out = buf.str();
    return run;
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

} // namespace

TEST_CASE("cli end-to-end: gen, build, query, bench") {
    CHECK(run_cli("gen sphere --n 400 --d 32 --seed 7 --out " + path_of("s.fvecs")).exit_code ==
          0);
    CHECK(run_cli("gen sphere --n 20 --d 32 --seed 8 --out " + path_of("q.fvecs")).exit_code ==
          0);

    const CliRun build = run_cli("build --data " + path_of("s.fvecs") + " --auto --seed 7 " +
                                 "--index-out " + path_of("s.gerf"));
    CHECK(build.exit_code == 0);
    CHECK(build.out.find("m=") != std::string::npos); // prints the chosen parameters

    SUBCASE("query output distances recompute") {
        const CliRun query = run_cli("query --index " + path_of("s.gerf") + " --data " +
                                     path_of("s.fvecs") + " --query-file " + path_of("q.fvecs") +
                                     " -k 3 -c 400");
        REQUIRE(query.exit_code == 0);
        const Dataset data = load_fvecs(path_of("s.fvecs"));
        const Dataset queries = load_fvecs(path_of("q.fvecs"));

        std::istringstream lines(query.out);
        std::string line;
        std::getline(lines, line);
        CHECK(line == "query,rank,index,sq_dist");
        int rows = 0;
        while (std::getline(lines, line)) {
            std::uint32_t qi, rank, idx;
            double sq;
            REQUIRE(std::sscanf(line.c_str(), "%u,%u,%u,%lf", &qi, &rank, &idx, &sq) == 4);
            const double recomputed = squared_distance(queries.point(qi), data.point(idx));
            CHECK(std::abs(sq - recomputed) <= 1e-4 * std::max(1.0, recomputed));
            ++rows;
        }
        CHECK(rows == 20 * 3);
    }

    SUBCASE("bench on self-queries in exact mode reports zero misses") {
        const CliRun bench =
            run_cli("bench --data " + path_of("s.fvecs") + " --queries " + path_of("s.fvecs") +
                    " --epsilon-list 0 --no-auto -m 4 -t 8 -p 16 -c 400 --seed 7");
        REQUIRE(bench.exit_code == 0);
        std::istringstream lines(bench.out);
        std::string header, row;
        std::getline(lines, header);
        CHECK(header.rfind("dataset,", 0) == 0);
        REQUIRE(std::getline(lines, row));
        CHECK(row.find(",0.0000,0.0000,") != std::string::npos); // miss and approx-miss
    }

    SUBCASE("config file overrides after auto") {
        {
            std::ofstream cfg(path_of("cfg.json"));
            cfg << R"({"m": 2, "p": 4})";
        }
        const CliRun build2 =
            run_cli("build --data " + path_of("s.fvecs") + " --auto --config " +
                    path_of("cfg.json") + " --seed 7 --index-out " + path_of("s2.gerf"));
        REQUIRE(build2.exit_code == 0);
        CHECK(build2.out.find("m=2 ") != std::string::npos);
        CHECK(build2.out.find(" p=4 ") != std::string::npos);
    }
}

TEST_CASE("cli error paths use the documented exit codes") {
    CHECK(run_cli("frobnicate").exit_code == 1);                       // unknown subcommand
    CHECK(run_cli("build --bogus x").exit_code == 1);                  // unknown flag
    CHECK(run_cli("build --index-out x.gerf").exit_code == 1);         // missing --data
    CHECK(run_cli("query --index nope.gerf --data nope.fvecs --query-file nope.fvecs")
              .exit_code == 2);                                        // missing files

    {
        std::ofstream bad(path_of("bad.fvecs"), std::ios::binary);
        bad.write("\x02\x00\x00\x00\x00", 5); // truncated record
    }
    CHECK(run_cli("build --data " + path_of("bad.fvecs") + " --auto --index-out " +
                  path_of("x.gerf"))
              .exit_code == 2);
}
