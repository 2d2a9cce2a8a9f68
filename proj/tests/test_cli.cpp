#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "cera/cli.hpp"

using namespace cera;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run(std::initializer_list<const char*> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::vector<const char*> argv = {"cera_lab"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("code table matches the golden listing byte for byte") {
    std::ostringstream out;
    cmd_code_table(out, 2, 8, 2);
    CHECK(out.str() == read_file(std::string(CERA_TEST_DATA_DIR) + "/golden/code_table_2_8_2.txt"));
}

TEST_CASE("code table sizes and degenerate shapes") {
    std::ostringstream one_block;
    cmd_code_table(one_block, 2, 8, 1);
    const std::string listing = one_block.str();
    CHECK(std::count(listing.begin(), listing.end(), '\n') == 9);  // header + 8 rows

    std::ostringstream identity;
    cmd_code_table(identity, 1, 4, 1);
    CHECK(identity.str() == "t\tdigits\tcodeword\n0\t0\t0\n1\t1\t1\n2\t2\t2\n3\t3\t3\n");
}

TEST_CASE("decode demo narratives") {
    std::string out;
    CHECK(run({"decode-demo", "--scheme", "optcera", "--n", "2", "--q", "8", "--k", "2",
               "--transmitted", "1,9,4"},
              &out) == 0);
    CHECK(out.find("Y_1 = {1 4}") != std::string::npos);
    CHECK(out.find("Y_2 = {1 2 4}") != std::string::npos);
    CHECK(out.find("valid (3)") != std::string::npos);
    CHECK(out.find("inferred/transmitted = 3/3") != std::string::npos);

    CHECK(run({"decode-demo", "--scheme", "multipreamble", "--n", "2", "--q", "8", "--a", "4",
               "--transmitted", "1,6,8"},
              &out) == 0);
    CHECK(out.find("valid (9)") != std::string::npos);

    CHECK(run({"decode-demo", "--scheme", "optcera", "--transmitted", "5"}, &out) == 0);
    CHECK(out.find("valid (1)") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage and runtime failures") {
    std::string err;
    CHECK(run({"no-such-command"}, nullptr, &err) == 2);
    CHECK(run({"code-table", "--k", "0"}, nullptr, &err) == 2);
    CHECK(err.find("usage error") != std::string::npos);
    CHECK(run({"decode-demo", "--scheme", "optcera", "--transmitted", "99"}, nullptr, &err) == 2);
    CHECK(run({"sweep", "--mode", "analytical", "--out", "/nonexistent-dir/x.csv"}, nullptr,
              &err) == 1);
    CHECK(run({"--help"}) == 0);
}

TEST_CASE("analytical sweep runs fast and fills no simulation columns") {
    const auto start = std::chrono::steady_clock::now();
    std::string out;
    CHECK(run({"sweep", "--mode", "analytical"}, &out) == 0);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(elapsed < 1.0);

    std::istringstream in(out);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.find("simulated") == std::string::npos);
        CHECK(line.substr(line.size() - 4) == ",,,,");  // iterations/seed/CI cells empty
    }
    CHECK(rows == (8 + 16) * 4);
}

TEST_CASE("sweep writes identical bytes for identical seeds") {
    const std::string path_a = "sweep_test_a.csv";
    const std::string path_b = "sweep_test_b.csv";
    for (const std::string& path : {path_a, path_b})
        CHECK(run({"sweep", "--q", "8", "--k-range", "1..2", "--a-range", "2..3", "--K", "2,4",
                   "--R", "5", "--iters", "500", "--seed", "7", "--out", path.c_str()}) == 0);
    CHECK(read_file(path_a) == read_file(path_b));
    CHECK(read_file(path_a).find("\r") == std::string::npos);  // LF endings
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
}

TEST_CASE("gnuplot companion groups rows by device load") {
    const std::string csv = "sweep_test_c.csv";
    const std::string gp = "sweep_test_c.dat";
    CHECK(run({"sweep", "--q", "8", "--k-range", "1..1", "--a-range", "2..2", "--K", "2,4",
               "--mode", "analytical", "--out", csv.c_str(), "--gnuplot", gp.c_str()}) == 0);
    const std::string text = read_file(gp);
    CHECK(text.find("# K=2") != std::string::npos);
    CHECK(text.find("# K=4") != std::string::npos);
    CHECK(text.find("\n\n\n") != std::string::npos);  // block separator
    std::remove(csv.c_str());
    std::remove(gp.c_str());
}

TEST_CASE("numeric csv cells are finite") {
    std::string out;
    CHECK(run({"sweep", "--q", "8", "--k-range", "1..2", "--a-range", "2..4", "--K", "1,7",
               "--R", "4", "--iters", "300", "--seed", "3"},
              &out) == 0);
    std::istringstream in(out);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string cell;
        int column = 0;
        while (std::getline(cells, cell, ',')) {
            ++column;
            if (column >= 8 && !cell.empty())  // metric columns
                CHECK(std::isfinite(std::stod(cell)));
        }
    }
}

TEST_CASE("thread cap from the environment keeps results identical") {
    const std::initializer_list<const char*> args = {
        "sweep", "--q",  "8",   "--k-range", "1..1", "--a-range", "2..2",
        "--K",   "5",    "--R", "4",         "--iters", "2000",  "--seed", "11"};
    std::string capped, unlimited;
    setenv("CERA_LAB_THREADS", "1", 1);
    CHECK(run(args, &capped) == 0);
    unsetenv("CERA_LAB_THREADS");
    CHECK(run(args, &unlimited) == 0);
    CHECK(capped == unlimited);
}

TEST_CASE("config file supplies defaults and flags win") {
    const std::string path = "sweep_test.ini";
    {
        std::ofstream cfg(path);
        cfg << "[sweep]\nq=16\nmode=analytical\nK=3\nk-range=1..1\na-range=2..2\n";
    }
    std::string out;
    CHECK(run({"--config", path.c_str(), "sweep"}, &out) == 0);
    CHECK(out.find("optcera,2,16,16,3") != std::string::npos);

    CHECK(run({"--config", path.c_str(), "sweep", "--q", "8"}, &out) == 0);
    CHECK(out.find("optcera,2,8,8,3") != std::string::npos);
    std::remove(path.c_str());
}
