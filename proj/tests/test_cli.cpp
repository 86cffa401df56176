#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace {

const std::string kBench = HMW_BENCH_PATH;

int run(const std::string& args) {
    const int st = std::system((kBench + " " + args + " 2>/dev/null").c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string result(const std::string& csv, const std::string& key) {
    const std::string tag = "# result " + key + " = ";
    const auto at = csv.find(tag);
    if (at == std::string::npos) return "";
    const auto end = csv.find('\n', at);
    return csv.substr(at + tag.size(), end - at - tag.size());
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run("expsum --mode ramanujan --c-max 50 --out cli_ok.csv") == 0);
    CHECK(run("mollifier --M 0 --out cli_bad.csv") == 2);
    CHECK(run("moments --delta 4") == 2);
    CHECK(run("nonsense") == 2);
    CHECK(run("bessel --T 500 --Pi 1 --x 1000 --y 1 --oracle --out cli_budget.csv") == 3);
    std::remove("cli_ok.csv");
    std::remove("cli_ok.csv.meta.json");
}

TEST_CASE("Luo sweep through the CLI") {
    REQUIRE(run("expsum --luo --c-max 300 --out cli_luo.csv") == 0);
    const auto csv = slurp("cli_luo.csv");
    CHECK(std::stod(result(csv, "max_defect")) <= 1e-7);
    std::remove("cli_luo.csv");
    std::remove("cli_luo.csv.meta.json");
}

TEST_CASE("mollifier report") {
    REQUIRE(run("mollifier --M 10000 --T 1e6 --delta 0 --out cli_mol.csv") == 0);
    const auto csv = slurp("cli_mol.csv");
    CHECK(result(csv, "M20_Xi_equals_1") == "true");
    CHECK(result(csv, "x1_equals_1") == "true");
    CHECK(csv.find("# config tool") == std::string::npos);
    CHECK(slurp("cli_mol.csv.meta.json").find("wall_clock_seconds") != std::string::npos);
    std::remove("cli_mol.csv");
    std::remove("cli_mol.csv.meta.json");
}

TEST_CASE("byte-identical output across thread counts") {
    const char* cmds[] = {"expsum --mode weil --c-max 200 --mn-max 10", "mollifier --M 2000 --T 1e6 --delta 1",
                          "moments --kind diagonal --T 2000", "expsum --mode random --samples 200 --seed 7"};
    for (const char* c : cmds) {
        REQUIRE(run(std::string(c) + " --threads 1 --out cli_t1.csv") == 0);
        REQUIRE(run(std::string(c) + " --threads 8 --out cli_t8.csv") == 0);
        CHECK(slurp("cli_t1.csv") == slurp("cli_t8.csv"));
    }
    for (const char* f : {"cli_t1.csv", "cli_t8.csv", "cli_t1.csv.meta.json", "cli_t8.csv.meta.json"}) std::remove(f);
}

TEST_CASE("config file with command-line override") {
    {
        std::ofstream cfg("cli_test.cfg");
        cfg << "# test config\nM = 30\nT = 1e6\ndelta = 1\nformat = json\n";
    }
    REQUIRE(run("mollifier --config cli_test.cfg --out cli_cfg.json") == 0);
    const auto js = slurp("cli_cfg.json");
    CHECK(js.find("\"M\": \"30\"") != std::string::npos);
    REQUIRE(run("mollifier --config cli_test.cfg --M 40 --format csv --out cli_cfg.csv") == 0);
    CHECK(slurp("cli_cfg.csv").find("# config M = 40") != std::string::npos);
    {
        std::ofstream cfg("cli_bad.cfg");
        cfg << "this line has no equals sign\n";
    }
    CHECK(run("mollifier --config cli_bad.cfg") == 2);
    for (const char* f : {"cli_test.cfg", "cli_bad.cfg", "cli_cfg.json", "cli_cfg.csv", "cli_cfg.json.meta.json",
                          "cli_cfg.csv.meta.json"})
        std::remove(f);
}

TEST_CASE("dataset errors surface as exit 2") {
    {
        std::ofstream d("cli_data.txt");
        d << "9.5 0 2:3.0\n";
    }
    CHECK(run("density --dataset cli_data.txt --T 1000") == 2);
    {
        std::ofstream d("cli_data.txt");
        d << "# empty\n";
    }
    CHECK(run("density --dataset cli_data.txt --T 1000 --out cli_d.csv") == 0);
    for (const char* f : {"cli_data.txt", "cli_d.csv", "cli_d.csv.meta.json"}) std::remove(f);
}
