#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
namespace cst = casimir::constants;

namespace {

const fs::path work = fs::path(TEST_WORK_DIR) / "cli";

std::string material_block() {
    return "[material]\nomega_p = 9 eV\nrelaxation = perfect\ngamma0 = 5.3e10\nT0 = 4\nv_tr = 0.01 c\nv_l = 0.01 c\n";
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::create_directories(work);
    const auto p = work / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::string& args, const std::string& out_name = "stdout.txt") {
    fs::create_directories(work);
    const std::string cmd = std::string("\"") + LIFSHITZ_CLI + "\" " + args + " > \"" + (work / out_name).string() +
                            "\" 2> \"" + (work / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage and configuration errors exit with 2") {
    CHECK(run("") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("compute") == 2);
    CHECK(run("compute " + (work / "absent.cfg").string()) == 2);
    const auto bad = write_file("bad.cfg", material_block() + "[geometry]\na = 1 um\n[temperature]\nT = 1\n");
    CHECK(run("compute " + bad.string()) == 2);
    const auto err = slurp(work / "stderr.txt");
    CHECK(err.find("line 12") != std::string::npos);
    CHECK(err.find("models") != std::string::npos);
    const auto empty = write_file("empty.cfg", material_block() + "[geometry]\na = ,\n[temperature]\nT = 1\n[model]\nmodels = plasma\n");
    CHECK(run("compute " + empty.string()) == 2);
    CHECK(run("compute " + empty.string() + " --set geometry.a=1um --set nosuch.key=1") == 2);
}

TEST_CASE("single ideal-metal point") {
    const auto cfg = write_file("ideal.cfg", material_block() +
                                                 "[geometry]\na = 1 um\n[temperature]\nT = 300\n[model]\nmodels = ideal\n");
    REQUIRE(run("compute " + cfg.string()) == 0);
    const auto rows = read_csv(slurp(work / "stdout.txt"));
    REQUIRE(rows.size() == 2);
    CHECK(slurp(work / "stdout.txt").substr(0, slurp(work / "stdout.txt").find('\n')) ==
          "a_m,T_K,model,F_J_per_m2,E0_J_per_m2,dF_J_per_m2,S_J_per_K_m2,F_TM,F_TE,err_est,l_max_used,config_hash");
    const auto& r = rows[1];
    REQUIRE(r.size() == 12);
    CHECK(r[2] == "ideal");
    const double pi = std::numbers::pi;
    CHECK(std::stod(r[4]) == doctest::Approx(-pi * pi * cst::hbar * cst::c / 720e-18).epsilon(1e-10));
    // TM and TE halves are equal for perfect reflection
    CHECK(std::stod(r[7]) == doctest::Approx(std::stod(r[8])).epsilon(1e-12));
    CHECK(std::stod(r[3]) == doctest::Approx(std::stod(r[4]) + std::stod(r[5])).epsilon(1e-10));
    CHECK(r[11].size() == 16);
}

TEST_CASE("json output with provenance") {
    const auto cfg = write_file("json.cfg", material_block() +
                                                "[geometry]\na = 1 um\n[temperature]\nT = 10, 20\n[model]\nmodels = plasma\n"
                                                "[output]\nformat = json\nentropy = false\n");
    REQUIRE(run("compute " + cfg.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(work / "stdout.txt"));
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("config_hash").get<std::string>().size() == 16);
    CHECK(j.contains("constants"));
    REQUIRE(j.at("rows").size() == 2);
    const auto& row = j.at("rows")[0];
    for (const char* k : {"a_m", "T_K", "model", "F_J_per_m2", "E0_J_per_m2", "dF_J_per_m2", "err_est", "l_max_used"})
        CHECK(row.contains(k));
}

TEST_CASE("file output and monotone grid") {
    const auto out = work / "grid" / "grid.csv";
    fs::remove_all(work / "grid");
    const auto cfg = write_file("grid.cfg", material_block() +
                                                "[geometry]\na_log = 100 nm, 1 um, 5\n[temperature]\nT_log = 1, 300, 5\n"
                                                "[model]\nmodels = plasma\n[output]\nentropy = false\npath = " +
                                                out.string() + "\n");
    REQUIRE(run("compute " + cfg.string()) == 0);
    REQUIRE(fs::exists(out));
    CHECK(fs::exists(out.string() + ".meta.json"));
    const auto rows = read_csv(slurp(out));
    REQUIRE(rows.size() == 26);
    for (std::size_t t = 0; t < 5; ++t)
        for (std::size_t i = 1; i < 5; ++i) {
            const auto& prev = rows[1 + (i - 1) * 5 + t];
            const auto& cur = rows[1 + i * 5 + t];
            CHECK(prev[1] == cur[1]);
            CHECK(std::abs(std::stod(cur[3])) < std::abs(std::stod(prev[3])));
        }
    CHECK(rows[1][6] == "nan");
}

TEST_CASE("unreachable tolerance exits with 3") {
    const auto cfg = write_file("tight.cfg", material_block() +
                                                 "[geometry]\na = 1 um\n[temperature]\nT = 300\n[model]\nmodels = nonlocal\n"
                                                 "[quadrature]\nrel_tol = 1e-18\nabs_tol = 1e-300\nmax_nodes = 700\n"
                                                 "[output]\nentropy = false\n");
    CHECK(run("compute " + cfg.string()) == 3);
}

TEST_CASE("fit subcommand") {
    std::string csv = "a_m,T_K,model,F_J_per_m2,E0_J_per_m2,dF_J_per_m2,S_J_per_K_m2,F_TM,F_TE,err_est,l_max_used,config_hash\n";
    for (int i = 0; i < 6; ++i) {
        const double T = 0.1 * (i + 1);
        char line[256];
        std::snprintf(line, sizeof line, "1e-06,%.6e,nonlocal,0,0,%.12e,0,0,0,0,1,0000000000000000\n", T,
                      -3e-12 * std::pow(T, 1.5));
        csv += line;
        std::snprintf(line, sizeof line, "1e-06,%.6e,plasma,0,0,%.12e,0,0,0,0,1,0000000000000000\n", T, 1.0 + i);
        csv += line;
    }
    const auto in = write_file("fit.csv", csv);
    REQUIRE(run("fit " + in.string() + " --model nonlocal --exponent 1.5") == 0);
    const auto text = slurp(work / "stdout.txt");
    CHECK(text.find("exponent 1.5\n") != std::string::npos);
    CHECK(text.find("pinned_amplitude -3.00000000e-12") != std::string::npos);
    CHECK(run("fit " + in.string()) == 2);  // two models at each T
    CHECK(run("fit " + in.string() + " --model nonlocal --T-max 0.35") == 4);
    CHECK(run("fit " + in.string() + " --column nope") == 2);
}

}
