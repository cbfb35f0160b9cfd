#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"

// End-to-end checks of the command-line tool. The binary path is injected by
// the build so the test exercises exactly what ships.

namespace {

using json = nlohmann::json;

std::string cli_path() { return DSPROP_CLI_PATH; }

int run(const std::string& args, const std::string& log) {
    const std::string cmd = "\"" + cli_path() + "\" " + args + " > " + log + " 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Csv {
    std::vector<std::string> header_comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv out;
    std::istringstream in(text);
    std::string line;
    bool have_columns = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            out.header_comments.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        if (!have_columns) {
            out.columns = cells;
            have_columns = true;
        } else {
            out.rows.push_back(cells);
        }
    }
    return out;
}

std::size_t column_index(const Csv& csv, const std::string& name) {
    for (std::size_t i = 0; i < csv.columns.size(); ++i)
        if (csv.columns[i] == name) return i;
    REQUIRE(false);
    return 0;
}

} // namespace

TEST_CASE("same configuration and seed give byte-identical output") {
    CHECK(run("kernel --seed 7 --out cli_det_a.csv", "cli_det_a.log") == 0);
    CHECK(run("kernel --seed 7 --out cli_det_b.csv", "cli_det_b.log") == 0);
    CHECK(slurp("cli_det_a.csv") == slurp("cli_det_b.csv"));

    CHECK(run("verify --seed 11 --out cli_det_a.json", "cli_det_c.log") == 0);
    CHECK(run("verify --seed 11 --out cli_det_b.json", "cli_det_d.log") == 0);
    CHECK(slurp("cli_det_a.json") == slurp("cli_det_b.json"));
}

TEST_CASE("kernel table has the full grid, headers, and cone markers") {
    CHECK(run("kernel --set r_count=6 --set t_count=4 --set r_max=2.0 --out cli_kernel.csv",
              "cli_kernel.log") == 0);
    const Csv csv = parse_csv(slurp("cli_kernel.csv"));
    CHECK(csv.rows.size() == 24);
    CHECK(csv.columns ==
          std::vector<std::string>{"r", "t", "re_E", "im_E", "re_K0", "im_K0", "re_K1", "im_K1",
                                   "outside"});
    bool saw_hash = false, saw_units = false;
    for (const std::string& c : csv.header_comments) {
        if (c.find("config_hash=") != std::string::npos) saw_hash = true;
        if (c.find("units:") != std::string::npos) saw_units = true;
    }
    CHECK(saw_hash);
    CHECK(saw_units);

    // the grid reaches r = 2 > phi(t_max), so some cells sit outside the cone:
    // marked rows have empty kernel cells, unmarked rows have none
    const std::size_t iout = column_index(csv, "outside");
    const std::size_t ie = column_index(csv, "re_E");
    std::size_t outside = 0;
    for (const auto& row : csv.rows) {
        if (row[iout] == "1") {
            ++outside;
            CHECK(row[ie].empty());
        } else {
            CHECK(!row[ie].empty());
        }
    }
    CHECK(outside > 0);
    CHECK(outside < csv.rows.size());
}

TEST_CASE("massless kernel column is constant in radius") {
    CHECK(run("kernel --set M_re=0.5 --set M_im=0 --set H=1.0 --set r_max=0.5 "
              "--set t_min=0.9 --set t_max=0.9 --set t_count=1 --set r_count=7 "
              "--out cli_massless.csv",
              "cli_massless.log") == 0);
    const Csv csv = parse_csv(slurp("cli_massless.csv"));
    CHECK(csv.rows.size() == 7);
    const std::size_t ik = column_index(csv, "re_K1");
    for (const auto& row : csv.rows) CHECK(row[ik] == csv.rows[0][ik]);
}

TEST_CASE("solve commands expose oracle columns and honor the gate") {
    // healthy run: transform and oracle agree far better than the gate
    CHECK(run("dirac-solve --set t_count=3 --set t_max=0.4 --gate 1e-6 --out cli_dirac.csv",
              "cli_dirac.log") == 0);
    const Csv csv = parse_csv(slurp("cli_dirac.csv"));
    CHECK(csv.columns ==
          std::vector<std::string>{"t", "comp", "re_val", "im_val", "re_oracle", "im_oracle",
                                   "abs_err", "rel_err"});
    CHECK(csv.rows.size() == 12);

    // an absurd gate fails with exit 4 but still writes the full table
    CHECK(run("dirac-solve --set t_count=3 --set t_max=0.4 --gate 1e-15 --out cli_gate.csv",
              "cli_gate.log") == 4);
    const Csv gated = parse_csv(slurp("cli_gate.csv"));
    CHECK(gated.rows.size() == 12);
}

TEST_CASE("a single grid point at t = 0 reproduces the datum exactly") {
    CHECK(run("kg-solve --set t_min=0 --set t_max=0 --set t_count=1 --gate 0 --out cli_t0.csv",
              "cli_t0.log") == 0);
    const Csv csv = parse_csv(slurp("cli_t0.csv"));
    CHECK(csv.rows.size() == 1);
    CHECK(csv.rows[0][column_index(csv, "re_val")] == "1");
    CHECK(csv.rows[0][column_index(csv, "im_val")] == "0");
    CHECK(csv.rows[0][column_index(csv, "rel_err")] == "0");
}

TEST_CASE("kg solve agrees with its oracle through the covariant rescaling") {
    CHECK(run("kg-solve --set covariant=1 --set t_count=3 --gate 1e-6 --out cli_cov.csv",
              "cli_cov.log") == 0);
    const Csv csv = parse_csv(slurp("cli_cov.csv"));
    CHECK(csv.rows.size() == 3);
}

TEST_CASE("config file keys apply with flag overrides taking precedence") {
    {
        std::ofstream cfg("cli_case.cfg");
        cfg << "# comment line\n";
        cfg << "t_count = 5\n";
        cfg << "r_count = 3\n";
    }
    CHECK(run("kernel --config cli_case.cfg --set t_count=2 --out cli_cfg.csv", "cli_cfg.log") ==
          0);
    const Csv csv = parse_csv(slurp("cli_cfg.csv"));
    CHECK(csv.rows.size() == 6); // 2 times from the override, 3 radii from the file
}

TEST_CASE("configuration errors exit with code 2") {
    CHECK(run("kernel --set no_such_key=1", "cli_err1.log") == 2);
    CHECK(run("kernel --set r_count=abc", "cli_err2.log") == 2);
    CHECK(run("kernel --set malformed", "cli_err3.log") == 2);
    CHECK(run("kg-solve --set H=-1", "cli_err4.log") == 2);
    CHECK(run("no-such-command", "cli_err5.log") == 2);
    CHECK(run("kernel --format yaml", "cli_err6.log") == 2);
    {
        std::ofstream cfg("cli_bad.cfg");
        cfg << "this line has no equals sign\n";
    }
    CHECK(run("kernel --config cli_bad.cfg", "cli_err7.log") == 2);
    CHECK(run("kernel --config cli_missing.cfg", "cli_err8.log") == 2);
}

TEST_CASE("numerical failures exit with code 3") {
    // an evaluation time far beyond the configured window
    CHECK(run("dirac-solve --set t_max=50 --set T=16", "cli_err9.log") == 3);
}

TEST_CASE("fundsol tabulates the action of the propagator") {
    CHECK(run("fundsol --set t_count=4 --set t0=0.3 --out cli_fund.csv", "cli_fund.log") == 0);
    const Csv csv = parse_csv(slurp("cli_fund.csv"));
    CHECK(csv.columns == std::vector<std::string>{"t", "comp", "re_act", "im_act"});
    CHECK(csv.rows.size() == 16);
    // the retarded action of rows strictly before the source time vanishes
    const std::size_t it = column_index(csv, "t");
    const std::size_t ire = column_index(csv, "re_act");
    for (const auto& row : csv.rows) {
        if (std::stod(row[it]) < 0.3) {
            CHECK(std::stod(row[ire]) == 0.0);
        }
    }
}

TEST_CASE("flat-limit study shows first-order convergence") {
    CHECK(run("limit-h0 --set halvings=3 --set points=6 --seed 5 --out cli_limit.csv",
              "cli_limit.log") == 0);
    const Csv csv = parse_csv(slurp("cli_limit.csv"));
    CHECK(csv.rows.size() == 3);
    const std::size_t ir = column_index(csv, "ratio_to_prev");
    CHECK(csv.rows[0][ir].empty());
    for (std::size_t k = 1; k < csv.rows.size(); ++k) {
        const double ratio = std::stod(csv.rows[k][ir]);
        CHECK(ratio > 1.7);
        CHECK(ratio < 2.3);
    }
}

TEST_CASE("verify emits a machine-readable report and catches injected defects") {
    CHECK(run("verify --set functions=6 --set points=4 --out cli_verify.json",
              "cli_verify.log") == 0);
    const json report = json::parse(slurp("cli_verify.json"));
    CHECK(report.at("pass").get<bool>());
    bool saw_gamma = false;
    for (const auto& check : report.at("checks")) {
        CHECK(check.at("pass").get<bool>());
        CHECK(check.at("max_residual").get<double>() <= check.at("threshold").get<double>());
        if (check.at("check") == "gamma_anticommutators") saw_gamma = true;
    }
    CHECK(saw_gamma);

    // a corrupted matrix must be caught, and only the corrupted check fails
    CHECK(run("verify --set functions=6 --set points=4 --inject-gamma-defect "
              "--out cli_verify_bad.json",
              "cli_verify_bad.log") == 5);
    const json bad = json::parse(slurp("cli_verify_bad.json"));
    CHECK(!bad.at("pass").get<bool>());
    for (const auto& check : bad.at("checks")) {
        if (check.at("check") == "gamma_anticommutators") {
            CHECK(!check.at("pass").get<bool>());
        } else {
            CHECK(check.at("pass").get<bool>());
        }
    }
}

TEST_CASE("json table output carries the same data as csv") {
    CHECK(run("kernel --set r_count=3 --set t_count=2 --format json --out cli_k.json",
              "cli_k.log") == 0);
    const json j = json::parse(slurp("cli_k.json"));
    CHECK(j.at("command") == "kernel");
    CHECK(j.at("columns").size() == 9);
    CHECK(j.at("rows").size() == 6);
    for (const auto& row : j.at("rows")) CHECK(row.size() == 9);
}
