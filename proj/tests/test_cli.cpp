#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = EMPTYSIMPLEX_CLI;

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("emptysimplex_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(const std::string& args) const {
        const std::string cmd = kCli + " " + args + " 2>" + path("stderr.txt");
        return std::system(cmd.c_str());
    }

    std::string slurp(const std::string& name) const {
        std::ifstream in(path(name));
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, SampleThenDegreeAndFunctionals) {
    ASSERT_EQ(run("sample --body '{\"kind\":\"unit_cube\",\"dim\":2}' -n 30 --seed 4 --out " + path("pts.csv")), 0);
    const auto pts = slurp("pts.csv");
    EXPECT_EQ(pts.substr(0, 6), "x0,x1\n");
    EXPECT_EQ(std::count(pts.begin(), pts.end(), '\n'), 31);

    ASSERT_EQ(run("degree --in " + path("pts.csv") + " --out " + path("deg.csv")), 0);
    EXPECT_NE(slurp("deg.csv").find(",exact,"), std::string::npos);
    ASSERT_EQ(run("degree --mode local --T 0.2 --in " + path("pts.csv") + " --out " + path("local.csv")), 0);
    EXPECT_NE(slurp("local.csv").find(",local,0.2,"), std::string::npos);

    ASSERT_EQ(run("functionals --in " + path("pts.csv") + " --T 0.1 0.3 --k 0 2 --out " + path("f.csv")), 0);
    const auto f = slurp("f.csv");
    EXPECT_EQ(f.substr(0, 17), "T,k,value,subsets");
    EXPECT_EQ(std::count(f.begin(), f.end(), '\n'), 5);
}

TEST_F(Cli, CovariogramCsv) {
    ASSERT_EQ(run("covariogram --body '{\"kind\":\"unit_cube\",\"dim\":2}' --directions 8 --out " + path("cov.csv")), 0);
    const auto text = slurp("cov.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')), "u0,u1,r,g,derivative,derivative_stderr,perimeter,perimeter_stderr");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 8 * 7);
}

TEST_F(Cli, ExperimentWithConfigAndOverrides) {
    write("cfg.json", R"({"body": {"kind": "unit_cube", "dim": 2}, "n_grid": [50], "trials": 20, "seed": 3})");
    ASSERT_EQ(run("experiment expected_n_t --config " + path("cfg.json") + " --threads 2 --out " + path("a.csv")), 0);
    ASSERT_EQ(run("experiment expected_n_t --config " + path("cfg.json") + " --out " + path("b.csv")), 0);
    const auto a = slurp("a.csv");
    EXPECT_EQ(a.substr(0, a.find('\n')), "experiment,M,n,k,T,estimate,stderr,bound_lower,bound_upper,trials,seed,elapsed_ms");
    EXPECT_NE(a.find("expected_n_t.mean,2,50,"), std::string::npos);
    // Identical apart from the elapsed_ms column.
    auto strip = [](const std::string& s) {
        std::istringstream in(s);
        std::string line, out;
        while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
        return out;
    };
    EXPECT_EQ(strip(a), strip(slurp("b.csv")));
    ASSERT_EQ(run("experiment expected_n_t --config " + path("cfg.json") + " --seed 4 --out " + path("c.csv")), 0);
    EXPECT_NE(strip(a), strip(slurp("c.csv")));
}

TEST_F(Cli, ErrorsAreReported) {
    write("bad.json", R"({"n_grid": [50], "bogus": 1})");
    EXPECT_NE(run("experiment expected_n_t --config " + path("bad.json")), 0);
    EXPECT_NE(slurp("stderr.txt").find("unknown key 'bogus'"), std::string::npos);
    EXPECT_NE(run("experiment no_such_thing"), 0);
    EXPECT_NE(run("degree --in " + path("missing.csv")), 0);
    EXPECT_NE(run(""), 0);
}
