#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spidercat/circuit.h"
#include "spidercat/constructions.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("spidercat_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }

    RunResult run(const std::string &args, const std::string &env = "") {
        fs::path out = dir_ / "stdout.txt";
        std::string cmd = env + (env.empty() ? "" : " ") + SPIDERCAT_CLI + " " + args + " > " + out.string() +
                          " 2> " + (dir_ / "stderr.txt").string();
        int rc = std::system(cmd.c_str());
        RunResult r;
        r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
        r.out = slurp(out);
        return r;
    }

    static std::string slurp(const fs::path &p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path write(const std::string &name, const std::string &text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SynthesizeReachesLowerBound) {
    RunResult r = run("synthesize --n 12 --t 4 --out-dir " + (dir_ / "a").string());
    ASSERT_EQ(r.code, 0) << r.out;
    json report = json::parse(r.out);
    EXPECT_EQ(report["schema"], 1);
    EXPECT_EQ(report["resources"]["cnots"], 23);
    EXPECT_EQ(report["resources"]["flags"], 6);
    EXPECT_EQ(report["verification"]["circuit"]["verdict"], "ft");
    EXPECT_EQ(slurp(dir_ / "a" / "report.json"), r.out);

    // Artifacts re-verify from disk.
    RunResult v = run("verify " + (dir_ / "a" / "circuit.txt").string() + " --t 4");
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(json::parse(v.out)["verdict"], "ft");
    spidercat::Circuit c = spidercat::Circuit::from_text(slurp(dir_ / "a" / "circuit.txt"));
    EXPECT_EQ(c.hash_hex(), report["circuit_hash"]);
}

TEST_F(CliTest, InfeasibleInstanceExitsTwo) {
    RunResult r = run("synthesize --n 12 --t 5");
    EXPECT_EQ(r.code, 2);
    json report = json::parse(r.out);
    EXPECT_EQ(report["status"], "infeasible");
    EXPECT_EQ(report["infeasibility"]["reason"], "girth");
}

TEST_F(CliTest, RecursiveAndShallowModes) {
    RunResult r = run("synthesize --n 16 --t 1 --mode recursive");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["resources"]["cnots"], 44);
    RunResult s = run("synthesize --n 12 --t 4 --mode shallow");
    ASSERT_EQ(s.code, 0);
    EXPECT_EQ(json::parse(s.out)["resources"]["cnot_depth"], 3);
}

TEST_F(CliTest, VerifyReportsFailuresAndParseErrors) {
    fs::path ladder = write("ladder.txt", spidercat::fanout_ladder(4).to_text());
    RunResult bad = run("verify " + ladder.string() + " --t 1");
    EXPECT_EQ(bad.code, 1);
    json report = json::parse(bad.out);
    EXPECT_EQ(report["verdict"], "violated");
    EXPECT_FALSE(report["counterexample"].is_null());

    std::string text = spidercat::recursive_cat(8, 3).to_text();
    fs::path truncated = write("truncated.txt", text.substr(0, text.size() / 2) + "cnot 3\n");
    EXPECT_EQ(run("verify " + truncated.string() + " --t 3").code, 3);
    EXPECT_EQ(run("verify " + (dir_ / "missing.txt").string() + " --t 3").code, 1);
    EXPECT_EQ(run("verify " + truncated.string() + " --t 3 --model z").code, 3);
    EXPECT_EQ(run("synthesize --n 12").code, 3);
    EXPECT_EQ(run("synthesize --n 12 --t 4 --mode sideways").code, 3);

    fs::path small = write("small.txt", spidercat::recursive_cat(8, 3).to_text());
    RunResult wrong = run("verify " + small.string() + " --t 3 --n 9");
    EXPECT_EQ(wrong.code, 1);
    EXPECT_EQ(json::parse(wrong.out)["verdict"], "wrong_size");
}

TEST_F(CliTest, EnvironmentFallsBehindFlags) {
    RunResult from_env = run("synthesize --n 9 --t 2 --verify none", "SPIDERCAT_SEED=41");
    ASSERT_EQ(from_env.code, 0);
    EXPECT_EQ(json::parse(from_env.out)["seed"], 41);
    RunResult from_flag = run("synthesize --n 9 --t 2 --verify none --seed 3", "SPIDERCAT_SEED=41");
    EXPECT_EQ(json::parse(from_flag.out)["seed"], 3);
    RunResult solver = run("synthesize --n 9 --t 2 --verify none",
                           std::string("SPIDERCAT_SOLVER=") + SPIDERCAT_DIMACS_SOLVER);
    ASSERT_EQ(solver.code, 0);
    EXPECT_NE(json::parse(solver.out)["solver"].get<std::string>().find("dimacs_solver"), std::string::npos);
    RunResult solver_flag = run("synthesize --n 9 --t 2 --verify none --solver internal",
                                std::string("SPIDERCAT_SOLVER=") + SPIDERCAT_DIMACS_SOLVER);
    EXPECT_EQ(json::parse(solver_flag.out)["solver"], "internal");
}

TEST_F(CliTest, OutputsIgnoreThreadCount) {
    std::string base = "synthesize --n 14 --t 5 --seed 2 --out-dir ";
    ASSERT_EQ(run(base + (dir_ / "one").string() + " --jobs 1").code, 0);
    ASSERT_EQ(run(base + (dir_ / "four").string() + " --jobs 4").code, 0);
    for (const char *file : {"graph.txt", "circuit.txt", "report.json"}) {
        EXPECT_EQ(slurp(dir_ / "one" / file), slurp(dir_ / "four" / file)) << file;
    }
    std::string circuit = (dir_ / "one" / "circuit.txt").string();
    RunResult b1 = run("bench " + circuit + " --t 5 --p 0.05 --shots 100000 --seed 9 --jobs 1");
    RunResult b4 = run("bench " + circuit + " --t 5 --p 0.05 --shots 100000 --seed 9 --jobs 4");
    EXPECT_EQ(b1.code, 0);
    EXPECT_EQ(b1.out, b4.out);
    EXPECT_EQ(json::parse(b1.out)["shots"], 100000);
}

TEST_F(CliTest, ExportsFormulas) {
    fs::path graph = write("petersen.txt",
                           "cubic 10\ne 0 1 0\ne 1 2 0\ne 2 3 0\ne 3 4 0\ne 0 4 0\ne 0 5 0\ne 1 6 0\ne 2 7 0\n"
                           "e 3 8 0\ne 4 9 0\ne 5 7 0\ne 7 9 0\ne 6 9 0\ne 6 8 0\ne 5 8 0\n");
    RunResult cnf = run("export-cnf " + graph.string() + " --t 4");
    EXPECT_EQ(cnf.code, 0);
    EXPECT_NE(cnf.out.find("p cnf"), std::string::npos);
    fs::path out = dir_ / "m.wcnf";
    EXPECT_EQ(run("export-wcnf " + graph.string() + " --t 3 -o " + out.string()).code, 0);
    EXPECT_NE(slurp(out).find("p wcnf"), std::string::npos);
    fs::path broken = write("broken.txt", "cubic 3\ne 0 1 0\n");
    EXPECT_EQ(run("export-cnf " + broken.string() + " --t 2").code, 3);
}
