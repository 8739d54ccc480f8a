#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spidercat/errors.h"
#include "spidercat/marking.h"
#include "spidercat/nonlocal_cut.h"
#include "spidercat/pipeline.h"

using namespace spidercat;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

const char *env(const char *name) {
    const char *v = std::getenv(name);
    return v && *v ? v : nullptr;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"spidercat: fault-tolerant CAT-state preparation circuits"};
    app.require_subcommand(1);

    PipelineConfig cfg;
    std::string mode = "optimal";
    std::string verify_level = "full";
    std::string solver;
    uint64_t seed = 0;
    auto *synth = app.add_subcommand("synthesize", "build a t-FT CAT preparation circuit");
    synth->add_option("--n", cfg.n, "number of CAT qubits")->required();
    synth->add_option("--t", cfg.t, "fault weight")->required();
    synth->add_option("--mode", mode, "optimal | recursive | shallow")
        ->check(CLI::IsMember({"optimal", "recursive", "shallow"}));
    auto *seed_opt = synth->add_option("--seed", seed, "random seed");
    auto *solver_opt = synth->add_option("--solver", solver, "internal | <path> | external:<path>");
    synth->add_option("--out-dir", cfg.out_dir, "artifact directory");
    synth->add_option("--verify", verify_level, "none | graph | full")
        ->check(CLI::IsMember({"none", "graph", "full"}));
    synth->add_option("--jobs", cfg.jobs, "worker threads");
    synth->add_option("--restarts", cfg.restarts, "hill-climb restarts");
    synth->add_option("--max-iters", cfg.max_iters, "hill-climb iterations per restart");
    synth->add_flag("--timing", cfg.timing, "record runtime_ms");

    std::string circuit_file;
    int vn = 0, vt = 1, vjobs = 1;
    std::string vlevel = "full", vmodel = "x";
    bool vtiming = false;
    auto *verify = app.add_subcommand("verify", "check a circuit prepares CAT_n t-fault-tolerantly");
    verify->add_option("circuit", circuit_file, "circuit file")->required();
    verify->add_option("--n", vn, "expected output count (0 = any)");
    verify->add_option("--t", vt, "fault weight");
    verify->add_option("--level", vlevel, "graph | full (graph skips the fault check)")
        ->check(CLI::IsMember({"none", "graph", "full"}));
    verify->add_option("--model", vmodel, "x | full")->check(CLI::IsMember({"x", "full"}));
    verify->add_option("--jobs", vjobs, "worker threads");
    verify->add_flag("--timing", vtiming, "record runtime_ms");

    int bt = 1, bjobs = 1;
    double bp = 0.05;
    uint64_t bshots = 1000000, bseed = 0;
    auto *bench = app.add_subcommand("bench", "Monte Carlo acceptance and logical error rate");
    bench->add_option("circuit", circuit_file, "circuit file")->required();
    bench->add_option("--t", bt, "fault weight");
    bench->add_option("--p", bp, "physical error rate");
    bench->add_option("--shots", bshots, "shot count");
    auto *bseed_opt = bench->add_option("--seed", bseed, "random seed");
    bench->add_option("--jobs", bjobs, "worker threads");

    std::string graph_file, out_file;
    int et = 1;
    auto *cnf = app.add_subcommand("export-cnf", "nonlocal-cut CNF of a cubic graph");
    cnf->add_option("graph", graph_file, "graph file")->required();
    cnf->add_option("--t", et, "cut size bound");
    cnf->add_option("-o,--output", out_file, "output file (default stdout)");
    auto *wcnf = app.add_subcommand("export-wcnf", "marking WCNF of a cubic graph");
    wcnf->add_option("graph", graph_file, "graph file")->required();
    wcnf->add_option("--t", et, "fault weight");
    wcnf->add_option("-o,--output", out_file, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitParseError;
    }

    try {
        if (synth->parsed()) {
            cfg.mode = parse_mode(mode);
            cfg.verify_level = parse_verify_level(verify_level);
            if (seed_opt->count()) {
                cfg.seed = seed;
            } else if (const char *s = env("SPIDERCAT_SEED")) {
                cfg.seed = std::stoull(s);
            }
            if (solver_opt->count()) {
                cfg.solver = SolverBackend::parse(solver);
            } else if (const char *s = env("SPIDERCAT_SOLVER")) {
                cfg.solver = SolverBackend::parse(s);
            }
            SynthesisOutcome out = synthesize(cfg);
            if (!cfg.out_dir.empty()) {
                write_artifacts(out, cfg.out_dir);
            }
            std::cout << out.report.dump(2) << "\n";
            return out.exit_code;
        }
        if (verify->parsed()) {
            Circuit c = Circuit::from_text(read_file(circuit_file));
            FaultCheckOptions fo;
            fo.jobs = vjobs;
            if (vmodel == "x") {
                fo.model = FaultModel::XOnly;
            } else if (vmodel == "full") {
                fo.model = FaultModel::FullPauli;
            } else {
                throw std::invalid_argument("unknown fault model '" + vmodel + "'");
            }
            VerifyLevel level = parse_verify_level(vlevel);
            VerifyOutcome out = verify_circuit(c, vn, vt, level, fo, vtiming);
            std::cout << out.report.dump(2) << "\n";
            return out.exit_code;
        }
        if (bench->parsed()) {
            Circuit c = Circuit::from_text(read_file(circuit_file));
            if (!bseed_opt->count()) {
                if (const char *s = env("SPIDERCAT_SEED")) {
                    bseed = std::stoull(s);
                }
            }
            std::cout << bench_report(c, bt, bp, bshots, bseed, bjobs).dump(2) << "\n";
            return kExitOk;
        }
        if (cnf->parsed()) {
            MarkedGraph g = MarkedGraph::from_text(read_file(graph_file));
            write_output(out_file, nonlocal_cut_cnf(g, et).to_dimacs());
            return kExitOk;
        }
        if (wcnf->parsed()) {
            MarkedGraph g = MarkedGraph::from_text(read_file(graph_file));
            write_output(out_file, marking_constraints(g, et).to_wdimacs());
            return kExitOk;
        }
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
