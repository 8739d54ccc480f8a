// Stand-alone DIMACS front end for the internal solver, following the usual
// competition output conventions (exit 10 for SAT, 20 for UNSAT).
#include <fstream>
#include <iostream>
#include <sstream>

#include "spidercat/errors.h"
#include "spidercat/sat_solver.h"

int main(int argc, char **argv) {
    if (argc != 2) {
        std::cerr << "usage: dimacs_solver <file.cnf>\n";
        return 1;
    }
    std::ifstream in(argv[1]);
    if (!in) {
        std::cerr << "cannot open " << argv[1] << "\n";
        return 1;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    spidercat::CnfFormula f;
    try {
        f = spidercat::CnfFormula::from_dimacs(buffer.str());
    } catch (const spidercat::ParseError &ex) {
        std::cerr << ex.what() << "\n";
        return 1;
    }
    spidercat::SolveResult r = spidercat::solve_cnf(f);
    if (r.status == spidercat::SolveStatus::Unsat) {
        std::cout << "s UNSATISFIABLE\n";
        return 20;
    }
    if (r.status == spidercat::SolveStatus::Timeout) {
        std::cout << "s UNKNOWN\n";
        return 0;
    }
    std::cout << "s SATISFIABLE\nv";
    for (int v = 1; v <= f.variable_count; v++) {
        std::cout << " " << (r.model[v] ? v : -v);
    }
    std::cout << " 0\n";
    return 10;
}
