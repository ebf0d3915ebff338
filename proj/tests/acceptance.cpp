// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [--known-red 8] [--only 1,2] [-v]

#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "gcon/gcon.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> only, known_red;
    bool verbose = false;
    app.add_option("--only", only)->delimiter(',');
    app.add_option("--known-red", known_red)->delimiter(',');
    app.add_flag("-v,--verbose", verbose);
    CLI11_PARSE(app, argc, argv);
    if (only.empty()) only = {1, 2, 3, 4, 5, 6, 7, 8};
    return gcon::run_acceptance(std::cout, only, std::set<int>(known_red.begin(), known_red.end()), verbose);
}
