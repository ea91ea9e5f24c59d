// Acceptance suite: every criterion at its pinned tolerance, one line each.
#include <cstdio>
#include <iostream>

#include "clusterfid/runner.hpp"

int main(int argc, char** argv) {
    cfid::runner::VerifyOpts opts;
    if (argc > 1) opts.only = argv[1];
    return cfid::runner::run_verify(opts, std::cout);
}
