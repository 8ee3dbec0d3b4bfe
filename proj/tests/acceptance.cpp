// Acceptance runner: one line per criterion, nonzero exit on any failure.
// The shared 2e4-coverage grid is cached in the working directory, so the
// first run pays the build and later runs start from the cache.

#include <cstdio>
#include <cstring>
#include <string>

#include "zladder/verify.hpp"

int main(int argc, char** argv) {
    zladder::verify::Context ctx;
    std::string only = "all";
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--slow") == 0) ctx.slow = true;
        else if (std::strcmp(argv[i], "--cache") == 0 && i + 1 < argc)
            ctx.cache_dir = argv[++i];
        else only = argv[i];
    }
    const auto results = zladder::verify::run_suites(only, ctx);
    bool all = true;
    for (const auto& r : results) {
        std::puts(zladder::verify::format_result(r).c_str());
        all = all && r.pass;
    }
    if (ctx.grid_seconds > 0.0)
        std::fprintf(stderr, "(shared grid build/load: %.1fs)\n",
                     ctx.grid_seconds);
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return all ? 0 : 1;
}
