// Acceptance runner: executes every verification suite at its pinned
// tolerance and prints one line per criterion. Exits nonzero if any check
// fails.

#include "triprop/verify.hpp"

#include <chrono>
#include <cstdio>

int main() {
    using namespace triprop;
    struct Criterion {
        int number;
        const char* label;
        const char* suite;
    };
    const Criterion criteria[] = {
        {1, "decoupling correctness over random systems", "decoupling"},
        {2, "gauge invariance of the physical kernel", "gauge"},
        {3, "kernels against grid evolution", "kernel-grid"},
        {4, "kernel composition over intermediate times", "chapman"},
        {5, "level energies and lattice counts", "spectrum"},
        {6, "hidden-symmetry degeneracy at ratio 2", "degeneracy"},
        {7, "summation identity and spectral reconstruction", "mehler"},
        {8, "time-dependent machinery and constant reduction", "ermakov"},
        {9, "short-time smearing in physical coordinates", "delta"},
    };
    bool all_pass = true;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& c : criteria) {
        SuiteResult suite;
        try {
            suite = run_verify_suite(c.suite);
        } catch (const std::exception& e) {
            std::printf("FAIL criterion %d (%s): exception: %s\n", c.number, c.label, e.what());
            all_pass = false;
            continue;
        }
        const bool pass = suite.pass();
        all_pass = all_pass && pass;
        std::printf("%s criterion %d (%s)\n", pass ? "PASS" : "FAIL", c.number, c.label);
        for (const auto& check : suite.checks) {
            std::printf("      %-55s residual %.3e  tolerance %.1e  %s\n", check.name.c_str(),
                        check.residual, check.tolerance, check.pass ? "ok" : "FAILED");
        }
        std::fflush(stdout);
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s (%.1f s)\n", all_pass ? "all criteria passed" : "SOME CRITERIA FAILED",
                elapsed);
    return all_pass ? 0 : 1;
}
