// Acceptance gate: runs every criterion and prints one line per result.
// Exit status is zero only when all criteria pass.

#include <chrono>
#include <cstdio>

#include "autalg/verify.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    bool all = true;
    auto start = clock::now();
    auto results = autalg::run_acceptance();
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d: %s — %s\n", r.pass ? "PASS" : "FAIL", r.index,
                    r.name.c_str(), r.detail.c_str());
        all = all && r.pass;
    }
    auto secs = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start);
    std::printf("%s (%zu/%zu criteria, %.1f s)\n", all ? "ACCEPTED" : "REJECTED",
                static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                                       [](const auto& r) { return r.pass; })),
                results.size(), static_cast<double>(secs.count()) / 1000.0);
    return all ? 0 : 1;
}
