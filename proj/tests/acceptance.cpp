// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <cstdio>

#include "brouwer/acceptance.hpp"

int main() {
    using namespace brouwer::acceptance;
    const Settings settings;
    int failed = 0;
    for (const auto& c : criteria()) {
        const auto r = run_criterion(c, settings);
        std::puts(format_line(r).c_str());
        failed += r.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria().size());
    return failed == 0 ? 0 : 1;
}
