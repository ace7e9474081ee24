// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// --profile quick|full (full adds n=5 to the boundary check, weight 5 to the
// dimension data, and the 100-series inversion property).

#include <cstring>
#include <iostream>
#include <string>

#include "opk/acceptance.hpp"

int main(int argc, char** argv) {
    using namespace opk::acceptance;
    Profile profile = Profile::kFull;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--profile") == 0 && i + 1 < argc) {
            std::string p = argv[++i];
            if (p == "quick")
                profile = Profile::kQuick;
            else if (p == "full")
                profile = Profile::kFull;
            else {
                std::cerr << "unknown profile: " << p << "\n";
                return 2;
            }
        } else {
            std::cerr << "usage: acceptance [--profile quick|full]\n";
            return 2;
        }
    }

    bool all = true;
    for (const auto& c : run(profile)) {
        all = all && c.pass;
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.index << ": " << c.name
                  << "\n        " << c.detail << "\n";
    }
    std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED") << "\n";
    return all ? 0 : 1;
}
