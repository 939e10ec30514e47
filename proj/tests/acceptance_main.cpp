// Copyright 2026 The gatebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the acceptance criteria and prints one PASS/FAIL line per criterion
// followed by its individual checks. With --only N a single criterion runs;
// the exit status is nonzero if any criterion that ran failed.

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <vector>

#include "gatebound/reproduction.hpp"

int main(int argc, char **argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; i++) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            ids.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: " << argv[0] << " [--only N]...\n";
            return 2;
        }
    }
    if (ids.empty()) {
        for (const auto &c : gatebound::reproduction_criteria()) {
            ids.push_back(c.id);
        }
    }
    gatebound::ReproductionSuite suite;
    bool all = true;
    for (int id : ids) {
        auto r = suite.run(id);
        all = all && r.passed();
        std::cout << (r.passed() ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << " ("
                  << r.seconds << " s)\n";
        for (const auto &c : r.checks) {
            std::cout << "    " << (c.pass ? "ok  " : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
        }
        if (!r.error.empty()) {
            std::cout << "    error: " << r.error << "\n";
        }
    }
    return all ? 0 : 1;
}
