#pragma once

#include <string>
#include <vector>

namespace carpet {

struct Check {
    std::string label;
    bool pass = false;
    std::string detail;
};

// Flat pass/fail log shared by validators, sweeps, and the CLI verify suites.
struct Report {
    std::vector<Check> checks;

    void add(std::string label, bool pass, std::string detail = "") {
        checks.push_back({std::move(label), pass, std::move(detail)});
    }
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : checks)
            if (!c.pass) ++n;
        return n;
    }
};

}  // namespace carpet
