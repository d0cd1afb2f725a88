#pragma once

// Structured pass/fail evidence shared by the validity and obliviousness
// checkers. A failing report always carries at least one witness entry.

#include <optional>
#include <string>
#include <vector>

namespace cshield {

struct CheckEntry {
    std::string condition;               // stable identifier, e.g. "component-balance"
    std::string representative;          // X-component the entry refers to ("" if global)
    bool pass = false;
    std::optional<bool> exact;           // exact-arithmetic verdict, when a second route ran
    std::optional<double> residual;      // numeric residual, when a floating route ran
    std::string witness;                 // human-readable evidence for failures
};

struct CheckReport {
    bool verdict = false;
    std::vector<CheckEntry> entries;
    std::vector<std::string> notes;

    CheckEntry& add(std::string condition, std::string representative, bool pass) {
        entries.push_back({std::move(condition), std::move(representative), pass, {}, {}, {}});
        return entries.back();
    }

    const CheckEntry* first_failure() const {
        for (const auto& e : entries)
            if (!e.pass) return &e;
        return nullptr;
    }
};

}  // namespace cshield
