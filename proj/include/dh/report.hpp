#pragma once

#include <string>
#include <vector>

namespace dh {

/// One verified identity: a formula-style label, the verdict, and the values compared.
struct CheckEntry {
    std::string label;
    bool pass = false;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckEntry> entries;

    void add(std::string label, bool pass, std::string detail = {}) {
        entries.push_back({std::move(label), pass, std::move(detail)});
    }
    bool passed() const {
        for (const auto& e : entries)
            if (!e.pass)
                return false;
        return true;
    }
    size_t failures() const {
        size_t n = 0;
        for (const auto& e : entries)
            n += e.pass ? 0 : 1;
        return n;
    }
};

} // namespace dh
