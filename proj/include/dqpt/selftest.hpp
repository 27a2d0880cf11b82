#ifndef DQPT_SELFTEST_HPP
#define DQPT_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dqpt {

struct SelftestItem {
    std::string name;
    bool pass;
    std::string detail;  // worst-case residual or failure description
};

struct SelftestReport {
    std::vector<SelftestItem> items;
    bool all_pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
};

// Reduced-scale invariant suite over all modules. Random draws come from
// `seed`; pass/fail is seed-independent for correct code.
SelftestReport selftest(std::uint64_t seed);

}  // namespace dqpt

#endif
