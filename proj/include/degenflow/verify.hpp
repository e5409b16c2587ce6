#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace degenflow {

/// One pass/fail line of a verification suite. `expected_fail` marks items
/// that certify a deliberate counterexample: pass == true means the expected
/// violation was observed.
struct VerdictItem {
    std::string criterion; // "1".."9"
    std::string name;
    bool pass = false;
    bool expected_fail = false;
    std::string detail;
};

/// Suite names accepted by verify_suite (plus "all").
std::vector<std::string> verify_suite_names();

/// Runs one named suite (or "all") and returns its verdict items.
std::vector<VerdictItem> verify_suite(const std::string& name);

/// Stable-order JSON verdict table.
nlohmann::ordered_json verdict_table(const std::vector<VerdictItem>& items);

/// True iff every item passes.
bool all_pass(const std::vector<VerdictItem>& items);

} // namespace degenflow
