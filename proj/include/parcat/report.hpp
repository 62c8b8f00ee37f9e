#pragma once

#include <map>
#include <string>
#include <vector>

namespace parcat {

struct Failure {
    std::string check;
    std::string description;
    std::vector<std::string> witness;
};

// Outcome of a batch of diagram checks. `counts` records how many instances of
// each named check ran, so a report also says what was (and wasn't) looked at.
struct DiagramReport {
    std::vector<Failure> failures;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
    std::map<std::string, long long> counts;
    // every failure is counted here; only the first kFailureCap per check keep a record
    std::map<std::string, long long> failure_totals;
    static constexpr long long kFailureCap = 64;

    bool passed() const { return failures.empty(); }

    void fail(std::string check, std::string description, std::vector<std::string> witness = {});
    void tick(const std::string& check, long long n = 1) { counts[check] += n; }
    void warn(std::string w) { warnings.push_back(std::move(w)); }
    void note(std::string n) { notes.push_back(std::move(n)); }
    void merge(const DiagramReport& other, const std::string& prefix = {});

    bool has_failure(const std::string& check) const;
    std::string text() const;
};

}  // namespace parcat
