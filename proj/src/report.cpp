#include "parcat/report.hpp"
#include "parcat/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>

namespace parcat {

void DiagramReport::fail(std::string check, std::string description, std::vector<std::string> witness) {
    if (++failure_totals[check] <= kFailureCap)
        failures.push_back({std::move(check), std::move(description), std::move(witness)});
}

void DiagramReport::merge(const DiagramReport& other, const std::string& prefix) {
    std::map<std::string, long long> stored;
    for (const auto& f : other.failures) {
        std::string key = prefix + f.check;
        auto it = stored.find(key);
        if (it == stored.end()) it = stored.emplace(key, std::min(failure_totals[key], kFailureCap)).first;
        if (it->second < kFailureCap) {
            failures.push_back({key, f.description, f.witness});
            ++it->second;
        }
    }
    for (const auto& [k, v] : other.failure_totals) failure_totals[prefix + k] += v;
    for (const auto& w : other.warnings) warnings.push_back(prefix.empty() ? w : prefix + w);
    for (const auto& n : other.notes) notes.push_back(prefix.empty() ? n : prefix + n);
    for (const auto& [k, v] : other.counts) counts[prefix + k] += v;
}

bool DiagramReport::has_failure(const std::string& check) const {
    for (const auto& f : failures)
        if (f.check == check) return true;
    return false;
}

std::string DiagramReport::text() const {
    std::ostringstream os;
    os << (passed() ? "PASSED" : "FAILED") << "\n";
    for (const auto& [k, v] : counts) os << "  check " << k << ": " << v << "\n";
    for (const auto& f : failures) {
        os << "  failure [" << f.check << "] " << f.description;
        if (!f.witness.empty()) {
            os << " at";
            for (const auto& w : f.witness) os << " " << w;
        }
        os << "\n";
    }
    for (const auto& [k, v] : failure_totals)
        if (v > kFailureCap) os << "  (" << v - kFailureCap << " further [" << k << "] failures not listed)\n";
    for (const auto& w : warnings) os << "  warning: " << w << "\n";
    for (const auto& n : notes) os << "  note: " << n << "\n";
    return os.str();
}

namespace {
std::atomic<int> g_override{0};
}

void set_thread_override(int n) { g_override = n; }

int thread_count() {
    if (int o = g_override.load(); o > 0) return o;
    if (const char* env = std::getenv("PARCAT_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace parcat
