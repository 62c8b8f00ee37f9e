#pragma once

#include <string>
#include <vector>

#include "parcat/report.hpp"

namespace parcat {

// Finite group as a multiplication table; element 0 is always the identity.
struct FinGroup {
    std::vector<std::string> names;
    std::vector<int> table;  // a * order + b = ab

    int order() const { return static_cast<int>(names.size()); }
    int e() const { return 0; }
    int mul(int a, int b) const { return table.at(static_cast<std::size_t>(a) * order() + b); }
    int inv(int a) const;
    bool operator==(const FinGroup&) const = default;

    static FinGroup trivial();
    static FinGroup cyclic(int n);
    // Permutation group generated by `gens` (images of 0..points-1); elements are
    // listed by breadth-first closure so powers of a single generator come out in order.
    static FinGroup from_permutations(int points, const std::vector<std::vector<int>>& gens,
                                      std::vector<std::vector<int>>* elements = nullptr);
};

DiagramReport validate_group(const FinGroup& g);

}  // namespace parcat
