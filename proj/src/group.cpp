#include "parcat/group.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "parcat/errors.hpp"

namespace parcat {

int FinGroup::inv(int a) const {
    for (int b = 0; b < order(); ++b)
        if (mul(a, b) == e()) return b;
    throw MalformedSpec("element " + names.at(a) + " has no inverse");
}

FinGroup FinGroup::trivial() { return {{"e"}, {0}}; }

FinGroup FinGroup::cyclic(int n) {
    FinGroup g;
    for (int i = 0; i < n; ++i) g.names.push_back(i == 0 ? "e" : i == 1 ? "g" : "g" + std::to_string(i));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.table.push_back((a + b) % n);
    return g;
}

FinGroup FinGroup::from_permutations(int points, const std::vector<std::vector<int>>& gens,
                                     std::vector<std::vector<int>>* elements) {
    std::vector<int> id(points);
    for (int i = 0; i < points; ++i) id[i] = i;
    for (const auto& p : gens) {
        if (static_cast<int>(p.size()) != points) throw MalformedSpec("permutation has the wrong length");
        auto s = p;
        std::sort(s.begin(), s.end());
        if (s != id) throw MalformedSpec("generator is not a permutation");
    }
    // compose as functions: (p*q)(i) = p(q(i))
    auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(points);
        for (int i = 0; i < points; ++i) r[i] = p[q[i]];
        return r;
    };
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    std::deque<int> work{0};
    while (!work.empty()) {
        int cur = work.front();
        work.pop_front();
        for (const auto& gen : gens) {
            auto next = compose(gen, elems[cur]);
            if (index.emplace(next, static_cast<int>(elems.size())).second) {
                elems.push_back(next);
                work.push_back(static_cast<int>(elems.size()) - 1);
            }
        }
    }
    FinGroup g;
    const int n = static_cast<int>(elems.size());
    bool single = gens.size() == 1;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            g.names.push_back("e");
        } else if (single) {
            g.names.push_back(i == 1 ? "g" : "g" + std::to_string(i));
        } else {
            std::string s = "p";
            for (int v : elems[i]) s += std::to_string(v + 1);
            g.names.push_back(s);
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.table.push_back(index.at(compose(elems[a], elems[b])));
    if (elements) *elements = elems;
    return g;
}

DiagramReport validate_group(const FinGroup& g) {
    DiagramReport r;
    const int n = g.order();
    if (static_cast<int>(g.table.size()) != n * n) throw MalformedSpec("group table has the wrong size");
    for (int v : g.table)
        if (v < 0 || v >= n) throw MalformedSpec("group table entry out of range");
    for (int a = 0; a < n; ++a) {
        r.tick("group-identity");
        if (g.mul(0, a) != a || g.mul(a, 0) != a) r.fail("group-identity", "element 0 is not neutral", {g.names[a]});
        bool has_inv = false;
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) == 0 && g.mul(b, a) == 0) has_inv = true;
        r.tick("group-inverse");
        if (!has_inv) r.fail("group-inverse", "no two-sided inverse", {g.names[a]});
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                r.tick("group-associative");
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    r.fail("group-associative", "not associative", {g.names[a], g.names[b], g.names[c]});
            }
    }
    return r;
}

}  // namespace parcat
