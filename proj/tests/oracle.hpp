#pragma once

// Independent brute-force helpers for tests. Nothing here calls into the
// library's algorithms; values are rebuilt from sets and masks directly.

#include <bit>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline unsigned permute(const std::vector<int>& perm, unsigned mask) {
    unsigned out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (mask >> i & 1u) out |= 1u << perm[i];
    return out;
}

inline std::vector<int> compose(const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

// Powers of a permutation: e, p, p², ... until it cycles.
inline std::vector<std::vector<int>> powers(const std::vector<int>& p) {
    std::vector<int> id(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) id[i] = static_cast<int>(i);
    std::vector<std::vector<int>> out{id};
    for (auto cur = p; cur != id; cur = compose(p, cur)) out.push_back(cur);
    return out;
}

inline std::vector<int> inverse(const std::vector<int>& p) {
    std::vector<int> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

inline bool subset(unsigned a, unsigned b) { return (a & b) == a; }

// Domains of the restriction of a permutation action on subsets of Y:
// C_g = {S ⊆ Y ∩ gY}.
inline std::set<unsigned> restricted_domain(const std::vector<int>& g, unsigned y, const std::set<unsigned>& objects) {
    unsigned top = y & permute(g, y);
    std::set<unsigned> out;
    for (unsigned s : objects)
        if (subset(s, top)) out.insert(s);
    return out;
}

inline std::string open_name(unsigned m) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < 32; ++i)
        if (m >> i & 1u) {
            s += (first ? "" : ",") + std::to_string(i + 1);
            first = false;
        }
    return s + "}";
}

inline std::string support_name(unsigned m) {
    if (m == 0) return "0";
    std::string s = "M";
    for (int i = 0; i < 32; ++i)
        if (m >> i & 1u) s += std::to_string(i + 1);
    return s;
}

inline long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Number of morphisms of the coordinate category on the given supports over GF(p).
inline long long coordinate_morphisms(const std::vector<unsigned>& supports, int p) {
    long long total = 0;
    for (unsigned a : supports)
        for (unsigned b : supports) total += ipow(p, std::popcount(a & b));
    return total;
}

// Thin inclusion category: number of morphisms = comparable ordered pairs.
inline int inclusion_pairs(const std::vector<unsigned>& opens) {
    int n = 0;
    for (unsigned a : opens)
        for (unsigned b : opens)
            if (subset(a, b)) ++n;
    return n;
}

using Table = std::vector<unsigned>;

// Globalization of the restriction of a cyclic permutation action on subsets,
// rebuilt on masks: Φ(X)(k) = σ_k(X ∩ σ_k⁻¹ Y), shifts reindex, • is pointwise ∩.
inline std::set<Table> closure_oracle(const std::vector<int>& perm, unsigned y, const std::vector<unsigned>& opens) {
    auto pw = powers(perm);
    const int G = static_cast<int>(pw.size());
    std::set<Table> seen;
    for (unsigned x : opens) {
        if (!subset(x, y)) continue;
        Table phi;
        for (int k = 0; k < G; ++k)
            phi.push_back(permute(pw[k], x & permute(inverse(pw[k]), y)));
        for (int g = 0; g < G; ++g) {
            Table s;
            for (int h = 0; h < G; ++h) s.push_back(phi[(h + g) % G]);
            seen.insert(s);
        }
    }
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<Table> cur(seen.begin(), seen.end());
        for (const auto& a : cur)
            for (const auto& b : cur) {
                Table p;
                for (std::size_t k = 0; k < a.size(); ++k) p.push_back(a[k] & b[k]);
                grew |= seen.insert(p).second;
            }
    }
    return seen;
}

inline std::set<std::string> oracle_names(const std::set<Table>& tables) {
    std::set<std::string> out;
    for (const auto& t : tables) {
        std::string s = "(";
        for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + open_name(t[k]);
        out.insert(s + ")");
    }
    return out;
}

}  // namespace oracle
