#include "parcat/mutate.hpp"

#include <algorithm>
#include <random>

#include "parcat/errors.hpp"

namespace parcat {

namespace {

// Entries are (table, index) pairs; `slot` returns the cell.
struct Site {
    MorId* cell;
    std::string where;
};

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937& rng) {
    return v[rng() % v.size()];
}

// Replacement for `m`: same endpoints or different ones.
std::optional<MorId> replacement(const FinCategory& c, MorId m, bool shape, std::mt19937& rng) {
    std::vector<MorId> pool;
    for (int k = 0; k < c.morphism_count(); ++k) {
        MorId r = mor_at(k);
        if (r == m) continue;
        bool same = c.dom(r) == c.dom(m) && c.cod(r) == c.cod(m);
        if (same != shape) pool.push_back(r);
    }
    if (pool.empty()) return std::nullopt;
    return pick(pool, rng);
}

}  // namespace

std::vector<std::string> mutation_fields() {
    return {"gamma:shape", "gamma:value", "u:shape", "u:value", "J:shape", "J:value",
            "T.mor:shape", "T.mor:value", "T.obj", "unit"};
}

std::optional<Mutant> corrupt(const PartialAction& t, const std::string& field, unsigned seed) {
    std::mt19937 rng(seed);
    Mutant out{t, field, {}, {}, false};
    auto& a = out.action;
    const auto& c = t.cat();
    const int G = t.order(), n = t.n();
    auto el = [&](int g) { return t.elem(g); };

    auto base = field.substr(0, field.find(':'));
    const bool shape = field.size() > base.size() && field.substr(base.size() + 1) == "shape";
    if (field.size() > base.size() && !shape && field.substr(base.size() + 1) != "value")
        throw DomainError("unknown mutation mode in '" + field + "'");

    if (base == "gamma" || base == "u" || base == "J" || base == "T.mor") {
        std::vector<Site> sites;
        if (base == "gamma") {
            for (int g = 0; g < G; ++g)
                for (int h = 0; h < G; ++h)
                    for (int x = 0; x < n; ++x)
                        if (t.gamma_domain(g, h, obj_at(x)))
                            sites.push_back({&a.gamma[g * G + h][x], "g=" + el(g) + " h=" + el(h) + " X=" + t.name(obj_at(x))});
        } else if (base == "u") {
            for (int x = 0; x < n; ++x) sites.push_back({&a.u[x], "X=" + t.name(obj_at(x))});
        } else if (base == "J") {
            for (int g = 0; g < G; ++g)
                for (int k = 0; k < n * n; ++k)
                    if (valid(a.actors[g].J[k]))
                        sites.push_back({&a.actors[g].J[k], "g=" + el(g) + " X=" + t.name(obj_at(k / n)) +
                                                                " Y=" + t.name(obj_at(k % n))});
        } else {
            for (int g = 0; g < G; ++g)
                for (int f = 0; f < c.morphism_count(); ++f)
                    if (valid(a.actors[g].functor.mor[f]))
                        sites.push_back({&a.actors[g].functor.mor[f], "g=" + el(g) + " f=" + c.describe(mor_at(f))});
        }
        // try sites in a seeded order until one admits a replacement
        std::shuffle(sites.begin(), sites.end(), rng);
        for (auto& s : sites) {
            if (!valid(*s.cell)) continue;
            auto r = replacement(c, *s.cell, shape, rng);
            if (!r) continue;
            out.site = s.where;
            out.change = c.describe(*s.cell) + " -> " + c.describe(*r);
            *s.cell = *r;
            out.shape_breaking = shape;
            return out;
        }
        return std::nullopt;
    }
    if (base == "T.obj") {
        std::vector<std::pair<int, int>> sites;
        for (int g = 0; g < G; ++g)
            for (int x = 0; x < n; ++x)
                if (valid(a.actors[g].functor.obj[x])) sites.push_back({g, x});
        if (sites.empty() || n < 2) return std::nullopt;
        auto [g, x] = pick(sites, rng);
        ObjId old = a.actors[g].functor.obj[x];
        ObjId nw = obj_at((idx(old) + 1 + static_cast<int>(rng() % (n - 1))) % n);
        a.actors[g].functor.obj[x] = nw;
        out.site = "g=" + el(g) + " X=" + t.name(obj_at(x));
        out.change = t.name(old) + " -> " + t.name(nw);
        out.shape_breaking = true;
        return out;
    }
    if (base == "unit") {
        // the generator of C_g is its largest object under ⊗-absorption; dropping
        // any object that absorbs all the others breaks C_g's generation
        std::vector<std::pair<int, int>> sites;
        for (int g = 0; g < G; ++g) {
            const auto& sub = t.domains[g].sub;
            if (g == t.group.e()) continue;
            for (int x = 0; x < n; ++x) {
                if (!sub.contains(obj_at(x))) continue;
                bool gen = true;
                for (int y = 0; y < n && gen; ++y)
                    if (sub.contains(obj_at(y))) gen = t.tensor(obj_at(x), obj_at(y)) == obj_at(y);
                if (gen) sites.push_back({g, x});
            }
        }
        if (sites.empty()) return std::nullopt;
        auto [g, x] = pick(sites, rng);
        auto& sub = a.domains[g].sub;
        sub.objects[x] = 0;
        for (int f = 0; f < c.morphism_count(); ++f)
            if (idx(c.dom(mor_at(f))) == x || idx(c.cod(mor_at(f))) == x) sub.morphisms[f] = 0;
        out.site = "g=" + el(g);
        out.change = "drop " + t.name(obj_at(x)) + " from C_g";
        out.shape_breaking = true;
        return out;
    }
    throw DomainError("unknown mutation field '" + field + "'");
}

}  // namespace parcat
