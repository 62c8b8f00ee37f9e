#include "parcat/monoidal.hpp"

#include <deque>

#include "parcat/errors.hpp"
#include "parcat/parallel.hpp"

namespace parcat {

ObjId MonoidalStructure::tensor(ObjId a, ObjId b) const {
    return tensor_obj.at(static_cast<std::size_t>(idx(a)) * n() + idx(b));
}

MorId MonoidalStructure::tensor(MorId f, MorId g) const {
    return tensor_mor.at(static_cast<std::size_t>(idx(f)) * m() + idx(g));
}

MorId SemigroupalFunctor::component(ObjId x, ObjId y, int n) const {
    MorId r = J.at(static_cast<std::size_t>(idx(x)) * n + idx(y));
    if (!valid(r)) throw DomainError("J undefined at (" + std::to_string(idx(x)) + "," + std::to_string(idx(y)) + ")");
    return r;
}

DiagramReport validate_semigroupal(const MonoidalStructure& ms) {
    const auto& c = ms.cat;
    const int n = ms.n(), m = ms.m();
    if (static_cast<int>(ms.tensor_obj.size()) != n * n || static_cast<int>(ms.tensor_mor.size()) != m * m)
        throw MalformedSpec("tensor tables have the wrong size");
    for (ObjId o : ms.tensor_obj)
        if (idx(o) < 0 || idx(o) >= n) throw MalformedSpec("tensor_obj entry out of range");
    for (MorId f : ms.tensor_mor)
        if (idx(f) < 0 || idx(f) >= m) throw MalformedSpec("tensor_mor entry out of range");
    DiagramReport r = validate_category(c);
    if (!r.passed()) return r;
    auto on = [&](ObjId o) { return c.object_name(o); };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int d = 0; d < n; ++d) {
                ObjId x = obj_at(a), y = obj_at(b), z = obj_at(d);
                r.tick("tensor-associative");
                if (ms.tensor(ms.tensor(x, y), z) != ms.tensor(x, ms.tensor(y, z)))
                    r.fail("tensor-associative", "object tensor is not associative", {on(x), on(y), on(z)});
            }
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            MorId ff = mor_at(f), gg = mor_at(g);
            MorId t = ms.tensor(ff, gg);
            r.tick("tensor-endpoints");
            if (c.dom(t) != ms.tensor(c.dom(ff), c.dom(gg)) || c.cod(t) != ms.tensor(c.cod(ff), c.cod(gg)))
                r.fail("tensor-endpoints", "tensor of morphisms has wrong endpoints", {c.describe(ff), c.describe(gg)});
        }
    if (!r.passed()) return r;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ObjId x = obj_at(a), y = obj_at(b);
            r.tick("tensor-identity");
            if (ms.tensor(c.id(x), c.id(y)) != c.id(ms.tensor(x, y)))
                r.fail("tensor-identity", "id⊗id is not the identity", {on(x), on(y)});
        }
    // the two quartic/cubic sweeps dominate; split them per f and merge in order
    auto per_f = parallel_collect<DiagramReport>(static_cast<std::size_t>(m), [&](std::size_t fi) {
        DiagramReport part;
        MorId ff = mor_at(static_cast<int>(fi));
        long long assoc = 0, inter = 0;
        for (int g = 0; g < m; ++g) {
            MorId gg = mor_at(g);
            MorId fg = ms.tensor(ff, gg);
            for (int h = 0; h < m; ++h) {
                MorId hh = mor_at(h);
                ++assoc;
                if (ms.tensor(fg, hh) != ms.tensor(ff, ms.tensor(gg, hh)))
                    part.fail("tensor-associative-morphisms", "morphism tensor is not associative",
                              {c.describe(ff), c.describe(gg), c.describe(hh)});
            }
        }
        for (int a = 0; a < n; ++a)
            for (MorId f2 : c.hom(c.cod(ff), obj_at(a))) {
                MorId f2f = c.compose_raw(f2, ff);
                for (int g = 0; g < m; ++g) {
                    MorId gg = mor_at(g);
                    MorId fg = ms.tensor(ff, gg);
                    for (int b = 0; b < n; ++b)
                        for (MorId g2 : c.hom(c.cod(gg), obj_at(b))) {
                            ++inter;
                            MorId lhs = ms.tensor(f2f, c.compose_raw(g2, gg));
                            MorId rhs = c.compose_raw(ms.tensor(f2, g2), fg);
                            if (lhs != rhs)
                                part.fail("interchange", "interchange law fails",
                                          {c.describe(f2), c.describe(ff), c.describe(g2), c.describe(gg)});
                        }
                }
            }
        part.tick("tensor-associative-morphisms", assoc);
        part.tick("interchange", inter);
        return part;
    });
    for (const auto& part : per_f) r.merge(part);
    if (ms.unit) {
        ObjId u = *ms.unit;
        for (int a = 0; a < n; ++a) {
            r.tick("unit-objects");
            if (ms.tensor(u, obj_at(a)) != obj_at(a) || ms.tensor(obj_at(a), u) != obj_at(a))
                r.fail("unit-objects", "unit does not act strictly", {on(obj_at(a))});
        }
        for (int f = 0; f < m; ++f) {
            r.tick("unit-morphisms");
            if (ms.tensor(c.id(u), mor_at(f)) != mor_at(f) || ms.tensor(mor_at(f), c.id(u)) != mor_at(f))
                r.fail("unit-morphisms", "unit identity does not act strictly", {c.describe(mor_at(f))});
        }
    }
    return r;
}

std::optional<ObjId> find_strict_unit(const MonoidalStructure& ms, const Subcategory& scope) {
    const auto& c = ms.cat;
    for (ObjId u : scope.object_list()) {
        bool ok = true;
        for (ObjId x : scope.object_list())
            if (ms.tensor(u, x) != x || ms.tensor(x, u) != x) {
                ok = false;
                break;
            }
        if (!ok) continue;
        for (MorId f : scope.morphism_list())
            if (ms.tensor(c.id(u), f) != f || ms.tensor(f, c.id(u)) != f) {
                ok = false;
                break;
            }
        if (ok) return u;
    }
    return std::nullopt;
}

DiagramReport check_semigroupal_functor(const MonoidalStructure& src, const MonoidalStructure& tgt,
                                        const SemigroupalFunctor& sf, const Subcategory* domain,
                                        const std::string& name) {
    const auto& sc = src.cat;
    const auto& tc = tgt.cat;
    const Functor& f = sf.functor;
    DiagramReport r = validate_functor(sc, tc, f, domain, name);
    if (!r.passed()) return r;
    Subcategory whole = Subcategory::whole(sc);
    const Subcategory& dom = domain ? *domain : whole;
    auto objs = dom.object_list();
    const int n = src.n();
    if (static_cast<int>(sf.J.size()) != n * n) throw MalformedSpec(name + ": J table has the wrong size");
    auto on = [&](ObjId o) { return sc.object_name(o); };
    bool shapes_ok = true;
    for (ObjId x : objs)
        for (ObjId y : objs) {
            MorId j = sf.J[idx(x) * n + idx(y)];
            r.tick(name + "-J-shape");
            if (!valid(j) || idx(j) >= tc.morphism_count() || tc.dom(j) != tgt.tensor(f(x), f(y)) ||
                tc.cod(j) != f(src.tensor(x, y))) {
                r.fail(name + "-J-shape", "J component has wrong endpoints", {on(x), on(y)});
                shapes_ok = false;
                continue;
            }
            r.tick(name + "-J-iso");
            if (!tc.is_iso(j)) r.fail(name + "-J-iso", "J component is not invertible", {on(x), on(y)});
        }
    if (!shapes_ok) return r;
    // naturality of J in both variables
    for (MorId a : dom.morphism_list())
        for (MorId b : dom.morphism_list()) {
            r.tick(name + "-J-natural");
            ObjId x = sc.dom(a), y = sc.dom(b), x2 = sc.cod(a), y2 = sc.cod(b);
            MorId lhs = tc.compose(f(src.tensor(a, b)), sf.J[idx(x) * n + idx(y)]);
            MorId rhs = tc.compose(sf.J[idx(x2) * n + idx(y2)], tgt.tensor(f(a), f(b)));
            if (lhs != rhs) r.fail(name + "-J-natural", "J is not natural", {sc.describe(a), sc.describe(b)});
        }
    // strict hexagon
    for (ObjId x : objs)
        for (ObjId y : objs)
            for (ObjId z : objs) {
                r.tick(name + "-hexagon");
                ObjId xy = src.tensor(x, y), yz = src.tensor(y, z);
                MorId lhs = tc.compose(sf.J[idx(xy) * n + idx(z)], tgt.tensor(sf.J[idx(x) * n + idx(y)], tc.id(f(z))));
                MorId rhs = tc.compose(sf.J[idx(x) * n + idx(yz)], tgt.tensor(tc.id(f(x)), sf.J[idx(y) * n + idx(z)]));
                if (lhs != rhs) r.fail(name + "-hexagon", "J hexagon fails", {on(x), on(y), on(z)});
            }
    if (sf.J0 && src.unit && tgt.unit) {
        MorId j0 = *sf.J0;
        ObjId u = *src.unit;
        r.tick(name + "-J0-shape");
        if (tc.dom(j0) != *tgt.unit || tc.cod(j0) != f(u)) {
            r.fail(name + "-J0-shape", "J0 has wrong endpoints");
            return r;
        }
        for (ObjId x : objs) {
            r.tick(name + "-unit-squares");
            MorId left = tc.compose(sf.J[idx(u) * n + idx(x)], tgt.tensor(j0, tc.id(f(x))));
            MorId right = tc.compose(sf.J[idx(x) * n + idx(u)], tgt.tensor(tc.id(f(x)), j0));
            if (left != tc.id(f(x)) || right != tc.id(f(x)))
                r.fail(name + "-unit-squares", "unit compatibility fails", {on(x)});
        }
    }
    return r;
}

DiagramReport validate_semigroupal_functor(const MonoidalStructure& src, const MonoidalStructure& tgt,
                                           const SemigroupalFunctor& f, const Subcategory* domain) {
    DiagramReport r = check_semigroupal_functor(src, tgt, f, domain, "F");
    for (const auto& fl : r.failures)
        if (fl.check == "F-J-iso") {
            std::string at;
            for (const auto& w : fl.witness) at += " " + w;
            throw NotIsomorphism("J component at" + at + " has no inverse");
        }
    return r;
}

DiagramReport validate_functor_morphism(const MonoidalStructure& src, const MonoidalStructure& tgt,
                                        const NatTransformation& eta, const SemigroupalFunctor& f,
                                        const SemigroupalFunctor& g, const Subcategory* domain) {
    const auto& sc = src.cat;
    const auto& tc = tgt.cat;
    DiagramReport r = validate_natural_transformation(sc, tc, f.functor, g.functor, eta, domain, "eta");
    Subcategory whole = Subcategory::whole(sc);
    const Subcategory& dom = domain ? *domain : whole;
    const int n = src.n();
    for (ObjId x : dom.object_list())
        for (ObjId y : dom.object_list()) {
            r.tick("eta-J-square");
            ObjId xy = src.tensor(x, y);
            MorId lhs = tc.compose(eta.components[idx(xy)], f.J[idx(x) * n + idx(y)]);
            MorId rhs = tc.compose(g.J[idx(x) * n + idx(y)],
                                   tgt.tensor(eta.components[idx(x)], eta.components[idx(y)]));
            if (lhs != rhs) r.fail("eta-J-square", "monoidal square fails", {sc.object_name(x), sc.object_name(y)});
        }
    if (f.J0 && g.J0 && src.unit) {
        r.tick("eta-unit-triangle");
        if (tc.compose(eta.components[idx(*src.unit)], *f.J0) != *g.J0)
            r.fail("eta-unit-triangle", "unit triangle fails");
    }
    return r;
}

Subcategory iso_closure(const FinCategory& c, const Subcategory& s) {
    Subcategory out = Subcategory::empty(c);
    const int n = c.object_count();
    // objects: everything isomorphic to a member
    for (int y = 0; y < n; ++y)
        for (ObjId x : s.object_list())
            if (c.isomorphic(x, obj_at(y))) {
                out.objects[y] = 1;
                break;
            }
    // morphisms: ν∘φ∘μ⁻¹ for φ in s and isos μ: dom φ → X', ν: cod φ → Y'
    std::deque<MorId> work;
    auto add = [&](MorId m) {
        if (!out.morphisms[idx(m)]) {
            out.morphisms[idx(m)] = 1;
            work.push_back(m);
        }
    };
    for (MorId phi : s.morphism_list()) {
        ObjId x = c.dom(phi), y = c.cod(phi);
        for (int a = 0; a < n; ++a) {
            auto mus = c.isos(x, obj_at(a));
            if (mus.empty()) continue;
            for (int b = 0; b < n; ++b) {
                auto nus = c.isos(y, obj_at(b));
                for (MorId mu : mus)
                    for (MorId nu : nus) add(c.compose(c.compose(nu, phi), *c.inverse(mu)));
            }
        }
    }
    for (ObjId o : out.object_list()) add(c.id(o));
    // close under composition
    while (!work.empty()) {
        MorId f = work.front();
        work.pop_front();
        auto members = out.morphism_list();
        for (MorId g : members) {
            if (c.cod(f) == c.dom(g)) add(c.compose(g, f));
            if (c.cod(g) == c.dom(f)) add(c.compose(f, g));
        }
    }
    return out;
}

bool is_ideal(const MonoidalStructure& ms, const Subcategory& s, Side side) {
    if (iso_closure(ms.cat, s) != s) return false;
    for (ObjId x : s.object_list())
        for (int a = 0; a < ms.n(); ++a) {
            ObjId y = obj_at(a);
            if (side != Side::right && !s.contains(ms.tensor(y, x))) return false;
            if (side != Side::left && !s.contains(ms.tensor(x, y))) return false;
        }
    return true;
}

Ideal intersect_ideals(const Ideal& a, const Ideal& b) {
    Side side = a.side == b.side ? a.side : (a.side == Side::both ? b.side : a.side);
    return {intersect(a.sub, b.sub), side};
}

Subcategory image_subcategory(const FinCategory& src, const FinCategory& tgt, const Functor& f,
                              const Subcategory& s) {
    Subcategory out = Subcategory::empty(tgt);
    for (ObjId o : s.object_list()) out.objects[idx(f(o))] = 1;
    for (MorId m : s.morphism_list()) out.morphisms[idx(f(m))] = 1;
    (void)src;
    return out;
}

Ideal image_ideal(const MonoidalStructure& src, const MonoidalStructure& tgt, const Functor& f, const Ideal& i) {
    Subcategory img = iso_closure(tgt.cat, image_subcategory(src.cat, tgt.cat, f, i.sub));
    DiagramReport eq = check_equivalence(src.cat, i.sub, tgt.cat, img, f, "image");
    if (!eq.passed()) {
        const auto& fl = eq.failures.front();
        std::string at;
        for (const auto& w : fl.witness) at += " " + w;
        throw NotEquivalence(fl.description + " at" + at);
    }
    return {img, i.side};
}

}  // namespace parcat
