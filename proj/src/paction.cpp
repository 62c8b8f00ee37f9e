#include "parcat/paction.hpp"

#include <functional>

#include "parcat/errors.hpp"

namespace parcat {

ObjId PartialAction::T(int g, ObjId x) const {
    ObjId r = actors.at(g).functor.obj.at(idx(x));
    if (!valid(r) || !acts_on(g, x))
        throw DomainError("T_" + elem(g) + " undefined at " + name(x));
    return r;
}

MorId PartialAction::T(int g, MorId f) const {
    MorId r = actors.at(g).functor.mor.at(idx(f));
    if (!valid(r) || !in(group.inv(g), f))
        throw DomainError("T_" + elem(g) + " undefined at " + cat().describe(f));
    return r;
}

MorId PartialAction::J(int g, ObjId x, ObjId y) const {
    if (!acts_on(g, x) || !acts_on(g, y))
        throw DomainError("J^" + elem(g) + " undefined at (" + name(x) + "," + name(y) + ")");
    MorId r = actors.at(g).J.at(static_cast<std::size_t>(idx(x)) * n() + idx(y));
    if (!valid(r)) throw DomainError("J^" + elem(g) + " missing at (" + name(x) + "," + name(y) + ")");
    return r;
}

bool PartialAction::gamma_domain(int g, int h, ObjId x) const {
    return in(group.inv(h), x) && in(group.inv(group.mul(g, h)), x);
}

MorId PartialAction::gam(int g, int h, ObjId x) const {
    if (!gamma_domain(g, h, x))
        throw DomainError("gamma_{" + elem(g) + "," + elem(h) + "} undefined at " + name(x));
    MorId r = gamma.at(static_cast<std::size_t>(g) * order() + h).at(idx(x));
    if (!valid(r)) throw DomainError("gamma_{" + elem(g) + "," + elem(h) + "} missing at " + name(x));
    return r;
}

MorId PartialAction::unit_at(ObjId x) const {
    MorId r = u.at(idx(x));
    if (!valid(r)) throw DomainError("u missing at " + name(x));
    return r;
}

MorId PartialAction::comp(std::initializer_list<MorId> chain) const {
    auto it = chain.end();
    MorId acc = *--it;
    while (it != chain.begin()) acc = comp(*--it, acc);
    return acc;
}

MorId PartialAction::inv(MorId f) const {
    auto r = cat().inverse(f);
    if (!r) throw NotInvertible(cat().describe(f) + " has no inverse");
    return *r;
}

namespace {

// Runs one diagram check; exceptions from partial data become failures with the witness.
void guarded(DiagramReport& r, const std::string& check, const std::vector<std::string>& witness,
             const std::function<bool()>& body, const std::string& what = "diagram does not commute") {
    r.tick(check);
    try {
        if (!body()) r.fail(check, what, witness);
    } catch (const Error& e) {
        r.fail(check, e.what(), witness);
    }
}

}  // namespace

DiagramReport validate_partial_action(const PartialAction& t, bool check_ambient) {
    DiagramReport r;
    r.merge(validate_group(t.group), "group/");
    if (check_ambient) r.merge(validate_semigroupal(t.ambient), "ambient/");
    if (!r.passed()) return r;
    const int G = t.order();
    const int n = t.n();
    const auto& c = t.cat();
    if (static_cast<int>(t.domains.size()) != G || static_cast<int>(t.actors.size()) != G ||
        static_cast<int>(t.gamma.size()) != G * G || static_cast<int>(t.u.size()) != n)
        throw MalformedSpec("partial action tables do not match the group order");
    for (const auto& row : t.gamma)
        if (static_cast<int>(row.size()) != n) throw MalformedSpec("gamma row has the wrong size");
    auto el = [&](const char* tag, int g) { return std::string(tag) + "=" + t.elem(g); };
    auto ob = [&](const char* tag, ObjId x) { return std::string(tag) + "=" + t.name(x); };
    const int e = t.group.e();

    r.tick("domain-identity");
    if (t.domains[e].sub != Subcategory::whole(c)) r.fail("domain-identity", "C_e is not the whole category", {el("g", e)});
    for (int g = 0; g < G; ++g) {
        r.tick("domain-ideal");
        if (!is_ideal(t.ambient, t.domains[g].sub)) r.fail("domain-ideal", "C_g is not an ideal", {el("g", g)});
    }
    if (!r.passed()) return r;

    // tables are defined exactly on C_{g⁻¹}; entries elsewhere mean the domain and T_g disagree
    for (int g = 0; g < G; ++g) {
        const auto& dom = t.domains[t.group.inv(g)].sub;
        const auto& f = t.actors[g].functor;
        if (static_cast<int>(f.obj.size()) != n || static_cast<int>(f.mor.size()) != c.morphism_count())
            throw MalformedSpec("actor table has the wrong size");
        for (int a = 0; a < n; ++a) {
            r.tick("actor-support");
            if (valid(f.obj[a]) != dom.contains(obj_at(a)))
                r.fail("actor-support", dom.contains(obj_at(a)) ? "T_g undefined on its domain" : "T_g defined outside its domain",
                       {el("g", g), ob("X", obj_at(a))});
        }
        for (int m = 0; m < c.morphism_count(); ++m) {
            r.tick("actor-support");
            if (valid(f.mor[m]) != dom.contains(mor_at(m)))
                r.fail("actor-support", dom.contains(mor_at(m)) ? "T_g undefined on its domain" : "T_g defined outside its domain",
                       {el("g", g), c.describe(mor_at(m))});
        }
    }
    if (!r.passed()) return r;

    // (1) each T_g is a semigroupal equivalence C_{g⁻¹} → C_g
    std::vector<char> actor_ok(G, 1);
    for (int g = 0; g < G; ++g) {
        const int gi = t.group.inv(g);
        DiagramReport a = check_semigroupal_functor(t.ambient, t.ambient, t.actors[g], &t.domains[gi].sub, "T");
        for (auto& f : a.failures) f.witness.insert(f.witness.begin(), el("g", g));
        if (a.passed()) {
            DiagramReport eq = check_equivalence(c, t.domains[gi].sub, c, t.domains[g].sub, t.actors[g].functor, "T-equivalence");
            for (auto& f : eq.failures) f.witness.insert(f.witness.begin(), el("g", g));
            a.merge(eq);
        }
        actor_ok[g] = a.passed();
        r.merge(a);
    }
    for (int g = 0; g < G; ++g)
        if (!actor_ok[g]) return r;

    // (2) u: Id ⇒ T_e, natural, semigroupal
    bool u_ok = true;
    for (int a = 0; a < n; ++a) {
        ObjId x = obj_at(a);
        MorId ux = t.u[a];
        r.tick("u-shape");
        if (!valid(ux) || c.dom(ux) != x || c.cod(ux) != t.T(e, x)) {
            r.fail("u-shape", "u component has wrong endpoints", {ob("X", x)});
            u_ok = false;
            continue;
        }
        r.tick("u-iso");
        if (!c.is_iso(ux)) r.fail("u-iso", "u component is not invertible", {ob("X", x)});
    }
    if (u_ok) {
        for (int f = 0; f < c.morphism_count(); ++f) {
            MorId ff = mor_at(f);
            guarded(r, "u-natural", {c.describe(ff)}, [&] {
                return t.comp(t.T(e, ff), t.unit_at(c.dom(ff))) == t.comp(t.unit_at(c.cod(ff)), ff);
            });
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                ObjId x = obj_at(a), y = obj_at(b);
                guarded(r, "u-J", {ob("X", x), ob("Y", y)}, [&] {
                    return t.comp(t.J(e, x, y), t.tensor(t.unit_at(x), t.unit_at(y))) == t.unit_at(t.tensor(x, y));
                });
            }
    }

    // (3) T_g restricts to an equivalence C_{g⁻¹}∩C_h → C_g∩C_{gh}
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            const int gi = t.group.inv(g);
            Subcategory src = intersect(t.domains[gi].sub, t.domains[h].sub);
            Subcategory dst = intersect(t.domains[g].sub, t.domains[t.group.mul(g, h)].sub);
            DiagramReport eq = check_equivalence(c, src, c, dst, t.actors[g].functor, "restricted-equivalence");
            for (auto& f : eq.failures) {
                f.witness.insert(f.witness.begin(), el("h", h));
                f.witness.insert(f.witness.begin(), el("g", g));
            }
            r.merge(eq);
        }

    // (4) γ_{g,h}: natural isos T_gT_h ⇒ T_{gh} on C_{h⁻¹}∩C_{(gh)⁻¹}
    int alt_differs = 0;
    bool gamma_ok = true;
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            const int gh = t.group.mul(g, h);
            for (int a = 0; a < n; ++a) {
                ObjId x = obj_at(a);
                bool in_dom = t.gamma_domain(g, h, x);
                bool alt = t.in(t.group.inv(h), x) && t.in(t.group.mul(t.group.inv(h), g), x);
                if (in_dom != alt) ++alt_differs;
                if (!in_dom) continue;
                MorId gx = t.gamma[g * G + h][a];
                r.tick("gamma-shape");
                bool ok = false;
                try {
                    ok = valid(gx) && c.dom(gx) == t.T(g, t.T(h, x)) && c.cod(gx) == t.T(gh, x);
                } catch (const Error&) {
                    ok = false;
                }
                if (!ok) {
                    r.fail("gamma-shape", "gamma component missing or with wrong endpoints", {el("g", g), el("h", h), ob("X", x)});
                    gamma_ok = false;
                    continue;
                }
                r.tick("gamma-iso");
                if (!c.is_iso(gx)) {
                    r.fail("gamma-iso", "gamma component is not invertible", {el("g", g), el("h", h), ob("X", x)});
                    gamma_ok = false;
                }
            }
        }
    if (alt_differs > 0)
        r.note("gamma domain: the definition's reading C_{h^-1}∩C_{(gh)^-1} was used; the alternative C_{h^-1}∩C_{h^-1 g} differs at " +
               std::to_string(alt_differs) + " (g,h,X) points");
    if (!gamma_ok) return r;
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            const int gh = t.group.mul(g, h);
            Subcategory dom = intersect(t.domains[t.group.inv(h)].sub, t.domains[t.group.inv(gh)].sub);
            for (MorId f : dom.morphism_list())
                guarded(r, "gamma-natural", {el("g", g), el("h", h), c.describe(f)}, [&] {
                    return t.comp(t.T(gh, f), t.gam(g, h, c.dom(f))) == t.comp(t.gam(g, h, c.cod(f)), t.T(g, t.T(h, f)));
                });
        }

    // (5) γ_{g,hk}∘T_g(γ_{h,k}) = γ_{gh,k}∘(γ_{g,h})_{T_kX}
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h)
            for (int k = 0; k < G; ++k) {
                const int ki = t.group.inv(k);
                const int khi = t.group.inv(t.group.mul(h, k));
                const int kghi = t.group.inv(t.group.mul(g, t.group.mul(h, k)));
                for (int a = 0; a < n; ++a) {
                    ObjId x = obj_at(a);
                    if (!t.in(ki, x) || !t.in(khi, x) || !t.in(kghi, x)) continue;
                    guarded(r, "gamma-assoc", {el("g", g), el("h", h), el("k", k), ob("X", x)}, [&] {
                        MorId lhs = t.comp(t.gam(g, t.group.mul(h, k), x), t.T(g, t.gam(h, k, x)));
                        MorId rhs = t.comp(t.gam(t.group.mul(g, h), k, x), t.gam(g, h, t.T(k, x)));
                        return lhs == rhs;
                    });
                }
            }

    // (6) u and γ_{e,g}, T_g(u) and γ_{g,e} are mutually inverse on C_{g⁻¹}
    if (u_ok)
        for (int g = 0; g < G; ++g) {
            const int gi = t.group.inv(g);
            for (ObjId x : t.domains[gi].sub.object_list()) {
                guarded(r, "gamma-unit-left", {el("g", g), ob("X", x)}, [&] {
                    ObjId tx = t.T(g, x);
                    MorId ge = t.gam(e, g, x);
                    MorId ut = t.unit_at(tx);
                    return t.comp(ge, ut) == t.id(tx) && t.comp(ut, ge) == t.id(t.T(e, tx));
                });
                guarded(r, "gamma-unit-right", {el("g", g), ob("X", x)}, [&] {
                    MorId tu = t.T(g, t.unit_at(x));
                    MorId gg = t.gam(g, e, x);
                    return t.comp(gg, tu) == t.id(t.T(g, x)) && t.comp(tu, gg) == t.id(t.T(g, t.T(e, x)));
                });
            }
        }

    // (7) γ_{X⊗Y}∘T_g(J^h)∘J^g = J^{gh}∘(γ_X⊗γ_Y)
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            const int gh = t.group.mul(g, h);
            Subcategory dom = intersect(t.domains[t.group.inv(h)].sub, t.domains[t.group.inv(gh)].sub);
            auto objs = dom.object_list();
            for (ObjId x : objs)
                for (ObjId y : objs)
                    guarded(r, "gamma-J", {el("g", g), el("h", h), ob("X", x), ob("Y", y)}, [&] {
                        MorId lhs = t.comp({t.gam(g, h, t.tensor(x, y)), t.T(g, t.J(h, x, y)), t.J(g, t.T(h, x), t.T(h, y))});
                        MorId rhs = t.comp(t.J(gh, x, y), t.tensor(t.gam(g, h, x), t.gam(g, h, y)));
                        return lhs == rhs;
                    });
        }
    return r;
}

Restriction restrict_global(const PartialAction& glob, const Subcategory& ideal) {
    const auto& gc = glob.cat();
    if (!is_ideal(glob.ambient, ideal)) throw DomainError("restriction target is not an ideal");
    Restriction out;
    const int G = glob.order();
    std::vector<int> new_obj(gc.object_count(), -1), new_mor(gc.morphism_count(), -1);
    for (ObjId o : ideal.object_list()) {
        new_obj[idx(o)] = static_cast<int>(out.parent_object.size());
        out.parent_object.push_back(o);
    }
    for (MorId m : ideal.morphism_list()) {
        new_mor[idx(m)] = static_cast<int>(out.parent_morphism.size());
        out.parent_morphism.push_back(m);
    }
    const int n = static_cast<int>(out.parent_object.size());
    const int m = static_cast<int>(out.parent_morphism.size());
    auto no = [&](ObjId o) {
        int v = new_obj.at(idx(o));
        if (v < 0) throw MalformedSpec("restriction leaves the ideal at " + gc.object_name(o));
        return obj_at(v);
    };
    auto nm = [&](MorId f) {
        int v = new_mor.at(idx(f));
        if (v < 0) throw MalformedSpec("restriction leaves the ideal at " + gc.describe(f));
        return mor_at(v);
    };
    std::vector<std::string> names;
    for (ObjId o : out.parent_object) names.push_back(gc.object_name(o));
    std::vector<Morphism> mors;
    for (MorId f : out.parent_morphism) mors.push_back({no(gc.dom(f)), no(gc.cod(f)), gc.morphism(f).label});
    std::vector<MorId> ids;
    for (ObjId o : out.parent_object) ids.push_back(nm(gc.id(o)));
    std::vector<MorId> comp(static_cast<std::size_t>(m) * m, kNoMor);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            MorId ga = out.parent_morphism[a], fb = out.parent_morphism[b];
            if (gc.cod(fb) == gc.dom(ga)) comp[static_cast<std::size_t>(a) * m + b] = nm(gc.compose(ga, fb));
        }
    auto& amb = out.action.ambient;
    amb.cat = FinCategory(names, mors, ids, comp);
    amb.tensor_obj.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            amb.tensor_obj[a * n + b] = no(glob.tensor(out.parent_object[a], out.parent_object[b]));
    amb.tensor_mor.resize(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            amb.tensor_mor[static_cast<std::size_t>(a) * m + b] =
                nm(glob.tensor(out.parent_morphism[a], out.parent_morphism[b]));
    amb.unit = find_strict_unit(amb, Subcategory::whole(amb.cat));

    auto& act = out.action;
    act.group = glob.group;
    // C_g = I ∩ closure(T_g(I ∩ C_{g⁻¹})), computed in the global ambient
    std::vector<Subcategory> global_dom(G);
    for (int g = 0; g < G; ++g) {
        int gi = glob.group.inv(g);
        Subcategory src = intersect(ideal, glob.domains[gi].sub);
        Subcategory img = iso_closure(gc, image_subcategory(gc, gc, glob.actors[g].functor, src));
        global_dom[g] = intersect(ideal, img);
    }
    auto to_new = [&](const Subcategory& s) {
        Subcategory r = Subcategory::empty(amb.cat);
        for (ObjId o : s.object_list()) r.objects[idx(no(o))] = 1;
        for (MorId f : s.morphism_list()) r.morphisms[idx(nm(f))] = 1;
        return r;
    };
    for (int g = 0; g < G; ++g) act.domains.push_back({to_new(global_dom[g]), Side::both});
    for (int g = 0; g < G; ++g) {
        int gi = glob.group.inv(g);
        SemigroupalFunctor sf;
        sf.functor.obj.assign(n, kNoObj);
        sf.functor.mor.assign(m, kNoMor);
        sf.J.assign(static_cast<std::size_t>(n) * n, kNoMor);
        for (ObjId o : global_dom[gi].object_list()) sf.functor.obj[idx(no(o))] = no(glob.T(g, o));
        for (MorId f : global_dom[gi].morphism_list()) sf.functor.mor[idx(nm(f))] = nm(glob.T(g, f));
        for (ObjId x : global_dom[gi].object_list())
            for (ObjId y : global_dom[gi].object_list())
                sf.J[idx(no(x)) * n + idx(no(y))] = nm(glob.J(g, x, y));
        act.actors.push_back(std::move(sf));
    }
    act.gamma.assign(static_cast<std::size_t>(G) * G, std::vector<MorId>(n, kNoMor));
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            int gh = glob.group.mul(g, h);
            Subcategory dom = intersect(global_dom[glob.group.inv(h)], global_dom[glob.group.inv(gh)]);
            for (ObjId x : dom.object_list()) act.gamma[g * G + h][idx(no(x))] = nm(glob.gam(g, h, x));
        }
    act.u.assign(n, kNoMor);
    for (int a = 0; a < n; ++a) act.u[a] = nm(glob.unit_at(out.parent_object[a]));

    for (int g = 0; g < G; ++g) {
        out.report.tick("restricted-domain-ideal");
        if (!is_ideal(amb, act.domains[g].sub))
            out.report.fail("restricted-domain-ideal", "restricted domain is not an ideal of I", {"g=" + act.elem(g)});
    }
    out.report.merge(validate_partial_action(act));
    return out;
}

ObjId UnitalData::product(const PartialAction& t, unsigned mask) const {
    ObjId acc = kNoObj;
    for (int g = 0; g < t.order(); ++g) {
        if (!(mask & (1u << g))) continue;
        acc = valid(acc) ? t.tensor(acc, unit(g)) : unit(g);
    }
    if (!valid(acc)) throw DomainError("empty unit product");
    return acc;
}

unsigned UnitalData::source_mask(const FinGroup& grp, int g, unsigned mask) {
    int gi = grp.inv(g);
    unsigned out = 1u << gi;
    for (int s = 0; s < grp.order(); ++s)
        if (mask & (1u << s)) out |= 1u << grp.mul(gi, s);
    return out;
}

MorId UnitalData::phi_mask(int g, unsigned mask) const {
    auto it = phi.find({g, mask | (1u << g)});
    if (it == phi.end()) throw DomainError("phi not available for this index set");
    return it->second;
}

MorId UnitalData::phi_of(int g, std::initializer_list<int> others) const {
    unsigned mask = 1u << g;
    for (int s : others) mask |= 1u << s;
    return phi_mask(g, mask);
}

UnitalResult extract_unital_data(const PartialAction& t) {
    UnitalResult out;
    auto& r = out.report;
    const auto& c = t.cat();
    const int G = t.order();
    const int n = t.n();
    if (G > 16) throw MalformedSpec("unital data supports groups of order at most 16");
    // object tensor must commute on the nose
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            r.tick("strict-commutative");
            if (t.tensor(obj_at(a), obj_at(b)) != t.tensor(obj_at(b), obj_at(a)))
                r.fail("strict-commutative", "object tensor does not commute on the nose",
                       {t.name(obj_at(a)), t.name(obj_at(b))});
        }
    UnitalData data;
    auto candidates = enumerate_central_idempotents(t.ambient, 1);
    for (int g = 0; g < G; ++g) {
        std::vector<CentralIdempotent> gens;
        for (const auto& cand : candidates)
            if (generated_ideal(t.ambient, cand.canonical).sub == t.domains[g].sub) gens.push_back(cand.canonical);
        data.unit_candidates.push_back(static_cast<int>(gens.size()));
        if (gens.empty()) {
            r.fail("unit-generator", "C_g is not generated by a central idempotent", {"g=" + t.elem(g)});
            continue;
        }
        const CentralIdempotent* pick = &gens.front();
        if (g == t.group.e() && t.ambient.unit)
            for (const auto& ci : gens)
                if (ci.e == *t.ambient.unit) pick = &ci;
        if (gens.size() > 1) {
            bool all_iso = true;
            for (const auto& ci : gens)
                if (!c.isomorphic(ci.e, pick->e)) all_iso = false;
            std::string msg = std::to_string(gens.size()) + " generators for C_" + t.elem(g) + ", picked " + t.name(pick->e);
            if (!all_iso)
                r.warn("AmbiguousUnit: " + msg + " (not all isomorphic)");
            else
                r.note(msg);
        }
        data.units.push_back(*pick);
    }
    if (!r.passed()) return out;
    for (int g = 0; g < G; ++g) {
        ObjId e = data.unit(g);
        const auto& ci = data.units[g];
        r.tick("strict-unit-witness");
        if (ci.fusion != c.id(e))
            r.fail("strict-unit-witness", "least fusion witness is not an identity", {"g=" + t.elem(g)});
        for (ObjId x : t.domains[g].sub.object_list()) {
            r.tick("strict-absorption");
            if (t.tensor(x, e) != x || t.tensor(e, x) != x)
                r.fail("strict-absorption", "unit of C_g does not absorb on the nose", {"g=" + t.elem(g), t.name(x)});
        }
    }
    if (!r.passed()) return out;
    // φ over every index set containing g
    for (int g = 0; g < G; ++g) {
        for (unsigned mask = 0; mask < (1u << G); ++mask) {
            if (!(mask & (1u << g))) continue;
            std::vector<std::string> wit{"g=" + t.elem(g), "set=" + std::to_string(mask)};
            try {
                ObjId tgt = data.product(t, mask);
                ObjId src = data.product(t, UnitalData::source_mask(t.group, g, mask));
                ObjId tsrc = t.T(g, src);
                int hits = 0;
                MorId chosen = kNoMor;
                for (MorId phi : c.isos(tgt, tsrc)) {
                    bool ok = true;
                    for (int b = 0; b < n && ok; ++b) {
                        ObjId x = t.tensor(src, obj_at(b));
                        ObjId tx = t.T(g, x);
                        MorId jinv = c.inverse(t.J(g, src, x)).value_or(kNoMor);
                        if (!valid(jinv) || t.tensor(tgt, tx) != tx) {
                            ok = false;
                            break;
                        }
                        if (t.tensor(phi, t.id(tx)) != jinv) ok = false;
                    }
                    if (ok) {
                        if (!valid(chosen)) chosen = phi;
                        ++hits;
                    }
                }
                r.tick("phi-square");
                if (!valid(chosen)) {
                    r.fail("phi-square", "no iso satisfies the unit/J compatibility", wit);
                    continue;
                }
                data.phi[{g, mask}] = chosen;
                data.phi_multiplicity[{g, mask}] = hits;
                if (hits > 1) r.note("phi for g=" + t.elem(g) + " set=" + std::to_string(mask) + " has " + std::to_string(hits) + " candidates; least id kept");
            } catch (const Error& ex) {
                r.fail("phi-square", ex.what(), wit);
            }
        }
    }
    if (!r.passed()) return out;
    // φ^e on 𝟙 must agree with u so that σ̃_e = u⁻¹ is consistent
    r.tick("phi-e-unit");
    if (data.phi_of(t.group.e()) != t.unit_at(data.unit(t.group.e())))
        r.warn("phi^e differs from u at the unit object");
    out.data = std::move(data);
    return out;
}

DiagramReport validate_paction_morphism(const PartialAction& s, const PartialAction& d, const PActionMorphism& mph) {
    DiagramReport r = check_semigroupal_functor(s.ambient, d.ambient, mph.functor, nullptr, "F");
    if (!r.passed()) return r;
    const Functor& F = mph.functor.functor;
    const auto& dc = d.cat();
    const int G = s.order();
    if (d.order() != G) throw MalformedSpec("morphism between actions of different groups");
    if (static_cast<int>(mph.tau.size()) != G) throw MalformedSpec("tau table has the wrong size");
    auto el = [&](const char* tag, int g) { return std::string(tag) + "=" + s.elem(g); };
    auto tau = [&](int g, ObjId x) {
        MorId v = mph.tau[g].at(idx(x));
        if (!valid(v)) throw DomainError("tau_" + s.elem(g) + " missing at " + s.name(x));
        return v;
    };
    bool shapes = true;
    for (int g = 0; g < G; ++g) {
        for (ObjId x : s.domains[s.group.inv(g)].sub.object_list()) {
            guarded(r, "tau-shape", {el("g", g), "X=" + s.name(x)}, [&] {
                MorId v = tau(g, x);
                bool ok = dc.dom(v) == F(s.T(g, x)) && dc.cod(v) == d.T(g, F(x)) && dc.is_iso(v);
                if (!ok) shapes = false;
                return ok;
            });
        }
    }
    if (!shapes) return r;
    for (int g = 0; g < G; ++g)
        for (MorId f : s.domains[s.group.inv(g)].sub.morphism_list())
            guarded(r, "tau-natural", {el("g", g), s.cat().describe(f)}, [&] {
                return dc.compose(d.T(g, F(f)), tau(g, s.cat().dom(f))) == dc.compose(tau(g, s.cat().cod(f)), F(s.T(g, f)));
            });
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            int gh = s.group.mul(g, h);
            Subcategory dom = intersect(s.domains[s.group.inv(h)].sub, s.domains[s.group.inv(gh)].sub);
            for (ObjId x : dom.object_list())
                guarded(r, "tau-gamma", {el("g", g), el("h", h), "X=" + s.name(x)}, [&] {
                    MorId lhs = dc.compose(tau(gh, x), F(s.gam(g, h, x)));
                    MorId rhs = d.comp({d.gam(g, h, F(x)), d.T(g, tau(h, x)), tau(g, s.T(h, x))});
                    return lhs == rhs;
                });
        }
    const int e = s.group.e();
    for (int a = 0; a < s.n(); ++a) {
        ObjId x = obj_at(a);
        guarded(r, "tau-u", {"X=" + s.name(x)}, [&] {
            return dc.compose(tau(e, x), F(s.unit_at(x))) == d.unit_at(F(x));
        });
    }
    return r;
}

Functor pi_endofunctor(const PartialAction& t, const UnitalData& u, int g) {
    const auto& c = t.cat();
    const int gi = t.group.inv(g);
    ObjId one = u.unit(gi);
    Functor f;
    for (int a = 0; a < t.n(); ++a) f.obj.push_back(t.T(g, t.tensor(obj_at(a), one)));
    for (int m = 0; m < c.morphism_count(); ++m) f.mor.push_back(t.T(g, t.tensor(mor_at(m), c.id(one))));
    return f;
}

std::optional<NatTransformation> find_natural_iso(const FinCategory& c, const Functor& f, const Functor& g,
                                                  long long budget) {
    const int n = static_cast<int>(f.obj.size());
    std::vector<std::vector<MorId>> cand(n);
    for (int a = 0; a < n; ++a) {
        cand[a] = c.isos(f.obj[a], g.obj[a]);
        if (cand[a].empty()) return std::nullopt;
    }
    // morphisms of the source between objects a, b are needed: recover them from f.mor
    // by endpoint, which requires the source category; callers pass endofunctors on c.
    NatTransformation t{std::vector<MorId>(n, kNoMor)};
    long long steps = 0;
    std::function<bool(int)> rec = [&](int a) -> bool {
        if (a == n) return true;
        for (MorId comp : cand[a]) {
            if (++steps > budget) throw SearchBudgetExceeded("natural isomorphism search");
            t.components[a] = comp;
            bool ok = true;
            for (int b = 0; b <= a && ok; ++b) {
                for (MorId m : c.hom(obj_at(b), obj_at(a))) {
                    if (c.compose(g.mor[idx(m)], t.components[b]) != c.compose(t.components[a], f.mor[idx(m)])) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
                for (MorId m : c.hom(obj_at(a), obj_at(b))) {
                    if (c.compose(g.mor[idx(m)], t.components[a]) != c.compose(t.components[b], f.mor[idx(m)])) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok && rec(a + 1)) return true;
        }
        t.components[a] = kNoMor;
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return t;
}

PiReport check_pi_relations(const PartialAction& t, const UnitalData& u) {
    PiReport out;
    auto& r = out.report;
    const auto& c = t.cat();
    const int G = t.order();
    for (int g = 0; g < G; ++g) {
        out.pi.push_back(pi_endofunctor(t, u, g));
        r.merge(validate_functor(c, c, out.pi.back(), nullptr, "pi"));
    }
    if (!r.passed()) return out;
    auto rel = [&](const std::string& name, const Functor& a, const Functor& b, std::vector<std::string> wit) {
        r.tick(name);
        try {
            if (!find_natural_iso(c, a, b)) r.fail(name, "no natural isomorphism found", wit);
        } catch (const Error& ex) {
            r.fail(name, ex.what(), wit);
        }
    };
    const auto& grp = t.group;
    rel("pi-relation-I", out.pi[grp.e()], Functor::identity(c), {});
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            int hi = grp.inv(h), gi = grp.inv(g), gh = grp.mul(g, h);
            std::vector<std::string> wit{"g=" + t.elem(g), "h=" + t.elem(h)};
            rel("pi-relation-II", compose_functors(out.pi[g], compose_functors(out.pi[h], out.pi[hi])),
                compose_functors(out.pi[gh], out.pi[hi]), wit);
            rel("pi-relation-III", compose_functors(out.pi[gi], compose_functors(out.pi[g], out.pi[h])),
                compose_functors(out.pi[gi], out.pi[gh]), wit);
        }
    return out;
}

}  // namespace parcat
