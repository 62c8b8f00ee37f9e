#include "parcat/globalize.hpp"

#include <functional>
#include <map>

#include "parcat/errors.hpp"

namespace parcat {

namespace {

void guarded(DiagramReport& r, const std::string& check, const std::vector<std::string>& witness,
             const std::function<bool()>& body) {
    r.tick(check);
    try {
        if (!body()) r.fail(check, "condition does not hold", witness);
    } catch (const Error& e) {
        r.fail(check, e.what(), witness);
    }
}

GFunctor dom_of(const FinCategory& c, const GTransformation& a) {
    GFunctor f;
    for (MorId m : a.components) f.values.push_back(c.dom(m));
    return f;
}

GFunctor cod_of(const FinCategory& c, const GTransformation& a) {
    GFunctor f;
    for (MorId m : a.components) f.values.push_back(c.cod(m));
    return f;
}

GTransformation identity_of(const FinCategory& c, const GFunctor& f) {
    GTransformation a;
    for (ObjId o : f.values) a.components.push_back(c.id(o));
    return a;
}

// Componentwise inverse; nullopt when some component is not invertible.
std::optional<GTransformation> inverse_of(const FinCategory& c, const GTransformation& a) {
    GTransformation out;
    for (MorId m : a.components) {
        auto i = c.inverse(m);
        if (!i) return std::nullopt;
        out.components.push_back(*i);
    }
    return out;
}

// Structure map Φ(X) • Φ(Y) → Φ(X ⊗ Y): J^k at (𝟙_{k⁻¹}⊗X, 𝟙_{k⁻¹}⊗Y).
GTransformation phi_structure(const PartialAction& t, const UnitalData& u, ObjId x, ObjId y) {
    GTransformation a;
    const auto& c = t.cat();
    GFunctor target = phi_embed(t, u, t.tensor(x, y));
    for (int k = 0; k < t.order(); ++k) {
        ObjId one = u.unit(t.group.inv(k));
        MorId j = t.J(k, t.tensor(one, x), t.tensor(one, y));
        if (c.cod(j) != target.values[k])
            throw DomainError("𝟙⊗X⊗𝟙⊗Y and 𝟙⊗X⊗Y differ at " + t.elem(k) + "; the ambient is not strict enough");
        a.components.push_back(j);
    }
    return a;
}

// (τ_g)_X at k: γ_{k,g} ∘ T_k(J^g_{X, 𝟙_{g⁻¹}⊗𝟙_{(kg)⁻¹}}) ∘ T_k(T_g(X) ⊗ φ(g; k⁻¹)).
GTransformation tau_component(const PartialAction& t, const UnitalData& u, int g, ObjId x) {
    const auto& c = t.cat();
    const auto& grp = t.group;
    const int gi = grp.inv(g);
    GTransformation a;
    GFunctor src = phi_embed(t, u, t.T(g, x));
    GFunctor dst = shift_functor(grp, g, phi_embed(t, u, x));
    for (int k = 0; k < t.order(); ++k) {
        const int ki = grp.inv(k), kgi = grp.inv(grp.mul(k, g));
        ObjId e = t.tensor(u.unit(gi), u.unit(kgi));
        MorId phi = u.phi_of(g, {ki});
        MorId m = t.comp({t.gam(k, g, t.tensor(x, e)), t.T(k, t.J(g, x, e)),
                          t.T(k, t.tensor(t.id(t.T(g, x)), phi))});
        if (c.dom(m) != src.values[k] || c.cod(m) != dst.values[k])
            throw DomainError("tau component has the wrong endpoints at " + t.elem(k));
        a.components.push_back(m);
    }
    return a;
}

template <class T>
std::string join_names(const std::vector<T>& items, const std::function<std::string(T)>& name, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? sep : "") + name(items[i]);
    return s;
}

}  // namespace

GFunctor phi_embed(const PartialAction& t, const UnitalData& u, ObjId x) {
    GFunctor f;
    for (int k = 0; k < t.order(); ++k) f.values.push_back(t.T(k, t.tensor(u.unit(t.group.inv(k)), x)));
    return f;
}

GTransformation phi_embed(const PartialAction& t, const UnitalData& u, MorId m) {
    GTransformation a;
    for (int k = 0; k < t.order(); ++k)
        a.components.push_back(t.T(k, t.tensor(t.id(u.unit(t.group.inv(k))), m)));
    return a;
}

GFunctor shift_functor(const FinGroup& grp, int g, const GFunctor& f) {
    GFunctor out;
    for (int h = 0; h < grp.order(); ++h) out.values.push_back(f.values.at(grp.mul(h, g)));
    return out;
}

GTransformation shift_functor(const FinGroup& grp, int g, const GTransformation& a) {
    GTransformation out;
    for (int h = 0; h < grp.order(); ++h) out.components.push_back(a.components.at(grp.mul(h, g)));
    return out;
}

GFunctor bullet_tensor(const MonoidalStructure& m, const GFunctor& a, const GFunctor& b) {
    GFunctor out;
    for (std::size_t k = 0; k < a.values.size(); ++k) out.values.push_back(m.tensor(a.values[k], b.values[k]));
    return out;
}

GTransformation bullet_tensor(const MonoidalStructure& m, const GTransformation& a, const GTransformation& b) {
    GTransformation out;
    for (std::size_t k = 0; k < a.components.size(); ++k)
        out.components.push_back(m.tensor(a.components[k], b.components[k]));
    return out;
}

std::optional<ObjId> GlobalizedAction::find(const GFunctor& f) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == f) return obj_at(static_cast<int>(i));
    return std::nullopt;
}

std::optional<MorId> GlobalizedAction::find(const GTransformation& a) const {
    for (std::size_t i = 0; i < morphisms.size(); ++i)
        if (morphisms[i] == a) return mor_at(static_cast<int>(i));
    return std::nullopt;
}

GlobalizedAction build_globalization(const PartialAction& t, GlobalizeOptions opts) {
    UnitalResult ur = extract_unital_data(t);
    if (!ur.data) throw NotUnital("globalization needs every domain generated by a central idempotent");
    return build_globalization(t, *ur.data, opts);
}

GlobalizedAction build_globalization(const PartialAction& t, const UnitalData& u, GlobalizeOptions opts) {
    const auto& c = t.cat();
    const auto& grp = t.group;
    const int G = t.order(), n = t.n();
    const long long obj_cap = opts.object_cap > 0 ? opts.object_cap : 10LL * n * G;

    std::vector<GFunctor> objs;
    std::map<GFunctor, int> obj_index;
    auto add_obj = [&](const GFunctor& f) {
        if (obj_index.emplace(f, static_cast<int>(objs.size())).second) {
            objs.push_back(f);
            if (static_cast<long long>(objs.size()) > obj_cap)
                throw ClosureOverflow("more than " + std::to_string(obj_cap) + " objects in the generated category");
        }
    };
    for (int g = 0; g < G; ++g)
        for (int a = 0; a < n; ++a) add_obj(shift_functor(grp, g, phi_embed(t, u, obj_at(a))));
    for (std::size_t i = 0; i < objs.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            GFunctor a = objs[i], b = objs[j];
            add_obj(bullet_tensor(t.ambient, a, b));
            add_obj(bullet_tensor(t.ambient, b, a));
        }

    std::vector<GTransformation> mors;
    std::vector<int> mdom, mcod;
    std::map<GTransformation, int> mor_index;
    auto add_mor = [&](const GTransformation& a) {
        if (!mor_index.emplace(a, static_cast<int>(mors.size())).second) return;
        auto d = obj_index.find(dom_of(c, a)), k = obj_index.find(cod_of(c, a));
        if (d == obj_index.end() || k == obj_index.end())
            throw DomainError("generated morphism leaves the generated objects");
        mors.push_back(a);
        mdom.push_back(d->second);
        mcod.push_back(k->second);
        if (static_cast<long long>(mors.size()) > opts.morphism_cap)
            throw ClosureOverflow("more than " + std::to_string(opts.morphism_cap) +
                                  " morphisms in the generated category");
    };
    auto add_both = [&](const GTransformation& a) {
        add_mor(a);
        auto inv = inverse_of(c, a);
        if (!inv) throw NotInvertible("structure map of the embedding is not invertible");
        add_mor(*inv);
    };
    for (int g = 0; g < G; ++g)
        for (int m = 0; m < c.morphism_count(); ++m) add_mor(shift_functor(grp, g, phi_embed(t, u, mor_at(m))));
    for (int g = 0; g < G; ++g) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                add_both(shift_functor(grp, g, phi_structure(t, u, obj_at(a), obj_at(b))));
        for (int h = 0; h < G; ++h)
            for (ObjId x : t.domains[grp.inv(h)].sub.object_list())
                add_both(shift_functor(grp, g, tau_component(t, u, h, x)));
    }
    for (std::size_t i = 0; i < mors.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            GTransformation a = mors[i], b = mors[j];
            if (mcod[j] == mdom[i]) {
                GTransformation ab;
                for (int k = 0; k < G; ++k) ab.components.push_back(c.compose(a.components[k], b.components[k]));
                add_mor(ab);
            }
            if (i != j && mcod[i] == mdom[j]) {
                GTransformation ba;
                for (int k = 0; k < G; ++k) ba.components.push_back(c.compose(b.components[k], a.components[k]));
                add_mor(ba);
            }
            add_mor(bullet_tensor(t.ambient, a, b));
            if (i != j) add_mor(bullet_tensor(t.ambient, b, a));
        }
    return assemble_globalization(t, u, std::move(objs), std::move(mors));
}

GlobalizedAction assemble_globalization(const PartialAction& t, const UnitalData& u, std::vector<GFunctor> objects,
                                        std::vector<GTransformation> morphisms) {
    const auto& c = t.cat();
    const auto& grp = t.group;
    const int G = t.order(), n = t.n();
    GlobalizedAction out;
    out.objects = std::move(objects);
    out.morphisms = std::move(morphisms);
    auto& rep = out.report;
    std::map<GFunctor, ObjId> oi;
    std::map<GTransformation, MorId> mi;
    for (std::size_t i = 0; i < out.objects.size(); ++i) oi.emplace(out.objects[i], obj_at(static_cast<int>(i)));
    for (std::size_t i = 0; i < out.morphisms.size(); ++i)
        mi.emplace(out.morphisms[i], mor_at(static_cast<int>(i)));
    auto lookup_o = [&](const GFunctor& f, const char* what) {
        auto it = oi.find(f);
        rep.tick(std::string("table-") + what);
        if (it == oi.end()) {
            rep.fail(std::string("table-") + what, "value table is not an object of the generated category");
            return kNoObj;
        }
        return it->second;
    };
    auto lookup_m = [&](const GTransformation& a, const char* what) {
        auto it = mi.find(a);
        rep.tick(std::string("table-") + what);
        if (it == mi.end()) {
            rep.fail(std::string("table-") + what, "family is not a morphism of the generated category");
            return kNoMor;
        }
        return it->second;
    };

    std::function<std::string(ObjId)> oname = [&](ObjId o) { return c.object_name(o); };
    std::function<std::string(MorId)> mname = [&](MorId m) { return c.morphism(m).label; };
    std::vector<std::string> names;
    for (const auto& f : out.objects) names.push_back("(" + join_names(f.values, oname, ",") + ")");
    std::vector<Morphism> ms;
    for (const auto& a : out.morphisms) {
        ObjId d = oi.count(dom_of(c, a)) ? oi.at(dom_of(c, a)) : kNoObj;
        ObjId k = oi.count(cod_of(c, a)) ? oi.at(cod_of(c, a)) : kNoObj;
        if (!valid(d) || !valid(k)) throw MalformedSpec("morphism family with endpoints outside the object set");
        ms.push_back({d, k, "[" + join_names(a.components, mname, " | ") + "]"});
    }
    std::vector<MorId> ids;
    for (const auto& f : out.objects) ids.push_back(lookup_m(identity_of(c, f), "identity"));
    const int N = static_cast<int>(out.objects.size()), M = static_cast<int>(out.morphisms.size());
    std::vector<MorId> comp(static_cast<std::size_t>(M) * M, kNoMor);
    std::vector<MorId> tmor(static_cast<std::size_t>(M) * M, kNoMor);
    std::vector<ObjId> tobj(static_cast<std::size_t>(N) * N, kNoObj);
    for (int b = 0; b < M; ++b)
        for (int a = 0; a < M; ++a) {
            const auto &fb = out.morphisms[b], &fa = out.morphisms[a];
            if (ms[a].cod == ms[b].dom) {
                GTransformation ba;
                for (int k = 0; k < G; ++k) ba.components.push_back(c.compose(fb.components[k], fa.components[k]));
                comp[static_cast<std::size_t>(b) * M + a] = lookup_m(ba, "composite");
            }
            tmor[static_cast<std::size_t>(b) * M + a] = lookup_m(bullet_tensor(t.ambient, fb, fa), "tensor");
        }
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            tobj[static_cast<std::size_t>(a) * N + b] =
                lookup_o(bullet_tensor(t.ambient, out.objects[a], out.objects[b]), "tensor");

    MonoidalStructure hat{FinCategory(names, ms, ids, comp), tobj, tmor, std::nullopt};
    if (rep.passed()) hat.unit = find_strict_unit(hat, Subcategory::whole(hat.cat));

    PartialAction& act = out.action;
    act.group = grp;
    act.ambient = std::move(hat);
    const auto& hc = act.ambient.cat;
    act.domains.assign(G, Ideal{Subcategory::whole(hc), Side::both});
    auto hid = [&](ObjId o) { return valid(o) ? hc.id(o) : kNoMor; };
    for (int g = 0; g < G; ++g) {
        SemigroupalFunctor sf;
        for (const auto& f : out.objects) sf.functor.obj.push_back(lookup_o(shift_functor(grp, g, f), "shift"));
        for (const auto& a : out.morphisms) sf.functor.mor.push_back(lookup_m(shift_functor(grp, g, a), "shift"));
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                ObjId ta = sf.functor.obj[a], tb = sf.functor.obj[b];
                sf.J.push_back(valid(ta) && valid(tb) ? hid(act.ambient.tensor(ta, tb)) : kNoMor);
            }
        act.actors.push_back(std::move(sf));
    }
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            std::vector<MorId> col;
            const auto& tgh = act.actors[grp.mul(g, h)].functor.obj;
            for (int a = 0; a < N; ++a) col.push_back(hid(tgh[a]));
            act.gamma.push_back(std::move(col));
        }
    for (int a = 0; a < N; ++a) act.u.push_back(hc.id(obj_at(a)));

    // (Φ, τ)
    auto& phi = out.morphism.functor;
    for (int a = 0; a < n; ++a) phi.functor.obj.push_back(lookup_o(phi_embed(t, u, obj_at(a)), "phi"));
    for (int m = 0; m < c.morphism_count(); ++m)
        phi.functor.mor.push_back(lookup_m(phi_embed(t, u, mor_at(m)), "phi"));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            MorId j = kNoMor;
            try {
                j = lookup_m(phi_structure(t, u, obj_at(a), obj_at(b)), "phi-J");
            } catch (const Error& e) {
                rep.fail("table-phi-J", e.what(), {c.object_name(obj_at(a)), c.object_name(obj_at(b))});
            }
            phi.J.push_back(j);
        }
    out.morphism.tau.assign(G, std::vector<MorId>(n, kNoMor));
    for (int g = 0; g < G; ++g)
        for (ObjId x : t.domains[grp.inv(g)].sub.object_list()) {
            try {
                out.morphism.tau[g][idx(x)] = lookup_m(tau_component(t, u, g, x), "tau");
            } catch (const Error& e) {
                rep.fail("table-tau", e.what(), {t.elem(g), c.object_name(x)});
            }
        }
    return out;
}

DiagramReport validate_globalization(const PartialAction& t, const UnitalData& u, const GlobalizedAction& glob) {
    DiagramReport r;
    const auto& c = t.cat();
    const auto& grp = t.group;
    const int G = t.order(), n = t.n();
    auto on = [&](ObjId x) { return "X=" + c.object_name(x); };

    // condition (3), table level: every shifted image is present
    for (int g = 0; g < G; ++g)
        for (int a = 0; a < n; ++a)
            guarded(r, "cond3", {"g=" + t.elem(g), on(obj_at(a))}, [&] {
                return glob.find(shift_functor(grp, g, phi_embed(t, u, obj_at(a)))).has_value();
            });
    r.merge(glob.report, "assembly/");
    if (!r.passed()) return r;

    const auto& hat = glob.category();
    const auto& hc = hat.cat;
    const Functor& F = glob.morphism.functor.functor;
    auto hname = [&](ObjId o) { return hc.object_name(o); };

    // The monoidal laws of Ĉ are inherited from C once its tables are the
    // componentwise ones; checking that is quadratic, the full sweep is cubic.
    const int M = hc.morphism_count();
    for (int a = 0; a < hc.object_count(); ++a) {
        guarded(r, "hat-componentwise", {hname(obj_at(a))}, [&] {
            const auto& want = glob.objects.at(a).values;
            const auto& got = glob.morphisms.at(idx(hc.id(obj_at(a)))).components;
            for (int k = 0; k < G; ++k)
                if (got[k] != c.id(want[k])) return false;
            return true;
        });
    }
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const auto& f = glob.morphisms[i].components;
            const auto& g = glob.morphisms[j].components;
            MorId fg = hat.tensor(mor_at(i), mor_at(j));
            r.tick("hat-componentwise");
            bool ok = valid(fg);
            for (int k = 0; ok && k < G; ++k)
                ok = glob.morphisms[idx(fg)].components[k] == t.tensor(f[k], g[k]);
            if (ok && hc.dom(mor_at(i)) == hc.cod(mor_at(j))) {
                MorId gf = hc.compose_raw(mor_at(i), mor_at(j));
                ok = valid(gf);
                for (int k = 0; ok && k < G; ++k) ok = glob.morphisms[idx(gf)].components[k] == c.compose(f[k], g[k]);
            }
            if (!ok)
                r.fail("hat-componentwise", "table entry is not the componentwise composite or product",
                       {hc.describe(mor_at(i)), hc.describe(mor_at(j))});
        }
    if (!r.passed()) return r;
    r.merge(validate_partial_action(glob.action, false), "global/");
    r.tick("global");
    for (int g = 0; g < G; ++g)
        if (glob.action.domains[g].sub != Subcategory::whole(hc)) r.fail("global", "shift action is not global");

    // condition (1)
    r.merge(check_semigroupal_functor(t.ambient, hat, glob.morphism.functor, nullptr, "phi"), "cond1/");
    Subcategory image = iso_closure(hc, image_subcategory(c, hc, F, Subcategory::whole(c)));
    guarded(r, "cond1-ideal", {}, [&] { return is_ideal(hat, image); });
    r.merge(check_equivalence(c, Subcategory::whole(c), hc, image, F, "phi"), "cond1/");
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            guarded(r, "phi-injective", {on(obj_at(a)), on(obj_at(b))}, [&] { return F(obj_at(a)) != F(obj_at(b)); });

    // condition (2) and the extra claim 𝒯_g(U) in the iso-closure of Φ(C_g)
    std::vector<Subcategory> dom_image;
    for (int g = 0; g < G; ++g)
        dom_image.push_back(iso_closure(hc, image_subcategory(c, hc, F, t.domains[g].sub)));
    for (int g = 0; g < G; ++g) {
        const Functor& Tg = glob.action.actors[g].functor;
        for (ObjId U : image.object_list()) {
            ObjId V = Tg(U);
            if (!image.contains(V)) continue;
            std::vector<std::string> w{"g=" + t.elem(g), "U=" + hname(U)};
            guarded(r, "cond2", w, [&] { return dom_image[grp.inv(g)].contains(U); });
            guarded(r, "cond2-extra", w, [&] { return dom_image[g].contains(V); });
        }
    }

    // condition (3): every object lies in the iso-closure of some 𝒯_g(Φ(C))
    Subcategory cover = Subcategory::empty(hc);
    for (int g = 0; g < G; ++g) {
        const Functor& Tg = glob.action.actors[g].functor;
        Functor comp;
        for (int a = 0; a < n; ++a) comp.obj.push_back(Tg(F(obj_at(a))));
        for (int m = 0; m < c.morphism_count(); ++m) comp.mor.push_back(Tg(F(mor_at(m))));
        Subcategory s = iso_closure(hc, image_subcategory(c, hc, comp, Subcategory::whole(c)));
        for (std::size_t i = 0; i < s.objects.size(); ++i) cover.objects[i] |= s.objects[i];
        for (std::size_t i = 0; i < s.morphisms.size(); ++i) cover.morphisms[i] |= s.morphisms[i];
    }
    for (int a = 0; a < hc.object_count(); ++a)
        guarded(r, "cond3", {"U=" + hname(obj_at(a))}, [&] { return cover.contains(obj_at(a)); });
    long long loose = 0;
    for (int m = 0; m < hc.morphism_count(); ++m)
        if (!cover.contains(mor_at(m))) ++loose;
    r.note(std::to_string(loose) + " of " + std::to_string(hc.morphism_count()) +
           " morphisms lie outside the iso-closure of every shifted image (products across different shifts)");

    // (Φ, τ) is a morphism of partial actions
    r.merge(validate_paction_morphism(t, glob.action, glob.morphism), "phi-tau/");

    // C_g is recovered as Φ(C) ∩ 𝒯_g(Φ(C))
    for (int g = 0; g < G; ++g) {
        const Functor& Tg = glob.action.actors[g].functor;
        for (int a = 0; a < n; ++a) {
            ObjId x = obj_at(a);
            guarded(r, "domain-description", {"g=" + t.elem(g), on(x)}, [&] {
                bool hit = false;
                for (int b = 0; b < n && !hit; ++b) hit = hc.isomorphic(F(x), Tg(F(obj_at(b))));
                return hit == t.in(g, x);
            });
        }
    }

    // 𝒯_g(Φ(X)) • 𝒯_h(Φ(Y)) ≅ 𝒯_g(Φ(X ⊗ T_{g⁻¹h}(𝟙_{h⁻¹g} ⊗ Y)))
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            const int gih = grp.mul(grp.inv(g), h);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    ObjId x = obj_at(a), y = obj_at(b);
                    guarded(r, "shifted-product-iso", {"g=" + t.elem(g), "h=" + t.elem(h), on(x), "Y=" + c.object_name(y)},
                            [&] {
                                auto lhs = glob.find(bullet_tensor(t.ambient, shift_functor(grp, g, phi_embed(t, u, x)),
                                                                   shift_functor(grp, h, phi_embed(t, u, y))));
                                ObjId inner = t.T(gih, t.tensor(u.unit(grp.inv(gih)), y));
                                auto rhs = glob.find(shift_functor(grp, g, phi_embed(t, u, t.tensor(x, inner))));
                                return lhs && rhs && hc.isomorphic(*lhs, *rhs);
                            });
                }
        }
    return r;
}

}  // namespace parcat
