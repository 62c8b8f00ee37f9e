#include "parcat/equivar.hpp"

#include <algorithm>
#include <functional>

#include "parcat/errors.hpp"

namespace parcat {

namespace {

void guarded(DiagramReport& r, const std::string& check, const std::vector<std::string>& witness,
             const std::function<bool()>& body, const std::string& what = "diagram does not commute") {
    r.tick(check);
    try {
        if (!body()) r.fail(check, what, witness);
    } catch (const Error& e) {
        r.fail(check, e.what(), witness);
    }
}

unsigned bit(int g) { return 1u << g; }

unsigned translate(const FinGroup& grp, int g, unsigned mask) {
    unsigned out = 0;
    for (int s = 0; s < grp.order(); ++s)
        if (mask & bit(s)) out |= bit(grp.mul(g, s));
    return out;
}

std::string mask_name(const FinGroup& grp, unsigned mask) {
    std::string s = "{";
    for (int k = 0; k < grp.order(); ++k)
        if (mask & bit(k)) s += (s.size() > 1 ? "," : "") + grp.names.at(k);
    return s + "}";
}

// Index sets M ∋ e, g⁻¹ in increasing order.
std::vector<unsigned> tilde_masks(const FinGroup& grp, int g) {
    const unsigned need = bit(grp.e()) | bit(grp.inv(g));
    std::vector<unsigned> out;
    for (unsigned m = 0; m < (1u << grp.order()); ++m)
        if ((m & need) == need) out.push_back(m);
    return out;
}

// The tabulated category and the additive envelope behind one interface, so
// every diagram is written once.
struct TabCtx {
    using Obj = ObjId;
    using Mor = MorId;
    const PartialAction& t;
    const UnitalData* u = nullptr;

    const PartialAction& action() const { return t; }
    const FinGroup& grp() const { return t.group; }
    Obj base(ObjId y) const { return y; }
    std::vector<Mor> base_morphisms(int g) const { return t.domains.at(g).sub.morphism_list(); }
    Obj tensor(const Obj& a, const Obj& b) const { return t.tensor(a, b); }
    Mor tensor(const Mor& f, const Mor& g) const { return t.tensor(f, g); }
    Mor comp(const Mor& g, const Mor& f) const { return t.comp(g, f); }
    Mor id(const Obj& a) const { return t.id(a); }
    Obj T(int g, const Obj& a) const { return t.T(g, a); }
    Mor T(int g, const Mor& f) const { return t.T(g, f); }
    Mor gam(int g, int h, const Obj& a) const { return t.gam(g, h, a); }
    Mor J(int g, const Obj& a, const Obj& b) const { return t.J(g, a, b); }
    Mor unit_at(const Obj& a) const { return t.unit_at(a); }
    Mor inv(const Mor& f) const { return t.inv(f); }
    std::optional<Mor> inverse(const Mor& f) const { return t.cat().inverse(f); }
    Obj dom(const Mor& f) const { return t.cat().dom(f); }
    Obj cod(const Mor& f) const { return t.cat().cod(f); }
    Mor phi(int g, unsigned mask) const { return needs().phi_mask(g, mask); }
    Obj product(unsigned mask) const { return needs().product(t, mask); }
    Obj one(int g) const { return needs().unit(g); }
    std::string name(const Obj& a) const { return t.name(a); }
    std::string describe(const Mor& f) const { return t.cat().describe(f); }

    // σ at an arbitrary object: only base objects here
    template <class Lookup>
    Mor extend(const Lookup& at, const Obj&, const Obj& y) const { return at(y); }

    const UnitalData& needs() const {
        if (!u) throw NotUnital("unital data required");
        return *u;
    }
};

struct EnvCtx {
    using Obj = EnvObject;
    using Mor = EnvMorphism;
    const LinearAction& la;

    const PartialAction& action() const { return la.action; }
    const FinGroup& grp() const { return la.group(); }
    const Envelope& env() const { return la.env; }
    Obj base(ObjId y) const { return {y}; }
    std::vector<Mor> base_morphisms(int g) const {
        const auto& lin = la.env.lin();
        std::vector<Mor> out;
        for (int a = 0; a < lin.basis_count(); ++a) {
            const auto& b = lin.basis[a];
            if (la.action.in(g, b.dom) && la.action.in(g, b.cod)) out.push_back(env().from_base(lin.basis_mor(a)));
        }
        return out;
    }
    Obj tensor(const Obj& a, const Obj& b) const { return env().tensor(a, b); }
    Mor tensor(const Mor& f, const Mor& g) const { return env().tensor(f, g); }
    Mor comp(const Mor& g, const Mor& f) const { return env().compose(g, f); }
    Mor id(const Obj& a) const { return env().id(a); }
    Obj T(int g, const Obj& a) const {
        if (!la.acts_on(g, a)) throw DomainError("T_" + la.elem(g) + " undefined on " + env().describe(a));
        return la.T_obj(g, a);
    }
    Mor T(int g, const Mor& f) const { return la.T_mor(g, f); }
    Mor gam(int g, int h, const Obj& a) const { return la.gam(g, h, a); }
    Mor J(int g, const Obj& a, const Obj& b) const { return la.J(g, a, b); }
    Mor unit_at(const Obj& a) const { return la.unit_at(a); }
    Mor inv(const Mor& f) const { return la.inv(f); }
    std::optional<Mor> inverse(const Mor& f) const { return env().inverse(f); }
    Obj dom(const Mor& f) const { return f.dom; }
    Obj cod(const Mor& f) const { return f.cod; }
    Mor phi(int g, unsigned mask) const { return la.vec(la.unital.phi_mask(g, mask)); }
    Obj product(unsigned mask) const { return {la.unital.product(la.action, mask)}; }
    Obj one(int g) const { return la.one(g); }
    std::string name(const Obj& a) const { return env().describe(a); }
    std::string describe(const Mor& f) const { return env().describe(f); }

    // σ^X at a sum Y = ⊕ y_j: blockwise, re-indexed from the (x, y_j) order of
    // each piece into the lexicographic order of X⊗Y.
    template <class Lookup>
    Mor extend(const Lookup& at, const Obj& x, const Obj& y) const {
        std::vector<Mor> parts;
        for (ObjId yj : y) parts.push_back(at(yj));
        Obj dom_obj, cod_obj;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) {
                dom_obj.push_back(parts[j].dom.at(i));
                cod_obj.push_back(parts[j].cod.at(i));
            }
        Mor out = env().zero(dom_obj, cod_obj);
        const std::size_t ny = y.size();
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t r = 0; r < x.size(); ++r)
                for (std::size_t c = 0; c < x.size(); ++c) out.block(r * ny + j, c * ny + j) = parts[j].block(r, c);
        return out;
    }
};

template <class Ctx>
using Eq = BasicEquivariant<typename Ctx::Obj, typename Ctx::Mor>;

template <class Ctx>
using Tilde = BasicSigmaTilde<typename Ctx::Mor>;

template <class Ctx>
const typename Ctx::Mor& sigma_at(const Ctx& ctx, const Eq<Ctx>& x, int g, ObjId y) {
    const auto& row = x.sigma.at(g);
    const auto& m = row.at(idx(y));
    if (!m) throw DomainError("sigma_" + ctx.grp().names.at(g) + " undefined at " + ctx.action().name(y));
    return *m;
}

template <class Ctx>
const typename Ctx::Mor& tilde_at(const Ctx& ctx, const Tilde<Ctx>& s, int g, unsigned mask) {
    auto it = s.table.find({g, mask});
    if (it == s.table.end())
        throw DomainError("sigma-tilde missing at (" + ctx.grp().names.at(g) + ", " + mask_name(ctx.grp(), mask) + ")");
    return it->second;
}

template <class Ctx>
DiagramReport validate_object_impl(const Ctx& ctx, const Eq<Ctx>& x) {
    DiagramReport r;
    const auto& t = ctx.action();
    const auto& grp = ctx.grp();
    const int G = grp.order(), n = t.n();
    const auto& X = x.carrier;
    r.tick("sigma-shape");
    if (static_cast<int>(x.sigma.size()) != G) {
        r.fail("sigma-shape", "one row of components per group element expected");
        return r;
    }
    for (const auto& row : x.sigma)
        if (static_cast<int>(row.size()) != n) {
            r.fail("sigma-shape", "one component slot per object expected");
            return r;
        }
    auto wit = [&](int g, ObjId y) { return std::vector<std::string>{"g=" + grp.names[g], "Y=" + t.name(y)}; };
    for (int g = 0; g < G; ++g)
        for (ObjId y : t.domains[grp.inv(g)].sub.object_list()) {
            guarded(r, "sigma-shape", wit(g, y), [&] {
                const auto& s = sigma_at(ctx, x, g, y);
                auto Y = ctx.base(y);
                return ctx.dom(s) == ctx.T(g, ctx.tensor(X, Y)) && ctx.cod(s) == ctx.tensor(X, ctx.T(g, Y));
            });
            guarded(r, "sigma-iso", wit(g, y), [&] { return ctx.inverse(sigma_at(ctx, x, g, y)).has_value(); },
                    "component is not invertible");
        }
    if (!r.passed()) return r;

    for (int g = 0; g < G; ++g) {
        const int gi = grp.inv(g);
        for (const auto& f : ctx.base_morphisms(gi)) {
            guarded(r, "sigma-natural", {"g=" + grp.names[g], "f=" + ctx.describe(f)}, [&] {
                const auto& a = ctx.dom(f);
                const auto& b = ctx.cod(f);
                auto sa = ctx.extend([&](ObjId y) { return sigma_at(ctx, x, g, y); }, X, a);
                auto sb = ctx.extend([&](ObjId y) { return sigma_at(ctx, x, g, y); }, X, b);
                return ctx.comp(ctx.tensor(ctx.id(X), ctx.T(g, f)), sa) ==
                       ctx.comp(sb, ctx.T(g, ctx.tensor(ctx.id(X), f)));
            });
        }
    }
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            const int gh = grp.mul(g, h);
            for (ObjId y : t.domains[grp.inv(h)].sub.object_list()) {
                if (!t.in(grp.inv(gh), y)) continue;
                guarded(r, "sigma-pentagon", {"g=" + grp.names[g], "h=" + grp.names[h], "Y=" + t.name(y)}, [&] {
                    auto Y = ctx.base(y);
                    auto lhs = ctx.comp(sigma_at(ctx, x, gh, y), ctx.gam(g, h, ctx.tensor(X, Y)));
                    auto rhs = ctx.comp(ctx.tensor(ctx.id(X), ctx.gam(g, h, Y)),
                                        ctx.comp(sigma_at(ctx, x, g, t.T(h, y)), ctx.T(g, sigma_at(ctx, x, h, y))));
                    return lhs == rhs;
                });
            }
        }
    const int e = grp.e();
    for (int a = 0; a < n; ++a) {
        ObjId y = obj_at(a);
        guarded(r, "sigma-triangle", {"Y=" + t.name(y)}, [&] {
            auto Y = ctx.base(y);
            return ctx.comp(sigma_at(ctx, x, e, y), ctx.unit_at(ctx.tensor(X, Y))) ==
                   ctx.tensor(ctx.id(X), ctx.unit_at(Y));
        });
    }
    return r;
}

template <class Ctx>
DiagramReport validate_morphism_impl(const Ctx& ctx, const Eq<Ctx>& x, const Eq<Ctx>& y, const typename Ctx::Mor& f) {
    DiagramReport r;
    const auto& t = ctx.action();
    const auto& grp = ctx.grp();
    guarded(r, "equivariant-morphism-shape", {ctx.describe(f)},
            [&] { return ctx.dom(f) == x.carrier && ctx.cod(f) == y.carrier; });
    if (!r.passed()) return r;
    for (int g = 0; g < grp.order(); ++g)
        for (ObjId z : t.domains[grp.inv(g)].sub.object_list())
            guarded(r, "equivariant-morphism", {"g=" + grp.names[g], "Z=" + t.name(z)}, [&] {
                auto Z = ctx.base(z);
                return ctx.comp(ctx.tensor(f, ctx.id(ctx.T(g, Z))), sigma_at(ctx, x, g, z)) ==
                       ctx.comp(sigma_at(ctx, y, g, z), ctx.T(g, ctx.tensor(f, ctx.id(Z))));
            });
    return r;
}

template <class Ctx>
Eq<Ctx> tensor_impl(const Ctx& ctx, const Eq<Ctx>& a, const Eq<Ctx>& b) {
    const auto& t = ctx.action();
    const auto& grp = ctx.grp();
    Eq<Ctx> out;
    out.carrier = ctx.tensor(a.carrier, b.carrier);
    out.sigma.assign(grp.order(), std::vector<std::optional<typename Ctx::Mor>>(t.n()));
    for (int g = 0; g < grp.order(); ++g)
        for (ObjId z : t.domains[grp.inv(g)].sub.object_list()) {
            auto Z = ctx.base(z);
            auto sa = ctx.extend([&](ObjId y) { return sigma_at(ctx, a, g, y); }, a.carrier,
                                 ctx.tensor(b.carrier, Z));
            out.sigma[g][idx(z)] = ctx.comp(ctx.tensor(ctx.id(a.carrier), sigma_at(ctx, b, g, z)), sa);
        }
    return out;
}

template <class Ctx>
Eq<Ctx> unit_impl(const Ctx& ctx) {
    const auto& t = ctx.action();
    const auto& grp = ctx.grp();
    Eq<Ctx> out;
    out.carrier = ctx.one(grp.e());
    out.sigma.assign(grp.order(), std::vector<std::optional<typename Ctx::Mor>>(t.n()));
    for (int g = 0; g < grp.order(); ++g) {
        const int gi = grp.inv(g);
        for (ObjId y : t.domains[gi].sub.object_list()) {
            auto Y = ctx.base(y);
            out.sigma[g][idx(y)] = ctx.comp(ctx.tensor(ctx.inv(ctx.phi(g, bit(g))), ctx.id(ctx.T(g, Y))),
                                            ctx.inv(ctx.J(g, ctx.one(gi), Y)));
        }
    }
    return out;
}

template <class Ctx>
Eq<Ctx> from_tilde_impl(const Ctx& ctx, const typename Ctx::Obj& carrier, const Tilde<Ctx>& s) {
    const auto& t = ctx.action();
    const auto& grp = ctx.grp();
    Eq<Ctx> out;
    out.carrier = carrier;
    out.sigma.assign(grp.order(), std::vector<std::optional<typename Ctx::Mor>>(t.n()));
    for (int g = 0; g < grp.order(); ++g) {
        const int gi = grp.inv(g);
        const auto& st = tilde_at(ctx, s, g, bit(grp.e()) | bit(gi));
        for (ObjId y : t.domains[gi].sub.object_list()) {
            auto Y = ctx.base(y);
            out.sigma[g][idx(y)] = ctx.comp(ctx.tensor(st, ctx.id(ctx.T(g, Y))),
                                            ctx.inv(ctx.J(g, ctx.tensor(carrier, ctx.one(gi)), Y)));
        }
    }
    return out;
}

template <class Ctx>
DiagramReport validate_tilde_impl(const Ctx& ctx, const typename Ctx::Obj& X, const Tilde<Ctx>& s) {
    DiagramReport r;
    const auto& grp = ctx.grp();
    const int G = grp.order(), e = grp.e();
    auto wit = [&](int g, unsigned m) {
        return std::vector<std::string>{"g=" + grp.names[g], "M=" + mask_name(grp, m)};
    };
    for (int g = 0; g < G; ++g)
        for (unsigned m : tilde_masks(grp, g)) {
            guarded(r, "tilde-shape", wit(g, m), [&] {
                const auto& st = tilde_at(ctx, s, g, m);
                return ctx.dom(st) == ctx.T(g, ctx.tensor(X, ctx.product(m))) &&
                       ctx.cod(st) == ctx.tensor(X, ctx.product(translate(grp, g, m))) &&
                       ctx.inverse(st).has_value();
            });
        }
    if (!r.passed()) return r;
    guarded(r, "tilde-unit", {}, [&] { return tilde_at(ctx, s, e, bit(e)) == ctx.inv(ctx.unit_at(X)); });
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            const int gh = grp.mul(g, h);
            const unsigned need = bit(e) | bit(grp.inv(h)) | bit(grp.inv(gh));
            for (unsigned m : tilde_masks(grp, h)) {
                if ((m & need) != need) continue;
                const char* check = m == need ? "tilde-square" : "tilde-square-all";
                guarded(r, check, {"g=" + grp.names[g], "h=" + grp.names[h], "M=" + mask_name(grp, m)}, [&] {
                    auto lhs = ctx.comp(tilde_at(ctx, s, gh, m), ctx.gam(g, h, ctx.tensor(X, ctx.product(m))));
                    auto rhs = ctx.comp(tilde_at(ctx, s, g, translate(grp, h, m)), ctx.T(g, tilde_at(ctx, s, h, m)));
                    return lhs == rhs;
                });
            }
        }
    return r;
}

void require_global(const PartialAction& t) {
    for (int g = 0; g < t.order(); ++g)
        if (t.domains[g].sub != Subcategory::whole(t.cat()))
            throw RequiresGlobal("C_" + t.elem(g) + " is not the whole category");
}

UnitalData unital_or_throw(const PartialAction& t) {
    auto ur = extract_unital_data(t);
    if (!ur.data) throw NotUnital("the action has no unital data");
    return *ur.data;
}

}  // namespace

DiagramReport validate_equivariant_object(const PartialAction& t, const EquivariantObject& x) {
    return validate_object_impl(TabCtx{t}, x);
}

DiagramReport validate_equivariant_object(const LinearAction& la, const EnvEquivariantObject& x) {
    return validate_object_impl(EnvCtx{la}, x);
}

DiagramReport validate_equivariant_morphism(const PartialAction& t, const EquivariantObject& x,
                                            const EquivariantObject& y, MorId f) {
    return validate_morphism_impl(TabCtx{t}, x, y, f);
}

DiagramReport validate_equivariant_morphism(const LinearAction& la, const EnvEquivariantObject& x,
                                            const EnvEquivariantObject& y, const EnvMorphism& f) {
    return validate_morphism_impl(EnvCtx{la}, x, y, f);
}

EquivariantObject tensor_equivariant(const PartialAction& t, const EquivariantObject& a, const EquivariantObject& b) {
    return tensor_impl(TabCtx{t}, a, b);
}

EnvEquivariantObject tensor_equivariant(const LinearAction& la, const EnvEquivariantObject& a,
                                        const EnvEquivariantObject& b) {
    return tensor_impl(EnvCtx{la}, a, b);
}

EquivariantObject unit_equivariant(const PartialAction& t, const UnitalData& u) { return unit_impl(TabCtx{t, &u}); }

EnvEquivariantObject unit_equivariant(const LinearAction& la) { return unit_impl(EnvCtx{la}); }

DiagramReport validate_global_equivariant(const PartialAction& t, const GlobalEquivariantObject& x) {
    DiagramReport r;
    const auto& grp = t.group;
    const ObjId X = x.carrier;
    r.tick("theta-shape");
    if (static_cast<int>(x.theta.size()) != t.order()) {
        r.fail("theta-shape", "one component per group element expected");
        return r;
    }
    for (int g = 0; g < t.order(); ++g)
        guarded(r, "theta-shape", {"g=" + t.elem(g)}, [&] {
            MorId th = x.theta[g];
            return valid(th) && t.cat().dom(th) == t.T(g, X) && t.cat().cod(th) == X && t.cat().is_iso(th);
        });
    if (!r.passed()) return r;
    for (int g = 0; g < t.order(); ++g)
        for (int h = 0; h < t.order(); ++h)
            guarded(r, "theta-square", {"g=" + t.elem(g), "h=" + t.elem(h)}, [&] {
                return t.comp(x.theta[grp.mul(g, h)], t.gam(g, h, X)) == t.comp(x.theta[g], t.T(g, x.theta[h]));
            });
    guarded(r, "theta-triangle", {}, [&] { return t.comp(x.theta[grp.e()], t.unit_at(X)) == t.id(X); });
    return r;
}

GlobalEquivariantObject to_global(const PartialAction& t, const EquivariantObject& x) {
    require_global(t);
    UnitalData u = unital_or_throw(t);
    TabCtx ctx{t, &u};
    GlobalEquivariantObject out;
    out.carrier = x.carrier;
    for (int g = 0; g < t.order(); ++g) {
        ObjId one = u.unit(t.group.inv(g));
        out.theta.push_back(t.comp(t.tensor(t.id(x.carrier), t.inv(u.phi_of(g))), sigma_at(ctx, x, g, one)));
    }
    return out;
}

EquivariantObject from_global(const PartialAction& t, const GlobalEquivariantObject& x) {
    require_global(t);
    EquivariantObject out;
    out.carrier = x.carrier;
    out.sigma.assign(t.order(), std::vector<std::optional<MorId>>(t.n()));
    for (int g = 0; g < t.order(); ++g)
        for (int a = 0; a < t.n(); ++a) {
            ObjId y = obj_at(a);
            out.sigma[g][a] = t.comp(t.tensor(x.theta.at(g), t.id(t.T(g, y))), t.inv(t.J(g, x.carrier, y)));
        }
    return out;
}

SigmaTilde to_tilde(const PartialAction& t, const UnitalData& u, const EquivariantObject& x) {
    TabCtx ctx{t, &u};
    SigmaTilde out;
    for (int g = 0; g < t.order(); ++g)
        for (unsigned m : tilde_masks(t.group, g)) {
            MorId back = t.inv(u.phi_mask(g, translate(t.group, g, m)));
            out.table[{g, m}] = t.comp(t.tensor(t.id(x.carrier), back), sigma_at(ctx, x, g, u.product(t, m)));
        }
    return out;
}

EquivariantObject from_tilde(const PartialAction& t, const UnitalData& u, ObjId carrier, const SigmaTilde& s) {
    return from_tilde_impl(TabCtx{t, &u}, carrier, s);
}

EnvEquivariantObject from_tilde(const LinearAction& la, const EnvObject& carrier, const EnvSigmaTilde& s) {
    return from_tilde_impl(EnvCtx{la}, carrier, s);
}

DiagramReport validate_sigma_tilde(const PartialAction& t, const UnitalData& u, ObjId carrier, const SigmaTilde& s) {
    return validate_tilde_impl(TabCtx{t, &u}, carrier, s);
}

DiagramReport validate_sigma_tilde(const LinearAction& la, const EnvObject& carrier, const EnvSigmaTilde& s) {
    return validate_tilde_impl(EnvCtx{la}, carrier, s);
}

std::vector<EquivariantObject> enumerate_equivariant(const PartialAction& t, ObjId x, long long budget) {
    const auto& c = t.cat();
    const auto& grp = t.group;
    const int G = t.order(), n = t.n();
    struct Slot {
        int g;
        ObjId y;
        std::vector<MorId> candidates;
    };
    std::vector<Slot> slots;
    std::vector<int> slot_of(static_cast<std::size_t>(G) * n, -1);
    for (int g = 0; g < G; ++g)
        for (ObjId y : t.domains[grp.inv(g)].sub.object_list()) {
            slot_of[static_cast<std::size_t>(g) * n + idx(y)] = static_cast<int>(slots.size());
            slots.push_back({g, y, c.isos(t.T(g, t.tensor(x, y)), t.tensor(x, t.T(g, y)))});
        }
    std::vector<MorId> pick(slots.size(), kNoMor);
    auto at = [&](int g, ObjId y) { return pick.at(slot_of.at(static_cast<std::size_t>(g) * n + idx(y))); };

    // each diagram is checked once the last of its slots is assigned
    std::vector<std::vector<std::function<bool()>>> checks(slots.size());
    auto attach = [&](std::initializer_list<int> deps, std::function<bool()> f) {
        checks.at(*std::max_element(deps.begin(), deps.end())).push_back(std::move(f));
    };
    auto slot = [&](int g, ObjId y) { return slot_of.at(static_cast<std::size_t>(g) * n + idx(y)); };
    for (int g = 0; g < G; ++g)
        for (MorId f : t.domains[grp.inv(g)].sub.morphism_list()) {
            if (c.is_identity(f)) continue;
            ObjId a = c.dom(f), b = c.cod(f);
            attach({slot(g, a), slot(g, b)}, [&t, &at, g, f, a, b, x] {
                return t.comp(t.tensor(t.id(x), t.T(g, f)), at(g, a)) ==
                       t.comp(at(g, b), t.T(g, t.tensor(t.id(x), f)));
            });
        }
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            const int gh = grp.mul(g, h);
            for (ObjId y : t.domains[grp.inv(h)].sub.object_list()) {
                if (!t.in(grp.inv(gh), y)) continue;
                ObjId ty = t.T(h, y);
                attach({slot(gh, y), slot(g, ty), slot(h, y)}, [&t, &at, g, h, gh, y, ty, x] {
                    return t.comp(at(gh, y), t.gam(g, h, t.tensor(x, y))) ==
                           t.comp(t.tensor(t.id(x), t.gam(g, h, y)), t.comp(at(g, ty), t.T(g, at(h, y))));
                });
            }
        }
    for (int a = 0; a < n; ++a) {
        ObjId y = obj_at(a);
        attach({slot(grp.e(), y)}, [&t, &at, &grp, y, x] {
            return t.comp(at(grp.e(), y), t.unit_at(t.tensor(x, y))) == t.tensor(t.id(x), t.unit_at(y));
        });
    }

    std::vector<EquivariantObject> out;
    long long nodes = 0;
    std::function<void(std::size_t)> search = [&](std::size_t k) {
        if (k == slots.size()) {
            EquivariantObject e;
            e.carrier = x;
            e.sigma.assign(G, std::vector<std::optional<MorId>>(n));
            for (std::size_t i = 0; i < slots.size(); ++i) e.sigma[slots[i].g][idx(slots[i].y)] = pick[i];
            out.push_back(std::move(e));
            return;
        }
        for (MorId m : slots[k].candidates) {
            if (++nodes > budget)
                throw SearchBudgetExceeded("equivariant search over " + t.name(x) + " passed " +
                                           std::to_string(budget) + " nodes");
            pick[k] = m;
            bool ok = true;
            for (const auto& chk : checks[k]) {
                try {
                    ok = chk();
                } catch (const Error&) {
                    ok = false;
                }
                if (!ok) break;
            }
            if (ok) search(k + 1);
        }
        pick[k] = kNoMor;
    };
    search(0);
    return out;
}

EnvObject trace_object(const LinearAction& la, const EnvObject& x) {
    const auto& grp = la.group();
    EnvObject out;
    for (int h = 0; h < grp.order(); ++h) {
        EnvObject part = la.T_obj(h, la.env.tensor(x, la.one(grp.inv(h))));
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

EnvMorphism trace_morphism(const LinearAction& la, const EnvMorphism& f) {
    const auto& grp = la.group();
    std::optional<EnvMorphism> acc;
    for (int h = 0; h < grp.order(); ++h) {
        EnvMorphism part = la.T_mor(h, la.env.tensor(f, la.env.id(la.one(grp.inv(h)))));
        acc = acc ? la.env.direct_sum(*acc, part) : part;
    }
    return *acc;
}

TraceObject partial_trace(const LinearAction& la, const EnvObject& x) {
    const auto& t = la.action;
    const auto& u = la.unital;
    const auto& grp = t.group;
    const auto& env = la.env;
    const int G = grp.order();
    const EnvObject tr = trace_object(la, x);
    const std::size_t nx = x.size();
    TraceObject out;
    for (int g = 0; g < G; ++g)
        for (unsigned m : tilde_masks(grp, g)) {
            EnvObject em{u.product(t, m)};
            EnvObject dom = la.T_obj(g, env.tensor(tr, em));
            EnvObject cod = env.tensor(tr, EnvObject{u.product(t, translate(grp, g, m))});
            EnvMorphism st = env.zero(dom, cod);
            for (int h = 0; h < G; ++h) {
                const int hi = grp.inv(h), k = grp.mul(g, h);
                const unsigned n_mask = m | bit(h);
                const unsigned s_mask = UnitalData::source_mask(grp, h, n_mask);
                const ObjId es = u.product(t, s_mask);
                for (std::size_t i = 0; i < nx; ++i) {
                    const ObjId xi = x[i];
                    const ObjId a = t.T(h, t.tensor(xi, u.unit(hi)));
                    MorId m5 = t.T(g, t.tensor(t.id(a), u.phi_mask(h, n_mask)));
                    MorId m4 = t.T(g, t.J(h, t.tensor(xi, u.unit(hi)), es));
                    MorId m3 = t.gam(g, h, t.tensor(xi, es));
                    MorId m2 = t.inv(t.J(k, t.tensor(xi, u.unit(grp.inv(k))), es));
                    MorId m1 = t.tensor(t.id(t.T(k, t.tensor(xi, u.unit(grp.inv(k))))),
                                        t.inv(u.phi_mask(k, translate(grp, k, s_mask))));
                    MorId block = t.comp({m1, m2, m3, m4, m5});
                    st.block(static_cast<std::size_t>(k) * nx + i, static_cast<std::size_t>(h) * nx + i) =
                        la.linear.vec(block);
                }
            }
            out.tilde.table[{g, m}] = std::move(st);
        }
    out.report.merge(validate_sigma_tilde(la, tr, out.tilde), "tilde/");
    if (out.report.passed()) {
        out.object = from_tilde(la, tr, out.tilde);
        out.report.merge(validate_equivariant_object(la, out.object), "sigma/");
    }
    return out;
}

DiagramReport check_trace_functor(const LinearAction& la) {
    DiagramReport r;
    const auto& t = la.action;
    const auto& env = la.env;
    const auto& lin = env.lin();
    const auto& grp = t.group;
    const int n = t.n();
    std::vector<TraceObject> traces;
    for (int a = 0; a < n; ++a) traces.push_back(partial_trace(la, {obj_at(a)}));
    for (int a = 0; a < n; ++a) {
        ObjId x = obj_at(a);
        r.merge(traces[a].report, "object/");
        guarded(r, "trace-identity", {"X=" + t.name(x)},
                [&] { return trace_morphism(la, env.id({x})) == env.id(trace_object(la, {x})); });
        // X is the e-summand of Tr(X), split by injection and projection
        guarded(r, "trace-summand", {"X=" + t.name(x)}, [&] {
            const EnvObject tr = trace_object(la, {x});
            const std::size_t k = static_cast<std::size_t>(grp.e());
            return tr.at(k) == x && env.compose(env.projection(tr, k), env.injection(tr, k)) == env.id({x});
        });
    }
    for (int al = 0; al < lin.basis_count(); ++al) {
        EnvMorphism f = env.from_base(lin.basis_mor(al));
        ObjId a = lin.basis[al].dom, b = lin.basis[al].cod;
        if (traces[idx(a)].report.passed() && traces[idx(b)].report.passed())
            r.merge(validate_equivariant_morphism(la, traces[idx(a)].object, traces[idx(b)].object, trace_morphism(la, f)),
                    "trace-morphism/");
        for (int be = 0; be < lin.basis_count(); ++be) {
            if (lin.basis[be].dom != b) continue;
            EnvMorphism g = env.from_base(lin.basis_mor(be));
            guarded(r, "trace-composition", {lin.basis[al].label, lin.basis[be].label}, [&] {
                return trace_morphism(la, env.compose(g, f)) == env.compose(trace_morphism(la, g), trace_morphism(la, f));
            });
        }
    }
    bool global = true;
    for (int g = 0; g < grp.order(); ++g) global = global && t.domains[g].sub == Subcategory::whole(t.cat());
    const EnvObject one{la.unital.unit(grp.e())};
    const bool unit_kept = env.isomorphic(trace_object(la, one), one);
    if (global) {
        r.note(std::string("global action: Tr(1) ") + (unit_kept ? "is" : "is not") + " isomorphic to 1");
    } else {
        guarded(r, "trace-not-monoidal", {}, [&] { return !unit_kept; }, "Tr(1) is isomorphic to 1");
    }
    return r;
}

DiagramReport check_trace_semigroupal(const LinearAction& la) {
    DiagramReport r;
    const auto& t = la.action;
    const auto& env = la.env;
    for (int a = 0; a < t.n(); ++a)
        for (int b = 0; b < t.n(); ++b) {
            ObjId x = obj_at(a), y = obj_at(b);
            guarded(r, "trace-semigroupal", {"X=" + t.name(x), "Y=" + t.name(y)}, [&] {
                return env.isomorphic(env.tensor(trace_object(la, {x}), trace_object(la, {y})),
                                      trace_object(la, {t.tensor(x, y)}));
            }, "Tr(X)⊗Tr(Y) and Tr(X⊗Y) are not isomorphic");
        }
    return r;
}

namespace {

// E_S ⊗ E_T → E_{S∪T}: sort the word of units with the exchange maps and merge
// repeats with the fusion maps.
MorId merge_units(const PartialAction& t, const UnitalData& u, unsigned s, unsigned w) {
    std::vector<int> word;
    for (int g = 0; g < t.order(); ++g)
        if (s & bit(g)) word.push_back(g);
    for (int g = 0; g < t.order(); ++g)
        if (w & bit(g)) word.push_back(g);
    auto obj_of = [&](std::size_t from, std::size_t to) {
        std::optional<ObjId> acc;
        for (std::size_t i = from; i < to; ++i) acc = acc ? t.tensor(*acc, u.unit(word[i])) : u.unit(word[i]);
        return acc;
    };
    auto wrap = [&](std::size_t i, MorId mid, std::size_t after) {
        auto pre = obj_of(0, i);
        auto post = obj_of(after, word.size());
        MorId m = mid;
        if (pre) m = t.tensor(t.id(*pre), m);
        if (post) m = t.tensor(m, t.id(*post));
        return m;
    };
    MorId acc = t.id(*obj_of(0, word.size()));
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            const int a = word[i], b = word[i + 1];
            if (a == b) {
                acc = t.comp(wrap(i, u.units[a].fusion, i + 2), acc);
                word.erase(word.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
            if (a > b) {
                acc = t.comp(wrap(i, u.units[a].exchange.at(idx(u.unit(b))), i + 2), acc);
                std::swap(word[i], word[i + 1]);
                changed = true;
                break;
            }
        }
    }
    return acc;
}

}  // namespace

AlgebraObject algebra_object(const LinearAction& la) {
    const auto& t = la.action;
    const auto& u = la.unital;
    const auto& grp = t.group;
    const auto& env = la.env;
    const int G = grp.order(), e = grp.e();
    AlgebraObject out;
    auto& r = out.report;
    for (unsigned s = 0; s < (1u << G); ++s)
        if (s & bit(e)) {
            out.blocks.push_back(s);
            out.object.push_back(u.product(t, s));
        }
    const std::size_t nb = out.blocks.size();
    auto block_of = [&](unsigned s) {
        return static_cast<std::size_t>(std::find(out.blocks.begin(), out.blocks.end(), s) - out.blocks.begin());
    };
    const EnvObject& A = out.object;
    out.mu = env.zero(env.tensor(A, A), A);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            guarded(r, "mu-defined", {mask_name(grp, out.blocks[i]), mask_name(grp, out.blocks[j])}, [&] {
                MorId m = merge_units(t, u, out.blocks[i], out.blocks[j]);
                out.mu.block(block_of(out.blocks[i] | out.blocks[j]), i * nb + j) = la.linear.vec(m);
                return true;
            });
    out.eta = env.injection(A, block_of(bit(e)));
    if (!r.passed()) return out;
    const EnvMorphism idA = env.id(A);
    guarded(r, "algebra-assoc", {}, [&] {
        return env.compose(out.mu, env.tensor(out.mu, idA)) == env.compose(out.mu, env.tensor(idA, out.mu));
    });
    guarded(r, "algebra-unit-left", {}, [&] { return env.compose(out.mu, env.tensor(out.eta, idA)) == idA; });
    guarded(r, "algebra-unit-right", {}, [&] { return env.compose(out.mu, env.tensor(idA, out.eta)) == idA; });

    // σ̃^A: the summand E_S goes to E_{β(S)}, β(S) = gS when g⁻¹ ∈ S and
    // gS with g traded for e otherwise; a bijection of the sets containing e
    for (int g = 0; g < G; ++g) {
        const int gi = grp.inv(g);
        for (unsigned m : tilde_masks(grp, g)) {
            EnvObject em{u.product(t, m)};
            EnvMorphism st = env.zero(la.T_obj(g, env.tensor(A, em)), env.tensor(A, EnvObject{u.product(t, translate(grp, g, m))}));
            guarded(r, "tilde-defined", {"g=" + grp.names[g], "M=" + mask_name(grp, m)}, [&] {
                for (std::size_t i = 0; i < nb; ++i) {
                    const unsigned s = out.blocks[i];
                    unsigned target = translate(grp, g, s);
                    if (!(s & bit(gi))) target = (target & ~bit(g)) | bit(e);
                    MorId back = t.inv(u.phi_mask(g, translate(grp, g, s | m)));
                    st.block(block_of(target), i) = la.linear.vec(back);
                }
                return true;
            });
            out.tilde.table[{g, m}] = std::move(st);
        }
    }
    if (!r.passed()) return out;
    r.merge(validate_sigma_tilde(la, A, out.tilde), "tilde/");
    if (r.passed()) r.note("σ̃ square for A: machine-verified, instance-level; no general argument is relied on");
    if (r.passed()) r.merge(validate_equivariant_object(la, from_tilde(la, A, out.tilde)), "sigma/");
    return out;
}

}  // namespace parcat
