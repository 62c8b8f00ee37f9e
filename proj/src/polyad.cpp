#include "parcat/polyad.hpp"

#include <functional>

#include "parcat/errors.hpp"

namespace parcat {

namespace {

void guarded(DiagramReport& r, const std::string& check, const std::vector<std::string>& witness,
             const std::function<bool()>& body) {
    r.tick(check);
    try {
        if (!body()) r.fail(check, "diagram does not commute", witness);
    } catch (const Error& e) {
        r.fail(check, e.what(), witness);
    }
}

MorId at(const std::vector<MorId>& table, ObjId x, const char* what) {
    MorId m = table.at(idx(x));
    if (!valid(m)) throw DomainError(std::string(what) + " undefined at object " + std::to_string(idx(x)));
    return m;
}

}  // namespace

Monad build_monad(const PartialAction& t, int g) {
    const auto& c = t.cat();
    const int gi = t.group.inv(g), e = t.group.e();
    Monad m;
    m.element = g;
    m.domain = t.domains.at(g).sub;
    m.carrier.obj.assign(t.n(), kNoObj);
    m.carrier.mor.assign(c.morphism_count(), kNoMor);
    m.mu.assign(t.n(), kNoMor);
    m.eta.assign(t.n(), kNoMor);
    for (ObjId x : m.domain.object_list()) {
        ObjId back = t.T(gi, x);
        m.carrier.obj[idx(x)] = t.T(g, back);
        m.mu[idx(x)] = t.comp(t.T(g, t.gam(e, gi, x)), t.T(g, t.gam(gi, g, back)));
        m.eta[idx(x)] = t.comp(t.inv(t.gam(g, gi, x)), t.unit_at(x));
    }
    for (MorId f : m.domain.morphism_list()) m.carrier.mor[idx(f)] = t.T(g, t.T(gi, f));
    return m;
}

DiagramReport validate_monad(const FinCategory& c, const Monad& m) {
    DiagramReport r;
    const auto& P = m.carrier;
    auto on = [&](ObjId x) { return "X=" + c.object_name(x); };
    auto objs = m.domain.object_list();
    bool shapes = true;
    for (ObjId x : objs) {
        guarded(r, "monad-shape", {on(x)}, [&] {
            MorId mu = at(m.mu, x, "mu"), eta = at(m.eta, x, "eta");
            ObjId px = P(x);
            bool ok = m.domain.contains(px) && c.dom(mu) == P(px) && c.cod(mu) == px && c.dom(eta) == x &&
                      c.cod(eta) == px;
            if (!ok) shapes = false;
            return ok;
        });
    }
    if (!shapes) return r;
    for (MorId f : m.domain.morphism_list()) {
        ObjId a = c.dom(f), b = c.cod(f);
        guarded(r, "eta-natural", {c.describe(f)}, [&] {
            return c.compose(P(f), m.eta[idx(a)]) == c.compose(m.eta[idx(b)], f);
        });
        guarded(r, "mu-natural", {c.describe(f)}, [&] {
            return c.compose(P(f), m.mu[idx(a)]) == c.compose(m.mu[idx(b)], P(P(f)));
        });
    }
    for (ObjId x : objs) {
        ObjId px = P(x);
        MorId mu = m.mu[idx(x)];
        guarded(r, "mu-assoc", {on(x)}, [&] {
            return c.compose(mu, P(mu)) == c.compose(mu, m.mu[idx(px)]);
        });
        guarded(r, "unit-left", {on(x)}, [&] { return c.compose(mu, m.eta[idx(px)]) == c.id(px); });
        guarded(r, "unit-right", {on(x)}, [&] { return c.compose(mu, P(m.eta[idx(x)])) == c.id(px); });
    }
    return r;
}

FusionResult fusion_operators(const PartialAction& t, const UnitalData& u, const Monad& m) {
    const auto& c = t.cat();
    const int g = m.element, gi = t.group.inv(g), n = t.n();
    const auto& P = m.carrier;
    FusionResult out;
    auto& ops = out.ops;
    auto& r = out.report;
    ops.element = g;
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    ops.xi.assign(nn, kNoMor);
    ops.hl.assign(nn, kNoMor);
    ops.hl_inverse.assign(nn, kNoMor);
    ops.hr.assign(nn, kNoMor);
    ops.hr_inverse.assign(nn, kNoMor);
    auto objs = m.domain.object_list();
    auto key = [n](ObjId x, ObjId y) { return static_cast<std::size_t>(idx(x)) * n + idx(y); };
    auto wit = [&](ObjId x, ObjId y) {
        return std::vector<std::string>{"g=" + t.elem(g), "X=" + t.name(x), "Y=" + t.name(y)};
    };

    for (ObjId x : objs)
        for (ObjId y : objs)
            guarded(r, "xi-defined", wit(x, y), [&] {
                MorId inner = t.T(g, t.inv(t.J(gi, x, y)));
                ops.xi[key(x, y)] = t.comp(t.inv(t.J(g, t.T(gi, x), t.T(gi, y))), inner);
                return true;
            });
    guarded(r, "counit-defined", {"g=" + t.elem(g)}, [&] {
        ops.counit = t.comp(t.inv(u.phi_of(g)), t.T(g, t.inv(u.phi_of(gi))));
        return true;
    });
    if (!r.passed()) return out;

    auto xi = [&](ObjId x, ObjId y) {
        MorId v = ops.xi.at(key(x, y));
        if (!valid(v)) throw DomainError("xi undefined at (" + t.name(x) + "," + t.name(y) + ")");
        return v;
    };
    for (ObjId x : objs)
        for (ObjId y : objs) {
            guarded(r, "hl-invertible", wit(x, y), [&] {
                MorId h = t.comp(t.tensor(t.id(P(x)), m.mu[idx(y)]), xi(x, P(y)));
                ops.hl[key(x, y)] = h;
                auto inv = c.inverse(h);
                if (inv) ops.hl_inverse[key(x, y)] = *inv;
                return inv.has_value();
            });
            // H^r is indexed (Y, X): here y plays Y and x plays X
            guarded(r, "hr-invertible", wit(x, y), [&] {
                MorId h = t.comp(t.tensor(m.mu[idx(y)], t.id(P(x))), xi(P(y), x));
                ops.hr[key(y, x)] = h;
                auto inv = c.inverse(h);
                if (inv) ops.hr_inverse[key(y, x)] = *inv;
                return inv.has_value();
            });
        }
    return out;
}

namespace {

// Comonoidal coherence of ξ and comonoidality of μ, η (strict setting).
void check_comonoidal(const PartialAction& t, const UnitalData& u, const Monad& m, const FusionOperators& ops,
                      DiagramReport& r) {
    const int n = t.n(), g = m.element, gi = t.group.inv(g), e = t.group.e();
    const auto& P = m.carrier;
    const ObjId one = u.unit(g);
    auto xi = [&](ObjId x, ObjId y) {
        MorId v = ops.xi.at(static_cast<std::size_t>(idx(x)) * n + idx(y));
        if (!valid(v)) throw DomainError("xi undefined");
        return v;
    };
    auto el = "g=" + t.elem(g);
    auto objs = m.domain.object_list();
    for (ObjId x : objs) {
        auto wx = std::vector<std::string>{el, "X=" + t.name(x)};
        guarded(r, "xi-counit-left", wx, [&] {
            return t.comp(t.tensor(ops.counit, t.id(P(x))), xi(one, x)) == t.id(P(x));
        });
        guarded(r, "xi-counit-right", wx, [&] {
            return t.comp(t.tensor(t.id(P(x)), ops.counit), xi(x, one)) == t.id(P(x));
        });
        guarded(r, "mu-two-forms", wx, [&] {
            ObjId back = t.T(gi, x);
            return t.T(g, t.gam(e, gi, x)) == t.T(g, t.inv(t.unit_at(back)));
        });
        for (ObjId y : objs) {
            auto wxy = std::vector<std::string>{el, "X=" + t.name(x), "Y=" + t.name(y)};
            ObjId xy = t.tensor(x, y);
            guarded(r, "mu-comonoidal", wxy, [&] {
                MorId pp = t.comp(xi(P(x), P(y)), P(xi(x, y)));
                return t.comp(xi(x, y), m.mu[idx(xy)]) ==
                       t.comp(t.tensor(m.mu[idx(x)], m.mu[idx(y)]), pp);
            });
            guarded(r, "eta-comonoidal", wxy, [&] {
                return t.comp(xi(x, y), m.eta[idx(xy)]) == t.tensor(m.eta[idx(x)], m.eta[idx(y)]);
            });
            for (ObjId z : objs)
                guarded(r, "xi-coassoc", {el, "X=" + t.name(x), "Y=" + t.name(y), "Z=" + t.name(z)}, [&] {
                    return t.comp(t.tensor(xi(x, y), t.id(P(z))), xi(xy, z)) ==
                           t.comp(t.tensor(t.id(P(x)), xi(y, z)), xi(x, t.tensor(y, z)));
                });
        }
    }
    guarded(r, "mu-counit", {el}, [&] {
        return t.comp(ops.counit, m.mu[idx(one)]) == t.comp(ops.counit, P(ops.counit));
    });
    guarded(r, "eta-counit", {el}, [&] { return t.comp(ops.counit, m.eta[idx(one)]) == t.id(one); });
}

}  // namespace

PolyadResult build_polyad(const PartialAction& t) {
    PolyadResult out;
    auto& p = out.polyad;
    auto& r = out.report;
    p.source = t.group;
    p.categories = t.domains;
    const auto& c = t.cat();
    for (int g = 0; g < t.order(); ++g) {
        p.monads.push_back(build_monad(t, g));
        const Monad& m = p.monads.back();
        DiagramReport mr = validate_monad(c, m);
        // axiom (1) is associativity; axiom (2) asks μ∘Pη = μ∘ηP, implied by both unit laws
        r.tick("polyad-axiom-1");
        if (mr.has_failure("mu-assoc") || mr.has_failure("monad-shape"))
            r.fail("polyad-axiom-1", "monad multiplication is not associative", {"g=" + t.elem(g)});
        r.tick("polyad-axiom-2");
        if (mr.has_failure("unit-left") || mr.has_failure("unit-right") || mr.has_failure("monad-shape"))
            r.fail("polyad-axiom-2", "unit composites disagree", {"g=" + t.elem(g)});
        r.merge(mr, "monad-" + t.elem(g) + "/");
    }
    UnitalResult ur = extract_unital_data(t);
    if (!ur.data) {
        r.note("action is not unital: fusion operators and comonoidality not checked");
        return out;
    }
    for (int g = 0; g < t.order(); ++g) {
        FusionResult fr = fusion_operators(t, *ur.data, p.monads[g]);
        r.merge(fr.report, "fusion-" + t.elem(g) + "/");
        if (fr.report.passed()) check_comonoidal(t, *ur.data, p.monads[g], fr.ops, r);
        p.fusion.push_back(std::move(fr.ops));
    }
    return out;
}

}  // namespace parcat
