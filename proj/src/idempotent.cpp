#include "parcat/idempotent.hpp"

#include <functional>

#include "parcat/errors.hpp"

namespace parcat {

namespace {

// Checks on σ_A alone that do not involve other components.
bool exchange_local_ok(const MonoidalStructure& m, const CentralIdempotent& ci, ObjId a) {
    const auto& c = m.cat;
    ObjId e = ci.e;
    MorId s = ci.exchange[idx(a)];
    MorId ide = c.id(e), ida = c.id(a);
    // idempotent3: (A⊗Φ)∘(σ_A⊗e)∘(e⊗σ_A) = σ_A∘(Φ⊗A)
    MorId lhs = c.compose(m.tensor(ida, ci.fusion), c.compose(m.tensor(s, ide), m.tensor(ide, s)));
    MorId rhs = c.compose(s, m.tensor(ci.fusion, ida));
    if (lhs != rhs) return false;
    if (a == e && c.compose(ci.fusion, s) != ci.fusion) return false;
    return true;
}

}  // namespace

DiagramReport check_central_idempotent(const MonoidalStructure& m, const CentralIdempotent& ci) {
    const auto& c = m.cat;
    DiagramReport r;
    const int n = m.n();
    ObjId e = ci.e;
    auto on = [&](ObjId o) { return c.object_name(o); };
    if (static_cast<int>(ci.exchange.size()) != n) throw MalformedSpec("exchange table has the wrong size");
    r.tick("fusion-shape");
    if (!valid(ci.fusion) || c.dom(ci.fusion) != m.tensor(e, e) || c.cod(ci.fusion) != e) {
        r.fail("fusion-shape", "fusion has wrong endpoints", {on(e)});
        return r;
    }
    r.tick("fusion-iso");
    if (!c.is_iso(ci.fusion)) r.fail("fusion-iso", "fusion is not invertible", {on(e)});
    for (int a = 0; a < n; ++a) {
        ObjId x = obj_at(a);
        MorId s = ci.exchange[a];
        r.tick("exchange-shape");
        if (!valid(s) || c.dom(s) != m.tensor(e, x) || c.cod(s) != m.tensor(x, e)) {
            r.fail("exchange-shape", "exchange component has wrong endpoints", {on(x)});
            continue;
        }
        r.tick("exchange-iso");
        if (!c.is_iso(s)) r.fail("exchange-iso", "exchange component is not invertible", {on(x)});
    }
    if (!r.passed()) return r;
    MorId ide = c.id(e);
    r.tick("idempotent1");
    if (c.compose(ci.fusion, m.tensor(ide, ci.fusion)) != c.compose(ci.fusion, m.tensor(ci.fusion, ide)))
        r.fail("idempotent1", "fusion is not associative", {on(e)});
    r.tick("idempotent2");
    if (c.compose(ci.fusion, ci.exchange[idx(e)]) != ci.fusion)
        r.fail("idempotent2", "fusion does not absorb the self-exchange", {on(e)});
    for (int a = 0; a < n; ++a) {
        ObjId x = obj_at(a);
        MorId s = ci.exchange[a];
        r.tick("idempotent3");
        MorId lhs = c.compose(m.tensor(c.id(x), ci.fusion), c.compose(m.tensor(s, ide), m.tensor(ide, s)));
        MorId rhs = c.compose(s, m.tensor(ci.fusion, c.id(x)));
        if (lhs != rhs) r.fail("idempotent3", "exchange/fusion square fails", {on(x)});
        for (int b = 0; b < n; ++b) {
            ObjId y = obj_at(b);
            r.tick("idempotent4");
            MorId whole = ci.exchange[idx(m.tensor(x, y))];
            MorId parts = c.compose(m.tensor(c.id(x), ci.exchange[b]), m.tensor(s, c.id(y)));
            if (whole != parts) r.fail("idempotent4", "exchange is not multiplicative", {on(x), on(y)});
        }
    }
    for (int f = 0; f < m.m(); ++f) {
        MorId ff = mor_at(f);
        r.tick("exchange-natural");
        MorId lhs = c.compose(m.tensor(ff, ide), ci.exchange[idx(c.dom(ff))]);
        MorId rhs = c.compose(ci.exchange[idx(c.cod(ff))], m.tensor(ide, ff));
        if (lhs != rhs) r.fail("exchange-natural", "exchange is not natural", {c.describe(ff)});
    }
    return r;
}

DiagramReport validate_central_idempotent(const MonoidalStructure& m, const CentralIdempotent& ci) {
    DiagramReport r = check_central_idempotent(m, ci);
    for (const auto& f : r.failures)
        if (f.check == "fusion-iso" || f.check == "exchange-iso")
            throw NotIsomorphism(f.description + (f.witness.empty() ? "" : " at " + f.witness[0]));
    return r;
}

Ideal generated_ideal(const MonoidalStructure& m, const CentralIdempotent& ci) {
    const auto& c = m.cat;
    Subcategory s = Subcategory::empty(c);
    for (int a = 0; a < m.n(); ++a) s.objects[idx(m.tensor(ci.e, obj_at(a)))] = 1;
    MorId ide = c.id(ci.e);
    for (int f = 0; f < m.m(); ++f) s.morphisms[idx(m.tensor(ide, mor_at(f)))] = 1;
    return {iso_closure(c, s), Side::both};
}

UnitorPair induced_unitors(const MonoidalStructure& m, const CentralIdempotent& ci) {
    const auto& c = m.cat;
    UnitorPair out;
    auto& r = out.report;
    const int n = m.n();
    out.left.assign(n, kNoMor);
    out.right.assign(n, kNoMor);
    Ideal ideal = generated_ideal(m, ci);
    ObjId e = ci.e;
    MorId ide = c.id(e);
    auto build_left = [&](MorId phi, ObjId xp) {
        // φ_X⁻¹ ∘ (Φ⊗X') ∘ (e⊗φ_X)
        return c.compose(*c.inverse(phi), c.compose(m.tensor(ci.fusion, c.id(xp)), m.tensor(ide, phi)));
    };
    for (ObjId x : ideal.sub.object_list()) {
        bool found = false;
        for (int b = 0; b < n && !found; ++b) {
            ObjId xp = obj_at(b);
            auto isos = c.isos(x, m.tensor(e, xp));
            if (isos.empty()) continue;
            out.left[idx(x)] = build_left(isos.front(), xp);
            found = true;
        }
        if (!found) throw WitnessNotFound("no isomorphism from " + c.object_name(x) + " into e⊗C");
        // independence of the witness
        for (int b = 0; b < n; ++b) {
            ObjId xp = obj_at(b);
            for (MorId phi : c.isos(x, m.tensor(e, xp))) {
                r.tick("unitor-independent");
                if (build_left(phi, xp) != out.left[idx(x)])
                    r.fail("unitor-independent", "left unitor depends on the witness", {c.object_name(x), c.describe(phi)});
            }
        }
        MorId sigma_inv = *c.inverse(ci.exchange[idx(x)]);
        out.right[idx(x)] = c.compose(out.left[idx(x)], sigma_inv);
    }
    for (MorId f : ideal.sub.morphism_list()) {
        ObjId x = c.dom(f), y = c.cod(f);
        r.tick("unitor-natural");
        if (c.compose(f, out.left[idx(x)]) != c.compose(out.left[idx(y)], m.tensor(ide, f)))
            r.fail("unitor-natural", "left unitor is not natural", {c.describe(f)});
        if (c.compose(f, out.right[idx(x)]) != c.compose(out.right[idx(y)], m.tensor(f, ide)))
            r.fail("unitor-natural", "right unitor is not natural", {c.describe(f)});
    }
    for (ObjId x : ideal.sub.object_list())
        for (ObjId y : ideal.sub.object_list()) {
            r.tick("unitor-triangle");
            if (m.tensor(c.id(x), out.left[idx(y)]) != m.tensor(out.right[idx(x)], c.id(y)))
                r.fail("unitor-triangle", "triangle X⊗L = R⊗Y fails", {c.object_name(x), c.object_name(y)});
        }
    r.tick("unit-in-ideal");
    if (!ideal.sub.contains(e)) r.fail("unit-in-ideal", "e does not lie in its own ideal", {c.object_name(e)});
    return out;
}

namespace {

// Backtracking over (Φ, σ_0, ..., σ_{n-1}); visit returns false to stop.
void search_idempotents(const MonoidalStructure& m, ObjId e,
                        const std::function<bool(const CentralIdempotent&)>& visit) {
    const auto& c = m.cat;
    const int n = m.n();
    MorId ide = c.id(e);
    std::vector<std::vector<MorId>> cand(n);
    for (int a = 0; a < n; ++a) cand[a] = c.isos(m.tensor(e, obj_at(a)), m.tensor(obj_at(a), e));
    for (int a = 0; a < n; ++a)
        if (cand[a].empty()) return;
    for (MorId phi : c.isos(m.tensor(e, e), e)) {
        if (c.compose(phi, m.tensor(ide, phi)) != c.compose(phi, m.tensor(phi, ide))) continue;
        CentralIdempotent ci{e, phi, std::vector<MorId>(n, kNoMor)};
        bool stop = false;
        std::function<void(int)> rec = [&](int a) {
            if (stop) return;
            if (a == n) {
                if (check_central_idempotent(m, ci).passed()) stop = !visit(ci);
                return;
            }
            ObjId x = obj_at(a);
            for (MorId s : cand[a]) {
                ci.exchange[a] = s;
                if (!exchange_local_ok(m, ci, x)) continue;
                bool ok = true;
                // naturality against already-fixed components, and multiplicativity where decidable
                for (int b = 0; b <= a && ok; ++b) {
                    ObjId y = obj_at(b);
                    for (MorId f : c.hom(y, x)) {
                        if (c.compose(m.tensor(f, ide), ci.exchange[b]) != c.compose(s, m.tensor(ide, f))) {
                            ok = false;
                            break;
                        }
                    }
                    for (MorId f : c.hom(x, y)) {
                        if (!ok) break;
                        if (c.compose(m.tensor(f, ide), s) != c.compose(ci.exchange[b], m.tensor(ide, f))) ok = false;
                    }
                }
                for (int b = 0; b <= a && ok; ++b)
                    for (int d = 0; d <= a && ok; ++d) {
                        ObjId y = obj_at(b), z = obj_at(d);
                        ObjId yz = m.tensor(y, z);
                        if (idx(yz) > a) continue;
                        MorId parts = c.compose(m.tensor(c.id(y), ci.exchange[d]), m.tensor(ci.exchange[b], c.id(z)));
                        if (ci.exchange[idx(yz)] != parts) ok = false;
                    }
                if (ok) rec(a + 1);
                if (stop) return;
            }
            ci.exchange[a] = kNoMor;
        };
        rec(0);
        if (stop) return;
    }
}

}  // namespace

std::optional<CentralIdempotent> find_central_idempotent(const MonoidalStructure& m, ObjId e) {
    std::optional<CentralIdempotent> out;
    search_idempotents(m, e, [&](const CentralIdempotent& ci) {
        out = ci;
        return false;
    });
    return out;
}

std::vector<IdempotentCandidate> enumerate_central_idempotents(const MonoidalStructure& m, long long count_cap) {
    std::vector<IdempotentCandidate> out;
    for (int a = 0; a < m.n(); ++a) {
        IdempotentCandidate cand;
        search_idempotents(m, obj_at(a), [&](const CentralIdempotent& ci) {
            if (cand.witness_count == 0) cand.canonical = ci;
            ++cand.witness_count;
            if (cand.witness_count >= count_cap) {
                cand.count_capped = true;
                return false;
            }
            return true;
        });
        if (cand.witness_count > 0) out.push_back(std::move(cand));
    }
    return out;
}

}  // namespace parcat
