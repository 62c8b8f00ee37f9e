#include "parcat/smash.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "parcat/errors.hpp"
#include "parcat/parallel.hpp"

namespace parcat {

namespace {

std::size_t cube(int n, ObjId a, ObjId b, ObjId c) {
    return (static_cast<std::size_t>(idx(a)) * n + idx(b)) * n + idx(c);
}

void guarded(DiagramReport& r, const std::string& check, const std::vector<std::string>& witness,
             const std::function<bool()>& body, const std::string& what = "diagram does not commute") {
    r.tick(check);
    try {
        if (!body()) r.fail(check, what, witness);
    } catch (const Error& e) {
        r.fail(check, e.what(), witness);
    }
}

// base-level lookups shared by the validators
struct View {
    const SmashCategory& s;
    const FinCategory& c = s.base.cat;
    ObjId t(ObjId a, ObjId b) const { return s.base.tensor(a, b); }
    MorId t(MorId f, MorId g) const { return s.base.tensor(f, g); }
    MorId comp(MorId g, MorId f) const { return c.compose(g, f); }
    MorId id(ObjId a) const { return c.id(a); }
    MorId A(ObjId a, ObjId b, ObjId c3) const { return s.assoc(a, b, c3); }
};

}  // namespace

ObjId SmashCategory::generator(int grade, ObjId x) const {
    const auto& t = source.action;
    if (!t.in(grade, x))
        throw GradeDomainError(t.name(x) + " is not in C_" + t.elem(grade));
    for (int a = 0; a < n(); ++a)
        if (generators[a].grade == grade && generators[a].object == x) return obj_at(a);
    throw GradeDomainError("no generator " + t.name(x) + " in grade " + t.elem(grade));
}

MorId SmashCategory::morphism(int grade, MorId f) const {
    for (int m = 0; m < base.m(); ++m)
        if (morphism_grade[m] == grade && lifted[m] == f) return mor_at(m);
    throw GradeDomainError(source.action.cat().describe(f) + " is not a morphism of C_" + source.elem(grade));
}

MorId SmashCategory::assoc(ObjId a, ObjId b, ObjId c) const { return associator.at(cube(n(), a, b, c)); }

SmashCategory build_smash(const LinearAction& la, SmashOptions opts) {
    const auto& t = la.action;
    const auto& u = la.unital;
    const auto& grp = t.group;
    const auto& c = t.cat();
    const int G = t.order(), e = grp.e();
    SmashCategory s{la, {}, {}, {}, {}, {}, {}, {}, kNoObj, opts};

    std::vector<std::vector<int>> gen_of(G, std::vector<int>(t.n(), -1));
    std::vector<std::vector<int>> mor_of(G, std::vector<int>(c.morphism_count(), -1));
    std::vector<std::string> names;
    std::vector<Morphism> mors;
    for (int g = 0; g < G; ++g) {
        for (ObjId x : t.domains[g].sub.object_list()) {
            gen_of[g][idx(x)] = static_cast<int>(s.generators.size());
            s.generators.push_back({g, x});
            names.push_back(t.name(x) + "δ" + t.elem(g));
        }
    }
    for (int g = 0; g < G; ++g)
        for (MorId f : t.domains[g].sub.morphism_list()) {
            mor_of[g][idx(f)] = static_cast<int>(mors.size());
            mors.push_back({obj_at(gen_of[g][idx(c.dom(f))]), obj_at(gen_of[g][idx(c.cod(f))]),
                            "(" + c.morphism(f).label + "," + t.elem(g) + ")"});
            s.lifted.push_back(f);
            s.morphism_grade.push_back(g);
        }
    const int N = static_cast<int>(s.generators.size());
    const int M = static_cast<int>(mors.size());
    auto gen = [&](int g, ObjId x) {
        int k = gen_of[g][idx(x)];
        if (k < 0) throw GradeDomainError(t.name(x) + " is not in C_" + t.elem(g));
        return obj_at(k);
    };
    auto lift = [&](int g, MorId f) {
        int k = mor_of[g][idx(f)];
        if (k < 0) throw GradeDomainError(c.describe(f) + " is not a morphism of C_" + t.elem(g));
        return mor_at(k);
    };

    std::vector<MorId> ids;
    for (const auto& gn : s.generators) ids.push_back(lift(gn.grade, c.id(gn.object)));
    std::vector<MorId> table(static_cast<std::size_t>(M) * M, kNoMor);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const int g = s.morphism_grade[i];
            if (s.morphism_grade[j] != g || mors[j].cod != mors[i].dom) continue;
            table[static_cast<std::size_t>(i) * M + j] = lift(g, c.compose(s.lifted[i], s.lifted[j]));
        }
    s.base.cat = FinCategory(names, mors, ids, table);

    // (X δ_g) ⊠ (Y δ_h) = (X ⊗ T_g(Y ⊗ 𝟙_{g⁻¹})) δ_{gh}
    s.base.tensor_obj.resize(static_cast<std::size_t>(N) * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            const auto [g, x] = s.generators[a];
            const auto [h, y] = s.generators[b];
            ObjId v = t.tensor(x, t.T(g, t.tensor(y, u.unit(grp.inv(g)))));
            s.base.tensor_obj[static_cast<std::size_t>(a) * N + b] = gen(grp.mul(g, h), v);
        }
    s.base.tensor_mor.resize(static_cast<std::size_t>(M) * M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const int g = s.morphism_grade[i], h = s.morphism_grade[j];
            MorId f = t.tensor(s.lifted[i], t.T(g, t.tensor(s.lifted[j], t.id(u.unit(grp.inv(g))))));
            s.base.tensor_mor[static_cast<std::size_t>(i) * M + j] = lift(grp.mul(g, h), f);
        }
    s.unit = gen(e, u.unit(e));
    s.base.unit = s.unit;

    // the six-factor associator, all in C; X ∈ C_g, Y ∈ C_h, Z ∈ C_l
    s.associator.resize(static_cast<std::size_t>(N) * N * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int cc = 0; cc < N; ++cc) {
                const auto [g, x] = s.generators[a];
                const auto [h, y] = s.generators[b];
                const auto [l, z] = s.generators[cc];
                const int gi = grp.inv(g), hi = grp.inv(h), gh = grp.mul(g, h), ghi = grp.inv(gh);
                const ObjId pre = t.tensor(x, t.T(g, t.tensor(y, u.unit(gi))));
                const MorId idp = t.id(pre);
                const ObjId zgh = t.tensor(z, u.unit(ghi));
                const ObjId zh = t.tensor(z, u.unit(hi));
                const ObjId both = t.tensor(u.unit(hi), u.unit(ghi));  // E_{h⁻¹,(gh)⁻¹}
                const ObjId w = t.tensor(zh, u.unit(ghi));
                MorId f6 = t.tensor(t.tensor(idp, t.id(t.T(gh, zgh))), u.phi_mask(gh, (1u << gh) | (1u << g)));
                MorId f5 = t.tensor(idp, t.J(gh, zgh, both));
                MorId f4 = t.tensor(idp, t.inv(t.gam(g, h, w)));
                MorId f3 = t.tensor(idp, t.T(g, t.inv(t.J(h, zh, both))));
                MorId f2 = t.tensor(idp, t.T(g, t.tensor(t.id(t.T(h, zh)), t.inv(u.phi_mask(h, (1u << h) | (1u << gi))))));
                MorId f1 = t.tensor(t.id(x), t.J(g, t.tensor(y, u.unit(gi)), t.tensor(t.T(h, zh), u.unit(gi))));
                s.associator[cube(N, obj_at(a), obj_at(b), obj_at(cc))] =
                    lift(grp.mul(gh, l), t.comp({f1, f2, f3, f4, f5, f6}));
            }
    for (int a = 0; a < N; ++a) {
        const auto [g, x] = s.generators[a];
        s.left_unitor.push_back(lift(g, t.inv(t.unit_at(x))));
        s.right_unitor.push_back(lift(g, t.tensor(t.id(x), t.inv(u.phi_of(g)))));
    }
    return s;
}

SmashObject smash_object(const SmashCategory& s, const std::vector<SmashGenerator>& summands) {
    SmashObject out;
    out.grades.resize(s.order());
    for (const auto& sg : summands) out.grades.at(sg.grade).push_back(sg.object);
    check_grades(s, out);
    return out;
}

void check_grades(const SmashCategory& s, const SmashObject& a) {
    const auto& t = s.source.action;
    if (static_cast<int>(a.grades.size()) != s.order()) throw GradeDomainError("one entry per group element expected");
    for (int g = 0; g < s.order(); ++g)
        for (ObjId x : a.grades[g])
            if (!t.in(g, x)) throw GradeDomainError(t.name(x) + " in grade " + t.elem(g) + " is not in C_" + t.elem(g));
}

SmashObject smash_tensor(const SmashCategory& s, const SmashObject& a, const SmashObject& b) {
    const auto& la = s.source;
    const auto& grp = la.group();
    SmashObject out;
    out.grades.resize(s.order());
    for (int k = 0; k < s.order(); ++k)
        for (int g = 0; g < s.order(); ++g) {
            const int h = grp.mul(grp.inv(g), k);
            EnvObject part =
                la.env.tensor(a.grades[g], la.T_obj(g, la.env.tensor(b.grades[h], la.one(grp.inv(g)))));
            out.grades[k].insert(out.grades[k].end(), part.begin(), part.end());
        }
    return out;
}

SmashMorphism smash_tensor(const SmashCategory& s, const SmashMorphism& f, const SmashMorphism& g2) {
    const auto& la = s.source;
    const auto& grp = la.group();
    SmashMorphism out;
    for (int k = 0; k < s.order(); ++k) {
        EnvMorphism acc = la.env.zero({}, {});
        for (int g = 0; g < s.order(); ++g) {
            const int h = grp.mul(grp.inv(g), k);
            EnvMorphism inner = la.env.tensor(g2.grades[h], la.env.id(la.one(grp.inv(g))));
            acc = la.env.direct_sum(acc, la.env.tensor(f.grades[g], la.T_mor(g, inner)));
        }
        out.grades.push_back(std::move(acc));
    }
    return out;
}

SmashMorphism smash_compose(const SmashCategory& s, const SmashMorphism& g, const SmashMorphism& f) {
    SmashMorphism out;
    for (int k = 0; k < s.order(); ++k) out.grades.push_back(s.source.env.compose(g.grades.at(k), f.grades.at(k)));
    return out;
}

SmashMorphism smash_id(const SmashCategory& s, const SmashObject& a) {
    SmashMorphism out;
    for (int k = 0; k < s.order(); ++k) out.grades.push_back(s.source.env.id(a.grades.at(k)));
    return out;
}

namespace {

// Summand labels: per grade, the tuple of operand summand positions each summand
// of a product comes from, in the same order smash_tensor lays them out.
using Labels = std::vector<std::vector<std::vector<int>>>;

Labels leaf_labels(const SmashObject& a) {
    Labels out(a.grades.size());
    int pos = 0;
    for (std::size_t g = 0; g < a.grades.size(); ++g)
        for (std::size_t i = 0; i < a.grades[g].size(); ++i) out[g].push_back({pos++});
    return out;
}

Labels tensor_labels(const FinGroup& grp, const Labels& a, const Labels& b) {
    Labels out(a.size());
    for (int k = 0; k < grp.order(); ++k)
        for (int g = 0; g < grp.order(); ++g) {
            const int h = grp.mul(grp.inv(g), k);
            for (const auto& la : a[g])
                for (const auto& lb : b[h]) {
                    auto v = la;
                    v.insert(v.end(), lb.begin(), lb.end());
                    out[k].push_back(std::move(v));
                }
        }
    return out;
}

std::vector<ObjId> flat_generators(const SmashCategory& s, const SmashObject& a) {
    std::vector<ObjId> out;
    for (int g = 0; g < s.order(); ++g)
        for (ObjId x : a.grades[g]) out.push_back(s.generator(g, x));
    return out;
}

}  // namespace

SmashMorphism smash_associator(const SmashCategory& s, const SmashObject& a, const SmashObject& b,
                               const SmashObject& c) {
    const auto& la = s.source;
    const auto& grp = la.group();
    const auto ga = flat_generators(s, a), gb = flat_generators(s, b), gc = flat_generators(s, c);
    const Labels A = leaf_labels(a), B = leaf_labels(b), C = leaf_labels(c);
    const Labels left = tensor_labels(grp, tensor_labels(grp, A, B), C);
    const Labels right = tensor_labels(grp, A, tensor_labels(grp, B, C));
    const SmashObject dom = smash_tensor(s, smash_tensor(s, a, b), c);
    const SmashObject cod = smash_tensor(s, a, smash_tensor(s, b, c));
    SmashMorphism out;
    for (int k = 0; k < s.order(); ++k) {
        EnvMorphism m = la.env.zero(dom.grades[k], cod.grades[k]);
        std::map<std::vector<int>, std::size_t> col;
        for (std::size_t j = 0; j < left[k].size(); ++j) col[left[k][j]] = j;
        for (std::size_t i = 0; i < right[k].size(); ++i) {
            const auto& lab = right[k][i];
            MorId comp = s.assoc(ga.at(lab[0]), gb.at(lab[1]), gc.at(lab[2]));
            m.block(i, col.at(lab)) = la.linear.vec(s.lifted.at(idx(comp)));
        }
        out.grades.push_back(std::move(m));
    }
    return out;
}

DiagramReport validate_smash_coherence(const SmashCategory& s) {
    DiagramReport r;
    const View v{s};
    const auto& c = v.c;
    const int N = s.n();
    auto nm = [&](ObjId a) { return s.name(a); };

    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                ObjId a = obj_at(i), b = obj_at(j), cc = obj_at(k);
                guarded(r, "associator-shape", {nm(a), nm(b), nm(cc)}, [&] {
                    MorId m = v.A(a, b, cc);
                    return c.dom(m) == v.t(v.t(a, b), cc) && c.cod(m) == v.t(a, v.t(b, cc));
                });
                guarded(r, "associator-iso", {nm(a), nm(b), nm(cc)}, [&] { return c.is_iso(v.A(a, b, cc)); },
                        "component is not invertible");
            }
    for (int i = 0; i < N; ++i) {
        ObjId a = obj_at(i);
        guarded(r, "unitor-shape", {nm(a)}, [&] {
            MorId l = s.left_unitor[i], rr = s.right_unitor[i];
            return c.dom(l) == v.t(s.unit, a) && c.cod(l) == a && c.dom(rr) == v.t(a, s.unit) && c.cod(rr) == a &&
                   c.is_iso(l) && c.is_iso(rr);
        });
    }
    // wrong endpoints make every later composite meaningless; a non-invertible
    // component still goes through the diagrams
    if (r.has_failure("associator-shape") || r.has_failure("unitor-shape")) return r;

    // naturality in each slot, over every base morphism
    for (int m = 0; m < s.base.m(); ++m) {
        MorId f = mor_at(m);
        ObjId p = c.dom(f), q = c.cod(f);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                ObjId b = obj_at(i), d = obj_at(j);
                std::vector<std::string> w{c.describe(f), nm(b), nm(d)};
                guarded(r, "associator-natural", w, [&] {
                    return v.comp(v.A(q, b, d), v.t(v.t(f, v.id(b)), v.id(d))) ==
                               v.comp(v.t(f, v.id(v.t(b, d))), v.A(p, b, d)) &&
                           v.comp(v.A(b, q, d), v.t(v.t(v.id(b), f), v.id(d))) ==
                               v.comp(v.t(v.id(b), v.t(f, v.id(d))), v.A(b, p, d)) &&
                           v.comp(v.A(b, d, q), v.t(v.id(v.t(b, d)), f)) ==
                               v.comp(v.t(v.id(b), v.t(v.id(d), f)), v.A(b, d, p));
                });
            }
        guarded(r, "unitor-natural", {c.describe(f)}, [&] {
            return v.comp(s.left_unitor[idx(q)], v.t(v.id(s.unit), f)) == v.comp(f, s.left_unitor[idx(p)]) &&
                   v.comp(s.right_unitor[idx(q)], v.t(f, v.id(s.unit))) == v.comp(f, s.right_unitor[idx(p)]);
        });
    }

    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            ObjId a = obj_at(i), b = obj_at(j);
            guarded(r, "triangle", {nm(a), nm(b)}, [&] {
                return v.comp(v.t(v.id(a), s.left_unitor[j]), v.A(a, s.unit, b)) ==
                       v.t(s.right_unitor[i], v.id(b));
            });
        }

    const auto& t = s.source.action;
    bool global = true;
    for (int g = 0; g < t.order(); ++g) global = global && t.domains[g].sub == Subcategory::whole(t.cat());
    if (global) {
        // C[G]: X δ_g ⊠ Y δ_h = (X ⊗ T_g Y) δ_{gh}
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const auto [g, x] = s.generators[i];
                const auto [h, y] = s.generators[j];
                guarded(r, "global-semidirect", {nm(obj_at(i)), nm(obj_at(j))}, [&] {
                    return s.generators[idx(v.t(obj_at(i), obj_at(j)))].object == t.tensor(x, t.T(g, y));
                });
            }
    }

    if (s.options.skip_pentagon) {
        r.warn("pentagon skipped (construction-only run)");
        r.note("pentagon: skipped");
        return r;
    }

    auto parts = parallel_collect<DiagramReport>(static_cast<std::size_t>(N), [&](std::size_t i) {
        DiagramReport part;
        ObjId a = obj_at(static_cast<int>(i));
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    ObjId b = obj_at(j), cc = obj_at(k), d = obj_at(l);
                    MorId lhs = kNoMor, rhs = kNoMor;
                    std::vector<MorId> factors;
                    guarded(part, "pentagon", {}, [&] {
                        factors = {v.A(v.t(a, b), cc, d), v.A(a, b, v.t(cc, d)), v.t(v.A(a, b, cc), v.id(d)),
                                   v.A(a, v.t(b, cc), d), v.t(v.id(a), v.A(b, cc, d))};
                        lhs = v.comp(factors[1], factors[0]);
                        rhs = v.comp(factors[4], v.comp(factors[3], factors[2]));
                        return lhs == rhs;
                    });
                    if (!part.passed() && part.failures.back().witness.empty()) {
                        std::vector<std::string> w{nm(a), nm(b), nm(cc), nm(d)};
                        for (MorId f : factors) w.push_back(c.describe(f));
                        if (valid(lhs)) w.push_back("lhs=" + c.describe(lhs));
                        if (valid(rhs)) w.push_back("rhs=" + c.describe(rhs));
                        part.failures.back().witness = std::move(w);
                    }
                }
        return part;
    });
    for (const auto& p : parts) r.merge(p);

    // graded sums: the same pentagon with everything assembled in the envelope
    std::mt19937 rng(s.options.seed);
    auto random_object = [&] {
        SmashObject o;
        o.grades.resize(s.order());
        for (int g = 0; g < s.order(); ++g) {
            std::vector<ObjId> pool;
            for (const auto& gn : s.generators)
                if (gn.grade == g) pool.push_back(gn.object);
            int count = std::uniform_int_distribution<int>(0, s.options.multiplicity_cap)(rng);
            for (int k = 0; k < count && !pool.empty(); ++k)
                o.grades[g].push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
        }
        return o;
    };
    const auto& env = s.source.env;
    auto describe = [&](const SmashObject& o) {
        std::string out;
        for (int g = 0; g < s.order(); ++g)
            if (!o.grades[g].empty()) out += (out.empty() ? "" : "+") + env.describe(o.grades[g]) + "δ" + t.elem(g);
        return out.empty() ? std::string("0") : out;
    };
    for (int k = 0; k < s.options.spot_checks; ++k) {
        SmashObject a = random_object(), b = random_object(), cc = random_object(), d = random_object();
        guarded(r, "sums/pentagon", {describe(a), describe(b), describe(cc), describe(d)}, [&] {
            auto lhs = smash_compose(s, smash_associator(s, a, b, smash_tensor(s, cc, d)),
                                     smash_associator(s, smash_tensor(s, a, b), cc, d));
            auto rhs = smash_compose(
                s, smash_tensor(s, smash_id(s, a), smash_associator(s, b, cc, d)),
                smash_compose(s, smash_associator(s, a, smash_tensor(s, b, cc), d),
                              smash_tensor(s, smash_associator(s, a, b, cc), smash_id(s, d))));
            return lhs == rhs;
        });
    }
    r.note("pentagon over all " + std::to_string(static_cast<long long>(N) * N * N * N) +
           " generator quadruples; graded sums spot-checked with multiplicity cap " +
           std::to_string(s.options.multiplicity_cap));
    return r;
}

CanonicalFunctors canonical_functors(const SmashCategory& s) {
    const auto& t = s.source.action;
    const auto& u = s.source.unital;
    const auto& grp = t.group;
    const auto& c = t.cat();
    const View v{s};
    const int G = t.order(), e = grp.e();
    CanonicalFunctors out;
    auto& r = out.report;
    for (int g = 0; g < G; ++g) out.pi0.push_back(s.generator(g, u.unit(g)));
    auto& F = out.phi0.functor;
    for (int a = 0; a < t.n(); ++a) F.obj.push_back(s.generator(e, obj_at(a)));
    for (int m = 0; m < c.morphism_count(); ++m) F.mor.push_back(s.morphism(e, mor_at(m)));
    // φ₀X ⊠ φ₀Y = X ⊗ T_e(Y) → X ⊗ Y
    for (int a = 0; a < t.n(); ++a)
        for (int b = 0; b < t.n(); ++b)
            out.phi0.J.push_back(s.morphism(e, t.tensor(t.id(obj_at(a)), t.inv(t.unit_at(obj_at(b))))));
    out.phi0.J0 = v.id(s.unit);

    auto iso = [&](const std::string& check, std::vector<std::string> w, ObjId a, ObjId b) {
        r.tick(check);
        auto m = v.c.find_iso(a, b);
        std::string tag = check;
        for (const auto& x : w) tag += " " + x;
        if (!m) {
            r.fail(check, s.name(a) + " and " + s.name(b) + " are not isomorphic", w);
            return;
        }
        out.witnesses.push_back(tag + ": " + v.c.describe(*m));
    };
    auto p = [&](int g) { return out.pi0[g]; };
    auto ph = [&](ObjId x) { return F.obj[idx(x)]; };

    r.tick("PR1");
    if (p(e) != s.unit) r.fail("PR1", "π₀(e) is not the unit object");
    for (int g = 0; g < G; ++g) {
        const int gi = grp.inv(g);
        const std::vector<std::string> wg{"g=" + t.elem(g)};
        iso("PR4", wg, v.t(v.t(p(g), p(gi)), p(g)), p(g));
        for (int h = 0; h < G; ++h) {
            const int hi = grp.inv(h);
            const std::vector<std::string> w{"g=" + t.elem(g), "h=" + t.elem(h)};
            iso("PR2", w, v.t(v.t(p(g), p(h)), p(hi)), v.t(p(grp.mul(g, h)), p(hi)));
            iso("PR3", w, v.t(v.t(p(gi), p(g)), p(h)), v.t(p(gi), p(grp.mul(g, h))));
        }
        for (int a = 0; a < t.n(); ++a) {
            ObjId x = obj_at(a);
            const std::vector<std::string> w{"g=" + t.elem(g), "X=" + t.name(x)};
            iso("compat-i", w, v.t(v.t(ph(x), p(g)), p(gi)), v.t(v.t(p(g), p(gi)), ph(x)));
            iso("compat-ii", w, v.t(v.t(p(g), ph(x)), p(gi)), ph(t.T(g, t.tensor(x, u.unit(gi)))));
        }
    }
    r.tick("phi0-unit");
    if (ph(u.unit(e)) != s.unit) r.fail("phi0-unit", "φ₀(𝟙) is not the unit object");
    r.merge(validate_functor(c, v.c, F, nullptr, "phi0"));
    const int n = t.n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ObjId x = obj_at(a), y = obj_at(b);
            MorId j = out.phi0.component(x, y, n);
            guarded(r, "phi0-J", {t.name(x), t.name(y)}, [&] {
                return v.c.dom(j) == v.t(ph(x), ph(y)) && v.c.cod(j) == ph(t.tensor(x, y)) && v.c.is_iso(j);
            });
            out.witnesses.push_back("phi0-monoidal " + t.name(x) + " " + t.name(y) + ": " + v.c.describe(j));
            for (int d = 0; d < n; ++d) {
                ObjId z = obj_at(d);
                guarded(r, "phi0-J-assoc", {t.name(x), t.name(y), t.name(z)}, [&] {
                    MorId lhs = v.comp(out.phi0.component(t.tensor(x, y), z, n), v.t(j, v.id(ph(z))));
                    MorId rhs = v.comp(out.phi0.component(x, t.tensor(y, z), n),
                                       v.comp(v.t(v.id(ph(x)), out.phi0.component(y, z, n)), v.A(ph(x), ph(y), ph(z))));
                    return lhs == rhs;
                });
            }
        }
    for (int m = 0; m < c.morphism_count(); ++m)
        for (int m2 = 0; m2 < c.morphism_count(); ++m2) {
            MorId f = mor_at(m), f2 = mor_at(m2);
            guarded(r, "phi0-J-natural", {c.describe(f), c.describe(f2)}, [&] {
                MorId lhs = v.comp(F(t.tensor(f, f2)), out.phi0.component(c.dom(f), c.dom(f2), n));
                MorId rhs = v.comp(out.phi0.component(c.cod(f), c.cod(f2), n), v.t(F(f), F(f2)));
                return lhs == rhs;
            });
        }
    return out;
}

MonoidalTarget smash_target(const SmashCategory& s) { return {s.base, s.associator}; }

CovariantResult covariant_psi(const SmashCategory& s, const MonoidalTarget& d, const SemigroupalFunctor& phi,
                              const std::vector<ObjId>& pi) {
    const auto& t = s.source.action;
    const auto& grp = t.group;
    const auto& c = t.cat();
    const auto& D = d.cat;
    const auto& dc = D.cat;
    const int G = t.order(), e = grp.e(), n = t.n();
    const int DN = D.n();
    CovariantResult out;
    auto& r = out.report;
    auto reject = [](const std::string& axiom, const DiagramReport& rep) {
        if (rep.passed()) return;
        const auto& f = rep.failures.front();
        std::string w;
        for (const auto& x : f.witness) w += " " + x;
        throw NotCovariantPair(axiom + ": " + f.check + ": " + f.description + (w.empty() ? "" : " at" + w));
    };
    auto D_assoc = [&](ObjId a, ObjId b, ObjId c3) {
        return d.associator.empty() ? dc.id(D.tensor(D.tensor(a, b), c3)) : d.associator.at(cube(DN, a, b, c3));
    };
    auto iso_check = [&](DiagramReport& rep, const std::string& check, std::vector<std::string> w, ObjId a, ObjId b) {
        rep.tick(check);
        if (!valid(a) || !valid(b) || !dc.isomorphic(a, b)) rep.fail(check, "no isomorphism", std::move(w));
    };

    // (CV1) φ monoidal
    DiagramReport cv1 = validate_functor(c, dc, phi.functor, nullptr, "phi");
    if (cv1.passed()) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                ObjId x = obj_at(a), y = obj_at(b);
                guarded(cv1, "phi-J", {t.name(x), t.name(y)}, [&] {
                    MorId j = phi.component(x, y, n);
                    return dc.dom(j) == D.tensor(phi.functor(x), phi.functor(y)) &&
                           dc.cod(j) == phi.functor(t.tensor(x, y)) && dc.is_iso(j);
                });
            }
    }
    if (cv1.passed()) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int k = 0; k < n; ++k) {
                    ObjId x = obj_at(a), y = obj_at(b), z = obj_at(k);
                    guarded(cv1, "phi-J-assoc", {t.name(x), t.name(y), t.name(z)}, [&] {
                        ObjId px = phi.functor(x), py = phi.functor(y), pz = phi.functor(z);
                        MorId lhs = dc.compose(phi.component(t.tensor(x, y), z, n),
                                               D.tensor(phi.component(x, y, n), dc.id(pz)));
                        MorId rhs = dc.compose(phi.component(x, t.tensor(y, z), n),
                                               dc.compose(D.tensor(dc.id(px), phi.component(y, z, n)),
                                                          D_assoc(px, py, pz)));
                        return lhs == rhs;
                    });
                }
        iso_check(cv1, "phi-unit", {}, phi.functor(s.source.unital.unit(e)), D.unit.value_or(kNoObj));
    }
    reject("CV1", cv1);

    // (CV2)
    DiagramReport cv2a, cv2b, cv2c;
    auto pv = [&](int g) { return g < static_cast<int>(pi.size()) ? pi[g] : kNoObj; };
    auto tt = [&](ObjId a, ObjId b) { return valid(a) && valid(b) ? D.tensor(a, b) : kNoObj; };
    cv2a.tick("pi-unit");
    if (!valid(pv(e)) || !D.unit || pv(e) != *D.unit) cv2a.fail("pi-unit", "π(e) is not the unit object");
    reject("CV2(a)", cv2a);
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            const int gi = grp.inv(g), hi = grp.inv(h), gh = grp.mul(g, h);
            const std::vector<std::string> w{"g=" + t.elem(g), "h=" + t.elem(h)};
            iso_check(cv2b, "pi-b", w, tt(tt(pv(g), pv(h)), pv(hi)), tt(pv(gh), pv(hi)));
            iso_check(cv2c, "pi-c", w, tt(tt(pv(gi), pv(g)), pv(h)), tt(pv(gi), pv(gh)));
        }
    reject("CV2(b)", cv2b);
    reject("CV2(c)", cv2c);

    // (CV3)
    DiagramReport cv3a, cv3b;
    const auto& u = s.source.unital;
    for (int g = 0; g < G; ++g)
        for (int a = 0; a < n; ++a) {
            const int gi = grp.inv(g);
            ObjId x = obj_at(a);
            ObjId px = phi.functor(x);
            const std::vector<std::string> w{"g=" + t.elem(g), "X=" + t.name(x)};
            iso_check(cv3a, "compat-a", w, tt(tt(px, pv(g)), pv(gi)), tt(tt(pv(g), pv(gi)), px));
            iso_check(cv3b, "compat-b", w, tt(tt(pv(g), px), pv(gi)), phi.functor(t.T(g, t.tensor(x, u.unit(gi)))));
        }
    reject("CV3(a)", cv3a);
    reject("CV3(b)", cv3b);
    r.merge(cv1, "CV1/");
    r.merge(cv2a, "CV2/");
    r.merge(cv2b, "CV2/");
    r.merge(cv2c, "CV2/");
    r.merge(cv3a, "CV3/");
    r.merge(cv3b, "CV3/");

    // Ψ on generators and on base morphisms
    const View v{s};
    for (const auto& gn : s.generators) out.psi.obj.push_back(D.tensor(phi.functor(gn.object), pi[gn.grade]));
    for (int m = 0; m < s.base.m(); ++m)
        out.psi.mor.push_back(D.tensor(phi.functor(s.lifted[m]), dc.id(pi[s.morphism_grade[m]])));
    r.merge(validate_functor(v.c, dc, out.psi, nullptr, "psi"));
    for (int a = 0; a < n; ++a) {
        ObjId x = obj_at(a);
        iso_check(r, "psi-phi0", {t.name(x)}, out.psi(s.generator(e, x)), phi.functor(x));
    }
    for (int g = 0; g < G; ++g)
        iso_check(r, "psi-pi0", {"g=" + t.elem(g)}, out.psi(s.generator(g, u.unit(g))), pi[g]);
    for (int i = 0; i < s.n(); ++i)
        for (int j = 0; j < s.n(); ++j) {
            ObjId a = obj_at(i), b = obj_at(j);
            iso_check(r, "psi-monoidal", {s.name(a), s.name(b)}, out.psi(v.t(a, b)), D.tensor(out.psi(a), out.psi(b)));
        }
    iso_check(r, "psi-unit", {}, out.psi(s.unit), D.unit.value_or(kNoObj));
    return out;
}

namespace {

// A functor on C as its object and morphism tables; composites compare by tables.
Functor compose_endo(const Functor& f, const Functor& g) {
    Functor out;
    for (ObjId o : g.obj) out.obj.push_back(f(o));
    for (MorId m : g.mor) out.mor.push_back(f(m));
    return out;
}

}  // namespace

EndTarget end_target(const SmashCategory& s, long long budget) {
    const auto& t = s.source.action;
    const auto& u = s.source.unital;
    const auto& grp = t.group;
    const auto& c = t.cat();
    const int n = t.n(), mc = c.morphism_count();
    EndTarget out;
    auto& fs = out.functors;
    auto find_or_add = [&](const Functor& f) {
        auto it = std::find_if(fs.begin(), fs.end(), [&](const Functor& x) { return x.obj == f.obj && x.mor == f.mor; });
        if (it != fs.end()) return static_cast<int>(it - fs.begin());
        fs.push_back(f);
        return static_cast<int>(fs.size()) - 1;
    };
    auto left_mult = [&](ObjId x) {
        Functor f;
        for (int a = 0; a < n; ++a) f.obj.push_back(t.tensor(x, obj_at(a)));
        for (int m = 0; m < mc; ++m) f.mor.push_back(t.tensor(t.id(x), mor_at(m)));
        return f;
    };
    std::vector<int> phi_obj, pi_obj;
    for (int a = 0; a < n; ++a) phi_obj.push_back(find_or_add(left_mult(obj_at(a))));
    for (int g = 0; g < grp.order(); ++g) {
        const ObjId one = u.unit(grp.inv(g));
        Functor f;
        for (int a = 0; a < n; ++a) f.obj.push_back(t.T(g, t.tensor(obj_at(a), one)));
        for (int m = 0; m < mc; ++m) f.mor.push_back(t.T(g, t.tensor(mor_at(m), t.id(one))));
        pi_obj.push_back(find_or_add(f));
    }
    for (std::size_t done = 0; done < fs.size();) {
        const std::size_t upto = fs.size();
        for (std::size_t i = 0; i < upto; ++i)
            for (std::size_t j = (i < done ? done : 0); j < upto; ++j) {
                find_or_add(compose_endo(fs[i], fs[j]));
                find_or_add(compose_endo(fs[j], fs[i]));
            }
        done = upto;
    }
    const int N = static_cast<int>(fs.size());

    // every natural transformation between every pair, by backtracking per object
    struct Nat {
        int from, to;
        std::vector<MorId> comps;
    };
    std::vector<Nat> nats;
    long long nodes = 0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            std::vector<MorId> pick(n, kNoMor);
            std::function<void(int)> go = [&](int k) {
                if (k == n) {
                    nats.push_back({a, b, pick});
                    return;
                }
                auto cands = c.hom(fs[a].obj[k], fs[b].obj[k]);
                for (MorId m : cands) {
                    if (++nodes > budget) throw SearchBudgetExceeded("natural transformations passed " + std::to_string(budget));
                    pick[k] = m;
                    bool ok = true;
                    for (int q = 0; q < mc && ok; ++q) {
                        MorId f = mor_at(q);
                        int x = idx(c.dom(f)), y = idx(c.cod(f));
                        if (std::max(x, y) != k) continue;
                        ok = c.compose(fs[b].mor[q], pick[x]) == c.compose(pick[y], fs[a].mor[q]);
                    }
                    if (ok) go(k + 1);
                }
                pick[k] = kNoMor;
            };
            go(0);
        }
    const int M = static_cast<int>(nats.size());
    std::map<std::tuple<int, int, std::vector<MorId>>, int> index;
    for (int i = 0; i < M; ++i) index[{nats[i].from, nats[i].to, nats[i].comps}] = i;
    auto lookup = [&](int from, int to, const std::vector<MorId>& comps) {
        return mor_at(index.at({from, to, comps}));
    };

    std::vector<std::string> names;
    for (int i = 0; i < N; ++i) names.push_back("F" + std::to_string(i));
    std::vector<Morphism> mors;
    for (int i = 0; i < M; ++i)
        mors.push_back({obj_at(nats[i].from), obj_at(nats[i].to),
                        "η" + std::to_string(i) + ":F" + std::to_string(nats[i].from) + "→F" + std::to_string(nats[i].to)});
    std::vector<MorId> ids;
    for (int i = 0; i < N; ++i) {
        std::vector<MorId> comps;
        for (int a = 0; a < n; ++a) comps.push_back(c.id(fs[i].obj[a]));
        ids.push_back(lookup(i, i, comps));
    }
    std::vector<MorId> table(static_cast<std::size_t>(M) * M, kNoMor);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (nats[j].to != nats[i].from) continue;
            std::vector<MorId> comps;
            for (int a = 0; a < n; ++a) comps.push_back(c.compose(nats[i].comps[a], nats[j].comps[a]));
            table[static_cast<std::size_t>(i) * M + j] = lookup(nats[j].from, nats[i].to, comps);
        }
    auto& D = out.target.cat;
    D.cat = FinCategory(names, mors, ids, table);
    // F ⊗ G = F∘G; α ⊗ β has components F'(β_Y)∘α_{G(Y)}
    D.tensor_obj.resize(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            int k = find_or_add(compose_endo(fs[i], fs[j]));
            if (k >= N) throw SearchBudgetExceeded("endofunctor closure is not closed");
            D.tensor_obj[static_cast<std::size_t>(i) * N + j] = obj_at(k);
        }
    D.tensor_mor.resize(static_cast<std::size_t>(M) * M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const auto& al = nats[i];
            const auto& be = nats[j];
            std::vector<MorId> comps;
            for (int a = 0; a < n; ++a)
                comps.push_back(c.compose(fs[al.to].mor[idx(be.comps[a])], al.comps[idx(fs[be.from].obj[a])]));
            D.tensor_mor[static_cast<std::size_t>(i) * M + j] =
                lookup(idx(D.tensor_obj[static_cast<std::size_t>(al.from) * N + be.from]),
                       idx(D.tensor_obj[static_cast<std::size_t>(al.to) * N + be.to]), comps);
        }
    Functor identity;
    for (int a = 0; a < n; ++a) identity.obj.push_back(obj_at(a));
    for (int m = 0; m < mc; ++m) identity.mor.push_back(mor_at(m));
    {
        auto it = std::find_if(fs.begin(), fs.end(),
                               [&](const Functor& x) { return x.obj == identity.obj && x.mor == identity.mor; });
        if (it != fs.end()) D.unit = obj_at(static_cast<int>(it - fs.begin()));
    }

    // φ(X) = X⊗−, φ(f) = f⊗−; J is the identity since X⊗(Y⊗−) = (X⊗Y)⊗−
    auto& phi = out.phi;
    for (int a = 0; a < n; ++a) phi.functor.obj.push_back(obj_at(phi_obj[a]));
    for (int m = 0; m < mc; ++m) {
        MorId f = mor_at(m);
        std::vector<MorId> comps;
        for (int a = 0; a < n; ++a) comps.push_back(t.tensor(f, t.id(obj_at(a))));
        phi.functor.mor.push_back(lookup(phi_obj[idx(c.dom(f))], phi_obj[idx(c.cod(f))], comps));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            phi.J.push_back(D.cat.id(D.tensor(phi.functor.obj[a], phi.functor.obj[b])));
    if (D.unit) phi.J0 = D.cat.id(*D.unit);
    for (int g = 0; g < grp.order(); ++g) out.pi.push_back(obj_at(pi_obj[g]));
    return out;
}

ObjId odot(const SmashCategory& s, ObjId a, ObjId z) {
    const auto& t = s.source.action;
    const auto& u = s.source.unital;
    const auto [g, x] = s.generators.at(idx(a));
    return t.tensor(x, t.T(g, t.tensor(z, u.unit(t.group.inv(g)))));
}

DiagramReport check_odot_action(const SmashCategory& s) {
    DiagramReport r;
    const auto& t = s.source.action;
    const auto& c = t.cat();
    const View v{s};
    for (int k = 0; k < t.n(); ++k) {
        ObjId z = obj_at(k);
        guarded(r, "odot-unit", {t.name(z)}, [&] { return c.isomorphic(odot(s, s.unit, z), z); });
        for (int i = 0; i < s.n(); ++i)
            for (int j = 0; j < s.n(); ++j) {
                ObjId a = obj_at(i), b = obj_at(j);
                guarded(r, "odot-assoc", {s.name(a), s.name(b), t.name(z)},
                        [&] { return c.isomorphic(odot(s, a, odot(s, b, z)), odot(s, v.t(a, b), z)); });
            }
    }
    return r;
}

}  // namespace parcat
