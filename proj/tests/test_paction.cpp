#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "parcat/corpus.hpp"
#include "parcat/errors.hpp"
#include "parcat/idempotent.hpp"
#include "parcat/mutate.hpp"
#include "parcat/paction.hpp"

using namespace parcat;

namespace {

const Instance& top() {
    static const Instance inst = corpus_instance("inst-top");
    return inst;
}
const Instance& fus() {
    static const Instance inst = corpus_instance("inst-fus");
    return inst;
}
const Instance& fus3() {
    static const Instance inst = corpus_instance("inst-fus-gf3");
    return inst;
}

ObjId obj(const FinCategory& c, const std::string& name) {
    auto o = c.find_object(name);
    REQUIRE(o.has_value());
    return *o;
}

MorId mor(const FinCategory& c, const std::string& label) {
    auto m = c.find_morphism(label);
    REQUIRE(m.has_value());
    return *m;
}

std::set<std::string> names_of(const FinCategory& c, const Subcategory& s) {
    std::set<std::string> out;
    for (ObjId o : s.object_list()) out.insert(c.object_name(o));
    return out;
}

// every open subset of mask on a discrete space
std::set<unsigned> subsets(unsigned mask) {
    std::set<unsigned> out;
    for (unsigned s = 0; s <= mask; ++s)
        if (oracle::subset(s, mask)) out.insert(s);
    return out;
}

template <class Name>
std::set<std::string> named(const std::set<unsigned>& masks, Name nm) {
    std::set<std::string> out;
    for (unsigned m : masks) out.insert(nm(m));
    return out;
}

PActionMorphism identity_morphism(const PartialAction& t) {
    PActionMorphism m;
    m.functor.functor = Functor::identity(t.cat());
    for (int a = 0; a < t.n(); ++a)
        for (int b = 0; b < t.n(); ++b) m.functor.J.push_back(t.id(t.tensor(obj_at(a), obj_at(b))));
    m.tau.assign(t.order(), std::vector<MorId>(t.n(), kNoMor));
    for (int g = 0; g < t.order(); ++g)
        for (int a = 0; a < t.n(); ++a)
            if (t.acts_on(g, obj_at(a))) m.tau[g][a] = t.id(t.T(g, obj_at(a)));
    return m;
}

}  // namespace

TEST_CASE("corpus actions validate") {
    for (const Instance* i : {&top(), &fus(), &fus3()}) {
        CAPTURE(i->name);
        CHECK(i->report.passed());
        CHECK(validate_partial_action(i->action).passed());
    }
}

TEST_CASE("restriction domains match the set oracle") {
    SUBCASE("topology") {
        const std::vector<int> swap{1, 0, 2};
        const auto& t = top().action;
        auto objects = subsets(0b101);
        CHECK(t.n() == static_cast<int>(objects.size()));
        auto perms = oracle::powers(swap);
        REQUIRE(t.order() == static_cast<int>(perms.size()));
        for (int g = 0; g < t.order(); ++g) {
            auto want = oracle::restricted_domain(perms[g], 0b101, objects);
            CHECK(names_of(t.cat(), t.domains[g].sub) == named(want, oracle::open_name));
        }
        // C_g = {∅, {3}}
        CHECK(names_of(t.cat(), t.domains[1].sub) == std::set<std::string>{"{}", "{3}"});
    }
    SUBCASE("coordinates") {
        const std::vector<int> cyc{1, 2, 0};
        const auto& t = fus().action;
        auto objects = subsets(0b011);
        auto perms = oracle::powers(cyc);
        REQUIRE(t.order() == 3);
        for (int g = 0; g < 3; ++g) {
            auto want = oracle::restricted_domain(perms[g], 0b011, objects);
            CHECK(names_of(t.cat(), t.domains[g].sub) == named(want, oracle::support_name));
        }
        CHECK(names_of(t.cat(), t.domains[1].sub) == std::set<std::string>{"0", "M2"});
        CHECK(names_of(t.cat(), t.domains[2].sub) == std::set<std::string>{"0", "M1"});
    }
}

TEST_CASE("restriction to the whole ambient keeps the global action") {
    const Instance g = corpus_instance("inst-top-global");
    REQUIRE(g.global.has_value());
    Restriction r = restrict_global(*g.global, Subcategory::whole(g.global->cat()));
    CHECK(r.report.passed());
    CHECK(r.action.n() == g.global->n());
    for (int h = 0; h < r.action.order(); ++h) {
        CHECK(r.action.domains[h].sub.object_total() == r.action.n());
        for (int a = 0; a < r.action.n(); ++a) {
            ObjId x = obj_at(a);
            ObjId px = r.parent_object[a];
            CHECK(r.parent_object[idx(r.action.T(h, x))] == g.global->T(h, px));
        }
    }
}

TEST_CASE("restricted T agrees with the parent action") {
    const Instance& i = fus();
    REQUIRE(i.global.has_value());
    const auto& t = i.action;
    for (int g = 0; g < t.order(); ++g)
        for (MorId f : t.domains[t.group.inv(g)].sub.morphism_list())
            CHECK(i.parent_morphism[idx(t.T(g, f))] == i.global->T(g, i.parent_morphism[idx(f)]));
}

TEST_CASE("image of C_{g^-1} under T_g is C_g and respects intersections") {
    for (const Instance* i : {&top(), &fus()}) {
        const auto& t = i->action;
        const auto& c = t.cat();
        for (int g = 0; g < t.order(); ++g) {
            const int gi = t.group.inv(g);
            std::set<std::string> img;
            for (ObjId x : t.domains[gi].sub.object_list()) img.insert(c.object_name(t.T(g, x)));
            CHECK(img == names_of(c, t.domains[g].sub));
            for (int h = 0; h < t.order(); ++h) {
                std::set<std::string> lhs, rhs;
                for (ObjId x : intersect(t.domains[gi].sub, t.domains[h].sub).object_list())
                    lhs.insert(c.object_name(t.T(g, x)));
                rhs = names_of(c, intersect(t.domains[g].sub, t.domains[t.group.mul(g, h)].sub));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("unital data") {
    SUBCASE("topology") {
        auto u = extract_unital_data(top().action);
        CHECK(u.report.passed());
        REQUIRE(u.data.has_value());
        const auto& c = top().action.cat();
        CHECK(c.object_name(u.data->unit(0)) == "{1,3}");
        CHECK(c.object_name(u.data->unit(1)) == "{3}");
    }
    SUBCASE("coordinates") {
        const auto& t = fus().action;
        auto u = extract_unital_data(t);
        CHECK(u.report.passed());
        REQUIRE(u.data.has_value());
        const auto& c = t.cat();
        CHECK(c.object_name(u.data->unit(0)) == "M12");
        CHECK(c.object_name(u.data->unit(1)) == "M2");
        CHECK(c.object_name(u.data->unit(2)) == "M1");
        // each unit generates its domain
        for (int g = 0; g < 3; ++g)
            CHECK(generated_ideal(t.ambient, u.data->units[g]).sub == t.domains[g].sub);
        // φ(g): 𝟙_g → T_g(𝟙_{g⁻¹}) is an iso with the right ends
        for (int g = 0; g < 3; ++g) {
            MorId p = u.data->phi_of(g);
            CHECK(c.dom(p) == u.data->unit(g));
            CHECK(c.cod(p) == t.T(g, u.data->unit(t.group.inv(g))));
            CHECK(c.is_iso(p));
        }
        // E_{g, g²} = M2 ∩ M1 = 0
        CHECK(c.object_name(u.data->product(t, 0b110)) == "0");
    }
}

TEST_CASE("pi endofunctors") {
    SUBCASE("topology") {
        const auto& t = top().action;
        auto u = extract_unital_data(t);
        REQUIRE(u.data.has_value());
        Functor p = pi_endofunctor(t, *u.data, 1);
        const auto& c = t.cat();
        // swap of 1,2 restricted to {1,3}: only {3} survives
        CHECK(c.object_name(p(obj(c, "{1}"))) == "{}");
        CHECK(c.object_name(p(obj(c, "{1,3}"))) == "{3}");
        CHECK(c.object_name(p(obj(c, "{3}"))) == "{3}");
        auto pr = check_pi_relations(t, *u.data);
        CHECK(pr.report.passed());
    }
    SUBCASE("coordinates") {
        const auto& t = fus().action;
        auto u = extract_unital_data(t);
        REQUIRE(u.data.has_value());
        Functor p = pi_endofunctor(t, *u.data, 1);
        const auto& c = t.cat();
        CHECK(c.object_name(p(obj(c, "M1"))) == "M2");
        CHECK(c.object_name(p(obj(c, "M2"))) == "0");
        CHECK(c.object_name(p(obj(c, "M12"))) == "M2");
        Functor p0 = pi_endofunctor(t, *u.data, 0);
        for (int a = 0; a < t.n(); ++a) CHECK(p0(obj_at(a)) == obj_at(a));
        CHECK(check_pi_relations(t, *u.data).report.passed());
    }
}

TEST_CASE("mutated actions are rejected") {
    SUBCASE("u scaled") {
        PartialAction t = fus3().action;
        const auto& c = t.cat();
        ObjId m1 = obj(c, "M1");
        REQUIRE(t.unit_at(m1) == t.id(t.T(0, m1)));
        t.u[idx(m1)] = mor(c, "M1->M1[2]");
        CHECK_FALSE(validate_partial_action(t).passed());
    }
    SUBCASE("gamma made zero") {
        PartialAction t = fus().action;
        const auto& c = t.cat();
        ObjId m1 = obj(c, "M1");
        // γ_{g,e} lives on C_e ∩ C_{g⁻¹} = C_{g²} ∋ M1
        REQUIRE(t.gamma_domain(1, 0, m1));
        t.gamma[1 * t.order() + 0][idx(m1)] = mor(c, "M2->M2[0]");
        auto r = validate_partial_action(t);
        CHECK_FALSE(r.passed());
    }
    SUBCASE("J made zero") {
        PartialAction t = fus().action;
        const auto& c = t.cat();
        ObjId m12 = obj(c, "M12");
        const int n = t.n();
        auto& J = t.actors[0].J;
        J[idx(m12) * n + idx(m12)] = mor(c, "M12->M12[00]");
        CHECK_FALSE(validate_partial_action(t).passed());
    }
    SUBCASE("domain not an ideal") {
        PartialAction t = top().action;
        t.domains[1].sub.objects[idx(obj(t.cat(), "{}"))] = 0;
        CHECK_FALSE(validate_partial_action(t).passed());
    }
}

TEST_CASE("seeded corruption") {
    SUBCASE("deterministic") {
        auto a = corrupt(fus().action, "gamma:value", 7);
        auto b = corrupt(fus().action, "gamma:value", 7);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(a->action == b->action);
        CHECK(a->site == b->site);
        CHECK_FALSE(a->action == fus().action);
        CHECK_THROWS_AS(corrupt(fus().action, "gamma:sideways", 1), DomainError);
        CHECK_THROWS_AS(corrupt(fus().action, "delta", 1), DomainError);
    }
    SUBCASE("thin categories admit no same-endpoint replacement") {
        CHECK_FALSE(corrupt(top().action, "gamma:value", 1).has_value());
    }
    SUBCASE("a corrupted gamma entry is named") {
        auto m = corrupt(top().action, "gamma:shape", 3);
        REQUIRE(m.has_value());
        auto r = validate_partial_action(m->action);
        REQUIRE(r.has_failure("gamma-shape"));
        const auto& w = r.failures.front().witness;
        REQUIRE(w.size() == 3);
        CHECK(m->site == w[0] + " " + w[1] + " " + w[2]);
    }
    SUBCASE("campaign") {
        int made = 0;
        for (const Instance* i : {&top(), &fus(), &fus3()})
            for (const auto& field : mutation_fields())
                for (unsigned seed = 1; seed <= 3; ++seed) {
                    auto m = corrupt(i->action, field, seed);
                    if (!m) continue;
                    ++made;
                    CAPTURE(field);
                    CAPTURE(m->site);
                    auto r = validate_partial_action(m->action);
                    CHECK_FALSE(r.passed());
                    for (const auto& f : r.failures) CHECK_FALSE(f.witness.empty());
                }
        CHECK(made >= 50);
    }
}

TEST_CASE("morphisms of partial actions") {
    for (const Instance* i : {&top(), &fus3()}) {
        const auto& t = i->action;
        PActionMorphism m = identity_morphism(t);
        CHECK(validate_paction_morphism(t, t, m).passed());
    }
    SUBCASE("broken tau") {
        const auto& t = fus3().action;
        PActionMorphism m = identity_morphism(t);
        ObjId m1 = obj(t.cat(), "M1");
        m.tau[0][idx(m1)] = mor(t.cat(), "M1->M1[2]");
        auto r = validate_paction_morphism(t, t, m);
        CHECK_FALSE(r.passed());
        CHECK(r.failure_totals.count("tau-u") > 0);
    }
}
