#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "parcat/corpus.hpp"
#include "parcat/errors.hpp"
#include "parcat/globalize.hpp"

using namespace parcat;

namespace {

const Instance& get(const std::string& name) {
    static std::map<std::string, Instance> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, corpus_instance(name)).first;
    return it->second;
}

UnitalData unital(const PartialAction& t) {
    auto r = extract_unital_data(t);
    REQUIRE(r.data.has_value());
    return *r.data;
}

ObjId obj(const FinCategory& c, const std::string& name) {
    auto o = c.find_object(name);
    REQUIRE(o.has_value());
    return *o;
}

std::vector<std::string> names(const FinCategory& c, const GFunctor& f) {
    std::vector<std::string> out;
    for (ObjId v : f.values) out.push_back(c.object_name(v));
    return out;
}

using oracle::closure_oracle;
using oracle::oracle_names;

std::set<std::string> object_names(const GlobalizedAction& g) {
    auto v = g.category().cat.object_names();
    return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("embedding, shift and bullet on the topology instance") {
    const auto& t = get("inst-top").action;
    const auto& c = t.cat();
    auto u = unital(t);
    auto phi = [&](const char* x) { return phi_embed(t, u, obj(c, x)); };
    using V = std::vector<std::string>;
    CHECK(names(c, phi("{1}")) == V{"{1}", "{}"});
    CHECK(names(c, phi("{1,3}")) == V{"{1,3}", "{3}"});
    CHECK(names(c, shift_functor(t.group, 1, phi("{1}"))) == V{"{}", "{1}"});
    CHECK(names(c, bullet_tensor(t.ambient, phi("{1}"), shift_functor(t.group, 1, phi("{1}")))) == V{"{}", "{}"});
    CHECK(names(c, bullet_tensor(t.ambient, phi("{1,3}"), shift_functor(t.group, 1, phi("{1,3}")))) ==
          V{"{3}", "{3}"});
}

TEST_CASE("shifts compose to the identity") {
    const auto& t = get("inst-fus").action;
    const auto& c = t.cat();
    auto u = unital(t);
    for (int g = 0; g < t.order(); ++g) {
        int gi = t.group.inv(g);
        for (int a = 0; a < t.n(); ++a) {
            auto f = phi_embed(t, u, obj_at(a));
            CHECK(shift_functor(t.group, g, shift_functor(t.group, gi, f)) == f);
        }
        for (int m = 0; m < c.morphism_count(); ++m) {
            auto f = phi_embed(t, u, mor_at(m));
            CHECK(shift_functor(t.group, gi, shift_functor(t.group, g, f)) == f);
        }
    }
}

TEST_CASE("generated objects match the closure oracle") {
    SUBCASE("inst-top") {
        auto g = build_globalization(get("inst-top").action);
        CHECK(g.objects.size() == 6);
        CHECK(object_names(g) == oracle_names(closure_oracle({1, 0, 2}, 0b101, {0, 1, 2, 3, 4, 5, 6, 7})));
        std::vector<std::string> want{"({1,3},{3})", "({1},{})", "({3},{3})", "({},{})", "({3},{1,3})", "({},{1})"};
        CHECK(std::set<std::string>(want.begin(), want.end()) == object_names(g));
    }
    SUBCASE("top-cycle4") {
        std::vector<unsigned> opens;
        for (unsigned s = 0; s < 16; ++s) opens.push_back(s);
        auto g = build_globalization(get("top-cycle4").action);
        CHECK(object_names(g) == oracle_names(closure_oracle({1, 2, 3, 0}, 0b0111, opens)));
    }
    SUBCASE("top-sierpinski") {
        auto g = build_globalization(get("top-sierpinski").action);
        CHECK(object_names(g) == oracle_names(closure_oracle({1, 0, 2}, 0b001, {0b000, 0b001, 0b010, 0b011, 0b111})));
    }
}

TEST_CASE("inst-top passes every condition") {
    const auto& t = get("inst-top").action;
    auto u = unital(t);
    auto g = build_globalization(t, u);
    auto r = validate_globalization(t, u, g);
    CHECK(r.passed());
    for (const char* k : {"cond1-ideal", "cond2", "cond3", "phi-tau/tau-gamma", "phi-tau/tau-u", "hat-componentwise"})
        CHECK_MESSAGE(r.counts.count(k), k);
    // the shift action on Ĉ is global with identity structure maps
    for (int h = 0; h < t.order(); ++h)
        CHECK(g.action.domains[h].sub == Subcategory::whole(g.category().cat));
    // untwisted data: every τ component is an identity
    const auto& hc = g.category().cat;
    for (const auto& row : g.morphism.tau)
        for (MorId m : row)
            if (valid(m)) CHECK(hc.is_identity(m));
}

TEST_CASE("condition (2) witness") {
    const auto& t = get("inst-top").action;
    const auto& c = t.cat();
    auto u = unital(t);
    auto g = build_globalization(t, u);
    const auto& hc = g.category().cat;
    ObjId w = obj(hc, "({3},{3})");
    CHECK(g.action.T(1, w) == w);
    CHECK(g.morphism.functor.functor(obj(c, "{3}")) == w);
    CHECK(t.domains[t.group.inv(1)].sub.contains(obj(c, "{3}")));
}

TEST_CASE("trivial group") {
    const auto& t = get("trivial").action;
    auto u = unital(t);
    auto g = build_globalization(t, u);
    CHECK(g.category().cat.object_count() == t.n());
    CHECK(validate_globalization(t, u, g).passed());
}

TEST_CASE("corpus sweep") {
    for (const auto& n : sweep_names()) {
        CAPTURE(n);
        const auto& t = get(n).action;
        auto u = unital(t);
        auto g = build_globalization(t, u);
        auto r = validate_globalization(t, u, g);
        if (n.find("twisted") == std::string::npos) {
            CHECK(r.passed());
        } else {
            // structure scalars differ across components, so J^Φ is an endomorphism
            // of Φ(X) that no Φ(f) reaches: fullness is the one thing that breaks
            CHECK(r.has_failure("cond1/phi-full"));
            for (const auto& [check, count] : r.failure_totals) CHECK(check == "cond1/phi-full");
        }
    }
}

TEST_CASE("deleting a shifted object breaks condition (3)") {
    const auto& t = get("inst-top").action;
    const auto& c = t.cat();
    auto u = unital(t);
    auto g = build_globalization(t, u);
    GFunctor gone = shift_functor(t.group, 1, phi_embed(t, u, obj(c, "{1}")));
    std::vector<GFunctor> objs;
    for (const auto& f : g.objects)
        if (f != gone) objs.push_back(f);
    std::vector<GTransformation> mors;
    for (const auto& a : g.morphisms) {
        bool from = true, to = true;
        for (std::size_t k = 0; k < a.components.size(); ++k) {
            from = from && c.dom(a.components[k]) == gone.values[k];
            to = to && c.cod(a.components[k]) == gone.values[k];
        }
        if (!from && !to) mors.push_back(a);
    }
    REQUIRE(objs.size() == 5);
    auto broken = assemble_globalization(t, u, objs, mors);
    auto r = validate_globalization(t, u, broken);
    CHECK(r.has_failure("cond3"));
}

TEST_CASE("corrupted tensor table is caught") {
    const auto& t = get("inst-fus").action;
    auto u = unital(t);
    auto g = build_globalization(t, u);
    auto& tm = g.action.ambient.tensor_mor;
    const int M = g.category().cat.morphism_count();
    // find an entry whose replacement by another valid id changes it
    for (std::size_t k = 0; k < tm.size(); ++k)
        if (tm[k] != mor_at(0)) {
            tm[k] = mor_at(0);
            break;
        }
    CHECK(M > 1);
    CHECK(validate_globalization(t, u, g).has_failure("hat-componentwise"));
}

TEST_CASE("caps") {
    const auto& t = get("inst-top").action;
    CHECK_THROWS_AS(build_globalization(t, GlobalizeOptions{3, 20000}), ClosureOverflow);
    CHECK_THROWS_AS(build_globalization(t, GlobalizeOptions{0, 5}), ClosureOverflow);
    CHECK_NOTHROW(build_globalization(t, GlobalizeOptions{6, 15}));
}
