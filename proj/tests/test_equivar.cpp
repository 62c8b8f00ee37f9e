#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "parcat/corpus.hpp"
#include "parcat/equivar.hpp"
#include "parcat/errors.hpp"

using namespace parcat;

namespace {

const Instance& get(const std::string& name) {
    static std::map<std::string, Instance> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, corpus_instance(name)).first;
    return it->second;
}

const LinearAction& linear(const std::string& name) {
    static std::map<std::string, LinearAction> cache;
    auto it = cache.find(name);
    if (it == cache.end()) {
        const auto& i = get(name);
        auto res = make_linear_action(i.action, i.linear);
        REQUIRE(res.action.has_value());
        it = cache.emplace(name, *res.action).first;
    }
    return it->second;
}

UnitalData unital(const PartialAction& t) {
    auto r = extract_unital_data(t);
    REQUIRE(r.data.has_value());
    return *r.data;
}

ObjId obj(const PartialAction& t, const std::string& name) {
    auto o = t.cat().find_object(name);
    REQUIRE(o.has_value());
    return *o;
}

EquivariantObject only(const PartialAction& t, const std::string& name) {
    auto all = enumerate_equivariant(t, obj(t, name));
    REQUIRE(all.size() == 1);
    return all.front();
}

}  // namespace

TEST_CASE("the unit object") {
    for (const char* n : {"inst-top", "inst-fus", "inst-fus-gf3", "inst-fus-twisted", "trivial"}) {
        CAPTURE(n);
        const auto& t = get(n).action;
        auto u = unital(t);
        auto one = unit_equivariant(t, u);
        CHECK(one.carrier == u.unit(t.group.e()));
        CHECK(validate_equivariant_object(t, one).passed());
        CHECK(validate_equivariant_object(linear(n), unit_equivariant(linear(n))).passed());
    }
}

TEST_CASE("enumeration on the topology instance matches the mask oracle") {
    const auto& t = get("inst-top").action;
    // thin category: a σ family exists (and is unique) iff σ_k(X∩Y) = X∩σ_k(Y)
    // for every Y inside the domain {3}
    const std::vector<int> swap{1, 0, 2};
    const std::vector<unsigned> dom_g{0b000, 0b100};
    std::size_t total = 0;
    for (unsigned x : {0b000u, 0b001u, 0b100u, 0b101u}) {
        bool ok = true;
        for (unsigned y : dom_g) ok = ok && oracle::permute(swap, x & y) == (x & oracle::permute(swap, y));
        auto found = enumerate_equivariant(t, obj(t, oracle::open_name(x)));
        CAPTURE(x);
        CHECK(found.size() == (ok ? 1u : 0u));
        for (const auto& f : found) CHECK(validate_equivariant_object(t, f).passed());
        total += found.size();
    }
    CHECK(total == 4);
}

TEST_CASE("enumeration on the coordinate instance") {
    const auto& t = get("inst-fus").action;
    CHECK(enumerate_equivariant(t, obj(t, "0")).size() == 1);
    auto u = unital(t);
    auto units = enumerate_equivariant(t, obj(t, "M12"));
    CHECK(std::find(units.begin(), units.end(), unit_equivariant(t, u)) != units.end());
    CHECK_THROWS_AS(enumerate_equivariant(t, obj(t, "M12"), 1), SearchBudgetExceeded);
}

TEST_CASE("a corrupted component is rejected") {
    const auto& t = get("inst-fus-gf3").action;
    auto u = unital(t);
    auto x = unit_equivariant(t, u);
    REQUIRE(validate_equivariant_object(t, x).passed());
    // swap σ_g at the unit of C_{g⁻¹} for another iso with the same endpoints
    const int g = 1;
    const ObjId y = u.unit(t.group.inv(g));
    MorId old = *x.sigma[g][idx(y)];
    auto isos = t.cat().isos(t.cat().dom(old), t.cat().cod(old));
    REQUIRE(isos.size() > 1);
    x.sigma[g][idx(y)] = isos.front() == old ? isos.back() : isos.front();
    auto r = validate_equivariant_object(t, x);
    CHECK_FALSE(r.passed());
    CHECK(r.has_failure("sigma-pentagon"));
}

TEST_CASE("tensor product of equivariant objects") {
    const auto& t = get("inst-top").action;
    auto u = unital(t);
    auto a = only(t, "{3}");
    auto b = only(t, "{1}");
    auto ab = tensor_equivariant(t, a, b);
    CHECK(t.name(ab.carrier) == "{}");
    CHECK(validate_equivariant_object(t, ab).passed());
    auto one = unit_equivariant(t, u);
    CHECK(tensor_equivariant(t, one, one) == one);
    CHECK(tensor_equivariant(t, one, a) == a);

    const auto& la = linear("inst-fus-gf3");
    auto e = unit_equivariant(la);
    CHECK(tensor_equivariant(la, e, e) == e);
}

TEST_CASE("morphisms of equivariant objects") {
    const auto& t = get("inst-top").action;
    auto a = only(t, "{3}");
    auto b = only(t, "{1,3}");
    auto f = t.cat().hom(a.carrier, b.carrier);
    REQUIRE(f.size() == 1);
    CHECK(validate_equivariant_morphism(t, a, b, f.front()).passed());
}

TEST_CASE("global and partial descriptions agree on a global action") {
    const auto& t = get("inst-top-global").action;
    for (int k = 0; k < t.n(); ++k) {
        for (const auto& x : enumerate_equivariant(t, obj_at(k))) {
            auto th = to_global(t, x);
            CHECK(validate_global_equivariant(t, th).passed());
            CHECK(from_global(t, th) == x);
        }
    }
    const auto& p = get("inst-top").action;
    CHECK_THROWS_AS(to_global(p, only(p, "{3}")), RequiresGlobal);
    CHECK_THROWS_AS(from_global(p, GlobalEquivariantObject{obj(p, "{3}"), {}}), RequiresGlobal);
}

TEST_CASE("sigma-tilde round trip") {
    for (const char* n : {"inst-top", "inst-fus-gf3", "inst-fus-twisted"}) {
        CAPTURE(n);
        const auto& t = get(n).action;
        auto u = unital(t);
        auto x = unit_equivariant(t, u);
        auto s = to_tilde(t, u, x);
        CHECK(s.table.at({0, 1u}) == t.inv(t.unit_at(x.carrier)));
        CHECK(validate_sigma_tilde(t, u, x.carrier, s).passed());
        CHECK(from_tilde(t, u, x.carrier, s) == x);
    }
}

TEST_CASE("partial trace") {
    SUBCASE("trivial group") {
        const auto& la = linear("trivial");
        EnvObject x{obj_at(0)};
        CHECK(la.env.isomorphic(trace_object(la, x), x));
        CHECK(partial_trace(la, x).report.passed());
    }
    SUBCASE("coordinate instance") {
        const auto& la = linear("inst-fus");
        const auto& t = la.action;
        // Tr(M1) = T_e(M1) ⊕ T_g(M1⊗M1) ⊕ T_{g2}(M1⊗M2)
        EnvObject tr = trace_object(la, {obj(t, "M1")});
        CHECK(tr == EnvObject{obj(t, "M1"), obj(t, "M2"), obj(t, "0")});
        CHECK(la.env.isomorphic(tr, {obj(t, "M12")}));
        auto one = EnvObject{obj(t, "M12")};
        CHECK(trace_object(la, one) == EnvObject{obj(t, "M12"), obj(t, "M2"), obj(t, "M1")});
        CHECK_FALSE(la.env.isomorphic(trace_object(la, one), one));
        for (int k = 0; k < t.n(); ++k) {
            auto p = partial_trace(la, {obj_at(k)});
            CHECK(p.report.passed());
            CHECK(p.object.carrier == trace_object(la, {obj_at(k)}));
        }
        auto r = check_trace_functor(la);
        CHECK(r.passed());
        CHECK(r.counts.count("trace-composition"));
        CHECK(r.counts.count("trace-not-monoidal"));
    }
    SUBCASE("object-level semigroupality breaks at the unit") {
        const auto& la = linear("inst-fus");
        auto r = check_trace_semigroupal(la);
        CHECK(r.has_failure("trace-semigroupal"));
        bool at_unit = false;
        for (const auto& f : r.failures) at_unit = at_unit || f.witness == std::vector<std::string>{"X=M12", "Y=M12"};
        CHECK(at_unit);
    }
    SUBCASE("twisted structure maps") {
        const auto& la = linear("inst-fus-twisted");
        CHECK(check_trace_functor(la).passed());
    }
}

TEST_CASE("algebra object") {
    SUBCASE("trivial") {
        auto a = algebra_object(linear("trivial"));
        CHECK(a.blocks.size() == 1);
        CHECK(a.report.passed());
    }
    SUBCASE("topology") {
        const auto& la = linear("inst-top");
        auto a = algebra_object(la);
        CHECK(a.object == EnvObject{obj(la.action, "{1,3}"), obj(la.action, "{3}")});
        CHECK(a.report.passed());
    }
    SUBCASE("coordinate") {
        for (const char* n : {"inst-fus", "inst-fus-gf3", "inst-fus-twisted"}) {
            CAPTURE(n);
            auto a = algebra_object(linear(n));
            CHECK(a.blocks.size() == 4);
            CHECK(a.report.passed());
            CHECK(a.report.counts.count("algebra-assoc"));
            CHECK(a.report.counts.count("tilde/tilde-square"));
        }
    }
}
