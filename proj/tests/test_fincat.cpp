#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "parcat/corpus.hpp"
#include "parcat/errors.hpp"

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

MorId mor(const FinCategory& c, const std::string& label) {
    auto m = c.find_morphism(label);
    REQUIRE(m.has_value());
    return *m;
}
ObjId obj(const FinCategory& c, const std::string& name) {
    auto o = c.find_object(name);
    REQUIRE(o.has_value());
    return *o;
}

FinCategory one_object() { return FinCategory({"*"}, {{obj_at(0), obj_at(0), "id"}}, {mor_at(0)}, {mor_at(0)}); }

}  // namespace

TEST_CASE("compose_path") {
    const auto& c = top().action.cat();
    MorId idx3 = c.id(obj(c, "{3}"));
    std::vector<MorId> single{idx3};
    CHECK(compose_path(c, single) == idx3);

    std::vector<MorId> path{mor(c, "{}->{3}"), mor(c, "{3}->{1,3}")};
    CHECK(compose_path(c, path) == mor(c, "{}->{1,3}"));

    MorId f = mor(c, "{1}->{1,3}");
    std::vector<MorId> with_id{f, c.id(obj(c, "{1,3}"))};
    CHECK(compose_path(c, with_id) == f);

    std::vector<MorId> broken{mor(c, "{}->{3}"), f};
    CHECK_THROWS_AS(compose_path(c, broken), CompositionError);
    try {
        compose_path(c, broken);
    } catch (const CompositionError& e) {
        CHECK(std::string(e.what()).find("index 1") != std::string::npos);
    }
}

TEST_CASE("validate_category on corpus and mutants") {
    const auto& global = *top().global;
    auto r = validate_category(global.cat());
    CHECK(r.passed());
    CHECK(global.cat().object_count() == 8);
    // oracle: morphisms of a thin powerset category are the inclusion pairs
    std::vector<unsigned> all{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(global.cat().morphism_count() == oracle::inclusion_pairs(all));
    CHECK(validate_category(one_object()).passed());

    // redirect compose(f, id) to another morphism
    FinCategory bad = fus().action.cat();
    MorId f = mor(bad, "M1->M12[1]");
    MorId z = mor(bad, "M1->M12[0]");
    bad.set_compose(f, bad.id(bad.dom(f)), z);
    auto rb = validate_category(bad);
    REQUIRE_FALSE(rb.passed());
    bool named = false;
    for (const auto& fl : rb.failures)
        for (const auto& w : fl.witness) named |= w == "M1->M12[1]";
    CHECK(named);
}

TEST_CASE("check_commutes") {
    const auto& c = top().action.cat();
    std::vector<MorId> p{mor(c, "{}->{3}"), mor(c, "{3}->{1,3}")};
    CHECK(check_commutes(c, {p, p}).passed());
    // every pair of parallel paths in a thin category agrees
    std::vector<MorId> q{mor(c, "{}->{1}"), mor(c, "{1}->{1,3}")};
    CHECK(check_commutes(c, {p, q}).passed());
    std::vector<MorId> direct{mor(c, "{}->{1,3}")};
    CHECK(check_commutes(c, {p, direct}).passed());

    const auto& fc = fus().action.cat();
    std::vector<MorId> via_zero{mor(fc, "M1->M1[0]")};
    std::vector<MorId> via_id{fc.id(obj(fc, "M1"))};
    CHECK_FALSE(check_commutes(fc, {via_zero, via_id}).passed());

    std::vector<MorId> other{mor(c, "{}->{1}")};
    CHECK_THROWS_AS(check_commutes(c, {p, other}), DiagramShapeError);
}

TEST_CASE("check_commutes is invariant under re-segmentation") {
    const auto& c = fus().action.cat();
    MorId a = mor(c, "M1->M12[1]"), b = mor(c, "M12->M12[11]"), d = mor(c, "M12->M1[1]");
    std::vector<MorId> flat{a, b, d};
    std::vector<MorId> grouped{c.compose(b, a), d};
    std::vector<MorId> grouped2{a, c.compose(d, b)};
    CHECK(check_commutes(c, {flat, grouped, grouped2}).passed());
}

TEST_CASE("find_inverse") {
    const auto& c = top().action.cat();
    MorId i = c.id(obj(c, "{3}"));
    CHECK(find_inverse(c, i) == i);
    CHECK_FALSE(find_inverse(c, mor(c, "{}->{3}")).has_value());

    const auto& fc = fus().action.cat();
    MorId idm = fc.id(obj(fc, "M1"));
    CHECK(find_inverse(fc, idm) == idm);
    // over GF(2) the only units are 1s, so the invertible endomorphisms of M12 are just the identity
    CHECK(fc.isos(obj(fc, "M12"), obj(fc, "M12")).size() == 1);
    for (int k = 0; k < fc.morphism_count(); ++k) {
        auto g = find_inverse(fc, mor_at(k));
        if (g) CHECK(find_inverse(fc, *g) == mor_at(k));
    }
}

TEST_CASE("find_inverse over GF(3) picks the least inverse and is involutive") {
    Instance inst = corpus_instance("inst-fus-gf3");
    const auto& c = inst.action.cat();
    MorId two = mor(c, "M1->M1[2]");
    CHECK(find_inverse(c, two) == two);  // 2·2 = 1 mod 3
    // oracle: units of GF(3)^2 are {1,2}^2
    CHECK(c.isos(obj(c, "M12"), obj(c, "M12")).size() == 4);
}

TEST_CASE("validate_functor") {
    const auto& c = top().action.cat();
    CHECK(validate_functor(c, c, Functor::identity(c)).passed());
    const auto& t = top().action;
    int g = 1;
    const auto& dom = t.domains[t.group.inv(g)].sub;
    CHECK(validate_functor(c, c, t.actors[g].functor, &dom).passed());

    const auto& fc = fus().action.cat();
    Functor bad = Functor::identity(fc);
    MorId f = mor(fc, "M1->M12[1]");
    bad.mor[idx(f)] = mor(fc, "M1->M12[0]");
    auto r = validate_functor(fc, fc, bad);
    REQUIRE_FALSE(r.passed());
    bool named = false;
    for (const auto& fl : r.failures)
        for (const auto& w : fl.witness) named |= w == "M1->M12[1]";
    CHECK(named);
}

TEST_CASE("validate_natural_transformation") {
    const auto& c = top().action.cat();
    Functor id = Functor::identity(c);
    NatTransformation ident;
    for (int a = 0; a < c.object_count(); ++a) ident.components.push_back(c.id(obj_at(a)));
    CHECK(validate_natural_transformation(c, c, id, id, ident).passed());

    // u: Id ⇒ T_e on INST-TOP; T_e is the identity functor here
    const auto& t = top().action;
    CHECK(t.actors[0].functor.obj == id.obj);
    NatTransformation u{t.u};
    CHECK(validate_natural_transformation(c, c, id, t.actors[0].functor, u).passed());

    const auto& fc = fus().action.cat();
    Functor fid = Functor::identity(fc);
    NatTransformation bad;
    for (int a = 0; a < fc.object_count(); ++a) bad.components.push_back(fc.id(obj_at(a)));
    bad.components[idx(obj(fc, "M12"))] = mor(fc, "M12->M12[10]");
    CHECK_FALSE(validate_natural_transformation(fc, fc, fid, fid, bad).passed());

    NatTransformation shape = bad;
    shape.components[idx(obj(fc, "M12"))] = mor(fc, "M1->M12[1]");
    CHECK_THROWS_AS(validate_natural_transformation(fc, fc, fid, fid, shape), ComponentShapeError);
}

TEST_CASE("check_equivalence detects a non-full functor") {
    const auto& c = top().action.cat();
    // constant functor at {3}: not faithful on any hom with two objects
    Functor k;
    k.obj.assign(c.object_count(), obj(c, "{3}"));
    k.mor.assign(c.morphism_count(), c.id(obj(c, "{3}")));
    auto r = check_equivalence(c, Subcategory::whole(c), c, Subcategory::whole(c), k, "K");
    CHECK_FALSE(r.passed());
}
