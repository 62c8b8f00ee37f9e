#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "parcat/corpus.hpp"
#include "parcat/errors.hpp"
#include "parcat/idempotent.hpp"

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

ObjId obj(const FinCategory& c, const std::string& name) {
    auto o = c.find_object(name);
    REQUIRE(o.has_value());
    return *o;
}

std::set<std::string> names_of(const FinCategory& c, const Subcategory& s) {
    std::set<std::string> out;
    for (ObjId o : s.object_list()) out.insert(c.object_name(o));
    return out;
}

CentralIdempotent identity_structure(const MonoidalStructure& m, ObjId e) {
    CentralIdempotent ci{e, m.cat.id(e), {}};
    for (int a = 0; a < m.n(); ++a) ci.exchange.push_back(m.cat.id(m.tensor(e, obj_at(a))));
    return ci;
}

}  // namespace

TEST_CASE("validate_central_idempotent") {
    const auto& ms = top().action.ambient;
    CHECK(validate_central_idempotent(ms, identity_structure(ms, *ms.unit)).passed());
    CHECK(validate_central_idempotent(ms, identity_structure(ms, obj(ms.cat, "{3}"))).passed());

    const auto& fm = fus().action.ambient;
    CentralIdempotent ci = identity_structure(fm, obj(fm.cat, "M1"));
    CHECK(validate_central_idempotent(fm, ci).passed());
    ci.fusion = *fm.cat.find_morphism("M1->M1[0]");
    CHECK_THROWS_AS(validate_central_idempotent(fm, ci), NotIsomorphism);
}

TEST_CASE("self-exchange is absorbed by the fusion") {
    for (const auto* inst : {&top(), &fus()}) {
        const auto& m = inst->action.ambient;
        for (const auto& cand : enumerate_central_idempotents(m)) {
            const auto& ci = cand.canonical;
            CHECK(m.cat.compose(ci.fusion, ci.exchange[idx(ci.e)]) == ci.fusion);
        }
    }
}

TEST_CASE("generated_ideal") {
    const auto& ms = top().action.ambient;
    auto whole = generated_ideal(ms, identity_structure(ms, *ms.unit));
    CHECK(whole.sub == Subcategory::whole(ms.cat));
    auto low = generated_ideal(ms, identity_structure(ms, obj(ms.cat, "{3}")));
    CHECK(names_of(ms.cat, low.sub) == std::set<std::string>{"{}", "{3}"});
    CHECK(is_ideal(ms, low.sub));

    const auto& fg = fus().global->ambient;
    auto e = generated_ideal(fg, identity_structure(fg, obj(fg.cat, "M12")));
    std::set<std::string> want;
    for (unsigned s = 0; s < 8; ++s)
        if (oracle::subset(s, 0b011)) want.insert(oracle::support_name(s));
    CHECK(names_of(fg.cat, e.sub) == want);
    CHECK(is_ideal(fg, e.sub));
}

TEST_CASE("induced_unitors") {
    const auto& ms = top().action.ambient;
    auto unit = induced_unitors(ms, identity_structure(ms, *ms.unit));
    CHECK(unit.report.passed());
    for (int a = 0; a < ms.n(); ++a) {
        CHECK(unit.left[a] == ms.cat.id(obj_at(a)));
        CHECK(unit.right[a] == ms.cat.id(obj_at(a)));
    }
    auto three = induced_unitors(ms, identity_structure(ms, obj(ms.cat, "{3}")));
    CHECK(three.report.passed());
    for (const std::string x : {"{}", "{3}"}) {
        ObjId o = obj(ms.cat, x);
        CHECK(valid(three.left[idx(o)]));
        CHECK(ms.cat.cod(three.left[idx(o)]) == o);
    }
    CHECK_FALSE(valid(three.left[idx(obj(ms.cat, "{1}"))]));

    const auto& fm = fus().action.ambient;
    ObjId m1 = obj(fm.cat, "M1");
    CentralIdempotent ci = identity_structure(fm, m1);
    auto l = induced_unitors(fm, ci);
    CHECK(l.report.passed());
    CHECK(l.left[idx(m1)] == ci.fusion);
}

TEST_CASE("induced unitors on a twisted fusion are witness independent") {
    Instance tw = corpus_instance("inst-fus-twisted");
    const auto& m = tw.action.ambient;
    for (const auto& cand : enumerate_central_idempotents(m)) {
        auto u = induced_unitors(m, cand.canonical);
        CHECK(u.report.passed());
    }
}

TEST_CASE("enumerate_central_idempotents") {
    auto top_list = enumerate_central_idempotents(top().action.ambient);
    CHECK(top_list.size() == 4);
    for (const auto& c : top_list) CHECK(c.witness_count == 1);  // thin: Φ and σ forced
    CHECK(enumerate_central_idempotents(corpus_instance("trivial").action.ambient).size() == 1);

    auto fus_list = enumerate_central_idempotents(fus().global->ambient);
    std::set<std::string> got;
    for (const auto& c : fus_list) got.insert(fus().global->cat().object_name(c.canonical.e));
    std::set<std::string> want;
    for (unsigned s = 0; s < 8; ++s) want.insert(oracle::support_name(s));
    CHECK(got == want);
}

TEST_CASE("witness multiplicity over GF(3)") {
    // Φ on M1 may be 1 or 2 with σ forced to the identity; (idempotent1) pins nothing more,
    // (idempotent2) needs Φ∘σ_e = Φ, so each object with k coordinates has 2^k witnesses.
    Instance g3 = corpus_instance("inst-fus-gf3");
    for (const auto& c : enumerate_central_idempotents(g3.action.ambient)) {
        std::string name = g3.action.cat().object_name(c.canonical.e);
        int k = name == "0" ? 0 : static_cast<int>(name.size()) - 1;
        CHECK(c.witness_count == oracle::ipow(2, k));
    }
}
