#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "oracle.hpp"
#include "parcat/corpus.hpp"
#include "parcat/errors.hpp"

using namespace parcat;

namespace {

std::vector<unsigned> all_subsets(int n) {
    std::vector<unsigned> out;
    for (unsigned s = 0; s < (1u << n); ++s) out.push_back(s);
    return out;
}

}  // namespace

TEST_CASE("names") {
    CHECK(support_name(0) == "0");
    CHECK(support_name(0b101) == "M13");
    CHECK(open_set_name(0) == "{}");
    CHECK(open_set_name(0b101) == "{1,3}");
    for (unsigned m = 0; m < 16; ++m) {
        CHECK(support_name(m) == oracle::support_name(m));
        CHECK(open_set_name(m) == oracle::open_name(m));
    }
}

TEST_CASE("sweep covers at least ten valid instances") {
    auto names = sweep_names();
    CHECK(names.size() >= 10);
    auto all = corpus_names();
    for (const auto& n : names) {
        CAPTURE(n);
        CHECK(std::find(all.begin(), all.end(), n) != all.end());
        Instance i = corpus_instance(n);
        CHECK(i.report.passed());
        CHECK(i.name == n);
    }
    CHECK_THROWS_AS(corpus_instance("no-such-instance"), MalformedSpec);
}

TEST_CASE("generation is deterministic") {
    for (const char* n : {"inst-top", "inst-fus", "inst-ring"}) {
        Instance a = corpus_instance(n), b = corpus_instance(n);
        const auto &ca = a.action.cat(), &cb = b.action.cat();
        REQUIRE(ca.object_count() == cb.object_count());
        REQUIRE(ca.morphism_count() == cb.morphism_count());
        for (int o = 0; o < ca.object_count(); ++o) CHECK(ca.object_name(obj_at(o)) == cb.object_name(obj_at(o)));
        for (int m = 0; m < ca.morphism_count(); ++m) CHECK(ca.describe(mor_at(m)) == cb.describe(mor_at(m)));
        CHECK(a.action.gamma == b.action.gamma);
        CHECK(a.action.u == b.action.u);
        CHECK(a.action.domains == b.action.domains);
    }
}

TEST_CASE("sizes match brute-force counts") {
    SUBCASE("topology") {
        Instance g = corpus_instance("inst-top-global");
        auto opens = all_subsets(3);
        CHECK(g.action.n() == 8);
        CHECK(g.action.cat().morphism_count() == oracle::inclusion_pairs(opens));
        Instance r = corpus_instance("inst-top");
        std::vector<unsigned> sub;
        for (unsigned s : opens)
            if (oracle::subset(s, 0b101)) sub.push_back(s);
        CHECK(r.action.cat().morphism_count() == oracle::inclusion_pairs(sub));
    }
    SUBCASE("coordinates") {
        std::vector<unsigned> sub;
        for (unsigned s : all_subsets(3))
            if (oracle::subset(s, 0b011)) sub.push_back(s);
        CHECK(corpus_instance("inst-fus").action.cat().morphism_count() == oracle::coordinate_morphisms(sub, 2));
        CHECK(corpus_instance("inst-fus-gf3").action.cat().morphism_count() == oracle::coordinate_morphisms(sub, 3));
    }
}

TEST_CASE("twisted instance carries non-identity coherence data") {
    Instance t = corpus_instance("inst-fus-twisted");
    Instance p = corpus_instance("inst-fus-gf3");
    CHECK(t.report.passed());
    bool differs = t.action.u != p.action.u || t.action.gamma != p.action.gamma;
    CHECK(differs);
    int non_id = 0;
    for (int a = 0; a < t.action.n(); ++a)
        if (!t.action.cat().is_identity(t.action.unit_at(obj_at(a)))) ++non_id;
    CHECK(non_id > 0);
}

TEST_CASE("rejected inputs") {
    // swap of two points does not preserve {1}
    CHECK_THROWS_AS(gen_topology_instance(2, {0b00, 0b01, 0b11}, {1, 0}, 0b11), NotContinuous);
    CHECK_THROWS_AS(gen_topology_instance(2, {0b01, 0b11}, {1, 0}, 0b11), MalformedSpec);
    // a swap sending the idempotent of one coordinate to itself breaks σ_g(D_{g⁻¹}) = D_g
    CHECK_THROWS_AS(gen_ring_instance(2, {{1, 0}}, {0b11, 0b10}, Field::gf(2)), InvalidIdempotentFamily);
    CHECK_THROWS_AS(gen_ring_instance(2, {{1, 0}}, {0b10, 0b11}, Field::gf(2)), InvalidIdempotentFamily);
}

TEST_CASE("ring instance") {
    Instance r = corpus_instance("inst-ring");
    CHECK(r.report.passed());
    const auto& t = r.action;
    CHECK(t.order() == 3);
    // objects: ∩-closure of {111, 010, 001} = {111, 010, 001, 000}
    CHECK(t.n() == 4);
    auto u = extract_unital_data(t);
    REQUIRE(u.data.has_value());
    for (int g = 0; g < 3; ++g) CHECK(u.data->unit(g) != kNoObj);
}
