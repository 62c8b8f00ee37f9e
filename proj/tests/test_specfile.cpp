#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "parcat/errors.hpp"
#include "parcat/specfile.hpp"

using namespace parcat;

namespace {

// load(save(x)) == x and the canonical text is a fixed point
void round_trip(const SpecFile& s) {
    const std::string text = save_spec(s);
    SpecFile back = load_spec(text);
    CHECK(back.kind() == s.kind());
    CHECK(back == s);
    CHECK(save_spec(back) == text);
}

const Instance& get(const std::string& name) {
    static std::map<std::string, Instance> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, corpus_instance(name)).first;
    return it->second;
}

}  // namespace

TEST_CASE("every corpus action round-trips") {
    for (const auto& n : corpus_names()) {
        CAPTURE(n);
        round_trip(corpus_spec(n));
    }
}

TEST_CASE("categories, including the empty one") {
    round_trip(SpecFile{CategoryDoc{get("inst-top").action.ambient, get("inst-top").linear}});
    round_trip(SpecFile{CategoryDoc{get("inst-fus").action.ambient, std::nullopt}});
    const std::string empty =
        R"({"meta":{"format_version":"1","kind":"category","field":"none"},"objects":[],"morphisms":[],)"
        R"("identities":[],"compose":[],"tensor_obj":[],"tensor_mor":[]})";
    SpecFile e = load_spec(empty);
    REQUIRE(e.kind() == SpecKind::category);
    const auto& c = std::get<CategoryDoc>(e.body).cat.cat;
    CHECK(c.object_count() == 0);
    CHECK(validate_category(c).passed());
    round_trip(e);
}

TEST_CASE("constructions round-trip") {
    SUBCASE("globalization") {
        for (const char* n : {"inst-top", "inst-fus"}) {
            CAPTURE(n);
            const auto& i = get(n);
            GlobalizationDoc d{action_doc(i), build_globalization(i.action)};
            round_trip(SpecFile{d});
        }
        const auto& i = get("inst-top");
        auto back = load_spec(save_spec(SpecFile{GlobalizationDoc{action_doc(i), build_globalization(i.action)}}));
        CHECK(std::get<GlobalizationDoc>(back.body).glob.action.n() == 6);
    }
    SUBCASE("smash") {
        for (const char* n : {"inst-top", "inst-fus-twisted"}) {
            CAPTURE(n);
            auto doc = action_doc(get(n));
            SmashDoc d{doc, build_smash(linear_action_of(doc))};
            round_trip(SpecFile{d});
            auto back = load_spec(save_spec(SpecFile{d}));
            CHECK(validate_smash_coherence(std::get<SmashDoc>(back.body).smash).passed());
        }
    }
    SUBCASE("equivariant objects, trace and algebra") {
        const auto& top = get("inst-top");
        EquivariantDoc d{action_doc(top), {}, {}, std::nullopt, std::nullopt};
        for (int k = 0; k < top.action.n(); ++k)
            for (auto& x : enumerate_equivariant(top.action, obj_at(k))) d.objects.push_back(x);
        CHECK(d.objects.size() == 4);
        round_trip(SpecFile{d});

        auto fus = action_doc(get("inst-fus-gf3"));
        auto la = linear_action_of(fus);
        EquivariantDoc e{fus, {}, {}, std::nullopt, std::nullopt};
        e.env_objects.push_back(partial_trace(la, {obj_at(1)}).object);
        auto alg = algebra_object(la);
        e.env_objects.push_back(from_tilde(la, alg.object, alg.tilde));
        e.mu = alg.mu;
        e.eta = alg.eta;
        round_trip(SpecFile{e});
    }
    SUBCASE("polyad") {
        auto doc = action_doc(get("inst-fus"));
        doc.polyad = build_polyad(doc.action).polyad;
        round_trip(SpecFile{doc});
    }
}

TEST_CASE("malformed input") {
    SUBCASE("syntax error with a position") {
        try {
            load_spec("{\n  \"meta\": {\n    \"kind\": ,\n");
            FAIL("no error");
        } catch (const MalformedSpec& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("undeclared names") {
        std::string text = save_spec(corpus_spec("inst-top"));
        auto pos = text.find("\"u\": [");
        REQUIRE(pos != std::string::npos);
        const std::string label = "\"{}->{}\"";
        auto q = text.find(label, pos);
        REQUIRE(q != std::string::npos);
        text.replace(q, label.size(), "\"{}->zz\"");
        CHECK_THROWS_WITH_AS(load_spec(text), doctest::Contains("/u/"), MalformedSpec);
    }
    SUBCASE("version and kind") {
        CHECK_THROWS_AS(load_spec(R"({"meta":{"format_version":"2","kind":"category"}})"), MalformedSpec);
        CHECK_THROWS_AS(load_spec(R"({"meta":{"format_version":"1","kind":"sheaf"}})"), MalformedSpec);
        CHECK_THROWS_AS(load_spec("[]"), MalformedSpec);
    }
    SUBCASE("unknown corpus name") { CHECK_THROWS_AS(read_spec_text("corpus:nope"), MalformedSpec); }
}

TEST_CASE("hashing and corpus URIs") {
    CHECK(spec_hash("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const auto text = read_spec_text("corpus:inst-top");
    CHECK(text == save_spec(corpus_spec("inst-top")));
    CHECK(text == read_spec_text("corpus:inst-top"));
    CHECK(spec_hash(text) == spec_hash(save_spec(load_spec(text))));
}

TEST_CASE("report rendering") {
    DiagramReport r;
    r.tick("b-check", 2);
    r.tick("a-check");
    r.fail("a-check", "broken", {"X={1}"});
    r.note("n");
    RenderedReport rr{"validate", "corpus:inst-top", "00", {{"objects", "4"}, {"kind", "action"}}, r};
    const auto j = render_json(rr);
    CHECK(j == render_json(rr));
    CHECK(j.find("\"status\": \"failed\"") != std::string::npos);
    CHECK(j.find(kToolVersion) != std::string::npos);
    CHECK(j.find("\"objects\": \"4\"") < j.find("\"kind\": \"action\""));
    const auto t = render_text(rr);
    CHECK(t.find("X={1}") != std::string::npos);
    CHECK(t.find("status: failed") != std::string::npos);
}
