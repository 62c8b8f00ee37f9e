#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracle.hpp"
#include "parcat/corpus.hpp"
#include "parcat/envelope.hpp"
#include "parcat/errors.hpp"
#include "parcat/linalg.hpp"

using namespace parcat;

namespace {

const Instance& fus() {
    static const Instance inst = corpus_instance("inst-fus-global");
    return inst;
}

ObjId obj(const FinCategory& c, const std::string& name) {
    auto o = c.find_object(name);
    REQUIRE(o.has_value());
    return *o;
}

// size of the row space over GF(p), by brute force over all combinations
long long span_size(const std::vector<std::vector<int>>& rows, int p) {
    std::set<std::vector<int>> seen;
    const std::size_t n = rows.size(), w = rows.empty() ? 0 : rows[0].size();
    long long total = oracle::ipow(p, static_cast<int>(n));
    for (long long code = 0; code < total; ++code) {
        std::vector<int> v(w, 0);
        long long c = code;
        for (std::size_t r = 0; r < n; ++r, c /= p)
            for (std::size_t k = 0; k < w; ++k) v[k] = (v[k] + static_cast<int>(c % p) * rows[r][k]) % p;
        seen.insert(v);
    }
    return static_cast<long long>(seen.size());
}

Matrix from_rows(Field f, const std::vector<std::vector<int>>& rows) {
    Matrix m(f, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(static_cast<int>(r), static_cast<int>(c)) = f.from_int(rows[r][c]);
    return m;
}

}  // namespace

TEST_CASE("finite field arithmetic") {
    Field f = Field::gf(3);
    CHECK(f.from_int(-1) == Scalar(2));
    CHECK(f.mul(Scalar(2), Scalar(2)) == Scalar(1));
    CHECK(f.inv(Scalar(2)) == Scalar(2));
    CHECK_THROWS_AS(f.inv(Scalar(0)), NotInvertible);
    CHECK(f.elements().size() == 3);
    CHECK(Field::from_tag(f.tag()) == f);
    CHECK(Field::from_tag("rational") == Field::rationals());
    Field q = Field::rationals();
    CHECK(q.inv(Scalar(3)) == Scalar(1, 3));
    CHECK_FALSE(q.finite());
}

TEST_CASE("rank agrees with span size") {
    const std::vector<std::vector<std::vector<int>>> cases{
        {{1, 0, 1}, {0, 1, 1}, {1, 1, 0}},
        {{1, 1, 1}, {1, 1, 1}},
        {{0, 0}, {0, 0}},
        {{1, 2, 0}, {2, 1, 0}, {0, 0, 1}},
    };
    for (int p : {2, 3}) {
        for (const auto& rows : cases) {
            Matrix m = from_rows(Field::gf(p), rows);
            std::vector<std::vector<int>> reduced = rows;
            for (auto& r : reduced)
                for (int& x : r) x %= p;
            CHECK(oracle::ipow(p, m.rank()) == span_size(reduced, p));
        }
    }
}

TEST_CASE("solve and inverse") {
    Field q = Field::rationals();
    Matrix a = from_rows(q, {{2, 1}, {1, 1}});
    auto inv = a.inverse();
    REQUIRE(inv.has_value());
    CHECK(a * *inv == Matrix::identity(q, 2));
    auto x = a.solve({Scalar(3), Scalar(2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Scalar(1));
    CHECK((*x)[1] == Scalar(1));
    Matrix s = from_rows(Field::gf(2), {{1, 1}, {1, 1}});
    CHECK_FALSE(s.inverse().has_value());
    CHECK_FALSE(s.solve({Scalar(1), Scalar(0)}).has_value());
}

TEST_CASE("coordinate linear category") {
    const auto& lz = fus().linear;
    const auto& l = lz.lin;
    CHECK(validate_linear(l).passed());
    const auto& c = fus().action.cat();
    for (int a = 0; a < l.object_count(); ++a)
        for (int b = 0; b < l.object_count(); ++b) {
            unsigned sa = 0, sb = 0;
            // object names are M<digits> or 0
            for (char ch : c.object_name(obj_at(a))) if (ch >= '1' && ch <= '9') sa |= 1u << (ch - '1');
            for (char ch : c.object_name(obj_at(b))) if (ch >= '1' && ch <= '9') sb |= 1u << (ch - '1');
            CHECK(l.hom_dim(obj_at(a), obj_at(b)) == std::popcount(sa & sb));
        }
    // tabulated category has exactly p^{|S∩T|} morphisms per hom
    std::vector<unsigned> supports;
    for (unsigned s = 0; s < 8; ++s) supports.push_back(s);
    CHECK(c.morphism_count() == oracle::coordinate_morphisms(supports, 2));
    CHECK(check_linearization(fus().action.ambient, lz).passed());
    for (int m = 0; m < c.morphism_count(); ++m) CHECK(lz.decode(lz.vec(mor_at(m))) == mor_at(m));
}

TEST_CASE("envelope isomorphisms") {
    const auto& c = fus().action.cat();
    Envelope env(fus().linear.lin);
    ObjId z = obj(c, "0"), m1 = obj(c, "M1"), m2 = obj(c, "M2"), m12 = obj(c, "M12");
    CHECK(env.is_zero_object({z}));
    CHECK(env.is_zero_object({}));
    CHECK(env.isomorphic({m1, z}, {m1}));
    CHECK_FALSE(env.isomorphic({m1}, {m2}));
    // k² splits as two lines
    auto iso = env.find_iso({m12}, {m1, m2});
    REQUIRE(iso.has_value());
    auto back = env.inverse(*iso);
    REQUIRE(back.has_value());
    CHECK(env.compose(*back, *iso) == env.id({m12}));
    CHECK(env.compose(*iso, *back) == env.id({m1, m2}));
    CHECK(env.isomorphic({m1, m2}, {m2, m1}));
    CHECK_FALSE(env.isomorphic({m1, m1}, {m1}));
}

TEST_CASE("envelope homs and biproducts") {
    const auto& c = fus().action.cat();
    Envelope env(fus().linear.lin);
    ObjId m1 = obj(c, "M1"), m2 = obj(c, "M2"), m12 = obj(c, "M12");
    CHECK(env.hom_elements({m1, m1}, {m1}).size() == 4);
    CHECK(env.hom_elements({m12}, {m12, m1}).size() == 8);
    CHECK(env.hom_dim({m1, m2}, {m12}) == 2);
    CHECK(check_biproducts(env, {m1, m2, m12}).passed());
    // tensor is the lexicographic expansion
    CHECK(env.tensor(EnvObject{m1, m2}, EnvObject{m12, m1}) ==
          EnvObject{m1, m1, m2, obj(c, "0")});
    auto p = env.permutation({m1, m2, m12}, {2, 0, 1});
    CHECK(p.cod == EnvObject{m12, m1, m2});
    auto pi = env.inverse(p);
    REQUIRE(pi.has_value());
    CHECK(env.compose(*pi, p) == env.id({m1, m2, m12}));
    // flatten round trip
    auto f = env.hom_elements({m12}, {m1, m2})[3];
    CHECK(env.unflatten(f.dom, f.cod, env.flatten(f)) == f);
    CHECK_THROWS_AS(env.hom_elements({m12, m12, m12}, {m12, m12, m12}, 10), SearchBudgetExceeded);
}

TEST_CASE("tensor of envelope morphisms is functorial") {
    const auto& c = fus().action.cat();
    Envelope env(fus().linear.lin);
    ObjId m1 = obj(c, "M1"), m12 = obj(c, "M12");
    auto fs = env.hom_elements({m12}, {m1, m12});
    auto gs = env.hom_elements({m1, m12}, {m12});
    for (const auto& f : fs)
        for (const auto& g : gs) {
            auto lhs = env.tensor(env.compose(g, f), env.id({m12}));
            auto rhs = env.compose(env.tensor(g, env.id({m12})), env.tensor(f, env.id({m12})));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("linear action lift") {
    const Instance i = corpus_instance("inst-fus");
    auto res = make_linear_action(i.action, i.linear);
    CHECK(res.report.passed());
    REQUIRE(res.action.has_value());
    const auto& la = *res.action;
    const auto& c = i.action.cat();
    ObjId m1 = obj(c, "M1"), m2 = obj(c, "M2");
    CHECK(la.acts_on(1, {m1}));
    CHECK_FALSE(la.acts_on(1, {m2}));
    CHECK(la.T_obj(1, {m1, m1}) == EnvObject{m2, m2});
    CHECK_THROWS_AS(la.T_mor(1, la.env.id({m2})), DomainError);
    // T_g is additive on direct sums
    auto f = la.env.hom_elements({m1}, {m1, m1});
    for (const auto& x : f) CHECK(la.T_mor(1, x).cod == EnvObject{m2, m2});
    CHECK(la.one(1) == EnvObject{m2});
}
