#include "parcat/specfile.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "parcat/corpus.hpp"
#include "parcat/errors.hpp"

namespace parcat {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormatVersion = "1";

// ---------------------------------------------------------------- writing

Json scalar_json(Scalar s) {
    if (s.denominator() == 1) return s.numerator();
    return format_scalar(s);
}

Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (auto s : v) a.push_back(scalar_json(s));
    return a;
}

struct Names {
    const FinCategory* c;
    Json obj(ObjId o) const { return valid(o) ? Json(c->object_name(o)) : Json(nullptr); }
    Json mor(MorId m) const { return valid(m) ? Json(c->morphism(m).label) : Json(nullptr); }
};

Json group_json(const FinGroup& g) {
    Json mul = Json::array();
    for (int a = 0; a < g.order(); ++a) {
        Json row = Json::array();
        for (int b = 0; b < g.order(); ++b) row.push_back(g.names.at(g.mul(a, b)));
        mul.push_back(row);
    }
    return Json{{"elements", g.names}, {"mul", mul}};
}

std::string side_name(Side s) { return s == Side::left ? "left" : s == Side::right ? "right" : "both"; }

Json sub_json(const Names& nm, const Subcategory& s) {
    Json objs = Json::array(), mors = Json::array();
    for (ObjId o : s.object_list()) objs.push_back(nm.obj(o));
    for (MorId m : s.morphism_list()) mors.push_back(nm.mor(m));
    return Json{{"objects", objs}, {"morphisms", mors}};
}

// [[X, value]] over the defined entries of a per-object table
template <class T, class F>
Json keyed(const std::vector<T>& v, const Names& key, F value) {
    Json a = Json::array();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (valid(v[i])) a.push_back(Json::array({key.obj(obj_at(static_cast<int>(i))), value(v[i])}));
    return a;
}

Json keyed_mor(const std::vector<MorId>& v, const Names& key, const Names& val) {
    return keyed(v, key, [&](MorId m) { return val.mor(m); });
}

// [[X, Y, m]] over a pair table stored at X * n + Y
Json pairs(const std::vector<MorId>& v, const Names& key, const Names& val) {
    Json a = Json::array();
    const int n = key.c->object_count();
    for (std::size_t k = 0; k < v.size(); ++k)
        if (valid(v[k]))
            a.push_back(Json::array({key.obj(obj_at(static_cast<int>(k) / n)), key.obj(obj_at(static_cast<int>(k) % n)),
                                     val.mor(v[k])}));
    return a;
}

Json functor_json(const Functor& f, const Names& src, const Names& tgt) {
    Json objs = Json::array(), mors = Json::array();
    for (std::size_t i = 0; i < f.obj.size(); ++i)
        if (valid(f.obj[i])) objs.push_back(Json::array({src.obj(obj_at(static_cast<int>(i))), tgt.obj(f.obj[i])}));
    for (std::size_t i = 0; i < f.mor.size(); ++i)
        if (valid(f.mor[i])) mors.push_back(Json::array({src.mor(mor_at(static_cast<int>(i))), tgt.mor(f.mor[i])}));
    return Json{{"obj", objs}, {"mor", mors}};
}

Json semigroupal_json(const SemigroupalFunctor& f, const Names& src, const Names& tgt) {
    Json j = functor_json(f.functor, src, tgt);
    j["J"] = pairs(f.J, src, tgt);
    j["J0"] = f.J0 ? tgt.mor(*f.J0) : Json(nullptr);
    return j;
}

void write_category(Json& j, const MonoidalStructure& m) {
    const auto& c = m.cat;
    Names nm{&c};
    j["objects"] = c.object_names();
    Json mors = Json::array();
    for (const auto& f : c.morphisms()) mors.push_back(Json{{"name", f.label}, {"dom", nm.obj(f.dom)}, {"cod", nm.obj(f.cod)}});
    j["morphisms"] = mors;
    Json ids = Json::array();
    for (MorId i : c.identities()) ids.push_back(nm.mor(i));
    j["identities"] = ids;
    Json comp = Json::array();
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f) {
            MorId gf = c.compose_raw(mor_at(g), mor_at(f));
            if (valid(gf)) comp.push_back(Json::array({nm.mor(mor_at(g)), nm.mor(mor_at(f)), nm.mor(gf)}));
        }
    j["compose"] = comp;
    Json to = Json::array();
    if (!m.tensor_obj.empty())
        for (int a = 0; a < c.object_count(); ++a) {
            Json row = Json::array();
            for (int b = 0; b < c.object_count(); ++b) row.push_back(nm.obj(m.tensor_obj[a * c.object_count() + b]));
            to.push_back(row);
        }
    j["tensor_obj"] = to;
    Json tm = Json::array();
    if (!m.tensor_mor.empty())
        for (int a = 0; a < c.morphism_count(); ++a) {
            Json row = Json::array();
            for (int b = 0; b < c.morphism_count(); ++b) row.push_back(nm.mor(m.tensor_mor[a * c.morphism_count() + b]));
            tm.push_back(row);
        }
    j["tensor_mor"] = tm;
    if (m.unit) j["unit"] = nm.obj(*m.unit);
}

Json linear_json(const Linearization& lz, const FinCategory& c) {
    const auto& l = lz.lin;
    auto oname = [&](ObjId o) { return valid(o) ? Json(l.objects.at(idx(o))) : Json(nullptr); };
    Json basis = Json::array();
    for (const auto& b : l.basis) basis.push_back(Json{{"label", b.label}, {"dom", oname(b.dom)}, {"cod", oname(b.cod)}});
    Json ident = Json::array();
    for (const auto& v : l.identity) ident.push_back(vec_json(v));
    Json to = Json::array();
    for (int a = 0; a < l.object_count(); ++a) {
        Json row = Json::array();
        for (int b = 0; b < l.object_count(); ++b) row.push_back(oname(l.tensor(obj_at(a), obj_at(b))));
        to.push_back(row);
    }
    Json comp = Json::array(), tens = Json::array();
    for (const auto& [k, v] : l.compose_constants()) comp.push_back(Json::array({k.first, k.second, vec_json(v)}));
    for (const auto& [k, v] : l.tensor_constants()) tens.push_back(Json::array({k.first, k.second, vec_json(v)}));
    Names nm{&c};
    Json of = Json::array();
    for (std::size_t i = 0; i < lz.of_mor.size(); ++i) {
        const auto& f = lz.of_mor[i];
        of.push_back(Json::array({nm.mor(mor_at(static_cast<int>(i))), oname(f.dom), oname(f.cod), vec_json(f.coeffs)}));
    }
    Json back = Json::array();
    for (MorId m : lz.mor_of_basis) back.push_back(nm.mor(m));
    Json j{{"field", l.field.tag()}, {"objects", l.objects}, {"basis", basis}, {"identity", ident}, {"tensor_obj", to}};
    j["unit"] = l.unit ? oname(*l.unit) : Json(nullptr);
    j["compose"] = comp;
    j["tensor"] = tens;
    j["of_mor"] = of;
    j["mor_of_basis"] = back;
    j["enumerated"] = lz.enumerated;
    return j;
}

Json meta_json(SpecKind k, const std::optional<Linearization>& lin) {
    return Json{{"format_version", kFormatVersion}, {"kind", kind_name(k)},
                {"field", lin ? lin->lin.field.tag() : std::string("none")}};
}

Json polyad_json(const Polyad& p, const PartialAction& t) {
    Names nm{&t.cat()};
    Json cats = Json::array();
    for (std::size_t g = 0; g < p.categories.size(); ++g) {
        Json d = sub_json(nm, p.categories[g].sub);
        d["side"] = side_name(p.categories[g].side);
        cats.push_back(d);
    }
    Json monads = Json::array();
    for (const auto& m : p.monads) {
        Json j{{"element", p.source.names.at(m.element)}, {"domain", sub_json(nm, m.domain)},
               {"carrier", functor_json(m.carrier, nm, nm)}};
        j["mu"] = keyed_mor(m.mu, nm, nm);
        j["eta"] = keyed_mor(m.eta, nm, nm);
        monads.push_back(j);
    }
    Json fusion = Json::array();
    for (const auto& f : p.fusion) {
        Json j{{"element", p.source.names.at(f.element)}};
        j["xi"] = pairs(f.xi, nm, nm);
        j["counit"] = nm.mor(f.counit);
        j["hl"] = pairs(f.hl, nm, nm);
        j["hl_inverse"] = pairs(f.hl_inverse, nm, nm);
        j["hr"] = pairs(f.hr, nm, nm);
        j["hr_inverse"] = pairs(f.hr_inverse, nm, nm);
        fusion.push_back(j);
    }
    return Json{{"group", group_json(p.source)}, {"categories", cats}, {"monads", monads}, {"fusion", fusion}};
}

void write_action(Json& j, const PartialAction& t) {
    write_category(j, t.ambient);
    Names nm{&t.cat()};
    const auto& grp = t.group;
    j["group"] = group_json(grp);
    Json doms = Json::array();
    for (int g = 0; g < t.order(); ++g) {
        Json d{{"element", grp.names[g]}, {"side", side_name(t.domains[g].side)}};
        d.update(sub_json(nm, t.domains[g].sub));
        doms.push_back(d);
    }
    j["domains"] = doms;
    Json actors = Json::array();
    for (int g = 0; g < t.order(); ++g) {
        Json a{{"element", grp.names[g]}};
        a.update(semigroupal_json(t.actors[g], nm, nm));
        actors.push_back(a);
    }
    j["actors"] = actors;
    Json gam = Json::array();
    for (int g = 0; g < t.order(); ++g)
        for (int h = 0; h < t.order(); ++h)
            gam.push_back(Json{{"g", grp.names[g]}, {"h", grp.names[h]},
                               {"components", keyed_mor(t.gamma.at(g * t.order() + h), nm, nm)}});
    j["gamma"] = gam;
    j["u"] = keyed_mor(t.u, nm, nm);
}

Json action_json(const ActionDoc& d) {
    Json j;
    j["meta"] = meta_json(SpecKind::action, d.linear);
    write_action(j, d.action);
    if (d.linear) j["linear"] = linear_json(*d.linear, d.action.cat());
    if (d.polyad) j["polyad"] = polyad_json(*d.polyad, d.action);
    return j;
}

Json env_object_json(const EnvObject& a, const Names& nm) {
    Json j = Json::array();
    for (ObjId o : a) j.push_back(nm.obj(o));
    return j;
}

Json env_morphism_json(const EnvMorphism& f, const Names& nm) {
    Json blocks = Json::array();
    for (const auto& b : f.blocks) blocks.push_back(vec_json(b.coeffs));
    return Json{{"dom", env_object_json(f.dom, nm)}, {"cod", env_object_json(f.cod, nm)}, {"blocks", blocks}};
}

template <class Obj, class Mor, class F, class G>
Json equivariant_json(const BasicEquivariant<Obj, Mor>& x, const FinGroup& grp, const Names& nm, F carrier, G mor) {
    Json sig = Json::array();
    for (std::size_t g = 0; g < x.sigma.size(); ++g)
        for (std::size_t y = 0; y < x.sigma[g].size(); ++y)
            if (x.sigma[g][y])
                sig.push_back(Json::array({grp.names.at(g), nm.obj(obj_at(static_cast<int>(y))), mor(*x.sigma[g][y])}));
    return Json{{"carrier", carrier(x.carrier)}, {"sigma", sig}};
}

Json to_json(const SpecFile& s) {
    return std::visit(
        [](const auto& d) -> Json {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, CategoryDoc>) {
                Json j;
                j["meta"] = meta_json(SpecKind::category, d.linear);
                write_category(j, d.cat);
                if (d.linear) j["linear"] = linear_json(*d.linear, d.cat.cat);
                return j;
            } else if constexpr (std::is_same_v<D, ActionDoc>) {
                return action_json(d);
            } else if constexpr (std::is_same_v<D, GlobalizationDoc>) {
                Json j;
                j["meta"] = meta_json(SpecKind::globalization, d.source.linear);
                const auto& g = d.glob;
                write_action(j, g.action);
                const auto& src = d.source.action;
                Names sn{&src.cat()}, gn{&g.action.cat()};
                Json values = Json::array(), comps = Json::array();
                for (const auto& f : g.objects) {
                    Json row = Json::array();
                    for (ObjId o : f.values) row.push_back(sn.obj(o));
                    values.push_back(row);
                }
                for (const auto& a : g.morphisms) {
                    Json row = Json::array();
                    for (MorId m : a.components) row.push_back(sn.mor(m));
                    comps.push_back(row);
                }
                Json emb = semigroupal_json(g.morphism.functor, sn, gn);
                Json tau = Json::array();
                for (std::size_t k = 0; k < g.morphism.tau.size(); ++k)
                    for (std::size_t x = 0; x < g.morphism.tau[k].size(); ++x)
                        if (valid(g.morphism.tau[k][x]))
                            tau.push_back(Json::array({src.group.names.at(k), sn.obj(obj_at(static_cast<int>(x))),
                                                       gn.mor(g.morphism.tau[k][x])}));
                emb["tau"] = tau;
                j["globalization"] = Json{{"values", values}, {"components", comps}, {"embedding", emb}};
                j["source"] = action_json(d.source);
                return j;
            } else if constexpr (std::is_same_v<D, SmashDoc>) {
                Json j;
                j["meta"] = meta_json(SpecKind::smash, d.source.linear);
                const auto& s = d.smash;
                write_category(j, s.base);
                const auto& src = d.source.action;
                Names sn{&src.cat()}, bn{&s.base.cat};
                Json gens = Json::array(), lifted = Json::array();
                for (const auto& g : s.generators) gens.push_back(Json::array({src.group.names.at(g.grade), sn.obj(g.object)}));
                for (std::size_t m = 0; m < s.lifted.size(); ++m)
                    lifted.push_back(Json::array({bn.mor(mor_at(static_cast<int>(m))),
                                                  src.group.names.at(s.morphism_grade.at(m)), sn.mor(s.lifted[m])}));
                const int n = s.n();
                Json assoc = Json::array();
                for (std::size_t k = 0; k < s.associator.size(); ++k) {
                    const int a = static_cast<int>(k) / (n * n), b = static_cast<int>(k) / n % n, c = static_cast<int>(k) % n;
                    assoc.push_back(Json::array({bn.obj(obj_at(a)), bn.obj(obj_at(b)), bn.obj(obj_at(c)), bn.mor(s.associator[k])}));
                }
                Json sm{{"generators", gens}, {"lifted", lifted}, {"associator", assoc}};
                sm["left_unitor"] = keyed(s.left_unitor, bn, [&](MorId m) { return bn.mor(m); });
                sm["right_unitor"] = keyed(s.right_unitor, bn, [&](MorId m) { return bn.mor(m); });
                sm["unit"] = bn.obj(s.unit);
                j["smash"] = sm;
                j["source"] = action_json(d.source);
                return j;
            } else {
                Json j;
                j["meta"] = meta_json(SpecKind::equivariant, d.source.linear);
                const auto& src = d.source.action;
                Names sn{&src.cat()};
                Json objs = Json::array(), envs = Json::array();
                for (const auto& x : d.objects)
                    objs.push_back(equivariant_json(
                        x, src.group, sn, [&](ObjId o) { return sn.obj(o); }, [&](MorId m) { return sn.mor(m); }));
                for (const auto& x : d.env_objects)
                    envs.push_back(equivariant_json(
                        x, src.group, sn, [&](const EnvObject& o) { return env_object_json(o, sn); },
                        [&](const EnvMorphism& m) { return env_morphism_json(m, sn); }));
                j["objects"] = objs;
                j["env_objects"] = envs;
                if (d.mu && d.eta)
                    j["algebra"] = Json{{"mu", env_morphism_json(*d.mu, sn)}, {"eta", env_morphism_json(*d.eta, sn)}};
                j["source"] = action_json(d.source);
                return j;
            }
        },
        s.body);
}

// ---------------------------------------------------------------- reading

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw MalformedSpec((path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(path, std::string("missing section '") + key + "'");
    return *it;
}

const Json& array_at(const Json& j, const char* key, const std::string& path) {
    const Json& a = field(j, key, path);
    if (!a.is_array()) bad(path + "/" + key, "expected a list");
    return a;
}

std::string str(const Json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a name");
    return j.get<std::string>();
}

Scalar scalar_of(const Json& j, const Field& f, const std::string& path) {
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        long long p = 0, q = 1;
        char slash = 0;
        std::istringstream in(s);
        if (!(in >> p)) bad(path, "bad scalar '" + s + "'");
        if (in >> slash) {
            if (slash != '/' || !(in >> q) || q == 0) bad(path, "bad scalar '" + s + "'");
        }
        return f.normalize(Scalar(p, q));
    }
    bad(path, "expected a scalar");
}

Vec vec_of(const Json& j, const Field& f, const std::string& path) {
    if (!j.is_array()) bad(path, "expected a coefficient list");
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_of(j[i], f, path + "/" + std::to_string(i)));
    return v;
}

// Name resolution inside one category.
struct Lookup {
    std::map<std::string, int> objs, mors;
    int n = 0, m = 0;

    explicit Lookup(const FinCategory& c) : n(c.object_count()), m(c.morphism_count()) {
        for (int i = 0; i < n; ++i) objs.emplace(c.object_name(obj_at(i)), i);
        for (int i = 0; i < m; ++i) mors.emplace(c.morphism(mor_at(i)).label, i);
    }
    Lookup(const std::vector<std::string>& objects) : n(static_cast<int>(objects.size())) {
        for (int i = 0; i < n; ++i) objs.emplace(objects[i], i);
    }
    ObjId obj(const Json& j, const std::string& path) const {
        if (j.is_null()) return kNoObj;
        auto s = str(j, path);
        auto it = objs.find(s);
        if (it == objs.end()) bad(path, "undeclared object '" + s + "'");
        return obj_at(it->second);
    }
    MorId mor(const Json& j, const std::string& path) const {
        if (j.is_null()) return kNoMor;
        auto s = str(j, path);
        auto it = mors.find(s);
        if (it == mors.end()) bad(path, "undeclared morphism '" + s + "'");
        return mor_at(it->second);
    }
};

const Json& tuple(const Json& j, std::size_t len, const std::string& path) {
    if (!j.is_array() || j.size() != len) bad(path, "expected a " + std::to_string(len) + "-entry record");
    return j;
}

FinGroup group_of(const Json& j, const std::string& path) {
    FinGroup g;
    const Json& els = array_at(j, "elements", path);
    for (std::size_t i = 0; i < els.size(); ++i) g.names.push_back(str(els[i], path + "/elements/" + std::to_string(i)));
    Lookup names(g.names);
    const Json& mul = array_at(j, "mul", path);
    if (mul.size() != g.names.size()) bad(path + "/mul", "table is not square");
    for (std::size_t a = 0; a < mul.size(); ++a) {
        const std::string p = path + "/mul/" + std::to_string(a);
        if (!mul[a].is_array() || mul[a].size() != g.names.size()) bad(p, "table is not square");
        for (std::size_t b = 0; b < mul[a].size(); ++b) {
            ObjId r = names.obj(mul[a][b], p + "/" + std::to_string(b));
            if (!valid(r)) bad(p, "table is not total");
            g.table.push_back(idx(r));
        }
    }
    return g;
}

int element_of(const FinGroup& g, const Json& j, const std::string& path) {
    auto s = str(j, path);
    for (int i = 0; i < g.order(); ++i)
        if (g.names[i] == s) return i;
    bad(path, "undeclared group element '" + s + "'");
}

Side side_of(const Json& j, const std::string& path) {
    auto s = str(j, path);
    if (s == "left") return Side::left;
    if (s == "right") return Side::right;
    if (s == "both") return Side::both;
    bad(path, "side must be left, right or both");
}

Subcategory sub_of(const Json& j, const FinCategory& c, const Lookup& lk, const std::string& path) {
    Subcategory s = Subcategory::empty(c);
    const Json& objs = array_at(j, "objects", path);
    for (std::size_t i = 0; i < objs.size(); ++i) {
        ObjId o = lk.obj(objs[i], path + "/objects/" + std::to_string(i));
        if (!valid(o)) bad(path, "null object");
        s.objects[idx(o)] = 1;
    }
    const Json& mors = array_at(j, "morphisms", path);
    for (std::size_t i = 0; i < mors.size(); ++i) {
        MorId m = lk.mor(mors[i], path + "/morphisms/" + std::to_string(i));
        if (!valid(m)) bad(path, "null morphism");
        s.morphisms[idx(m)] = 1;
    }
    return s;
}

// [[X, value]] into a per-object table of the given size
template <class T, class F>
std::vector<T> keyed_of(const Json& j, const Lookup& key, std::size_t size, T none, F value, const std::string& path) {
    if (!j.is_array()) bad(path, "expected a list");
    std::vector<T> out(size, none);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        const Json& e = tuple(j[i], 2, p);
        ObjId x = key.obj(e[0], p + "/0");
        if (!valid(x)) bad(p, "null key");
        out[idx(x)] = value(e[1], p + "/1");
    }
    return out;
}

std::vector<MorId> keyed_mor_of(const Json& j, const Lookup& key, const Lookup& val, const std::string& path) {
    return keyed_of<MorId>(j, key, key.n, kNoMor, [&](const Json& v, const std::string& p) { return val.mor(v, p); },
                           path);
}

std::vector<MorId> pairs_of(const Json& j, const Lookup& key, const Lookup& val, const std::string& path) {
    if (!j.is_array()) bad(path, "expected a list");
    std::vector<MorId> out(static_cast<std::size_t>(key.n) * key.n, kNoMor);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        const Json& e = tuple(j[i], 3, p);
        ObjId x = key.obj(e[0], p + "/0"), y = key.obj(e[1], p + "/1");
        if (!valid(x) || !valid(y)) bad(p, "null key");
        out[static_cast<std::size_t>(idx(x)) * key.n + idx(y)] = val.mor(e[2], p + "/2");
    }
    return out;
}

Functor functor_of(const Json& j, const Lookup& src, const Lookup& tgt, const std::string& path) {
    Functor f;
    f.obj.assign(src.n, kNoObj);
    f.mor.assign(src.m, kNoMor);
    const Json& objs = array_at(j, "obj", path);
    for (std::size_t i = 0; i < objs.size(); ++i) {
        const std::string p = path + "/obj/" + std::to_string(i);
        const Json& e = tuple(objs[i], 2, p);
        ObjId x = src.obj(e[0], p + "/0");
        if (!valid(x)) bad(p, "null key");
        f.obj[idx(x)] = tgt.obj(e[1], p + "/1");
    }
    const Json& mors = array_at(j, "mor", path);
    for (std::size_t i = 0; i < mors.size(); ++i) {
        const std::string p = path + "/mor/" + std::to_string(i);
        const Json& e = tuple(mors[i], 2, p);
        MorId x = src.mor(e[0], p + "/0");
        if (!valid(x)) bad(p, "null key");
        f.mor[idx(x)] = tgt.mor(e[1], p + "/1");
    }
    return f;
}

SemigroupalFunctor semigroupal_of(const Json& j, const Lookup& src, const Lookup& tgt, const std::string& path) {
    SemigroupalFunctor f;
    f.functor = functor_of(j, src, tgt, path);
    f.J = pairs_of(array_at(j, "J", path), src, tgt, path + "/J");
    const Json& j0 = field(j, "J0", path);
    if (!j0.is_null()) f.J0 = tgt.mor(j0, path + "/J0");
    return f;
}

MonoidalStructure category_of(const Json& j) {
    std::vector<std::string> objects;
    const Json& on = array_at(j, "objects", "");
    for (std::size_t i = 0; i < on.size(); ++i) objects.push_back(str(on[i], "/objects/" + std::to_string(i)));
    Lookup ol(objects);
    if (ol.objs.size() != objects.size()) bad("/objects", "duplicate object name");
    std::vector<Morphism> mors;
    std::map<std::string, int> mnames;
    const Json& mj = array_at(j, "morphisms", "");
    for (std::size_t i = 0; i < mj.size(); ++i) {
        const std::string p = "/morphisms/" + std::to_string(i);
        Morphism m{ol.obj(field(mj[i], "dom", p), p + "/dom"), ol.obj(field(mj[i], "cod", p), p + "/cod"),
                   str(field(mj[i], "name", p), p + "/name")};
        if (!valid(m.dom) || !valid(m.cod)) bad(p, "morphism without endpoints");
        if (!mnames.emplace(m.label, static_cast<int>(i)).second) bad(p, "duplicate morphism name '" + m.label + "'");
        mors.push_back(m);
    }
    auto mor_of = [&](const Json& v, const std::string& p) -> MorId {
        if (v.is_null()) return kNoMor;
        auto s = str(v, p);
        auto it = mnames.find(s);
        if (it == mnames.end()) bad(p, "undeclared morphism '" + s + "'");
        return mor_at(it->second);
    };
    const Json& ij = array_at(j, "identities", "");
    if (ij.size() != objects.size()) bad("/identities", "one identity per object required");
    std::vector<MorId> ids;
    for (std::size_t i = 0; i < ij.size(); ++i) {
        MorId m = mor_of(ij[i], "/identities/" + std::to_string(i));
        if (!valid(m)) bad("/identities/" + std::to_string(i), "missing identity");
        ids.push_back(m);
    }
    const std::size_t M = mors.size();
    std::vector<MorId> comp(M * M, kNoMor);
    const Json& cj = array_at(j, "compose", "");
    for (std::size_t i = 0; i < cj.size(); ++i) {
        const std::string p = "/compose/" + std::to_string(i);
        const Json& e = tuple(cj[i], 3, p);
        MorId g = mor_of(e[0], p + "/0"), f = mor_of(e[1], p + "/1"), gf = mor_of(e[2], p + "/2");
        if (!valid(g) || !valid(f)) bad(p, "null operand");
        comp[static_cast<std::size_t>(idx(g)) * M + idx(f)] = gf;
    }
    MonoidalStructure ms;
    try {
        ms.cat = FinCategory(objects, mors, ids, comp);
    } catch (const MalformedSpec&) {
        throw;
    } catch (const Error& e) {
        bad("/compose", e.what());
    }
    Lookup lk(ms.cat);
    const Json& to = array_at(j, "tensor_obj", "");
    if (!to.empty()) {
        if (to.size() != objects.size()) bad("/tensor_obj", "table is not square");
        for (std::size_t a = 0; a < to.size(); ++a) {
            const std::string p = "/tensor_obj/" + std::to_string(a);
            if (!to[a].is_array() || to[a].size() != objects.size()) bad(p, "table is not square");
            for (std::size_t b = 0; b < to[a].size(); ++b) ms.tensor_obj.push_back(lk.obj(to[a][b], p + "/" + std::to_string(b)));
        }
    }
    const Json& tm = array_at(j, "tensor_mor", "");
    if (!tm.empty()) {
        if (tm.size() != M) bad("/tensor_mor", "table is not square");
        for (std::size_t a = 0; a < tm.size(); ++a) {
            const std::string p = "/tensor_mor/" + std::to_string(a);
            if (!tm[a].is_array() || tm[a].size() != M) bad(p, "table is not square");
            for (std::size_t b = 0; b < tm[a].size(); ++b) ms.tensor_mor.push_back(lk.mor(tm[a][b], p + "/" + std::to_string(b)));
        }
    }
    if (j.contains("unit")) {
        ObjId u = lk.obj(j["unit"], "/unit");
        if (valid(u)) ms.unit = u;
    }
    return ms;
}

Linearization linear_of(const Json& j, const FinCategory& c, const std::string& path) {
    Linearization lz;
    auto& l = lz.lin;
    try {
        l.field = Field::from_tag(str(field(j, "field", path), path + "/field"));
    } catch (const MalformedSpec&) {
        throw;
    } catch (const Error& e) {
        bad(path + "/field", e.what());
    }
    const Json& on = array_at(j, "objects", path);
    for (std::size_t i = 0; i < on.size(); ++i) l.objects.push_back(str(on[i], path + "/objects/" + std::to_string(i)));
    Lookup ol(l.objects);
    const Json& bj = array_at(j, "basis", path);
    for (std::size_t i = 0; i < bj.size(); ++i) {
        const std::string p = path + "/basis/" + std::to_string(i);
        l.basis.push_back({ol.obj(field(bj[i], "dom", p), p + "/dom"), ol.obj(field(bj[i], "cod", p), p + "/cod"),
                           str(field(bj[i], "label", p), p + "/label")});
    }
    const Json& ij = array_at(j, "identity", path);
    for (std::size_t i = 0; i < ij.size(); ++i) l.identity.push_back(vec_of(ij[i], l.field, path + "/identity/" + std::to_string(i)));
    const Json& to = array_at(j, "tensor_obj", path);
    for (std::size_t a = 0; a < to.size(); ++a) {
        const std::string p = path + "/tensor_obj/" + std::to_string(a);
        if (!to[a].is_array()) bad(p, "expected a row");
        for (std::size_t b = 0; b < to[a].size(); ++b) l.tensor_obj.push_back(ol.obj(to[a][b], p + "/" + std::to_string(b)));
    }
    const Json& uj = field(j, "unit", path);
    if (!uj.is_null()) l.unit = ol.obj(uj, path + "/unit");
    const int B = l.basis_count();
    auto basis_index = [&](const Json& v, const std::string& p) {
        if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() >= B) bad(p, "basis index out of range");
        return v.get<int>();
    };
    try {
        l.index();
    } catch (const MalformedSpec& e) {
        bad(path, e.what());
    }
    for (const char* key : {"compose", "tensor"}) {
        const Json& cj = array_at(j, key, path);
        for (std::size_t i = 0; i < cj.size(); ++i) {
            const std::string p = path + "/" + key + "/" + std::to_string(i);
            const Json& e = tuple(cj[i], 3, p);
            int b = basis_index(e[0], p + "/0"), a = basis_index(e[1], p + "/1");
            Vec v = vec_of(e[2], l.field, p + "/2");
            if (std::string(key) == "compose") l.set_compose(b, a, std::move(v));
            else l.set_tensor(b, a, std::move(v));
        }
    }
    Lookup ml(c);
    const Json& of = array_at(j, "of_mor", path);
    if (static_cast<int>(of.size()) != c.morphism_count()) bad(path + "/of_mor", "one vector per morphism required");
    lz.of_mor.resize(of.size());
    for (std::size_t i = 0; i < of.size(); ++i) {
        const std::string p = path + "/of_mor/" + std::to_string(i);
        const Json& e = tuple(of[i], 4, p);
        MorId m = ml.mor(e[0], p + "/0");
        if (!valid(m)) bad(p, "null morphism");
        lz.of_mor[idx(m)] = LinMor{ol.obj(e[1], p + "/1"), ol.obj(e[2], p + "/2"), vec_of(e[3], l.field, p + "/3")};
    }
    const Json& back = array_at(j, "mor_of_basis", path);
    for (std::size_t i = 0; i < back.size(); ++i) lz.mor_of_basis.push_back(ml.mor(back[i], path + "/mor_of_basis/" + std::to_string(i)));
    const Json& en = field(j, "enumerated", path);
    if (!en.is_boolean()) bad(path + "/enumerated", "expected true or false");
    lz.enumerated = en.get<bool>();
    lz.build_decoder();
    return lz;
}

PartialAction action_of(const Json& j, MonoidalStructure ambient) {
    PartialAction t;
    t.ambient = std::move(ambient);
    const auto& c = t.cat();
    Lookup lk(c);
    t.group = group_of(field(j, "group", ""), "/group");
    const int G = t.order(), n = c.object_count();
    const Json& doms = array_at(j, "domains", "");
    if (static_cast<int>(doms.size()) != G) bad("/domains", "one domain per group element required");
    const Json& acts = array_at(j, "actors", "");
    if (static_cast<int>(acts.size()) != G) bad("/actors", "one actor per group element required");
    for (int g = 0; g < G; ++g) {
        const std::string p = "/domains/" + std::to_string(g);
        if (element_of(t.group, field(doms[g], "element", p), p + "/element") != g) bad(p, "domains out of group order");
        t.domains.push_back(Ideal{sub_of(doms[g], c, lk, p), side_of(field(doms[g], "side", p), p + "/side")});
        const std::string q = "/actors/" + std::to_string(g);
        if (element_of(t.group, field(acts[g], "element", q), q + "/element") != g) bad(q, "actors out of group order");
        t.actors.push_back(semigroupal_of(acts[g], lk, lk, q));
    }
    t.gamma.assign(static_cast<std::size_t>(G) * G, std::vector<MorId>(n, kNoMor));
    const Json& gam = array_at(j, "gamma", "");
    for (std::size_t i = 0; i < gam.size(); ++i) {
        const std::string p = "/gamma/" + std::to_string(i);
        int g = element_of(t.group, field(gam[i], "g", p), p + "/g");
        int h = element_of(t.group, field(gam[i], "h", p), p + "/h");
        t.gamma[g * G + h] = keyed_mor_of(field(gam[i], "components", p), lk, lk, p + "/components");
    }
    t.u = keyed_mor_of(field(j, "u", ""), lk, lk, "/u");
    return t;
}

Polyad polyad_of(const Json& j, const PartialAction& t) {
    const std::string path = "/polyad";
    Polyad p;
    p.source = group_of(field(j, "group", path), path + "/group");
    const auto& c = t.cat();
    Lookup lk(c);
    const Json& cats = array_at(j, "categories", path);
    for (std::size_t i = 0; i < cats.size(); ++i) {
        const std::string q = path + "/categories/" + std::to_string(i);
        p.categories.push_back(Ideal{sub_of(cats[i], c, lk, q), side_of(field(cats[i], "side", q), q + "/side")});
    }
    const Json& ms = array_at(j, "monads", path);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::string q = path + "/monads/" + std::to_string(i);
        Monad m;
        m.element = element_of(p.source, field(ms[i], "element", q), q + "/element");
        m.domain = sub_of(field(ms[i], "domain", q), c, lk, q + "/domain");
        m.carrier = functor_of(field(ms[i], "carrier", q), lk, lk, q + "/carrier");
        m.mu = keyed_mor_of(field(ms[i], "mu", q), lk, lk, q + "/mu");
        m.eta = keyed_mor_of(field(ms[i], "eta", q), lk, lk, q + "/eta");
        p.monads.push_back(std::move(m));
    }
    const Json& fs = array_at(j, "fusion", path);
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const std::string q = path + "/fusion/" + std::to_string(i);
        FusionOperators f;
        f.element = element_of(p.source, field(fs[i], "element", q), q + "/element");
        f.xi = pairs_of(field(fs[i], "xi", q), lk, lk, q + "/xi");
        f.counit = lk.mor(field(fs[i], "counit", q), q + "/counit");
        f.hl = pairs_of(field(fs[i], "hl", q), lk, lk, q + "/hl");
        f.hl_inverse = pairs_of(field(fs[i], "hl_inverse", q), lk, lk, q + "/hl_inverse");
        f.hr = pairs_of(field(fs[i], "hr", q), lk, lk, q + "/hr");
        f.hr_inverse = pairs_of(field(fs[i], "hr_inverse", q), lk, lk, q + "/hr_inverse");
        p.fusion.push_back(std::move(f));
    }
    return p;
}

SpecKind kind_of(const Json& j) {
    const Json& meta = field(j, "meta", "");
    auto v = str(field(meta, "format_version", "/meta"), "/meta/format_version");
    if (v != kFormatVersion) bad("/meta/format_version", "unsupported format version '" + v + "'");
    auto k = str(field(meta, "kind", "/meta"), "/meta/kind");
    for (auto kind : {SpecKind::category, SpecKind::action, SpecKind::globalization, SpecKind::smash, SpecKind::equivariant})
        if (kind_name(kind) == k) return kind;
    bad("/meta/kind", "unknown kind '" + k + "'");
}

ActionDoc action_doc_of(const Json& j);

// Nested documents report paths relative to their own root; prefix them.
ActionDoc nested_source(const Json& j) {
    const Json& src = field(j, "source", "");
    try {
        if (kind_of(src) != SpecKind::action) bad("/source/meta/kind", "source must be an action");
        return action_doc_of(src);
    } catch (const MalformedSpec& e) {
        std::string what = e.what();
        const std::string tag = "MalformedSpec: ";
        if (what.rfind(tag, 0) == 0) what = what.substr(tag.size());
        if (what.rfind("/source", 0) == 0) throw;
        throw MalformedSpec("/source" + what);
    }
}

ActionDoc action_doc_of(const Json& j) {
    ActionDoc d;
    d.action = action_of(j, category_of(j));
    if (j.contains("linear")) d.linear = linear_of(j["linear"], d.action.cat(), "/linear");
    if (j.contains("polyad")) d.polyad = polyad_of(j["polyad"], d.action);
    return d;
}

EnvObject env_object_of(const Json& j, const Lookup& lk, const std::string& path) {
    if (!j.is_array()) bad(path, "expected a list of objects");
    EnvObject a;
    for (std::size_t i = 0; i < j.size(); ++i) {
        ObjId o = lk.obj(j[i], path + "/" + std::to_string(i));
        if (!valid(o)) bad(path, "null summand");
        a.push_back(o);
    }
    return a;
}

EnvMorphism env_morphism_of(const Json& j, const Lookup& lk, const Field& f, const std::string& path) {
    EnvMorphism m;
    m.dom = env_object_of(field(j, "dom", path), lk, path + "/dom");
    m.cod = env_object_of(field(j, "cod", path), lk, path + "/cod");
    const Json& bl = array_at(j, "blocks", path);
    if (bl.size() != m.dom.size() * m.cod.size()) bad(path + "/blocks", "one block per summand pair required");
    for (std::size_t k = 0; k < bl.size(); ++k) {
        const std::size_t i = k / std::max<std::size_t>(m.dom.size(), 1), c = k % std::max<std::size_t>(m.dom.size(), 1);
        m.blocks.push_back(LinMor{m.dom[c], m.cod[i], vec_of(bl[k], f, path + "/blocks/" + std::to_string(k))});
    }
    return m;
}

template <class Obj, class Mor, class F, class G>
BasicEquivariant<Obj, Mor> equivariant_of(const Json& j, const PartialAction& t, const Lookup& lk, F carrier, G mor,
                                          const std::string& path) {
    BasicEquivariant<Obj, Mor> x;
    x.carrier = carrier(field(j, "carrier", path), path + "/carrier");
    x.sigma.assign(t.order(), std::vector<std::optional<Mor>>(t.n()));
    const Json& sig = array_at(j, "sigma", path);
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const std::string p = path + "/sigma/" + std::to_string(i);
        const Json& e = tuple(sig[i], 3, p);
        int g = element_of(t.group, e[0], p + "/0");
        ObjId y = lk.obj(e[1], p + "/1");
        if (!valid(y)) bad(p, "null key");
        x.sigma[g][idx(y)] = mor(e[2], p + "/2");
    }
    return x;
}

SpecFile from_json(const Json& j) {
    switch (kind_of(j)) {
        case SpecKind::category: {
            CategoryDoc d;
            d.cat = category_of(j);
            if (j.contains("linear")) d.linear = linear_of(j["linear"], d.cat.cat, "/linear");
            return SpecFile{d};
        }
        case SpecKind::action:
            return SpecFile{action_doc_of(j)};
        case SpecKind::globalization: {
            GlobalizationDoc d;
            d.source = nested_source(j);
            d.glob.action = action_of(j, category_of(j));
            const auto& src = d.source.action;
            Lookup sl(src.cat()), gl(d.glob.action.cat());
            const std::string p = "/globalization";
            const Json& g = field(j, "globalization", "");
            const Json& values = array_at(g, "values", p);
            if (static_cast<int>(values.size()) != gl.n) bad(p + "/values", "one value table per object required");
            for (std::size_t i = 0; i < values.size(); ++i) {
                const std::string q = p + "/values/" + std::to_string(i);
                if (!values[i].is_array() || static_cast<int>(values[i].size()) != src.order()) bad(q, "one value per group element required");
                GFunctor f;
                for (std::size_t k = 0; k < values[i].size(); ++k) f.values.push_back(sl.obj(values[i][k], q + "/" + std::to_string(k)));
                d.glob.objects.push_back(f);
            }
            const Json& comps = array_at(g, "components", p);
            if (static_cast<int>(comps.size()) != gl.m) bad(p + "/components", "one component table per morphism required");
            for (std::size_t i = 0; i < comps.size(); ++i) {
                const std::string q = p + "/components/" + std::to_string(i);
                if (!comps[i].is_array() || static_cast<int>(comps[i].size()) != src.order()) bad(q, "one component per group element required");
                GTransformation a;
                for (std::size_t k = 0; k < comps[i].size(); ++k) a.components.push_back(sl.mor(comps[i][k], q + "/" + std::to_string(k)));
                d.glob.morphisms.push_back(a);
            }
            const Json& emb = field(g, "embedding", p);
            d.glob.morphism.functor = semigroupal_of(emb, sl, gl, p + "/embedding");
            d.glob.morphism.tau.assign(src.order(), std::vector<MorId>(src.n(), kNoMor));
            const Json& tau = array_at(emb, "tau", p + "/embedding");
            for (std::size_t i = 0; i < tau.size(); ++i) {
                const std::string q = p + "/embedding/tau/" + std::to_string(i);
                const Json& e = tuple(tau[i], 3, q);
                int k = element_of(src.group, e[0], q + "/0");
                ObjId x = sl.obj(e[1], q + "/1");
                if (!valid(x)) bad(q, "null key");
                d.glob.morphism.tau[k][idx(x)] = gl.mor(e[2], q + "/2");
            }
            return SpecFile{d};
        }
        case SpecKind::smash: {
            ActionDoc source = nested_source(j);
            SmashCategory s{.source = linear_action_of(source)};
            s.base = category_of(j);
            const auto& src = source.action;
            Lookup sl(src.cat()), bl(s.base.cat);
            const std::string p = "/smash";
            const Json& sm = field(j, "smash", "");
            const Json& gens = array_at(sm, "generators", p);
            if (static_cast<int>(gens.size()) != bl.n) bad(p + "/generators", "one generator per object required");
            for (std::size_t i = 0; i < gens.size(); ++i) {
                const std::string q = p + "/generators/" + std::to_string(i);
                const Json& e = tuple(gens[i], 2, q);
                s.generators.push_back({element_of(src.group, e[0], q + "/0"), sl.obj(e[1], q + "/1")});
            }
            const Json& lifted = array_at(sm, "lifted", p);
            s.lifted.assign(bl.m, kNoMor);
            s.morphism_grade.assign(bl.m, 0);
            if (static_cast<int>(lifted.size()) != bl.m) bad(p + "/lifted", "one entry per morphism required");
            for (std::size_t i = 0; i < lifted.size(); ++i) {
                const std::string q = p + "/lifted/" + std::to_string(i);
                const Json& e = tuple(lifted[i], 3, q);
                MorId m = bl.mor(e[0], q + "/0");
                if (!valid(m)) bad(q, "null key");
                s.morphism_grade[idx(m)] = element_of(src.group, e[1], q + "/1");
                s.lifted[idx(m)] = sl.mor(e[2], q + "/2");
            }
            const std::size_t n = bl.n;
            s.associator.assign(n * n * n, kNoMor);
            const Json& assoc = array_at(sm, "associator", p);
            for (std::size_t i = 0; i < assoc.size(); ++i) {
                const std::string q = p + "/associator/" + std::to_string(i);
                const Json& e = tuple(assoc[i], 4, q);
                ObjId a = bl.obj(e[0], q + "/0"), b = bl.obj(e[1], q + "/1"), c = bl.obj(e[2], q + "/2");
                if (!valid(a) || !valid(b) || !valid(c)) bad(q, "null key");
                s.associator[(idx(a) * n + idx(b)) * n + idx(c)] = bl.mor(e[3], q + "/3");
            }
            s.left_unitor = keyed_mor_of(field(sm, "left_unitor", p), bl, bl, p + "/left_unitor");
            s.right_unitor = keyed_mor_of(field(sm, "right_unitor", p), bl, bl, p + "/right_unitor");
            s.unit = bl.obj(field(sm, "unit", p), p + "/unit");
            return SpecFile{SmashDoc{std::move(source), std::move(s)}};
        }
        case SpecKind::equivariant: {
            EquivariantDoc d;
            d.source = nested_source(j);
            const auto& t = d.source.action;
            Lookup lk(t.cat());
            const Field f = d.source.linear ? d.source.linear->lin.field : Field::gf(2);
            const Json& objs = array_at(j, "objects", "");
            for (std::size_t i = 0; i < objs.size(); ++i)
                d.objects.push_back(equivariant_of<ObjId, MorId>(
                    objs[i], t, lk, [&](const Json& v, const std::string& p) { return lk.obj(v, p); },
                    [&](const Json& v, const std::string& p) { return lk.mor(v, p); }, "/objects/" + std::to_string(i)));
            const Json& envs = array_at(j, "env_objects", "");
            for (std::size_t i = 0; i < envs.size(); ++i)
                d.env_objects.push_back(equivariant_of<EnvObject, EnvMorphism>(
                    envs[i], t, lk, [&](const Json& v, const std::string& p) { return env_object_of(v, lk, p); },
                    [&](const Json& v, const std::string& p) { return env_morphism_of(v, lk, f, p); },
                    "/env_objects/" + std::to_string(i)));
            if (j.contains("algebra")) {
                d.mu = env_morphism_of(field(j["algebra"], "mu", "/algebra"), lk, f, "/algebra/mu");
                d.eta = env_morphism_of(field(j["algebra"], "eta", "/algebra"), lk, f, "/algebra/eta");
            }
            return SpecFile{d};
        }
    }
    bad("/meta/kind", "unknown kind");
}

}  // namespace

std::string kind_name(SpecKind k) {
    switch (k) {
        case SpecKind::category: return "category";
        case SpecKind::action: return "action";
        case SpecKind::globalization: return "globalization";
        case SpecKind::smash: return "smash";
        case SpecKind::equivariant: return "equivariant";
    }
    return "?";
}

bool operator==(const GlobalizationDoc& a, const GlobalizationDoc& b) {
    return a.source == b.source && a.glob.objects == b.glob.objects && a.glob.morphisms == b.glob.morphisms &&
           a.glob.action == b.glob.action && a.glob.morphism == b.glob.morphism;
}

bool operator==(const SmashDoc& a, const SmashDoc& b) {
    const auto& x = a.smash;
    const auto& y = b.smash;
    auto gens_equal = [](const std::vector<SmashGenerator>& p, const std::vector<SmashGenerator>& q) {
        return std::equal(p.begin(), p.end(), q.begin(), q.end(),
                          [](const auto& l, const auto& r) { return l.grade == r.grade && l.object == r.object; });
    };
    return a.source == b.source && x.base == y.base && gens_equal(x.generators, y.generators) && x.lifted == y.lifted &&
           x.morphism_grade == y.morphism_grade && x.associator == y.associator && x.left_unitor == y.left_unitor &&
           x.right_unitor == y.right_unitor && x.unit == y.unit;
}

std::string save_spec(const SpecFile& s) { return to_json(s).dump(2) + "\n"; }

SpecFile load_spec(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // byte offset → line/column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw MalformedSpec("line " + std::to_string(line) + ", column " + std::to_string(col) + ": syntax error");
    }
    return from_json(j);
}

ActionDoc action_doc(const Instance& i) { return ActionDoc{i.action, i.linear, std::nullopt}; }

SpecFile corpus_spec(const std::string& name) { return SpecFile{action_doc(corpus_instance(name))}; }

namespace {
std::optional<std::string> corpus_target(const std::string& where) {
    const std::string scheme = "corpus:";
    if (where.rfind(scheme, 0) == 0) return where.substr(scheme.size());
    if (!std::filesystem::exists(where)) {
        auto names = corpus_names();
        if (std::find(names.begin(), names.end(), where) != names.end()) return where;
    }
    return std::nullopt;
}
}  // namespace

std::string read_spec_text(const std::string& where) {
    if (auto name = corpus_target(where)) {
        auto names = corpus_names();
        if (std::find(names.begin(), names.end(), *name) == names.end())
            throw MalformedSpec("unknown corpus instance '" + *name + "'");
        return save_spec(corpus_spec(*name));
    }
    std::ifstream in(where, std::ios::binary);
    if (!in) throw MalformedSpec("cannot read '" + where + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SpecFile load_spec_source(const std::string& where) { return load_spec(read_spec_text(where)); }

LinearAction linear_action_of(const ActionDoc& d) {
    auto res = make_linear_action(d.action, d.linear ? *d.linear : linearize_free(d.action.ambient));
    if (!res.action) throw NotUnital("the action has no unital data or is not linear:\n" + res.report.text());
    return *res.action;
}

std::string spec_hash(std::string_view text) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        out += buf;
    }
    return out;
}

std::string render_json(const RenderedReport& r) {
    const auto& d = r.report;
    Json facts = Json::object();
    for (const auto& [k, v] : r.facts) facts[k] = v;
    Json failures = Json::array();
    for (const auto& f : d.failures)
        failures.push_back(Json{{"check", f.check}, {"description", f.description}, {"witness", f.witness}});
    Json j{{"tool", kToolVersion},
           {"command", r.command},
           {"input", r.input},
           {"spec_hash", r.spec_hash},
           {"status", d.passed() ? "passed" : "failed"},
           {"facts", facts},
           {"counts", d.counts},
           {"failure_totals", d.failure_totals},
           {"failures", failures},
           {"warnings", d.warnings},
           {"notes", d.notes}};
    return j.dump(2) + "\n";
}

std::string render_text(const RenderedReport& r) {
    std::ostringstream out;
    out << kToolVersion << "\n";
    out << "command: " << r.command << "\n";
    out << "input: " << r.input << "\n";
    out << "spec hash: " << r.spec_hash << "\n";
    for (const auto& [k, v] : r.facts) out << k << ": " << v << "\n";
    out << r.report.text();
    out << "status: " << (r.report.passed() ? "passed" : "failed") << "\n";
    return out.str();
}

}  // namespace parcat
