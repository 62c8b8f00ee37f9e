#include "parcat/fincat.hpp"

#include <algorithm>
#include <set>

#include "parcat/errors.hpp"

namespace parcat {

FinCategory::FinCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                         std::vector<MorId> identities, std::vector<MorId> compose_table)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      compose_(std::move(compose_table)) {
    const int n = object_count();
    const int m = morphism_count();
    if (static_cast<int>(identities_.size()) != n)
        throw MalformedSpec("identity table has " + std::to_string(identities_.size()) + " entries for " +
                            std::to_string(n) + " objects");
    if (compose_.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m))
        throw MalformedSpec("composition table is not M x M");
    for (const auto& mor : morphisms_)
        if (idx(mor.dom) < 0 || idx(mor.dom) >= n || idx(mor.cod) < 0 || idx(mor.cod) >= n)
            throw MalformedSpec("morphism " + mor.label + " has an endpoint out of range");
    for (MorId i : identities_)
        if (idx(i) < 0 || idx(i) >= m) throw MalformedSpec("identity entry out of range");
    for (MorId r : compose_)
        if (idx(r) < -1 || idx(r) >= m) throw MalformedSpec("composition entry out of range");
    rebuild();
}

void FinCategory::rebuild() {
    const int n = object_count();
    hom_.assign(static_cast<std::size_t>(n) * n, {});
    for (int i = 0; i < morphism_count(); ++i) {
        const auto& mor = morphisms_[i];
        hom_[idx(mor.dom) * n + idx(mor.cod)].push_back(mor_at(i));
    }
    inverse_.assign(morphisms_.size(), kNoMor);
    for (int i = 0; i < morphism_count(); ++i) {
        MorId f = mor_at(i);
        for (MorId g : hom(cod(f), dom(f))) {
            if (compose_raw(g, f) == id(dom(f)) && compose_raw(f, g) == id(cod(f))) {
                inverse_[i] = g;
                break;
            }
        }
    }
}

MorId FinCategory::compose_raw(MorId g, MorId f) const {
    return compose_[static_cast<std::size_t>(idx(g)) * morphisms_.size() + idx(f)];
}

MorId FinCategory::compose(MorId g, MorId f) const {
    if (!valid(g) || !valid(f) || idx(g) >= morphism_count() || idx(f) >= morphism_count())
        throw CompositionError("morphism id out of range");
    if (cod(f) != dom(g))
        throw CompositionError(describe(g) + " after " + describe(f) + " is not composable");
    MorId r = compose_raw(g, f);
    if (!valid(r)) throw MalformedSpec("composition table missing " + describe(g) + " o " + describe(f));
    return r;
}

std::span<const MorId> FinCategory::hom(ObjId a, ObjId b) const {
    return hom_.at(static_cast<std::size_t>(idx(a)) * objects_.size() + idx(b));
}

std::optional<MorId> FinCategory::inverse(MorId f) const {
    MorId r = inverse_.at(idx(f));
    if (!valid(r)) return std::nullopt;
    return r;
}

std::optional<MorId> FinCategory::find_iso(ObjId a, ObjId b) const {
    for (MorId f : hom(a, b))
        if (is_iso(f)) return f;
    return std::nullopt;
}

bool FinCategory::isomorphic(ObjId a, ObjId b) const { return find_iso(a, b).has_value(); }

std::vector<MorId> FinCategory::isos(ObjId a, ObjId b) const {
    std::vector<MorId> out;
    for (MorId f : hom(a, b))
        if (is_iso(f)) out.push_back(f);
    return out;
}

std::optional<ObjId> FinCategory::find_object(std::string_view name) const {
    for (int i = 0; i < object_count(); ++i)
        if (objects_[i] == name) return obj_at(i);
    return std::nullopt;
}

std::optional<MorId> FinCategory::find_morphism(std::string_view label) const {
    for (int i = 0; i < morphism_count(); ++i)
        if (morphisms_[i].label == label) return mor_at(i);
    return std::nullopt;
}

void FinCategory::set_compose(MorId g, MorId f, MorId r) {
    compose_.at(static_cast<std::size_t>(idx(g)) * morphisms_.size() + idx(f)) = r;
    rebuild();
}

std::string FinCategory::describe(MorId m) const {
    if (!valid(m) || idx(m) >= morphism_count()) return "<none>";
    const auto& mor = morphisms_[idx(m)];
    return mor.label;
}

MorId compose_path(const FinCategory& c, std::span<const MorId> path) {
    if (path.empty()) throw CompositionError("empty path");
    MorId acc = path[0];
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (c.cod(acc) != c.dom(path[i]))
            throw CompositionError("path breaks at index " + std::to_string(i));
        acc = c.compose(path[i], acc);
    }
    return acc;
}

DiagramReport validate_category(const FinCategory& c) {
    DiagramReport r;
    const int n = c.object_count();
    const int m = c.morphism_count();
    for (int o = 0; o < n; ++o) {
        MorId i = c.id(obj_at(o));
        r.tick("identity-endpoints");
        if (c.dom(i) != obj_at(o) || c.cod(i) != obj_at(o))
            r.fail("identity-endpoints", "identity has wrong endpoints", {c.object_name(obj_at(o))});
    }
    for (int g = 0; g < m; ++g) {
        for (int f = 0; f < m; ++f) {
            MorId gg = mor_at(g), ff = mor_at(f);
            MorId res = c.compose_raw(gg, ff);
            bool composable = c.cod(ff) == c.dom(gg);
            r.tick("compose-defined");
            if (composable != valid(res)) {
                r.fail("compose-defined",
                       composable ? "composable pair has no entry" : "entry for non-composable pair",
                       {c.describe(gg), c.describe(ff)});
                continue;
            }
            if (composable && (c.dom(res) != c.dom(ff) || c.cod(res) != c.cod(gg)))
                r.fail("compose-endpoints", "composite has wrong endpoints", {c.describe(gg), c.describe(ff)});
        }
    }
    if (!r.passed()) return r;
    for (int f = 0; f < m; ++f) {
        MorId ff = mor_at(f);
        r.tick("unit-law");
        if (c.compose_raw(ff, c.id(c.dom(ff))) != ff || c.compose_raw(c.id(c.cod(ff)), ff) != ff)
            r.fail("unit-law", "identity law fails", {c.describe(ff)});
    }
    for (int f = 0; f < m; ++f) {
        MorId ff = mor_at(f);
        for (int b = 0; b < n; ++b) {
            for (MorId gg : c.hom(c.cod(ff), obj_at(b))) {
                MorId gf = c.compose_raw(gg, ff);
                for (int d = 0; d < n; ++d) {
                    for (MorId hh : c.hom(obj_at(b), obj_at(d))) {
                        r.tick("associativity");
                        if (c.compose_raw(hh, gf) != c.compose_raw(c.compose_raw(hh, gg), ff))
                            r.fail("associativity", "composition is not associative",
                                   {c.describe(hh), c.describe(gg), c.describe(ff)});
                    }
                }
            }
        }
    }
    return r;
}

DiagramReport check_commutes(const FinCategory& c, const std::vector<std::vector<MorId>>& paths) {
    DiagramReport r;
    if (paths.empty()) return r;
    std::vector<MorId> results;
    ObjId src = kNoObj, tgt = kNoObj;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto& p = paths[i];
        if (p.empty()) throw DiagramShapeError("path " + std::to_string(i) + " is empty");
        ObjId s = c.dom(p.front()), t = c.cod(p.back());
        if (i == 0) {
            src = s;
            tgt = t;
        } else if (s != src || t != tgt) {
            throw DiagramShapeError("path " + std::to_string(i) + " does not share endpoints");
        }
        results.push_back(compose_path(c, p));
    }
    r.tick("commutes");
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i] != results[0])
            r.fail("commutes", "paths differ", {c.describe(results[0]), c.describe(results[i])});
    return r;
}

std::optional<MorId> find_inverse(const FinCategory& c, MorId f) { return c.inverse(f); }

Subcategory Subcategory::whole(const FinCategory& c) {
    return {std::vector<char>(c.object_count(), 1), std::vector<char>(c.morphism_count(), 1)};
}

Subcategory Subcategory::empty(const FinCategory& c) {
    return {std::vector<char>(c.object_count(), 0), std::vector<char>(c.morphism_count(), 0)};
}

Subcategory Subcategory::full_on(const FinCategory& c, const std::vector<ObjId>& objs) {
    Subcategory s = empty(c);
    for (ObjId o : objs) s.objects.at(idx(o)) = 1;
    for (int i = 0; i < c.morphism_count(); ++i) {
        const auto& m = c.morphism(mor_at(i));
        s.morphisms[i] = s.objects[idx(m.dom)] && s.objects[idx(m.cod)];
    }
    return s;
}

std::vector<ObjId> Subcategory::object_list() const {
    std::vector<ObjId> out;
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i]) out.push_back(obj_at(static_cast<int>(i)));
    return out;
}

std::vector<MorId> Subcategory::morphism_list() const {
    std::vector<MorId> out;
    for (std::size_t i = 0; i < morphisms.size(); ++i)
        if (morphisms[i]) out.push_back(mor_at(static_cast<int>(i)));
    return out;
}

int Subcategory::object_total() const {
    return static_cast<int>(std::count(objects.begin(), objects.end(), 1));
}

Subcategory intersect(const Subcategory& a, const Subcategory& b) {
    Subcategory s = a;
    for (std::size_t i = 0; i < s.objects.size(); ++i) s.objects[i] = a.objects[i] && b.objects.at(i);
    for (std::size_t i = 0; i < s.morphisms.size(); ++i) s.morphisms[i] = a.morphisms[i] && b.morphisms.at(i);
    return s;
}

ObjId Functor::operator()(ObjId o) const {
    ObjId r = obj.at(idx(o));
    if (!valid(r)) throw DomainError("functor undefined on object " + std::to_string(idx(o)));
    return r;
}

MorId Functor::operator()(MorId m) const {
    MorId r = mor.at(idx(m));
    if (!valid(r)) throw DomainError("functor undefined on morphism " + std::to_string(idx(m)));
    return r;
}

Functor Functor::identity(const FinCategory& c) {
    Functor f;
    for (int i = 0; i < c.object_count(); ++i) f.obj.push_back(obj_at(i));
    for (int i = 0; i < c.morphism_count(); ++i) f.mor.push_back(mor_at(i));
    return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
    Functor h;
    for (ObjId o : f.obj) h.obj.push_back(valid(o) ? g.obj.at(idx(o)) : kNoObj);
    for (MorId m : f.mor) h.mor.push_back(valid(m) ? g.mor.at(idx(m)) : kNoMor);
    return h;
}

DiagramReport validate_functor(const FinCategory& src, const FinCategory& tgt, const Functor& f,
                               const Subcategory* domain, const std::string& name) {
    DiagramReport r;
    if (static_cast<int>(f.obj.size()) != src.object_count() ||
        static_cast<int>(f.mor.size()) != src.morphism_count())
        throw MalformedSpec(name + ": table sizes do not match the source");
    Subcategory whole = Subcategory::whole(src);
    const Subcategory& dom = domain ? *domain : whole;
    for (ObjId o : dom.object_list()) {
        r.tick(name + "-defined");
        ObjId fo = f.obj[idx(o)];
        if (!valid(fo) || idx(fo) >= tgt.object_count()) {
            r.fail(name + "-defined", "object image missing", {src.object_name(o)});
            continue;
        }
        MorId fi = f.mor[idx(src.id(o))];
        r.tick(name + "-identity");
        if (fi != tgt.id(fo)) r.fail(name + "-identity", "identity not preserved", {src.object_name(o)});
    }
    if (!r.passed()) return r;
    for (MorId m : dom.morphism_list()) {
        MorId fm = f.mor[idx(m)];
        r.tick(name + "-endpoints");
        if (!valid(fm) || idx(fm) >= tgt.morphism_count()) {
            r.fail(name + "-defined", "morphism image missing", {src.describe(m)});
            continue;
        }
        if (tgt.dom(fm) != f.obj[idx(src.dom(m))] || tgt.cod(fm) != f.obj[idx(src.cod(m))])
            r.fail(name + "-endpoints", "image has wrong endpoints", {src.describe(m)});
    }
    if (!r.passed()) return r;
    for (MorId m : dom.morphism_list()) {
        for (int b = 0; b < src.object_count(); ++b) {
            for (MorId g : src.hom(src.cod(m), obj_at(b))) {
                if (!dom.contains(g)) continue;
                MorId gm = src.compose(g, m);
                if (!dom.contains(gm)) continue;
                r.tick(name + "-composition");
                if (f.mor[idx(gm)] != tgt.compose(f.mor[idx(g)], f.mor[idx(m)]))
                    r.fail(name + "-composition", "composition not preserved", {src.describe(g), src.describe(m)});
            }
        }
    }
    return r;
}

DiagramReport validate_natural_transformation(const FinCategory& src, const FinCategory& tgt,
                                              const Functor& f, const Functor& g,
                                              const NatTransformation& t, const Subcategory* domain,
                                              const std::string& name) {
    DiagramReport r;
    Subcategory whole = Subcategory::whole(src);
    const Subcategory& dom = domain ? *domain : whole;
    for (ObjId o : dom.object_list()) {
        MorId c = t.components.at(idx(o));
        if (!valid(c))
            throw ComponentShapeError(name + ": missing component at " + src.object_name(o));
        if (tgt.dom(c) != f(o) || tgt.cod(c) != g(o))
            throw ComponentShapeError(name + ": component at " + src.object_name(o) + " has wrong endpoints");
    }
    for (MorId m : dom.morphism_list()) {
        r.tick(name + "-naturality");
        MorId lhs = tgt.compose(g(m), t.components[idx(src.dom(m))]);
        MorId rhs = tgt.compose(t.components[idx(src.cod(m))], f(m));
        if (lhs != rhs) r.fail(name + "-naturality", "naturality square fails", {src.describe(m)});
    }
    return r;
}

DiagramReport check_equivalence(const FinCategory& src, const Subcategory& dom, const FinCategory& tgt,
                                const Subcategory& image, const Functor& f, const std::string& name) {
    DiagramReport r;
    auto objs = dom.object_list();
    for (ObjId x : objs) {
        r.tick(name + "-lands");
        if (!f.defined(x) || !image.contains(f(x)))
            r.fail(name + "-lands", "object not sent into the target ideal", {src.object_name(x)});
    }
    if (!r.passed()) return r;
    for (ObjId x : objs) {
        for (ObjId y : objs) {
            std::set<int> seen;
            int count = 0;
            for (MorId m : src.hom(x, y)) {
                if (!dom.contains(m)) continue;
                ++count;
                if (!f.defined(m)) {
                    r.fail(name + "-faithful", "morphism image missing", {src.describe(m)});
                    continue;
                }
                if (!seen.insert(idx(f(m))).second)
                    r.fail(name + "-faithful", "two morphisms share an image", {src.describe(m)});
            }
            int target = 0;
            for (MorId m : tgt.hom(f(x), f(y)))
                if (image.contains(m)) ++target;
            r.tick(name + "-full");
            if (target != static_cast<int>(seen.size()) || count != static_cast<int>(seen.size()))
                r.fail(name + "-full", "hom-set map is not bijective", {src.object_name(x), src.object_name(y)});
        }
    }
    for (ObjId y : image.object_list()) {
        r.tick(name + "-essentially-surjective");
        bool hit = false;
        for (ObjId x : objs)
            if (tgt.isomorphic(f(x), y)) {
                hit = true;
                break;
            }
        if (!hit) r.fail(name + "-essentially-surjective", "object not in the essential image", {tgt.object_name(y)});
    }
    return r;
}

}  // namespace parcat
