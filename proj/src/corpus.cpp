#include "parcat/corpus.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "parcat/errors.hpp"

namespace parcat {

std::string support_name(unsigned mask) {
    if (mask == 0) return "0";
    std::string s = "M";
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) s += std::to_string(i + 1);
    return s;
}

std::string open_set_name(unsigned mask) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) {
            s += (first ? "" : ",") + std::to_string(i + 1);
            first = false;
        }
    return s + "}";
}

namespace {

unsigned apply_perm(const std::vector<int>& perm, unsigned mask) {
    unsigned out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (mask & (1u << i)) out |= 1u << perm[i];
    return out;
}

// Thin category on ∩-closed masks, ordered by inclusion.
MonoidalStructure thin_lattice(const std::vector<unsigned>& masks) {
    const int n = static_cast<int>(masks.size());
    std::map<unsigned, int> pos;
    for (int i = 0; i < n; ++i) pos[masks[i]] = i;
    std::vector<std::string> names;
    for (unsigned m : masks) names.push_back(open_set_name(m));
    std::vector<Morphism> mors;
    std::map<std::pair<int, int>, int> arrow;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if ((masks[a] & masks[b]) == masks[a]) {
                arrow[{a, b}] = static_cast<int>(mors.size());
                mors.push_back({obj_at(a), obj_at(b), names[a] + "->" + names[b]});
            }
    const int m = static_cast<int>(mors.size());
    std::vector<MorId> ids;
    for (int a = 0; a < n; ++a) ids.push_back(mor_at(arrow.at({a, a})));
    std::vector<MorId> comp(static_cast<std::size_t>(m) * m, kNoMor);
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (mors[f].cod == mors[g].dom)
                comp[static_cast<std::size_t>(g) * m + f] = mor_at(arrow.at({idx(mors[f].dom), idx(mors[g].cod)}));
    MonoidalStructure ms;
    ms.cat = FinCategory(names, mors, ids, comp);
    auto meet = [&](int a, int b) {
        auto it = pos.find(masks[a] & masks[b]);
        if (it == pos.end()) throw MalformedSpec("open sets are not closed under intersection");
        return it->second;
    };
    ms.tensor_obj.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) ms.tensor_obj[a * n + b] = obj_at(meet(a, b));
    ms.tensor_mor.resize(static_cast<std::size_t>(m) * m);
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g)
            ms.tensor_mor[static_cast<std::size_t>(f) * m + g] = mor_at(arrow.at(
                {meet(idx(mors[f].dom), idx(mors[g].dom)), meet(idx(mors[f].cod), idx(mors[g].cod))}));
    unsigned top = 0;
    for (unsigned k : masks) top |= k;
    if (pos.count(top)) ms.unit = obj_at(pos.at(top));
    return ms;
}

// Hom(S, T) has one basis vector per coordinate of S∩T, in increasing order.
LinearCategory coordinate_linear(const std::vector<unsigned>& masks, Field field) {
    const int n = static_cast<int>(masks.size());
    std::map<unsigned, int> pos;
    for (int i = 0; i < n; ++i) pos[masks[i]] = i;
    LinearCategory l;
    l.field = field;
    std::map<std::tuple<int, int, int>, int> basis_of;
    for (unsigned m : masks) l.objects.push_back(support_name(m));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            unsigned common = masks[a] & masks[b];
            for (int i = 0; i < 32; ++i)
                if (common & (1u << i)) {
                    basis_of[{a, b, i}] = l.basis_count();
                    l.basis.push_back({obj_at(a), obj_at(b), l.objects[a] + "->" + l.objects[b] + ":" + std::to_string(i + 1)});
                }
        }
    for (int a = 0; a < n; ++a) l.identity.push_back(Vec(std::popcount(masks[a]), Scalar(1)));
    l.tensor_obj.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto it = pos.find(masks[a] & masks[b]);
            if (it == pos.end()) throw MalformedSpec("supports are not closed under intersection");
            l.tensor_obj[a * n + b] = obj_at(it->second);
        }
    unsigned top = 0;
    for (unsigned k : masks) top |= k;
    if (pos.count(top)) l.unit = obj_at(pos.at(top));
    l.index();
    auto coord = [&](int alpha) {
        const auto& b = l.basis[alpha];
        unsigned common = masks[idx(b.dom)] & masks[idx(b.cod)];
        int k = l.local(alpha);
        for (int i = 0; i < 32; ++i)
            if (common & (1u << i)) {
                if (k == 0) return i;
                --k;
            }
        return -1;
    };
    const int B = l.basis_count();
    for (int x = 0; x < B; ++x)
        for (int y = 0; y < B; ++y) {
            int i = coord(x), j = coord(y);
            const auto& bx = l.basis[x];
            const auto& by = l.basis[y];
            if (by.cod == bx.dom && i == j)
                l.set_compose(x, y, l.basis_mor(basis_of.at({idx(by.dom), idx(bx.cod), i})).coeffs);
            if (i == j) {
                int d = idx(l.tensor(bx.dom, by.dom)), c = idx(l.tensor(bx.cod, by.cod));
                l.set_tensor(x, y, l.basis_mor(basis_of.at({d, c, i})).coeffs);
            }
        }
    return l;
}

int basis_coordinate(const LinearCategory& l, const std::vector<unsigned>& masks, int alpha) {
    const auto& b = l.basis[alpha];
    unsigned common = masks[idx(b.dom)] & masks[idx(b.cod)];
    int k = l.local(alpha);
    for (int i = 0; i < 32; ++i)
        if (common & (1u << i)) {
            if (k == 0) return i;
            --k;
        }
    return -1;
}

// Strict action of a permutation group on a coordinate category, with domain
// C_g = supports inside dom_mask[g]; J, γ, u are identities.
PartialAction coordinate_action(const Enumerated& en, const std::vector<unsigned>& masks, const FinGroup& grp,
                                const std::vector<std::vector<int>>& perms, const std::vector<unsigned>& dom_mask) {
    const auto& c = en.cat.cat;
    const auto& l = en.linear.lin;
    const int n = c.object_count();
    const int G = grp.order();
    std::map<unsigned, int> pos;
    for (int i = 0; i < n; ++i) pos[masks[i]] = i;
    PartialAction t;
    t.group = grp;
    t.ambient = en.cat;
    for (int g = 0; g < G; ++g) {
        std::vector<ObjId> objs;
        for (int a = 0; a < n; ++a)
            if ((masks[a] & dom_mask[g]) == masks[a]) objs.push_back(obj_at(a));
        t.domains.push_back({Subcategory::full_on(c, objs), Side::both});
    }
    for (int g = 0; g < G; ++g) {
        const auto& src = t.domains[grp.inv(g)].sub;
        LinFunctor lf;
        lf.obj.assign(n, kNoObj);
        for (ObjId o : src.object_list()) {
            auto it = pos.find(apply_perm(perms[g], masks[idx(o)]));
            if (it == pos.end()) throw InvalidIdempotentFamily("T_" + grp.names[g] + " leaves the object set");
            lf.obj[idx(o)] = obj_at(it->second);
        }
        lf.basis_image.assign(l.basis_count(), LinMor{});
        for (int alpha = 0; alpha < l.basis_count(); ++alpha) {
            const auto& b = l.basis[alpha];
            if (!src.contains(b.dom) || !src.contains(b.cod)) continue;
            ObjId d = lf.obj[idx(b.dom)], cd = lf.obj[idx(b.cod)];
            int target = perms[g][basis_coordinate(l, masks, alpha)];
            LinMor img = l.zero(d, cd);
            const auto& h = l.hom_basis(d, cd);
            for (std::size_t k = 0; k < h.size(); ++k)
                if (basis_coordinate(l, masks, h[k]) == target) img.coeffs[k] = Scalar(1);
            lf.basis_image[alpha] = img;
        }
        SemigroupalFunctor sf;
        sf.functor.obj = lf.obj;
        sf.functor.mor.assign(c.morphism_count(), kNoMor);
        for (MorId m : src.morphism_list()) {
            auto d = en.linear.decode(lf.apply(l, en.linear.vec(m)));
            if (!d) throw MalformedSpec("image of a coordinate morphism does not decode");
            sf.functor.mor[idx(m)] = *d;
        }
        sf.J.assign(static_cast<std::size_t>(n) * n, kNoMor);
        for (ObjId x : src.object_list())
            for (ObjId y : src.object_list()) sf.J[idx(x) * n + idx(y)] = c.id(sf.functor(t.ambient.tensor(x, y)));
        t.actors.push_back(std::move(sf));
    }
    t.gamma.assign(static_cast<std::size_t>(G) * G, std::vector<MorId>(n, kNoMor));
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h)
            for (int a = 0; a < n; ++a)
                if (t.gamma_domain(g, h, obj_at(a))) t.gamma[g * G + h][a] = c.id(t.T(g, t.T(h, obj_at(a))));
    for (int a = 0; a < n; ++a) t.u.push_back(c.id(obj_at(a)));
    return t;
}

// ψ_g at X: scalar c(g, i) on each coordinate i of T_g X.
std::vector<std::vector<MorId>> coordinate_twist(const PartialAction& t, const Linearization& lz,
                                                 const std::vector<unsigned>& masks) {
    const auto& l = lz.lin;
    const int G = t.order();
    std::vector<std::vector<MorId>> psi(G, std::vector<MorId>(t.n(), kNoMor));
    for (int g = 0; g < G; ++g)
        for (int a = 0; a < t.n(); ++a) {
            ObjId x = obj_at(a);
            if (!t.acts_on(g, x)) continue;
            ObjId y = t.T(g, x);
            LinMor f = l.zero(y, y);
            const auto& h = l.hom_basis(y, y);
            for (std::size_t k = 0; k < h.size(); ++k) {
                int i = basis_coordinate(l, masks, h[k]);
                f.coeffs[k] = l.field.from_int(1 + (g + i) % 2);
            }
            auto d = lz.decode(f);
            if (!d) throw MalformedSpec("twist component does not decode");
            psi[g][a] = *d;
        }
    return psi;
}

std::vector<unsigned> all_masks(int n) {
    std::vector<unsigned> out;
    for (unsigned m = 0; m < (1u << n); ++m) out.push_back(m);
    return out;
}

void finish(Instance& inst) {
    inst.report.merge(validate_partial_action(inst.action), "action/");
    inst.report.merge(check_linearization(inst.action.ambient, inst.linear), "linear/");
}

}  // namespace

PartialAction transport_action(const PartialAction& t, const std::vector<std::vector<MorId>>& psi) {
    PartialAction out = t;
    const int G = t.order();
    const int n = t.n();
    for (int g = 0; g < G; ++g) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                ObjId x = obj_at(a), y = obj_at(b);
                if (!t.acts_on(g, x) || !t.acts_on(g, y)) continue;
                MorId inv_pair = t.tensor(t.inv(psi[g][a]), t.inv(psi[g][b]));
                out.actors[g].J[a * n + b] = t.comp({psi[g][idx(t.tensor(x, y))], t.J(g, x, y), inv_pair});
            }
    }
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            int gh = t.group.mul(g, h);
            for (int a = 0; a < n; ++a) {
                ObjId x = obj_at(a);
                if (!t.gamma_domain(g, h, x)) continue;
                MorId horiz = t.comp(psi[g][idx(t.T(h, x))], t.T(g, psi[h][a]));
                out.gamma[g * G + h][a] = t.comp({psi[gh][a], t.gam(g, h, x), t.inv(horiz)});
            }
        }
    for (int a = 0; a < n; ++a) out.u[a] = t.comp(psi[t.group.e()][a], t.unit_at(obj_at(a)));
    return out;
}

Instance gen_topology_instance(int points, const std::vector<unsigned>& opens, const std::vector<int>& perm,
                               unsigned restrict_to) {
    if (points < 1 || points > 8) throw MalformedSpec("topology instances take 1 to 8 points");
    if (static_cast<int>(perm.size()) != points) throw MalformedSpec("permutation has the wrong length");
    std::vector<unsigned> masks = opens;
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    const unsigned full = (1u << points) - 1;
    auto has = [&](unsigned m) { return std::binary_search(masks.begin(), masks.end(), m); };
    if (!has(0) || !has(full)) throw MalformedSpec("a topology contains the empty set and the whole space");
    for (unsigned a : masks) {
        if (a & ~full) throw MalformedSpec("open set mentions a point outside the space");
        for (unsigned b : masks)
            if (!has(a & b) || !has(a | b)) throw MalformedSpec("open sets are not closed under ∩ and ∪");
    }
    if (!has(restrict_to)) throw MalformedSpec("restriction target is not open");
    for (unsigned a : masks)
        if (!has(apply_perm(perm, a)))
            throw NotContinuous("the permutation sends " + open_set_name(a) + " to a non-open set");

    std::vector<std::vector<int>> elems;
    FinGroup grp = FinGroup::from_permutations(points, {perm}, &elems);
    MonoidalStructure ms = thin_lattice(masks);
    std::map<unsigned, int> pos;
    for (std::size_t i = 0; i < masks.size(); ++i) pos[masks[i]] = static_cast<int>(i);
    PartialAction glob;
    glob.group = grp;
    glob.ambient = ms;
    const auto& c = ms.cat;
    const int n = c.object_count();
    const int G = grp.order();
    for (int g = 0; g < G; ++g) glob.domains.push_back({Subcategory::whole(c), Side::both});
    for (int g = 0; g < G; ++g) {
        SemigroupalFunctor sf;
        for (int a = 0; a < n; ++a) sf.functor.obj.push_back(obj_at(pos.at(apply_perm(elems[g], masks[a]))));
        for (int f = 0; f < c.morphism_count(); ++f) {
            MorId ff = mor_at(f);
            sf.functor.mor.push_back(c.hom(sf.functor.obj[idx(c.dom(ff))], sf.functor.obj[idx(c.cod(ff))]).front());
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) sf.J.push_back(c.id(sf.functor.obj[idx(ms.tensor(obj_at(a), obj_at(b)))]));
        glob.actors.push_back(std::move(sf));
    }
    glob.gamma.assign(static_cast<std::size_t>(G) * G, std::vector<MorId>(n, kNoMor));
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h)
            for (int a = 0; a < n; ++a) glob.gamma[g * G + h][a] = c.id(glob.T(g, glob.T(h, obj_at(a))));
    for (int a = 0; a < n; ++a) glob.u.push_back(c.id(obj_at(a)));

    std::vector<ObjId> inside;
    for (int a = 0; a < n; ++a)
        if ((masks[a] & restrict_to) == masks[a]) inside.push_back(obj_at(a));
    Restriction res = restrict_global(glob, Subcategory::full_on(c, inside));
    Instance inst{open_set_name(restrict_to), std::move(res.action), {}, {}, {}, res.parent_object, res.parent_morphism, {}};
    inst.report.merge(res.report, "restriction/");
    inst.linear = linearize_free(inst.action.ambient);
    inst.global_linear = linearize_free(glob.ambient);
    inst.global = std::move(glob);
    inst.report.merge(validate_partial_action(*inst.global), "global/");
    finish(inst);
    return inst;
}

Instance gen_fusion_instance(int n, const std::vector<int>& perm, unsigned support, Field field, bool twisted) {
    if (n < 1 || n > 4) throw MalformedSpec("fusion instances take 1 to 4 simples");
    if (support == 0 || support >= (1u << n)) throw MalformedSpec("support must be a nonempty subset of the simples");
    std::vector<std::vector<int>> elems;
    FinGroup grp = FinGroup::from_permutations(n, {perm}, &elems);
    auto masks = all_masks(n);
    Enumerated en = enumerate_linear(coordinate_linear(masks, field));
    const unsigned full = (1u << n) - 1;
    PartialAction glob = coordinate_action(en, masks, grp, elems, std::vector<unsigned>(grp.order(), full));
    if (twisted) glob = transport_action(glob, coordinate_twist(glob, en.linear, masks));
    std::vector<ObjId> inside;
    for (int a = 0; a < static_cast<int>(masks.size()); ++a)
        if ((masks[a] & support) == masks[a]) inside.push_back(obj_at(a));
    Restriction res = restrict_global(glob, Subcategory::full_on(glob.cat(), inside));
    Instance inst{support_name(support), std::move(res.action), {}, {}, {}, res.parent_object, res.parent_morphism, {}};
    inst.report.merge(res.report, "restriction/");
    inst.linear = restrict_linearization(en.linear, inst.parent_object, inst.parent_morphism);
    inst.report.merge(validate_partial_action(glob), "global/");
    inst.global = std::move(glob);
    inst.global_linear = std::move(en.linear);
    finish(inst);
    return inst;
}

Instance gen_ring_instance(int n, const std::vector<std::vector<int>>& generators, const std::vector<unsigned>& idempotents,
                           Field field) {
    if (n < 1 || n > 4) throw MalformedSpec("ring instances take 1 to 4 coordinates");
    std::vector<std::vector<int>> elems;
    FinGroup grp = generators.empty() ? FinGroup::trivial() : FinGroup::from_permutations(n, generators, &elems);
    if (generators.empty()) {
        elems.push_back({});
        for (int i = 0; i < n; ++i) elems[0].push_back(i);
    }
    const int G = grp.order();
    if (static_cast<int>(idempotents.size()) != G)
        throw InvalidIdempotentFamily("need one coordinate subset per group element");
    const unsigned full = (1u << n) - 1;
    const auto& D = idempotents;
    if (D[grp.e()] != full) throw InvalidIdempotentFamily("1_e must be the unit of the ring");
    for (int g = 0; g < G; ++g) {
        if (D[g] & ~full) throw InvalidIdempotentFamily("subset mentions a missing coordinate");
        int gi = grp.inv(g);
        if (apply_perm(elems[g], D[gi]) != D[g])
            throw InvalidIdempotentFamily("g=" + grp.names[g] + " does not map R_{g^-1} onto R_g");
        for (int h = 0; h < G; ++h)
            if (apply_perm(elems[g], D[gi] & D[h]) != (D[g] & D[grp.mul(g, h)]))
                throw InvalidIdempotentFamily("g=" + grp.names[g] + ", h=" + grp.names[h] +
                                              " break θ_g(R_{g^-1}R_h) = R_g R_{gh}");
    }
    std::vector<unsigned> masks{full};
    for (unsigned d : D) masks.push_back(d);
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t i = 0; i < masks.size(); ++i)
            for (std::size_t j = 0; j < masks.size(); ++j)
                if (std::find(masks.begin(), masks.end(), masks[i] & masks[j]) == masks.end()) {
                    masks.push_back(masks[i] & masks[j]);
                    grew = true;
                }
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    Enumerated en = enumerate_linear(coordinate_linear(masks, field));
    std::string name = "ring";
    for (unsigned d : D) name += "-" + support_name(d);
    Instance inst{name, coordinate_action(en, masks, grp, elems, D), std::move(en.linear), {}, {}, {}, {}, {}};
    finish(inst);
    return inst;
}

Instance gen_trivial_instance() {
    MonoidalStructure ms;
    ms.cat = FinCategory({"1"}, {{obj_at(0), obj_at(0), "id"}}, {mor_at(0)}, {mor_at(0)});
    ms.tensor_obj = {obj_at(0)};
    ms.tensor_mor = {mor_at(0)};
    ms.unit = obj_at(0);
    PartialAction t;
    t.group = FinGroup::trivial();
    t.ambient = ms;
    t.domains = {{Subcategory::whole(ms.cat), Side::both}};
    SemigroupalFunctor sf;
    sf.functor = Functor::identity(ms.cat);
    sf.J = {mor_at(0)};
    t.actors = {sf};
    t.gamma = {{mor_at(0)}};
    t.u = {mor_at(0)};
    Instance inst{"trivial", std::move(t), {}, {}, {}, {}, {}, {}};
    inst.linear = linearize_free(inst.action.ambient);
    finish(inst);
    return inst;
}

namespace {

struct Entry {
    std::string name;
    std::function<Instance()> make;
    bool sweep;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = [] {
        auto discrete = [](int n) { return all_masks(n); };
        std::vector<Entry> e;
        e.push_back({"trivial", [] { return gen_trivial_instance(); }, true});
        e.push_back({"inst-top", [=] { return gen_topology_instance(3, discrete(3), {1, 0, 2}, 0b101); }, true});
        e.push_back({"inst-top-global", [=] { return gen_topology_instance(3, discrete(3), {1, 0, 2}, 0b111); }, true});
        e.push_back({"top-point", [=] { return gen_topology_instance(1, discrete(1), {0}, 0b1); }, true});
        e.push_back({"top-identity", [=] { return gen_topology_instance(3, discrete(3), {0, 1, 2}, 0b011); }, true});
        e.push_back({"top-cycle4", [=] { return gen_topology_instance(4, discrete(4), {1, 2, 3, 0}, 0b0111); }, true});
        e.push_back({"top-sierpinski", [] {
                         return gen_topology_instance(3, {0b000, 0b001, 0b010, 0b011, 0b111}, {1, 0, 2}, 0b001);
                     }, true});
        e.push_back({"inst-fus", [] { return gen_fusion_instance(3, {1, 2, 0}, 0b011, Field::gf(2)); }, true});
        e.push_back({"inst-fus-gf3", [] { return gen_fusion_instance(3, {1, 2, 0}, 0b011, Field::gf(3)); }, true});
        e.push_back({"inst-fus-twisted", [] { return gen_fusion_instance(3, {1, 2, 0}, 0b011, Field::gf(3), true); }, true});
        e.push_back({"inst-fus-global", [] { return gen_fusion_instance(3, {1, 2, 0}, 0b111, Field::gf(2)); }, true});
        e.push_back({"inst-fus-global-twisted", [] { return gen_fusion_instance(3, {1, 2, 0}, 0b111, Field::gf(3), true); }, true});
        e.push_back({"fus-swap2", [] { return gen_fusion_instance(2, {1, 0}, 0b01, Field::gf(2)); }, true});
        e.push_back({"fus-identity", [] { return gen_fusion_instance(2, {0, 1}, 0b11, Field::gf(2)); }, true});
        e.push_back({"inst-ring", [] { return gen_ring_instance(3, {{1, 2, 0}}, {0b111, 0b010, 0b001}, Field::gf(2)); }, true});
        e.push_back({"ring-global", [] { return gen_ring_instance(2, {{1, 0}}, {0b11, 0b11}, Field::gf(2)); }, true});
        e.push_back({"ring-fixed", [] { return gen_ring_instance(3, {{1, 0, 2}}, {0b111, 0b100}, Field::gf(3)); }, true});
        e.push_back({"ring-trivial", [] { return gen_ring_instance(2, {}, {0b11}, Field::gf(2)); }, true});
        return e;
    }();
    return entries;
}

}  // namespace

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.name);
    return out;
}

std::vector<std::string> sweep_names() {
    std::vector<std::string> out;
    for (const auto& e : registry())
        if (e.sweep) out.push_back(e.name);
    return out;
}

Instance corpus_instance(const std::string& name) {
    for (const auto& e : registry())
        if (e.name == name) {
            Instance inst = e.make();
            inst.name = name;
            return inst;
        }
    throw MalformedSpec("unknown corpus instance " + name);
}

}  // namespace parcat
