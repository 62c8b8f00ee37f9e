#include "parcat/linear.hpp"

#include <sstream>

#include "parcat/errors.hpp"

namespace parcat {

namespace {
const Vec kEmpty;

std::vector<long long> key_of(const Vec& v) {
    std::vector<long long> out;
    out.reserve(v.size() * 2);
    for (const auto& s : v) {
        out.push_back(s.numerator());
        out.push_back(s.denominator());
    }
    return out;
}
}  // namespace

void LinearCategory::set_compose(int beta, int alpha, Vec v) { compose_[{beta, alpha}] = std::move(v); }
void LinearCategory::set_tensor(int alpha, int alpha2, Vec v) { tensor_[{alpha, alpha2}] = std::move(v); }

const Vec& LinearCategory::compose_const(int beta, int alpha) const {
    auto it = compose_.find({beta, alpha});
    return it == compose_.end() ? kEmpty : it->second;
}

const Vec& LinearCategory::tensor_const(int alpha, int alpha2) const {
    auto it = tensor_.find({alpha, alpha2});
    return it == tensor_.end() ? kEmpty : it->second;
}

void LinearCategory::index() {
    const int n = object_count();
    hom_.assign(static_cast<std::size_t>(n) * n, {});
    local_.assign(basis.size(), -1);
    for (int a = 0; a < basis_count(); ++a) {
        const auto& b = basis[a];
        if (idx(b.dom) < 0 || idx(b.dom) >= n || idx(b.cod) < 0 || idx(b.cod) >= n)
            throw MalformedSpec("basis element " + b.label + " has an endpoint out of range");
        auto& h = hom_[idx(b.dom) * n + idx(b.cod)];
        local_[a] = static_cast<int>(h.size());
        h.push_back(a);
    }
    if (static_cast<int>(identity.size()) != n) throw MalformedSpec("identity list has the wrong size");
    for (int a = 0; a < n; ++a)
        if (static_cast<int>(identity[a].size()) != hom_dim(obj_at(a), obj_at(a)))
            throw MalformedSpec("identity of " + objects[a] + " has the wrong length");
    if (static_cast<int>(tensor_obj.size()) != n * n) throw MalformedSpec("linear tensor table has the wrong size");
}

const std::vector<int>& LinearCategory::hom_basis(ObjId a, ObjId b) const {
    return hom_.at(static_cast<std::size_t>(idx(a)) * objects.size() + idx(b));
}

LinMor LinearCategory::basis_mor(int alpha) const {
    const auto& b = basis.at(alpha);
    LinMor f = zero(b.dom, b.cod);
    f.coeffs[local(alpha)] = Scalar(1);
    return f;
}

LinMor LinearCategory::compose(const LinMor& g, const LinMor& f) const {
    if (f.cod != g.dom) throw CompositionError("linear morphisms are not composable");
    LinMor out = zero(f.dom, g.cod);
    const auto& hf = hom_basis(f.dom, f.cod);
    const auto& hg = hom_basis(g.dom, g.cod);
    for (std::size_t i = 0; i < hg.size(); ++i) {
        if (field.is_zero(g.coeffs[i])) continue;
        for (std::size_t j = 0; j < hf.size(); ++j) {
            if (field.is_zero(f.coeffs[j])) continue;
            const Vec& c = compose_const(hg[i], hf[j]);
            if (c.empty()) continue;
            Scalar s = field.mul(g.coeffs[i], f.coeffs[j]);
            for (std::size_t k = 0; k < c.size(); ++k)
                if (!field.is_zero(c[k])) out.coeffs[k] = field.add(out.coeffs[k], field.mul(s, c[k]));
        }
    }
    return out;
}

LinMor LinearCategory::tensor(const LinMor& f, const LinMor& g) const {
    LinMor out = zero(tensor(f.dom, g.dom), tensor(f.cod, g.cod));
    const auto& hf = hom_basis(f.dom, f.cod);
    const auto& hg = hom_basis(g.dom, g.cod);
    for (std::size_t i = 0; i < hf.size(); ++i) {
        if (field.is_zero(f.coeffs[i])) continue;
        for (std::size_t j = 0; j < hg.size(); ++j) {
            if (field.is_zero(g.coeffs[j])) continue;
            const Vec& c = tensor_const(hf[i], hg[j]);
            if (c.empty()) continue;
            Scalar s = field.mul(f.coeffs[i], g.coeffs[j]);
            for (std::size_t k = 0; k < c.size(); ++k)
                if (!field.is_zero(c[k])) out.coeffs[k] = field.add(out.coeffs[k], field.mul(s, c[k]));
        }
    }
    return out;
}

LinMor LinearCategory::add(const LinMor& f, const LinMor& g) const {
    if (f.dom != g.dom || f.cod != g.cod) throw CompositionError("adding morphisms of different hom-sets");
    return {f.dom, f.cod, parcat::add(field, f.coeffs, g.coeffs)};
}

LinMor LinearCategory::scale(Scalar s, const LinMor& f) const { return {f.dom, f.cod, parcat::scale(field, s, f.coeffs)}; }

std::string LinearCategory::describe(const LinMor& f) const {
    std::ostringstream os;
    os << objects.at(idx(f.dom)) << "->" << objects.at(idx(f.cod)) << "[";
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) os << (i ? "," : "") << format_scalar(f.coeffs[i]);
    os << "]";
    return os.str();
}

DiagramReport validate_linear(const LinearCategory& l) {
    DiagramReport r;
    const int n = l.object_count();
    const int B = l.basis_count();
    for (int a = 0; a < B; ++a) {
        LinMor f = l.basis_mor(a);
        r.tick("linear-unit-law");
        if (l.compose(l.id(f.cod), f) != f || l.compose(f, l.id(f.dom)) != f)
            r.fail("linear-unit-law", "identity law fails", {l.basis[a].label});
    }
    for (int a = 0; a < B; ++a)
        for (int b = 0; b < B; ++b) {
            if (l.basis[a].cod != l.basis[b].dom) continue;
            for (int c = 0; c < B; ++c) {
                if (l.basis[b].cod != l.basis[c].dom) continue;
                LinMor fa = l.basis_mor(a), fb = l.basis_mor(b), fc = l.basis_mor(c);
                r.tick("linear-associativity");
                if (l.compose(fc, l.compose(fb, fa)) != l.compose(l.compose(fc, fb), fa))
                    r.fail("linear-associativity", "composition is not associative",
                           {l.basis[c].label, l.basis[b].label, l.basis[a].label});
            }
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            r.tick("linear-tensor-identity");
            if (l.tensor(l.id(obj_at(a)), l.id(obj_at(b))) != l.id(l.tensor(obj_at(a), obj_at(b))))
                r.fail("linear-tensor-identity", "id⊗id is not the identity", {l.objects[a], l.objects[b]});
            for (int c = 0; c < n; ++c) {
                r.tick("linear-tensor-associative");
                ObjId x = obj_at(a), y = obj_at(b), z = obj_at(c);
                if (l.tensor(l.tensor(x, y), z) != l.tensor(x, l.tensor(y, z)))
                    r.fail("linear-tensor-associative", "object tensor is not associative", {l.objects[a], l.objects[b], l.objects[c]});
            }
        }
    // interchange on basis elements
    for (int a = 0; a < B; ++a)
        for (int a2 = 0; a2 < B; ++a2) {
            if (l.basis[a].cod != l.basis[a2].dom) continue;
            for (int b = 0; b < B; ++b)
                for (int b2 = 0; b2 < B; ++b2) {
                    if (l.basis[b].cod != l.basis[b2].dom) continue;
                    LinMor f = l.basis_mor(a), f2 = l.basis_mor(a2), g = l.basis_mor(b), g2 = l.basis_mor(b2);
                    r.tick("linear-interchange");
                    if (l.tensor(l.compose(f2, f), l.compose(g2, g)) != l.compose(l.tensor(f2, g2), l.tensor(f, g)))
                        r.fail("linear-interchange", "interchange law fails",
                               {l.basis[a2].label, l.basis[a].label, l.basis[b2].label, l.basis[b].label});
                }
        }
    for (int a = 0; a < B; ++a)
        for (int b = 0; b < B; ++b)
            for (int c = 0; c < B; ++c) {
                LinMor f = l.basis_mor(a), g = l.basis_mor(b), h = l.basis_mor(c);
                r.tick("linear-tensor-associative-morphisms");
                if (l.tensor(l.tensor(f, g), h) != l.tensor(f, l.tensor(g, h)))
                    r.fail("linear-tensor-associative-morphisms", "tensor of morphisms is not associative",
                           {l.basis[a].label, l.basis[b].label, l.basis[c].label});
            }
    return r;
}

ObjId LinFunctor::operator()(ObjId o) const {
    ObjId r = obj.at(idx(o));
    if (!valid(r)) throw DomainError("linear functor undefined at object " + std::to_string(idx(o)));
    return r;
}

LinMor LinFunctor::apply(const LinearCategory& l, const LinMor& f) const {
    LinMor out = l.zero((*this)(f.dom), (*this)(f.cod));
    const auto& h = l.hom_basis(f.dom, f.cod);
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (l.field.is_zero(f.coeffs[i])) continue;
        const LinMor& img = basis_image.at(h[i]);
        if (!valid(img.dom)) throw DomainError("linear functor undefined on basis " + l.basis[h[i]].label);
        out = l.add(out, l.scale(f.coeffs[i], img));
    }
    return out;
}

std::optional<MorId> Linearization::decode(const LinMor& f) const {
    auto it = decoder_.find({{idx(f.dom), idx(f.cod)}, key_of(f.coeffs)});
    if (it == decoder_.end()) return std::nullopt;
    return it->second;
}

void Linearization::build_decoder() {
    decoder_.clear();
    for (std::size_t i = 0; i < of_mor.size(); ++i) {
        const auto& f = of_mor[i];
        decoder_.emplace(std::make_pair(std::make_pair(idx(f.dom), idx(f.cod)), key_of(f.coeffs)),
                         mor_at(static_cast<int>(i)));
    }
}

Linearization linearize_free(const MonoidalStructure& m, Field f) {
    const auto& c = m.cat;
    Linearization out;
    auto& l = out.lin;
    l.field = f;
    l.objects = c.object_names();
    for (int i = 0; i < c.morphism_count(); ++i) {
        const auto& mor = c.morphism(mor_at(i));
        l.basis.push_back({mor.dom, mor.cod, mor.label});
    }
    l.tensor_obj = m.tensor_obj;
    l.unit = m.unit;
    // identities need hom indices, so build them after a provisional index
    l.identity.assign(c.object_count(), {});
    {
        std::vector<int> seen(static_cast<std::size_t>(c.object_count()) * c.object_count(), 0);
        std::vector<int> local(c.morphism_count());
        for (int i = 0; i < c.morphism_count(); ++i) {
            const auto& mor = c.morphism(mor_at(i));
            local[i] = seen[idx(mor.dom) * c.object_count() + idx(mor.cod)]++;
        }
        for (int a = 0; a < c.object_count(); ++a) {
            Vec v = zero_vec(seen[a * c.object_count() + a]);
            v[local[idx(c.id(obj_at(a)))]] = Scalar(1);
            l.identity[a] = v;
        }
    }
    l.index();
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int h = 0; h < c.morphism_count(); ++h) {
            MorId gg = mor_at(g), hh = mor_at(h);
            if (c.cod(hh) == c.dom(gg)) l.set_compose(g, h, l.basis_mor(idx(c.compose(gg, hh))).coeffs);
            l.set_tensor(g, h, l.basis_mor(idx(m.tensor(gg, hh))).coeffs);
        }
    for (int i = 0; i < c.morphism_count(); ++i) {
        out.of_mor.push_back(l.basis_mor(i));
        out.mor_of_basis.push_back(mor_at(i));
    }
    out.build_decoder();
    return out;
}

Enumerated enumerate_linear(const LinearCategory& l) {
    if (!l.field.finite()) throw MalformedSpec("only linear categories over finite fields can be tabulated");
    const int p = l.field.characteristic();
    const int n = l.object_count();
    Enumerated out;
    auto& lz = out.linear;
    lz.lin = l;
    lz.enumerated = true;
    std::vector<Morphism> mors;
    std::vector<int> hom_start(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ObjId x = obj_at(a), y = obj_at(b);
            int d = l.hom_dim(x, y);
            long long total = 1;
            for (int i = 0; i < d; ++i) {
                total *= p;
                if (total > 1'000'000) throw SearchBudgetExceeded("hom-set too large to tabulate");
            }
            hom_start[a * n + b] = static_cast<int>(mors.size());
            for (long long code = 0; code < total; ++code) {
                Vec v = zero_vec(d);
                long long rest = code;
                for (int i = d - 1; i >= 0; --i) {
                    v[i] = Scalar(rest % p);
                    rest /= p;
                }
                std::string digits;
                for (const auto& s : v) digits += std::to_string(s.numerator());
                mors.push_back({x, y, l.objects[a] + "->" + l.objects[b] + "[" + digits + "]"});
                lz.of_mor.push_back({x, y, v});
            }
        }
    const int m = static_cast<int>(mors.size());
    auto code_of = [&](const LinMor& f) {
        long long code = 0;
        for (const auto& s : f.coeffs) code = code * p + s.numerator();
        return mor_at(hom_start[idx(f.dom) * n + idx(f.cod)] + static_cast<int>(code));
    };
    std::vector<MorId> ids;
    for (int a = 0; a < n; ++a) ids.push_back(code_of(l.id(obj_at(a))));
    std::vector<MorId> comp(static_cast<std::size_t>(m) * m, kNoMor);
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            const auto& lg = lz.of_mor[g];
            const auto& lf = lz.of_mor[f];
            if (lf.cod != lg.dom) continue;
            comp[static_cast<std::size_t>(g) * m + f] = code_of(l.compose(lg, lf));
        }
    out.cat.cat = FinCategory(l.objects, mors, ids, comp);
    out.cat.tensor_obj = l.tensor_obj;
    out.cat.tensor_mor.resize(static_cast<std::size_t>(m) * m);
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g)
            out.cat.tensor_mor[static_cast<std::size_t>(f) * m + g] = code_of(l.tensor(lz.of_mor[f], lz.of_mor[g]));
    out.cat.unit = l.unit;
    for (int a = 0; a < l.basis_count(); ++a) lz.mor_of_basis.push_back(code_of(l.basis_mor(a)));
    lz.build_decoder();
    return out;
}

DiagramReport check_linearization(const MonoidalStructure& ms, const Linearization& lz) {
    DiagramReport r;
    const auto& c = ms.cat;
    const auto& l = lz.lin;
    const int m = c.morphism_count();
    for (int a = 0; a < c.object_count(); ++a) {
        r.tick("vec-identity");
        if (lz.vec(c.id(obj_at(a))) != l.id(obj_at(a))) r.fail("vec-identity", "identity not preserved", {c.object_name(obj_at(a))});
    }
    for (int f = 0; f < m; ++f) {
        MorId ff = mor_at(f);
        r.tick("vec-decode");
        auto d = lz.decode(lz.vec(ff));
        if (!d || *d != ff) r.fail("vec-decode", "decode does not invert vec", {c.describe(ff)});
        for (int g = 0; g < m; ++g) {
            MorId gg = mor_at(g);
            if (c.cod(ff) == c.dom(gg)) {
                r.tick("vec-compose");
                if (lz.vec(c.compose(gg, ff)) != l.compose(lz.vec(gg), lz.vec(ff)))
                    r.fail("vec-compose", "composition not preserved", {c.describe(gg), c.describe(ff)});
            }
            r.tick("vec-tensor");
            if (lz.vec(ms.tensor(ff, gg)) != l.tensor(lz.vec(ff), lz.vec(gg)))
                r.fail("vec-tensor", "tensor not preserved", {c.describe(ff), c.describe(gg)});
        }
    }
    return r;
}

LinFunctor linear_extension(const Linearization& lz, const Functor& f, const Subcategory& domain) {
    const auto& l = lz.lin;
    LinFunctor out;
    out.obj.assign(l.object_count(), kNoObj);
    for (ObjId o : domain.object_list()) out.obj[idx(o)] = f(o);
    out.basis_image.assign(l.basis_count(), LinMor{});
    for (int a = 0; a < l.basis_count(); ++a) {
        MorId m = lz.mor_of_basis.at(a);
        if (!valid(m) || !domain.contains(m)) continue;
        out.basis_image[a] = lz.vec(f(m));
    }
    return out;
}

DiagramReport check_functor_linear(const Linearization& lz, const Functor& f, const LinFunctor& lf,
                                   const Subcategory& domain, const std::string& name) {
    DiagramReport r;
    for (MorId m : domain.morphism_list()) {
        r.tick(name + "-linear");
        try {
            if (lf.apply(lz.lin, lz.vec(m)) != lz.vec(f(m)))
                r.fail(name + "-linear", "tabulated functor is not the linear extension", {std::to_string(idx(m))});
        } catch (const Error& e) {
            r.fail(name + "-linear", e.what(), {std::to_string(idx(m))});
        }
    }
    return r;
}

Linearization restrict_linearization(const Linearization& lz, const std::vector<ObjId>& parent_object,
                                     const std::vector<MorId>& parent_morphism) {
    const auto& old = lz.lin;
    Linearization out;
    auto& l = out.lin;
    l.field = old.field;
    std::vector<int> new_obj(old.object_count(), -1);
    for (std::size_t i = 0; i < parent_object.size(); ++i) {
        new_obj[idx(parent_object[i])] = static_cast<int>(i);
        l.objects.push_back(old.objects[idx(parent_object[i])]);
    }
    std::vector<int> new_basis(old.basis_count(), -1);
    std::vector<int> kept;
    for (int a = 0; a < old.basis_count(); ++a) {
        const auto& b = old.basis[a];
        if (new_obj[idx(b.dom)] < 0 || new_obj[idx(b.cod)] < 0) continue;
        new_basis[a] = static_cast<int>(l.basis.size());
        kept.push_back(a);
        l.basis.push_back({obj_at(new_obj[idx(b.dom)]), obj_at(new_obj[idx(b.cod)]), b.label});
    }
    const int n = static_cast<int>(parent_object.size());
    for (ObjId o : parent_object) l.identity.push_back(old.identity[idx(o)]);
    l.tensor_obj.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int t = new_obj[idx(old.tensor(parent_object[a], parent_object[b]))];
            if (t < 0) throw MalformedSpec("restricted linear tensor leaves the ideal");
            l.tensor_obj[a * n + b] = obj_at(t);
        }
    l.unit.reset();
    l.index();
    // full subcategory: hom coordinates are unchanged, so constants carry over
    for (int a : kept)
        for (int b : kept) {
            const Vec& cc = old.compose_const(a, b);
            if (!cc.empty()) l.set_compose(new_basis[a], new_basis[b], cc);
            const Vec& tc = old.tensor_const(a, b);
            if (!tc.empty()) l.set_tensor(new_basis[a], new_basis[b], tc);
        }
    for (MorId pm : parent_morphism) {
        LinMor v = lz.vec(pm);
        out.of_mor.push_back({obj_at(new_obj[idx(v.dom)]), obj_at(new_obj[idx(v.cod)]), v.coeffs});
    }
    std::vector<int> new_mor(lz.of_mor.size(), -1);
    for (std::size_t i = 0; i < parent_morphism.size(); ++i) new_mor[idx(parent_morphism[i])] = static_cast<int>(i);
    for (int a : kept) {
        MorId old_m = lz.mor_of_basis[a];
        out.mor_of_basis.push_back(valid(old_m) && new_mor[idx(old_m)] >= 0 ? mor_at(new_mor[idx(old_m)]) : kNoMor);
    }
    out.enumerated = lz.enumerated;
    out.build_decoder();
    return out;
}

}  // namespace parcat
