#include "parcat/envelope.hpp"

#include <sstream>

#include "parcat/errors.hpp"

namespace parcat {

EnvMorphism Envelope::zero(const EnvObject& a, const EnvObject& b) const {
    EnvMorphism f{a, b, {}};
    f.blocks.reserve(a.size() * b.size());
    for (ObjId y : b)
        for (ObjId x : a) f.blocks.push_back(lin_.zero(x, y));
    return f;
}

EnvMorphism Envelope::id(const EnvObject& a) const {
    EnvMorphism f = zero(a, a);
    for (std::size_t i = 0; i < a.size(); ++i) f.block(i, i) = lin_.id(a[i]);
    return f;
}

EnvMorphism Envelope::from_base(const LinMor& f) const { return {{f.dom}, {f.cod}, {f}}; }

EnvMorphism Envelope::diagonal(const std::vector<LinMor>& parts) const {
    EnvObject a, b;
    for (const auto& p : parts) {
        a.push_back(p.dom);
        b.push_back(p.cod);
    }
    EnvMorphism f = zero(a, b);
    for (std::size_t i = 0; i < parts.size(); ++i) f.block(i, i) = parts[i];
    return f;
}

EnvMorphism Envelope::compose(const EnvMorphism& g, const EnvMorphism& f) const {
    if (f.cod != g.dom) throw CompositionError("envelope morphisms " + describe(g) + " and " + describe(f) + " do not compose");
    EnvMorphism out = zero(f.dom, g.cod);
    for (std::size_t i = 0; i < g.cod.size(); ++i)
        for (std::size_t j = 0; j < f.dom.size(); ++j) {
            LinMor acc = lin_.zero(f.dom[j], g.cod[i]);
            for (std::size_t k = 0; k < f.cod.size(); ++k) {
                const LinMor& gb = g.block(i, k);
                const LinMor& fb = f.block(k, j);
                if (parcat::is_zero(gb.coeffs) || parcat::is_zero(fb.coeffs)) continue;
                acc = lin_.add(acc, lin_.compose(gb, fb));
            }
            out.block(i, j) = std::move(acc);
        }
    return out;
}

EnvMorphism Envelope::compose(std::initializer_list<EnvMorphism> chain) const {
    if (chain.size() == 0) throw CompositionError("empty chain");
    auto it = std::rbegin(chain);
    EnvMorphism acc = *it;
    for (++it; it != std::rend(chain); ++it) acc = compose(*it, acc);
    return acc;
}

EnvObject Envelope::tensor(const EnvObject& a, const EnvObject& b) const {
    EnvObject out;
    out.reserve(a.size() * b.size());
    for (ObjId x : a)
        for (ObjId y : b) out.push_back(lin_.tensor(x, y));
    return out;
}

EnvMorphism Envelope::tensor(const EnvMorphism& f, const EnvMorphism& g) const {
    EnvMorphism out = zero(tensor(f.dom, g.dom), tensor(f.cod, g.cod));
    const std::size_t gd = g.dom.size(), gc = g.cod.size();
    for (std::size_t i = 0; i < f.cod.size(); ++i)
        for (std::size_t j = 0; j < f.dom.size(); ++j) {
            const LinMor& fb = f.block(i, j);
            if (parcat::is_zero(fb.coeffs)) continue;
            for (std::size_t k = 0; k < gc; ++k)
                for (std::size_t l = 0; l < gd; ++l) {
                    const LinMor& gb = g.block(k, l);
                    if (parcat::is_zero(gb.coeffs)) continue;
                    out.block(i * gc + k, j * gd + l) = lin_.tensor(fb, gb);
                }
        }
    return out;
}

EnvMorphism Envelope::add(const EnvMorphism& f, const EnvMorphism& g) const {
    if (f.dom != g.dom || f.cod != g.cod) throw CompositionError("adding envelope morphisms with different endpoints");
    EnvMorphism out = f;
    for (std::size_t i = 0; i < out.blocks.size(); ++i) out.blocks[i] = lin_.add(f.blocks[i], g.blocks[i]);
    return out;
}

EnvMorphism Envelope::scale(Scalar s, const EnvMorphism& f) const {
    EnvMorphism out = f;
    for (auto& b : out.blocks) b = lin_.scale(s, b);
    return out;
}

EnvObject Envelope::sum(const EnvObject& a, const EnvObject& b) {
    EnvObject out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

EnvMorphism Envelope::direct_sum(const EnvMorphism& f, const EnvMorphism& g) const {
    EnvMorphism out = zero(sum(f.dom, g.dom), sum(f.cod, g.cod));
    for (std::size_t i = 0; i < f.cod.size(); ++i)
        for (std::size_t j = 0; j < f.dom.size(); ++j) out.block(i, j) = f.block(i, j);
    for (std::size_t i = 0; i < g.cod.size(); ++i)
        for (std::size_t j = 0; j < g.dom.size(); ++j) out.block(f.cod.size() + i, f.dom.size() + j) = g.block(i, j);
    return out;
}

EnvMorphism Envelope::injection(const EnvObject& a, std::size_t i) const {
    EnvMorphism f = zero({a.at(i)}, a);
    f.block(i, 0) = lin_.id(a[i]);
    return f;
}

EnvMorphism Envelope::projection(const EnvObject& a, std::size_t i) const {
    EnvMorphism f = zero(a, {a.at(i)});
    f.block(0, i) = lin_.id(a[i]);
    return f;
}

EnvMorphism Envelope::permutation(const EnvObject& a, const std::vector<std::size_t>& perm) const {
    if (perm.size() != a.size()) throw MalformedSpec("permutation length differs from the object");
    EnvObject b;
    for (std::size_t k : perm) b.push_back(a.at(k));
    EnvMorphism f = zero(a, b);
    for (std::size_t k = 0; k < perm.size(); ++k) f.block(k, perm[k]) = lin_.id(a[perm[k]]);
    return f;
}

EnvMorphism Envelope::left_distributor(const EnvObject& a, const EnvObject& b, const EnvObject& c) const {
    // a⊗(b⊕c) lists (i, j) over b⊕c per i; target lists all of b first
    const std::size_t nb = b.size(), nc = c.size(), w = nb + nc;
    std::vector<std::size_t> perm;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < nb; ++j) perm.push_back(i * w + j);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < nc; ++j) perm.push_back(i * w + nb + j);
    return permutation(tensor(a, sum(b, c)), perm);
}

int Envelope::hom_dim(const EnvObject& a, const EnvObject& b) const {
    int d = 0;
    for (ObjId y : b)
        for (ObjId x : a) d += lin_.hom_dim(x, y);
    return d;
}

Vec Envelope::flatten(const EnvMorphism& f) const {
    Vec out;
    for (const auto& b : f.blocks) out.insert(out.end(), b.coeffs.begin(), b.coeffs.end());
    return out;
}

EnvMorphism Envelope::unflatten(const EnvObject& a, const EnvObject& b, const Vec& v) const {
    EnvMorphism f = zero(a, b);
    std::size_t pos = 0;
    for (auto& blk : f.blocks)
        for (auto& s : blk.coeffs) s = v.at(pos++);
    if (pos != v.size()) throw MalformedSpec("flattened morphism has the wrong length");
    return f;
}

bool Envelope::is_zero_object(const EnvObject& a) const {
    for (ObjId x : a)
        if (!lin_.is_zero_object(x)) return false;
    return true;
}

std::optional<EnvMorphism> Envelope::inverse(const EnvMorphism& f) const {
    const EnvObject& a = f.dom;
    const EnvObject& b = f.cod;
    const int d = hom_dim(b, a);
    Vec rhs = flatten(id(b));
    Vec rhs2 = flatten(id(a));
    rhs.insert(rhs.end(), rhs2.begin(), rhs2.end());
    Matrix m(field(), static_cast<int>(rhs.size()), d);
    Vec e = zero_vec(d);
    for (int k = 0; k < d; ++k) {
        e[k] = Scalar(1);
        EnvMorphism x = unflatten(b, a, e);
        Vec col = flatten(compose(f, x));
        Vec col2 = flatten(compose(x, f));
        col.insert(col.end(), col2.begin(), col2.end());
        for (std::size_t r = 0; r < col.size(); ++r) m.at(static_cast<int>(r), k) = col[r];
        e[k] = Scalar(0);
    }
    auto sol = m.solve(rhs);
    if (!sol) return std::nullopt;
    return unflatten(b, a, *sol);
}

std::optional<LinMor> Envelope::base_iso(ObjId a, ObjId b) const {
    if (a == b) return lin_.id(a);
    const int d = lin_.hom_dim(a, b);
    if (d != lin_.hom_dim(b, a) || d != lin_.hom_dim(a, a) || d != lin_.hom_dim(b, b)) return std::nullopt;
    for (const auto& f : hom_elements({a}, {b}))
        if (inverse(f)) return f.blocks.front();
    return std::nullopt;
}

std::optional<EnvMorphism> Envelope::find_iso(const EnvObject& a, const EnvObject& b, long long cap) const {
    if (a == b) return id(a);
    // necessary condition: all four hom-spaces share a dimension
    const int d = hom_dim(a, b);
    if (d != hom_dim(b, a) || d != hom_dim(a, a) || d != hom_dim(b, b)) return std::nullopt;
    {
        EnvMorphism f = zero(a, b);
        std::vector<char> used(b.size(), 0);
        bool ok = true;
        for (std::size_t j = 0; j < a.size() && ok; ++j) {
            if (lin_.is_zero_object(a[j])) continue;
            bool matched = false;
            for (std::size_t i = 0; i < b.size() && !matched; ++i) {
                if (used[i] || lin_.is_zero_object(b[i])) continue;
                if (auto iso = base_iso(a[j], b[i])) {
                    f.block(i, j) = *iso;
                    used[i] = 1;
                    matched = true;
                }
            }
            ok = matched;
        }
        if (ok && inverse(f)) return f;
    }
    for (const auto& f : hom_elements(a, b, cap))
        if (inverse(f)) return f;
    return std::nullopt;
}

std::vector<EnvMorphism> Envelope::hom_elements(const EnvObject& a, const EnvObject& b, long long cap) const {
    if (!field().finite()) throw SearchBudgetExceeded("hom-spaces over the rationals cannot be enumerated");
    const int p = field().characteristic();
    const int d = hom_dim(a, b);
    long long total = 1;
    for (int i = 0; i < d; ++i) {
        total *= p;
        if (total > cap) throw SearchBudgetExceeded("hom-space " + describe(a) + " -> " + describe(b) + " exceeds the search cap");
    }
    std::vector<EnvMorphism> out;
    out.reserve(static_cast<std::size_t>(total));
    Vec v = zero_vec(d);
    for (long long code = 0; code < total; ++code) {
        long long rest = code;
        for (int i = d - 1; i >= 0; --i) {
            v[i] = Scalar(rest % p);
            rest /= p;
        }
        out.push_back(unflatten(a, b, v));
    }
    return out;
}

EnvObject Envelope::apply(const LinFunctor& f, const EnvObject& a) const {
    EnvObject out;
    for (ObjId x : a) out.push_back(f(x));
    return out;
}

EnvMorphism Envelope::apply(const LinFunctor& f, const EnvMorphism& m) const {
    EnvMorphism out = zero(apply(f, m.dom), apply(f, m.cod));
    for (std::size_t i = 0; i < out.blocks.size(); ++i) out.blocks[i] = f.apply(lin_, m.blocks[i]);
    return out;
}

std::string Envelope::describe(const EnvObject& a) const {
    if (a.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "+" : "") + lin_.objects.at(idx(a[i]));
    return s;
}

std::string Envelope::describe(const EnvMorphism& f) const {
    std::ostringstream os;
    os << describe(f.dom) << "->" << describe(f.cod) << "[";
    bool first = true;
    for (const auto& b : f.blocks)
        for (const auto& s : b.coeffs) {
            os << (first ? "" : ",") << format_scalar(s);
            first = false;
        }
    os << "]";
    return os.str();
}

DiagramReport check_biproducts(const Envelope& env, const EnvObject& a) {
    DiagramReport r;
    EnvMorphism total = env.zero(a, a);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            r.tick("biproduct-projection");
            EnvMorphism pij = env.compose(env.projection(a, i), env.injection(a, j));
            EnvMorphism want = i == j ? env.id({a[i]}) : env.zero({a[j]}, {a[i]});
            if (pij != want)
                r.fail("biproduct-projection", "p_i after i_j is not the Kronecker delta",
                       {env.describe(a), std::to_string(i), std::to_string(j)});
        }
        total = env.add(total, env.compose(env.injection(a, i), env.projection(a, i)));
    }
    r.tick("biproduct-sum");
    if (total != env.id(a)) r.fail("biproduct-sum", "the injections and projections do not sum to the identity", {env.describe(a)});
    return r;
}

bool LinearAction::in(int g, const EnvObject& a) const {
    for (ObjId x : a)
        if (!action.in(g, x)) return false;
    return true;
}

EnvObject LinearAction::T_obj(int g, const EnvObject& a) const {
    EnvObject out;
    for (ObjId x : a) out.push_back(action.T(g, x));
    return out;
}

EnvMorphism LinearAction::T_mor(int g, const EnvMorphism& f) const {
    if (!acts_on(g, f.dom) || !acts_on(g, f.cod))
        throw DomainError("T_" + elem(g) + " undefined on " + env.describe(f));
    return env.apply(T.at(g), f);
}

EnvMorphism LinearAction::J(int g, const EnvObject& a, const EnvObject& b) const {
    std::vector<LinMor> parts;
    for (ObjId x : a)
        for (ObjId y : b) parts.push_back(linear.vec(action.J(g, x, y)));
    return env.diagonal(parts);
}

EnvMorphism LinearAction::gam(int g, int h, const EnvObject& a) const {
    std::vector<LinMor> parts;
    for (ObjId x : a) parts.push_back(linear.vec(action.gam(g, h, x)));
    return env.diagonal(parts);
}

EnvMorphism LinearAction::unit_at(const EnvObject& a) const {
    std::vector<LinMor> parts;
    for (ObjId x : a) parts.push_back(linear.vec(action.unit_at(x)));
    return env.diagonal(parts);
}

EnvMorphism LinearAction::phi(int g, std::initializer_list<int> others) const {
    return vec(unital.phi_of(g, others));
}

EnvMorphism LinearAction::inv(const EnvMorphism& f) const {
    auto i = env.inverse(f);
    if (!i) throw NotInvertible(env.describe(f));
    return *i;
}

LinearActionResult make_linear_action(PartialAction t, Linearization lz) {
    LinearActionResult out;
    auto& r = out.report;
    r.merge(check_linearization(t.ambient, lz), "linearization/");
    auto unital = extract_unital_data(t);
    r.merge(unital.report, "unital/");
    if (!unital.data) {
        r.fail("unital", "some C_g is not generated by a central idempotent");
        return out;
    }
    std::vector<LinFunctor> T;
    for (int g = 0; g < t.order(); ++g) {
        const auto& dom = t.domains.at(t.group.inv(g)).sub;
        T.push_back(linear_extension(lz, t.actors.at(g).functor, dom));
        r.merge(check_functor_linear(lz, t.actors.at(g).functor, T.back(), dom, "T_" + t.elem(g)));
    }
    Envelope env(lz.lin);
    out.action.emplace(LinearAction{std::move(t), std::move(lz), std::move(*unital.data), std::move(T), std::move(env)});
    return out;
}

}  // namespace parcat
