#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parcat/linear.hpp"
#include "parcat/paction.hpp"

namespace parcat {

// Formal direct sum of base objects; the empty list is the zero object.
using EnvObject = std::vector<ObjId>;

// Block matrix: blocks[i * dom.size() + j] ∈ Hom(dom[j], cod[i]).
struct EnvMorphism {
    EnvObject dom;
    EnvObject cod;
    std::vector<LinMor> blocks;

    const LinMor& block(std::size_t i, std::size_t j) const { return blocks.at(i * dom.size() + j); }
    LinMor& block(std::size_t i, std::size_t j) { return blocks.at(i * dom.size() + j); }
    bool operator==(const EnvMorphism&) const = default;
};

// Additive envelope of a linear category: biproducts are lists, tensor is the
// lexicographic (i, j) expansion, so both distributivity maps are identities
// or permutations.
class Envelope {
public:
    explicit Envelope(LinearCategory l) : lin_(std::move(l)) {}

    const LinearCategory& lin() const { return lin_; }
    const Field& field() const { return lin_.field; }

    EnvMorphism zero(const EnvObject& a, const EnvObject& b) const;
    EnvMorphism id(const EnvObject& a) const;
    EnvMorphism from_base(const LinMor& f) const;
    EnvMorphism diagonal(const std::vector<LinMor>& parts) const;
    EnvMorphism compose(const EnvMorphism& g, const EnvMorphism& f) const;
    EnvMorphism compose(std::initializer_list<EnvMorphism> chain) const;  // rightmost first
    EnvObject tensor(const EnvObject& a, const EnvObject& b) const;
    EnvMorphism tensor(const EnvMorphism& f, const EnvMorphism& g) const;
    EnvMorphism add(const EnvMorphism& f, const EnvMorphism& g) const;
    EnvMorphism scale(Scalar s, const EnvMorphism& f) const;
    static EnvObject sum(const EnvObject& a, const EnvObject& b);
    EnvMorphism direct_sum(const EnvMorphism& f, const EnvMorphism& g) const;

    EnvMorphism injection(const EnvObject& a, std::size_t i) const;
    EnvMorphism projection(const EnvObject& a, std::size_t i) const;
    // Iso a → b where b[k] = a[perm[k]].
    EnvMorphism permutation(const EnvObject& a, const std::vector<std::size_t>& perm) const;
    // (A⊕B)⊗C → A⊗C ⊕ B⊗C is literal; this is A⊗(B⊕C) → A⊗B ⊕ A⊗C reordered blockwise.
    EnvMorphism left_distributor(const EnvObject& a, const EnvObject& b, const EnvObject& c) const;

    int hom_dim(const EnvObject& a, const EnvObject& b) const;
    Vec flatten(const EnvMorphism& f) const;
    EnvMorphism unflatten(const EnvObject& a, const EnvObject& b, const Vec& v) const;
    bool is_zero_object(const EnvObject& a) const;

    std::optional<EnvMorphism> inverse(const EnvMorphism& f) const;
    // Least iso in the search order: identity, permutation of non-zero summands
    // with base isos, then exhaustive search over the hom-space up to `cap` vectors.
    std::optional<EnvMorphism> find_iso(const EnvObject& a, const EnvObject& b, long long cap = 1'000'000) const;
    bool isomorphic(const EnvObject& a, const EnvObject& b, long long cap = 1'000'000) const {
        return find_iso(a, b, cap).has_value();
    }
    // Every morphism a → b (finite fields; SearchBudgetExceeded past cap).
    std::vector<EnvMorphism> hom_elements(const EnvObject& a, const EnvObject& b, long long cap = 100'000) const;

    EnvObject apply(const LinFunctor& f, const EnvObject& a) const;
    EnvMorphism apply(const LinFunctor& f, const EnvMorphism& m) const;

    std::string describe(const EnvObject& a) const;
    std::string describe(const EnvMorphism& f) const;

private:
    std::optional<LinMor> base_iso(ObjId a, ObjId b) const;
    LinearCategory lin_;
};

DiagramReport check_biproducts(const Envelope& env, const EnvObject& a);

// A unital partial action together with its linearization, lifted to the envelope.
struct LinearAction {
    PartialAction action;
    Linearization linear;
    UnitalData unital;
    std::vector<LinFunctor> T;  // per g, linear extension of T_g
    Envelope env;

    const FinGroup& group() const { return action.group; }
    int order() const { return action.order(); }

    bool in(int g, const EnvObject& a) const;
    bool acts_on(int g, const EnvObject& a) const { return in(group().inv(g), a); }
    EnvObject T_obj(int g, const EnvObject& a) const;
    EnvMorphism T_mor(int g, const EnvMorphism& f) const;
    EnvMorphism J(int g, const EnvObject& a, const EnvObject& b) const;
    EnvMorphism gam(int g, int h, const EnvObject& a) const;
    EnvMorphism unit_at(const EnvObject& a) const;
    EnvObject one(int g) const { return {unital.unit(g)}; }
    EnvMorphism phi(int g, std::initializer_list<int> others = {}) const;
    EnvMorphism vec(MorId m) const { return env.from_base(linear.vec(m)); }
    EnvMorphism inv(const EnvMorphism& f) const;  // NotInvertible
    std::string elem(int g) const { return action.elem(g); }
};

// Lifts a validated unital action; the report covers linearity of every T_g and
// the linearization itself. NotUnital when no unital data exists.
struct LinearActionResult {
    std::optional<LinearAction> action;
    DiagramReport report;
};
LinearActionResult make_linear_action(PartialAction t, Linearization lz);

}  // namespace parcat
