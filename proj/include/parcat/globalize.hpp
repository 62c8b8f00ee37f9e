#pragma once

#include <vector>

#include "parcat/paction.hpp"

namespace parcat {

// A functor from the discrete category on G into C: one object per element.
struct GFunctor {
    std::vector<ObjId> values;
    auto operator<=>(const GFunctor&) const = default;
};

// Componentwise family F ⇒ F'; the components fix both endpoints.
struct GTransformation {
    std::vector<MorId> components;
    auto operator<=>(const GTransformation&) const = default;
};

// Φ(X)(k) = T_k(𝟙_{k⁻¹} ⊗ X), Φ(f)_k = T_k(𝟙_{k⁻¹} ⊗ f).
GFunctor phi_embed(const PartialAction& t, const UnitalData& u, ObjId x);
GTransformation phi_embed(const PartialAction& t, const UnitalData& u, MorId f);

// 𝒯_g(F)(h) = F(hg); same reindexing on components.
GFunctor shift_functor(const FinGroup& grp, int g, const GFunctor& f);
GTransformation shift_functor(const FinGroup& grp, int g, const GTransformation& a);

// Pointwise tensor.
GFunctor bullet_tensor(const MonoidalStructure& m, const GFunctor& a, const GFunctor& b);
GTransformation bullet_tensor(const MonoidalStructure& m, const GTransformation& a, const GTransformation& b);

// The generated category Ĉ, its global shift action, and the morphism (Φ, τ)
// from the partial action into it.
struct GlobalizedAction {
    std::vector<GFunctor> objects;           // Ĉ object index → value table
    std::vector<GTransformation> morphisms;  // Ĉ morphism index → components
    PartialAction action;                    // global, on Ĉ
    PActionMorphism morphism;                // (Φ, τ)
    DiagramReport report;                    // assembly problems (missing tables, ...)

    const MonoidalStructure& category() const { return action.ambient; }
    std::optional<ObjId> find(const GFunctor& f) const;
    std::optional<MorId> find(const GTransformation& a) const;
};

struct GlobalizeOptions {
    long long object_cap = 0;        // 0: 10·|C|·|G|
    long long morphism_cap = 20000;  // composition and tensor tables are quadratic in this
};

// Objects: •-closure of every 𝒯_g(Φ(X)). Morphisms: closure under composition
// and • of the shifted Φ(f), the shifted structure maps of Φ and the shifted τ
// components with their inverses. ClosureOverflow past the caps.
GlobalizedAction build_globalization(const PartialAction& t, const UnitalData& u, GlobalizeOptions opts = {});
// Extracts the unital data first; NotUnital when there is none.
GlobalizedAction build_globalization(const PartialAction& t, GlobalizeOptions opts = {});

// Builds the tables for given object and morphism sets. Shifts, products and
// composites that fall outside the sets are left undefined and noted in the report.
GlobalizedAction assemble_globalization(const PartialAction& t, const UnitalData& u, std::vector<GFunctor> objects,
                                        std::vector<GTransformation> morphisms);

// The three globalization conditions, the extra claim inside condition (2), the
// morphism (Φ, τ), injectivity and faithfulness of Φ, the description of the
// domains as Φ(C) ∩ 𝒯_g(Φ(C)), and the product isomorphisms
// 𝒯_g(Φ(X)) • 𝒯_h(Φ(Y)) ≅ 𝒯_g(Φ(X ⊗ T_{g⁻¹h}(𝟙_{h⁻¹g} ⊗ Y))).
DiagramReport validate_globalization(const PartialAction& t, const UnitalData& u, const GlobalizedAction& glob);

}  // namespace parcat
