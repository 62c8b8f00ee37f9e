#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "parcat/envelope.hpp"
#include "parcat/paction.hpp"

namespace parcat {

// (X, σ^X) with (σ^X_g)_Y: T_g(X⊗Y) → X⊗T_g(Y) for base objects Y ∈ C_{g⁻¹},
// stored [g][Y]. Carriers and components live either in the tabulated
// category (ObjId/MorId) or in the additive envelope.
template <class Obj, class Mor>
struct BasicEquivariant {
    Obj carrier{};
    std::vector<std::vector<std::optional<Mor>>> sigma;
    bool operator==(const BasicEquivariant&) const = default;
};
using EquivariantObject = BasicEquivariant<ObjId, MorId>;
using EnvEquivariantObject = BasicEquivariant<EnvObject, EnvMorphism>;

// σ̃_{g,M}: T_g(X⊗E_M) → X⊗E_{gM} for every M ∋ e, g⁻¹ (bitmask over G).
// Lists g₁..g_n collapse to sets because the units are idempotent on the nose,
// and 𝟙_e is the unit, so e can always be put in.
template <class Mor>
struct BasicSigmaTilde {
    std::map<std::pair<int, unsigned>, Mor> table;
    bool operator==(const BasicSigmaTilde&) const = default;
};
using SigmaTilde = BasicSigmaTilde<MorId>;
using EnvSigmaTilde = BasicSigmaTilde<EnvMorphism>;

// (X, θ) for a global action, θ_g: T_g(X) → X.
struct GlobalEquivariantObject {
    ObjId carrier = kNoObj;
    std::vector<MorId> theta;
    bool operator==(const GlobalEquivariantObject&) const = default;
};

// Shapes, invertibility, naturality in Y, the pentagon over
// C_{h⁻¹}∩C_{(gh)⁻¹} and the triangle with u.
DiagramReport validate_equivariant_object(const PartialAction& t, const EquivariantObject& x);
DiagramReport validate_equivariant_object(const LinearAction& la, const EnvEquivariantObject& x);

// f: X → Y is a morphism of C^G̲ when (f⊗T_g) ∘ σ^X_g = σ^Y_g ∘ T_g(f⊗−).
DiagramReport validate_equivariant_morphism(const PartialAction& t, const EquivariantObject& x,
                                            const EquivariantObject& y, MorId f);
DiagramReport validate_equivariant_morphism(const LinearAction& la, const EnvEquivariantObject& x,
                                            const EnvEquivariantObject& y, const EnvMorphism& f);

// σ^{X⊗Y}_g = (X⊗σ^Y_g) ∘ σ^X_g at Y⊗−.
EquivariantObject tensor_equivariant(const PartialAction& t, const EquivariantObject& a, const EquivariantObject& b);
EnvEquivariantObject tensor_equivariant(const LinearAction& la, const EnvEquivariantObject& a,
                                        const EnvEquivariantObject& b);

// (𝟙, σ^𝟙) with σ^𝟙_g = (φ(g)⁻¹ ⊗ T_g) ∘ (J^g_{𝟙_{g⁻¹}, −})⁻¹.
EquivariantObject unit_equivariant(const PartialAction& t, const UnitalData& u);
EnvEquivariantObject unit_equivariant(const LinearAction& la);

DiagramReport validate_global_equivariant(const PartialAction& t, const GlobalEquivariantObject& x);

// θ_g = (X⊗φ(g)⁻¹) ∘ (σ_g)_𝟙 and back σ_g = (θ_g ⊗ T_g) ∘ (J^g_{X,−})⁻¹.
// RequiresGlobal unless every domain is the whole category.
GlobalEquivariantObject to_global(const PartialAction& t, const EquivariantObject& x);
EquivariantObject from_global(const PartialAction& t, const GlobalEquivariantObject& x);

// σ̃_{g,M} = (X⊗φ⁻¹) ∘ (σ_g)_{E_M} and σ_g = (σ̃_{g,{g⁻¹}} ⊗ T_g) ∘ (J^g_{X⊗𝟙_{g⁻¹}, −})⁻¹.
SigmaTilde to_tilde(const PartialAction& t, const UnitalData& u, const EquivariantObject& x);
EquivariantObject from_tilde(const PartialAction& t, const UnitalData& u, ObjId carrier, const SigmaTilde& s);
EnvEquivariantObject from_tilde(const LinearAction& la, const EnvObject& carrier, const EnvSigmaTilde& s);

// The square relating σ̃_{gh}, σ̃_g, σ̃_h and γ, σ̃_{e,{e}} = u⁻¹, and the same
// square on every larger index set ("tilde-square-all").
DiagramReport validate_sigma_tilde(const PartialAction& t, const UnitalData& u, ObjId carrier, const SigmaTilde& s);
DiagramReport validate_sigma_tilde(const LinearAction& la, const EnvObject& carrier, const EnvSigmaTilde& s);

// Every valid σ family on X, by backtracking over isos with each diagram
// checked as soon as its components are fixed. SearchBudgetExceeded past
// `budget` search nodes.
std::vector<EquivariantObject> enumerate_equivariant(const PartialAction& t, ObjId x, long long budget = 1'000'000);

// Tr(X) = ⊕_g T_g(X⊗𝟙_{g⁻¹}) with σ̃ assembled blockwise (summand h goes to gh).
struct TraceObject {
    EnvEquivariantObject object;
    EnvSigmaTilde tilde;
    DiagramReport report;  // σ̃ square and the converted σ
};
EnvObject trace_object(const LinearAction& la, const EnvObject& x);
EnvMorphism trace_morphism(const LinearAction& la, const EnvMorphism& f);
TraceObject partial_trace(const LinearAction& la, const EnvObject& x);

// Functoriality on basis morphisms, each Tr(f) a morphism of C^G̲, X a split
// summand of Tr(X), and Tr(𝟙) ≇ 𝟙 when some domain is proper.
DiagramReport check_trace_functor(const LinearAction& la);
// Tr(X)⊗Tr(Y) ≅ Tr(X⊗Y) on base objects. Kept apart: it fails as soon as some
// summand count grows, e.g. at X = Y = 𝟙 on a proper action.
DiagramReport check_trace_semigroupal(const LinearAction& la);

// A = ⊕_{S ∋ e} E_S, blocks in binary counting order of S.
struct AlgebraObject {
    std::vector<unsigned> blocks;
    EnvObject object;
    EnvMorphism mu;   // A⊗A → A
    EnvMorphism eta;  // 𝟙 → A
    EnvSigmaTilde tilde;
    DiagramReport report;
};
AlgebraObject algebra_object(const LinearAction& la);

}  // namespace parcat
