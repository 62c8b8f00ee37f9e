#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parcat/group.hpp"
#include "parcat/idempotent.hpp"
#include "parcat/monoidal.hpp"

namespace parcat {

// Partial action of a finite group on a strict semigroupal category:
// ideals C_g, functors T_g: C_{g⁻¹} → C_g with J^g, isos γ_{g,h}: T_gT_h ⇒ T_{gh}
// on C_{h⁻¹}∩C_{(gh)⁻¹}, and u: Id ⇒ T_e.
struct PartialAction {
    FinGroup group;
    MonoidalStructure ambient;
    std::vector<Ideal> domains;
    std::vector<SemigroupalFunctor> actors;
    std::vector<std::vector<MorId>> gamma;  // [g * |G| + h][X]
    std::vector<MorId> u;

    int order() const { return group.order(); }
    const FinCategory& cat() const { return ambient.cat; }
    int n() const { return ambient.n(); }

    bool in(int g, ObjId x) const { return domains.at(g).sub.contains(x); }
    bool in(int g, MorId f) const { return domains.at(g).sub.contains(f); }
    // X ∈ C_{g⁻¹}: where T_g is defined
    bool acts_on(int g, ObjId x) const { return in(group.inv(g), x); }

    ObjId T(int g, ObjId x) const;
    MorId T(int g, MorId f) const;
    MorId J(int g, ObjId x, ObjId y) const;
    MorId gam(int g, int h, ObjId x) const;
    MorId unit_at(ObjId x) const;

    MorId comp(MorId g, MorId f) const { return cat().compose(g, f); }
    MorId comp(std::initializer_list<MorId> chain) const;  // rightmost applied first
    ObjId tensor(ObjId a, ObjId b) const { return ambient.tensor(a, b); }
    MorId tensor(MorId f, MorId g) const { return ambient.tensor(f, g); }
    MorId id(ObjId x) const { return cat().id(x); }
    MorId inv(MorId f) const;  // NotInvertible when f has no inverse

    // γ is required on C_{h⁻¹}∩C_{(gh)⁻¹}
    bool gamma_domain(int g, int h, ObjId x) const;
    std::string elem(int g) const { return group.names.at(g); }
    std::string name(ObjId x) const { return cat().object_name(x); }
    bool operator==(const PartialAction&) const = default;
};

// check_ambient = false skips the monoidal laws of the ambient category (callers
// that know them by construction).
DiagramReport validate_partial_action(const PartialAction& t, bool check_ambient = true);

struct Restriction {
    PartialAction action;
    std::vector<ObjId> parent_object;  // new index → global index
    std::vector<MorId> parent_morphism;
    DiagramReport report;
};

// Restriction of a global action to an ideal I (given as a subcategory of the
// global ambient). C_g = I ∩ closure(T_g(I ∩ C_{g⁻¹})).
Restriction restrict_global(const PartialAction& global, const Subcategory& ideal);

// Central idempotents 𝟙_g generating each C_g and the isos
// φ(g; g₁..g_n): 𝟙_g⊗𝟙_{g₁}⊗… → T_g(𝟙_{g⁻¹}⊗𝟙_{g⁻¹g₁}⊗…), keyed by the set {g, g₁, …}.
struct UnitalData {
    std::vector<CentralIdempotent> units;
    std::vector<int> unit_candidates;                 // per g: how many objects generate C_g
    std::map<std::pair<int, unsigned>, MorId> phi;    // (g, mask ∋ g)
    std::map<std::pair<int, unsigned>, int> phi_multiplicity;

    ObjId unit(int g) const { return units.at(g).e; }
    // E_S = ⊗_{s∈S} 𝟙_s; S must be nonempty
    ObjId product(const PartialAction& t, unsigned mask) const;
    MorId phi_of(int g, std::initializer_list<int> others = {}) const;
    MorId phi_mask(int g, unsigned mask) const;
    // mask of the source list 𝟙_{g⁻¹} ⊗ 𝟙_{g⁻¹s} for s in mask
    static unsigned source_mask(const FinGroup& grp, int g, unsigned mask);
};

struct UnitalResult {
    std::optional<UnitalData> data;
    DiagramReport report;
};

// Finds 𝟙_g and φ; reports strictness preconditions (X⊗𝟙_g = X on C_g, commutative
// object tensor). Absent when some C_g is not generated by a central idempotent.
UnitalResult extract_unital_data(const PartialAction& t);

// Morphism (F, τ) of partial actions; τ_g: F∘T_g ⇒ T'_g∘F on C_{g⁻¹}, stored [g][X].
struct PActionMorphism {
    SemigroupalFunctor functor;
    std::vector<std::vector<MorId>> tau;
    bool operator==(const PActionMorphism&) const = default;
};

DiagramReport validate_paction_morphism(const PartialAction& src, const PartialAction& tgt,
                                        const PActionMorphism& m);

// π(g)(X) = T_g(X⊗𝟙_{g⁻¹}) as an endofunctor of the ambient.
Functor pi_endofunctor(const PartialAction& t, const UnitalData& u, int g);

// Least-id natural isomorphism F ⇒ G by backtracking (nullopt if none).
std::optional<NatTransformation> find_natural_iso(const FinCategory& c, const Functor& f, const Functor& g,
                                                  long long budget = 1'000'000);

struct PiReport {
    std::vector<Functor> pi;
    DiagramReport report;
};

// Builds every π(g) and searches witnesses for the relations
// π(e) ≅ Id, π(g)π(h)π(h⁻¹) ≅ π(gh)π(h⁻¹), π(g⁻¹)π(g)π(h) ≅ π(g⁻¹)π(gh).
PiReport check_pi_relations(const PartialAction& t, const UnitalData& u);

}  // namespace parcat
