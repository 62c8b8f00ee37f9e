#pragma once

#include <string>
#include <vector>

#include "parcat/envelope.hpp"
#include "parcat/paction.hpp"

namespace parcat {

// ⊕_g X_g δ_g with X_g an envelope object of C_g (grades indexed by group element).
struct SmashObject {
    std::vector<EnvObject> grades;
    bool operator==(const SmashObject&) const = default;
};

// Grade-preserving: one envelope morphism X_g → X'_g per grade.
struct SmashMorphism {
    std::vector<EnvMorphism> grades;
    bool operator==(const SmashMorphism&) const = default;
};

struct SmashGenerator {
    int grade = 0;
    ObjId object = kNoObj;  // in C_grade
};

struct SmashOptions {
    bool skip_pentagon = false;
    int multiplicity_cap = 2;  // summands per grade in the graded spot checks
    int spot_checks = 12;
    unsigned seed = 20240611;
};

// C ⋊ G on single-grade, single-summand generators Xδ_g (X a base object of C_g).
// `base` tabulates them: morphisms (f, g) for f in C_g, composition inside a grade,
// and ⊠ on objects and morphisms. The tensor is not strict; the associator and
// unitors are explicit tables of base morphisms. Graded sums live in the envelope
// and take their structure maps blockwise from these tables.
struct SmashCategory {
    LinearAction source;
    MonoidalStructure base{};
    std::vector<SmashGenerator> generators{};  // base object → (grade, C object)
    std::vector<MorId> lifted{};             // base morphism → C morphism
    std::vector<int> morphism_grade{};
    std::vector<MorId> associator{};         // [(a·N + b)·N + c]: (a⊠b)⊠c → a⊠(b⊠c)
    std::vector<MorId> left_unitor{};        // 𝟙⊠a → a
    std::vector<MorId> right_unitor{};       // a⊠𝟙 → a
    ObjId unit = kNoObj;                     // 𝟙_e δ_e
    SmashOptions options{};

    int order() const { return source.order(); }
    int n() const { return base.n(); }
    ObjId generator(int grade, ObjId x) const;  // GradeDomainError off C_grade
    MorId morphism(int grade, MorId f) const;
    MorId assoc(ObjId a, ObjId b, ObjId c) const;
    std::string name(ObjId a) const { return base.cat.object_name(a); }
};

// GradeDomainError never arises from the generator set itself; NotUnital when the
// action has no unit data.
SmashCategory build_smash(const LinearAction& la, SmashOptions opts = {});

// Pentagon over all generator quadruples and triangle over all pairs (enough by
// additivity), naturality of A, L, R, invertibility, then the same pentagon on
// seeded random graded sums assembled in the envelope. With skip_pentagon the
// quadruple sweep is skipped and the report says so.
DiagramReport validate_smash_coherence(const SmashCategory& s);

// Graded sums in the envelope.
SmashObject smash_object(const SmashCategory& s, const std::vector<SmashGenerator>& summands);
SmashObject smash_tensor(const SmashCategory& s, const SmashObject& a, const SmashObject& b);
SmashMorphism smash_tensor(const SmashCategory& s, const SmashMorphism& f, const SmashMorphism& g);
SmashMorphism smash_compose(const SmashCategory& s, const SmashMorphism& g, const SmashMorphism& f);
SmashMorphism smash_id(const SmashCategory& s, const SmashObject& a);
SmashMorphism smash_associator(const SmashCategory& s, const SmashObject& a, const SmashObject& b,
                               const SmashObject& c);
// GradeDomainError when a summand of grade g is outside C_g.
void check_grades(const SmashCategory& s, const SmashObject& a);

// π₀(g) = 𝟙_g δ_g and φ₀(X) = X δ_e, with (PR1)-(PR4), the two compatibility
// isomorphisms and monoidality of φ₀, each with the iso that witnesses it.
struct CanonicalFunctors {
    std::vector<ObjId> pi0;  // per group element, a base object
    SemigroupalFunctor phi0;  // C → base
    std::vector<std::string> witnesses;
    DiagramReport report;
};
CanonicalFunctors canonical_functors(const SmashCategory& s);

// A target for covariant pairs: tensor tables plus an associator for non-strict
// targets (empty: strict).
struct MonoidalTarget {
    MonoidalStructure cat;
    std::vector<MorId> associator;  // [(a·N + b)·N + c]
};
MonoidalTarget smash_target(const SmashCategory& s);

// Checks (CV1)-(CV3) for (φ, π) and throws NotCovariantPair naming the first
// failing axiom; otherwise builds Ψ(Xδ_g) = φ(X) ⊗ π(g) on generators and
// checks Ψφ₀ ≅ φ, Ψπ₀ ≅ π, Ψ(a⊠b) ≅ Ψa⊗Ψb and Ψ(𝟙) ≅ 𝟙.
struct CovariantResult {
    Functor psi;  // base → target
    DiagramReport report;
};
CovariantResult covariant_psi(const SmashCategory& s, const MonoidalTarget& d, const SemigroupalFunctor& phi,
                              const std::vector<ObjId>& pi);

// End(C) skeleton: the endofunctors generated under composition by X⊗− and
// π(g) = T_g(−⊗𝟙_{g⁻¹}), all natural transformations between them, ⊗ = composite.
// Comes with φ(X) = X⊗− and π. SearchBudgetExceeded when transformations
// cannot be enumerated within the budget.
struct EndTarget {
    MonoidalTarget target;
    std::vector<Functor> functors;  // per target object
    SemigroupalFunctor phi;
    std::vector<ObjId> pi;
};
EndTarget end_target(const SmashCategory& s, long long budget = 1'000'000);

// X δ_g ⊙ Y = X⊗T_g(Y⊗𝟙_{g⁻¹}); checks a ⊙ (b ⊙ Z) ≅ (a⊠b) ⊙ Z and 𝟙 ⊙ Z ≅ Z.
ObjId odot(const SmashCategory& s, ObjId a, ObjId z);
DiagramReport check_odot_action(const SmashCategory& s);

}  // namespace parcat
