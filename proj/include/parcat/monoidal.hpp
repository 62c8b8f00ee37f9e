#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parcat/fincat.hpp"

namespace parcat {

// Strict tensor tables over a finite category; associator and unitors are identities.
struct MonoidalStructure {
    FinCategory cat;
    std::vector<ObjId> tensor_obj;  // a * N + b
    std::vector<MorId> tensor_mor;  // f * M + g
    std::optional<ObjId> unit;

    ObjId tensor(ObjId a, ObjId b) const;
    MorId tensor(MorId f, MorId g) const;
    int n() const { return cat.object_count(); }
    int m() const { return cat.morphism_count(); }
    bool operator==(const MonoidalStructure&) const = default;
};

DiagramReport validate_semigroupal(const MonoidalStructure& m);

// Searches for an object u with u⊗X = X = X⊗u and id_u⊗f = f = f⊗id_u on `scope`.
std::optional<ObjId> find_strict_unit(const MonoidalStructure& m, const Subcategory& scope);

// (F, J) between strict semigroupal categories; J_{X,Y}: FX⊗FY → F(X⊗Y) stored at X * N + Y.
struct SemigroupalFunctor {
    Functor functor;
    std::vector<MorId> J;
    std::optional<MorId> J0;  // 1' → F(1), monoidal case only

    MorId component(ObjId x, ObjId y, int n) const;
    bool operator==(const SemigroupalFunctor&) const = default;
};

// Report form: J failures that are non-isomorphisms are recorded under "J-iso".
DiagramReport check_semigroupal_functor(const MonoidalStructure& src, const MonoidalStructure& tgt,
                                        const SemigroupalFunctor& f, const Subcategory* domain = nullptr,
                                        const std::string& name = "F");
// Throwing form: NotIsomorphism when some J component has no inverse.
DiagramReport validate_semigroupal_functor(const MonoidalStructure& src, const MonoidalStructure& tgt,
                                           const SemigroupalFunctor& f, const Subcategory* domain = nullptr);

// Monoidal natural transformation check between two semigroupal functors.
DiagramReport validate_functor_morphism(const MonoidalStructure& src, const MonoidalStructure& tgt,
                                        const NatTransformation& eta, const SemigroupalFunctor& f,
                                        const SemigroupalFunctor& g, const Subcategory* domain = nullptr);

enum class Side { left, right, both };

struct Ideal {
    Subcategory sub;
    Side side = Side::both;
    bool operator==(const Ideal&) const = default;
};

// Least subcategory containing s, closed under conjugation by ambient isomorphisms.
Subcategory iso_closure(const FinCategory& c, const Subcategory& s);
bool is_ideal(const MonoidalStructure& m, const Subcategory& s, Side side = Side::both);
Ideal intersect_ideals(const Ideal& a, const Ideal& b);
// Image subcategory F(I) closed under isomorphisms. NotEquivalence when F is not
// an equivalence from I's ambient domain onto its iso-closed image.
Ideal image_ideal(const MonoidalStructure& src, const MonoidalStructure& tgt, const Functor& f, const Ideal& i);

// Image of a subcategory under a (partial) functor, before closure.
Subcategory image_subcategory(const FinCategory& src, const FinCategory& tgt, const Functor& f,
                              const Subcategory& s);

}  // namespace parcat
