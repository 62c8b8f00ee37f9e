#pragma once

#include <optional>
#include <vector>

#include "parcat/paction.hpp"

namespace parcat {

// Monad P_g = T_g T_{g⁻¹} on C_g. Tables are indexed by ambient object and are
// kNoObj/kNoMor outside the domain.
struct Monad {
    int element = 0;
    Subcategory domain;
    Functor carrier;
    std::vector<MorId> mu;   // P P X → P X
    std::vector<MorId> eta;  // X → P X
    bool operator==(const Monad&) const = default;
};

Monad build_monad(const PartialAction& t, int g);

// Naturality, associativity and both unit laws over the monad's domain.
DiagramReport validate_monad(const FinCategory& c, const Monad& m);

// Comonoidal structure ξ of P_g and the fusion operators, with their inverses.
// Pair tables are [X * n + Y]; hr is indexed by (Y, X) in that order.
struct FusionOperators {
    int element = 0;
    std::vector<MorId> xi;       // P(X⊗Y) → PX ⊗ PY
    MorId counit = kNoMor;       // P(𝟙_g) → 𝟙_g
    std::vector<MorId> hl, hl_inverse;
    std::vector<MorId> hr, hr_inverse;
    bool operator==(const FusionOperators&) const = default;
};

struct FusionResult {
    FusionOperators ops;
    DiagramReport report;  // failures name (g, X, Y) when an operator has no inverse
};

FusionResult fusion_operators(const PartialAction& t, const UnitalData& u, const Monad& m);

// Polyad over the discrete category on G: one monad per element. The
// composable pairs of that source are (id_g, id_g) only, so the two polyad
// axioms are associativity of μ_g and the agreement of both unit composites.
struct Polyad {
    FinGroup source;
    std::vector<Ideal> categories;
    std::vector<Monad> monads;
    std::vector<FusionOperators> fusion;  // empty when the action is not unital
    bool operator==(const Polyad&) const = default;
};

struct PolyadResult {
    Polyad polyad;
    DiagramReport report;
};

PolyadResult build_polyad(const PartialAction& t);

}  // namespace parcat
