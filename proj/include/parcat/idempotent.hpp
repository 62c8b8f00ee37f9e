#pragma once

#include <optional>
#include <vector>

#include "parcat/monoidal.hpp"

namespace parcat {

// (e, Φ: e⊗e → e, σ_A: e⊗A → A⊗e for every ambient object A)
struct CentralIdempotent {
    ObjId e = kNoObj;
    MorId fusion = kNoMor;
    std::vector<MorId> exchange;
    bool operator==(const CentralIdempotent&) const = default;
};

DiagramReport check_central_idempotent(const MonoidalStructure& m, const CentralIdempotent& ci);
// Throws NotIsomorphism when Φ or a σ component is not invertible.
DiagramReport validate_central_idempotent(const MonoidalStructure& m, const CentralIdempotent& ci);

// iso closure of the image subcategory e⊗C
Ideal generated_ideal(const MonoidalStructure& m, const CentralIdempotent& ci);

struct UnitorPair {
    std::vector<MorId> left;   // L_X: e⊗X → X on ideal objects, kNoMor elsewhere
    std::vector<MorId> right;  // R_X: X⊗e → X
    DiagramReport report;
};

// Builds L, R from least-id witnesses X ≅ e⊗X'; checks witness independence,
// naturality and the triangle. WitnessNotFound when some object has no witness.
UnitorPair induced_unitors(const MonoidalStructure& m, const CentralIdempotent& ci);

struct IdempotentCandidate {
    CentralIdempotent canonical;
    long long witness_count = 0;
    bool count_capped = false;
};

// Every object carrying some central idempotent structure, with the least
// witness in (Φ, σ_0, σ_1, ...) order and how many witnesses exist (up to cap).
std::vector<IdempotentCandidate> enumerate_central_idempotents(const MonoidalStructure& m,
                                                               long long count_cap = 256);

// Least witness on a fixed object, if any.
std::optional<CentralIdempotent> find_central_idempotent(const MonoidalStructure& m, ObjId e);

}  // namespace parcat
