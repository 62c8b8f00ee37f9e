#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parcat/paction.hpp"

namespace parcat {

// Deterministic corruption of one table entry of a partial action, for
// mutation testing. Field paths:
//   gamma, u, J, T.mor   replace one component by another morphism;
//                        suffix ":shape" picks one with different endpoints,
//                        ":value" one with the same endpoints
//   T.obj                send one object of some C_{g⁻¹} elsewhere (shape-breaking)
//   unit                 drop the generator 𝟙_g of a proper C_g from C_g (shape-breaking)
// The seed picks the entry and the replacement.
struct Mutant {
    PartialAction action;
    std::string field;
    std::string site;  // which entry, e.g. "g=g h=g X={3}"
    std::string change;
    bool shape_breaking = false;
};

// nullopt when the field has no eligible entry (e.g. ":value" where every hom
// is a singleton).
std::optional<Mutant> corrupt(const PartialAction& t, const std::string& field, unsigned seed);

std::vector<std::string> mutation_fields();

}  // namespace parcat
