#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "parcat/envelope.hpp"
#include "parcat/paction.hpp"

namespace parcat {

// A generated partial action, its linearization, and (for restrictions) the
// global action it came from.
struct Instance {
    std::string name;
    PartialAction action;
    Linearization linear;
    std::optional<PartialAction> global;
    std::optional<Linearization> global_linear;
    std::vector<ObjId> parent_object;
    std::vector<MorId> parent_morphism;
    DiagramReport report;  // validation of everything generated
};

// Thin monoidal category of open sets (bitmasks over n points) under ∩, acted on
// by the permutation `perm` (0-based images), restricted to the opens inside
// `restrict_to`. NotContinuous when perm does not preserve the topology.
Instance gen_topology_instance(int points, const std::vector<unsigned>& opens, const std::vector<int>& perm,
                               unsigned restrict_to);

// Coordinate category: supports S ⊆ {1..n}, Hom(S, T) = k^{S∩T}, S⊗T = S∩T.
// The permutation moves coordinates; the action is restricted to supports inside
// `support`. With `twisted`, J, γ, u are transported along scalar automorphisms
// of each T_g so they carry non-identity coefficients.
Instance gen_fusion_instance(int n, const std::vector<int>& perm, unsigned support, Field field, bool twisted = false);

// Partial action on the skeleton of modules over k^n generated by idempotents
// 1_g (coordinate subsets, indexed by group element in generation order).
// InvalidIdempotentFamily when the subsets do not form a partial action.
Instance gen_ring_instance(int n, const std::vector<std::vector<int>>& generators,
                           const std::vector<unsigned>& idempotents, Field field);

// One object, one morphism, trivial group.
Instance gen_trivial_instance();

// Scalar automorphisms ψ_g of each T_g (components [g][X] on C_{g⁻¹}); returns the
// action with J, γ, u transported along them.
PartialAction transport_action(const PartialAction& t, const std::vector<std::vector<MorId>>& psi);

// Names accepted by corpus: URIs.
std::vector<std::string> corpus_names();
Instance corpus_instance(const std::string& name);
// Instances of the parameter sweep (at least ten).
std::vector<std::string> sweep_names();

std::string support_name(unsigned mask);   // 0, M1, M12, ...
std::string open_set_name(unsigned mask);  // {}, {1}, {1,3}, ...

}  // namespace parcat
