#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parcat/linalg.hpp"
#include "parcat/monoidal.hpp"

namespace parcat {

struct BasisElement {
    ObjId dom;
    ObjId cod;
    std::string label;
    bool operator==(const BasisElement&) const = default;
};

// A morphism of a linear category in hom-local coordinates.
struct LinMor {
    ObjId dom = kNoObj;
    ObjId cod = kNoObj;
    Vec coeffs;
    bool operator==(const LinMor&) const = default;
};

// Finite-dimensional strict monoidal linear category given by a basis per hom
// and structure constants for composition and tensor.
class LinearCategory {
public:
    Field field = Field::gf(2);
    std::vector<std::string> objects;
    std::vector<BasisElement> basis;
    std::vector<Vec> identity;   // per object, in hom(a, a) coordinates
    std::vector<ObjId> tensor_obj;
    std::optional<ObjId> unit;

    // Constants: composite of basis β after α, tensor of basis α with α'.
    void set_compose(int beta, int alpha, Vec v);
    void set_tensor(int alpha, int alpha2, Vec v);
    const Vec& compose_const(int beta, int alpha) const;
    const Vec& tensor_const(int alpha, int alpha2) const;

    // Must be called after filling objects/basis and before any arithmetic.
    void index();

    int object_count() const { return static_cast<int>(objects.size()); }
    int basis_count() const { return static_cast<int>(basis.size()); }
    const std::vector<int>& hom_basis(ObjId a, ObjId b) const;
    int hom_dim(ObjId a, ObjId b) const { return static_cast<int>(hom_basis(a, b).size()); }
    int local(int alpha) const { return local_.at(alpha); }

    ObjId tensor(ObjId a, ObjId b) const { return tensor_obj.at(static_cast<std::size_t>(idx(a)) * objects.size() + idx(b)); }
    LinMor id(ObjId a) const { return {a, a, identity.at(idx(a))}; }
    LinMor zero(ObjId a, ObjId b) const { return {a, b, zero_vec(hom_dim(a, b))}; }
    LinMor basis_mor(int alpha) const;
    LinMor compose(const LinMor& g, const LinMor& f) const;
    LinMor tensor(const LinMor& f, const LinMor& g) const;
    LinMor add(const LinMor& f, const LinMor& g) const;
    LinMor scale(Scalar s, const LinMor& f) const;
    bool is_zero_object(ObjId a) const { return parcat::is_zero(identity.at(idx(a))); }
    std::string describe(const LinMor& f) const;
    const std::map<std::pair<int, int>, Vec>& compose_constants() const { return compose_; }
    const std::map<std::pair<int, int>, Vec>& tensor_constants() const { return tensor_; }
    bool operator==(const LinearCategory& o) const {
        return field == o.field && objects == o.objects && basis == o.basis && identity == o.identity &&
               tensor_obj == o.tensor_obj && unit == o.unit && compose_ == o.compose_ && tensor_ == o.tensor_;
    }

private:
    std::vector<std::vector<int>> hom_;
    std::vector<int> local_;
    std::map<std::pair<int, int>, Vec> compose_;
    std::map<std::pair<int, int>, Vec> tensor_;
};

DiagramReport validate_linear(const LinearCategory& l);

// Functor between linear categories, determined by basis images.
struct LinFunctor {
    std::vector<ObjId> obj;            // kNoObj off-domain
    std::vector<LinMor> basis_image;   // dom == kNoObj off-domain
    bool defined(ObjId o) const { return valid(obj.at(idx(o))); }
    ObjId operator()(ObjId o) const;
    LinMor apply(const LinearCategory& l, const LinMor& f) const;
};

// Ties a tabulated category to a linear one: every morphism has a vector, and
// for enumerated categories every vector decodes back to a morphism.
struct Linearization {
    LinearCategory lin;
    std::vector<LinMor> of_mor;          // per tabulated morphism
    std::vector<MorId> mor_of_basis;     // tabulated morphism equal to each basis element
    bool enumerated = false;

    LinMor vec(MorId m) const { return of_mor.at(idx(m)); }
    std::optional<MorId> decode(const LinMor& f) const;

    void build_decoder();
    bool operator==(const Linearization& o) const {
        return lin == o.lin && of_mor == o.of_mor && mor_of_basis == o.mor_of_basis && enumerated == o.enumerated;
    }

private:
    std::map<std::pair<std::pair<int, int>, std::vector<long long>>, MorId> decoder_;
};

// Free linearization: one basis element per morphism.
Linearization linearize_free(const MonoidalStructure& m, Field f = Field::gf(2));

struct Enumerated {
    MonoidalStructure cat;
    Linearization linear;
};

// Tabulates a linear category over a finite field: every vector is a morphism,
// ordered per hom (a-major) and lexicographically by coefficients.
Enumerated enumerate_linear(const LinearCategory& l);

// vec respects composition, identities and tensor; decode inverts vec.
DiagramReport check_linearization(const MonoidalStructure& m, const Linearization& lz);

// Linear extension of a tabulated functor through basis images; checks that the
// tabulated table agrees with the extension on the domain.
LinFunctor linear_extension(const Linearization& lz, const Functor& f, const Subcategory& domain);
DiagramReport check_functor_linear(const Linearization& lz, const Functor& f, const LinFunctor& lf,
                                   const Subcategory& domain, const std::string& name);

// Full subcategory on kept objects (ideal restriction); basis renumbered.
Linearization restrict_linearization(const Linearization& lz, const std::vector<ObjId>& parent_object,
                                     const std::vector<MorId>& parent_morphism);

}  // namespace parcat
