#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parcat/ids.hpp"
#include "parcat/report.hpp"

namespace parcat {

struct Morphism {
    ObjId dom;
    ObjId cod;
    std::string label;
    bool operator==(const Morphism&) const = default;
};

// A finite category given by tables. compose(g, f) means g after f; the table is
// stored row-major as g * M + f with kNoMor where the pair is not composable.
class FinCategory {
public:
    FinCategory() = default;
    FinCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                std::vector<MorId> identities, std::vector<MorId> compose_table);

    int object_count() const { return static_cast<int>(objects_.size()); }
    int morphism_count() const { return static_cast<int>(morphisms_.size()); }

    const std::string& object_name(ObjId o) const { return objects_.at(idx(o)); }
    const Morphism& morphism(MorId m) const { return morphisms_.at(idx(m)); }
    const std::vector<std::string>& object_names() const { return objects_; }
    const std::vector<Morphism>& morphisms() const { return morphisms_; }
    const std::vector<MorId>& identities() const { return identities_; }
    const std::vector<MorId>& compose_table() const { return compose_; }

    ObjId dom(MorId m) const { return morphism(m).dom; }
    ObjId cod(MorId m) const { return morphism(m).cod; }
    MorId id(ObjId o) const { return identities_.at(idx(o)); }
    bool is_identity(MorId m) const { return id(dom(m)) == m; }

    // Checked composition g∘f.
    MorId compose(MorId g, MorId f) const;
    // Raw table entry; kNoMor when absent.
    MorId compose_raw(MorId g, MorId f) const;

    std::span<const MorId> hom(ObjId a, ObjId b) const;

    // Least-id two-sided inverse, if any.
    std::optional<MorId> inverse(MorId f) const;
    bool is_iso(MorId f) const { return inverse(f).has_value(); }
    bool isomorphic(ObjId a, ObjId b) const;
    // Least-id isomorphism a → b.
    std::optional<MorId> find_iso(ObjId a, ObjId b) const;
    std::vector<MorId> isos(ObjId a, ObjId b) const;

    std::optional<ObjId> find_object(std::string_view name) const;
    std::optional<MorId> find_morphism(std::string_view label) const;

    // Mutation hooks (mutation campaigns and loaders); indices are rebuilt.
    void set_compose(MorId g, MorId f, MorId r);

    std::string describe(MorId m) const;
    // Tables only; the derived indices follow from them.
    bool operator==(const FinCategory& o) const {
        return objects_ == o.objects_ && morphisms_ == o.morphisms_ && identities_ == o.identities_ &&
               compose_ == o.compose_;
    }

private:
    void rebuild();

    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<MorId> identities_;
    std::vector<MorId> compose_;
    std::vector<std::vector<MorId>> hom_;
    std::vector<MorId> inverse_;
};

// Composes a path given in traversal order: [f, g, h] yields h∘g∘f.
MorId compose_path(const FinCategory& c, std::span<const MorId> path);

DiagramReport validate_category(const FinCategory& c);

// All paths must share endpoints; passes when they compose to the same morphism.
DiagramReport check_commutes(const FinCategory& c, const std::vector<std::vector<MorId>>& paths);

std::optional<MorId> find_inverse(const FinCategory& c, MorId f);

// Object/morphism membership flags over an ambient category.
struct Subcategory {
    std::vector<char> objects;
    std::vector<char> morphisms;

    static Subcategory whole(const FinCategory& c);
    static Subcategory empty(const FinCategory& c);
    static Subcategory full_on(const FinCategory& c, const std::vector<ObjId>& objs);

    bool contains(ObjId o) const { return objects.at(idx(o)) != 0; }
    bool contains(MorId m) const { return morphisms.at(idx(m)) != 0; }
    std::vector<ObjId> object_list() const;
    std::vector<MorId> morphism_list() const;
    int object_total() const;
    bool operator==(const Subcategory&) const = default;
};

Subcategory intersect(const Subcategory& a, const Subcategory& b);

// Tables into a target category; kNoObj/kNoMor mark points outside a partial domain.
struct Functor {
    std::vector<ObjId> obj;
    std::vector<MorId> mor;

    bool defined(ObjId o) const { return valid(obj.at(idx(o))); }
    bool defined(MorId m) const { return valid(mor.at(idx(m))); }
    ObjId operator()(ObjId o) const;
    MorId operator()(MorId m) const;

    static Functor identity(const FinCategory& c);
    bool operator==(const Functor&) const = default;
};

Functor compose_functors(const Functor& g, const Functor& f);

// Checks F on the given domain (whole source when absent).
DiagramReport validate_functor(const FinCategory& src, const FinCategory& tgt, const Functor& f,
                               const Subcategory* domain = nullptr, const std::string& name = "functor");

struct NatTransformation {
    std::vector<MorId> components;  // per source object; kNoMor off-domain
    bool operator==(const NatTransformation&) const = default;
};

DiagramReport validate_natural_transformation(const FinCategory& src, const FinCategory& tgt,
                                              const Functor& f, const Functor& g,
                                              const NatTransformation& t,
                                              const Subcategory* domain = nullptr,
                                              const std::string& name = "natural");

// Is F restricted to `dom` fully faithful into `tgt` and essentially surjective onto `image`?
DiagramReport check_equivalence(const FinCategory& src, const Subcategory& dom, const FinCategory& tgt,
                                const Subcategory& image, const Functor& f, const std::string& name);

}  // namespace parcat
