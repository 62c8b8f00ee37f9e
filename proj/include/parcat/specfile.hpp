#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "parcat/corpus.hpp"
#include "parcat/equivar.hpp"
#include "parcat/globalize.hpp"
#include "parcat/polyad.hpp"
#include "parcat/smash.hpp"

namespace parcat {

// One versioned text format for every structure kind. Documents are JSON
// objects with a `meta` section; tables refer to objects and morphisms by name.
// Derived kinds carry the action they were built from under `source`.

enum class SpecKind { category, action, globalization, smash, equivariant };
std::string kind_name(SpecKind k);

struct CategoryDoc {
    MonoidalStructure cat;
    std::optional<Linearization> linear;
    bool operator==(const CategoryDoc&) const = default;
};

struct ActionDoc {
    PartialAction action;
    std::optional<Linearization> linear;
    std::optional<Polyad> polyad;  // present in the output of `construct polyad`
    bool operator==(const ActionDoc&) const = default;
};

struct GlobalizationDoc {
    ActionDoc source;
    GlobalizedAction glob;  // report is not stored
};
bool operator==(const GlobalizationDoc& a, const GlobalizationDoc& b);

struct SmashDoc {
    ActionDoc source;
    SmashCategory smash;  // source and options are rebuilt on load
};
bool operator==(const SmashDoc& a, const SmashDoc& b);

struct EquivariantDoc {
    ActionDoc source;
    std::vector<EquivariantObject> objects;         // tabulated carriers
    std::vector<EnvEquivariantObject> env_objects;  // envelope carriers (trace, algebra)
    std::optional<EnvMorphism> mu, eta;             // algebra structure, when present
    bool operator==(const EquivariantDoc&) const = default;
};

struct SpecFile {
    std::variant<CategoryDoc, ActionDoc, GlobalizationDoc, SmashDoc, EquivariantDoc> body;
    SpecKind kind() const { return static_cast<SpecKind>(body.index()); }
    bool operator==(const SpecFile&) const = default;
};

// Canonical text: two-space indented JSON, fixed key order, trailing newline.
std::string save_spec(const SpecFile& s);
// MalformedSpec with line/column for syntax errors and a JSON path for
// dangling names or bad table shapes.
SpecFile load_spec(std::string_view text);
// A path or a corpus: URI.
SpecFile load_spec_source(const std::string& where);
std::string read_spec_text(const std::string& where);

// Documents for corpus instances and constructions.
ActionDoc action_doc(const Instance& i);
SpecFile corpus_spec(const std::string& name);

// The linear action behind an action document; thin categories without a
// linear section get the free linearization over GF(2).
LinearAction linear_action_of(const ActionDoc& d);

// Hex SHA-256 of the text.
std::string spec_hash(std::string_view text);

// Report rendering shared by the command-line tool and the tests.
inline constexpr const char* kToolVersion = "parcat 1.0.0";

struct RenderedReport {
    std::string command;
    std::string input;
    std::string spec_hash;
    std::vector<std::pair<std::string, std::string>> facts;  // kept in insertion order
    DiagramReport report;
};
std::string render_json(const RenderedReport& r);
std::string render_text(const RenderedReport& r);

}  // namespace parcat
