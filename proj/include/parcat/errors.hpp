#pragma once

#include <stdexcept>
#include <string>

namespace parcat {

// Every library failure derives from Error so the CLI can map it to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PARCAT_ERROR(Name)                                   \
    class Name : public Error {                              \
    public:                                                  \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

PARCAT_ERROR(CompositionError);
PARCAT_ERROR(MalformedSpec);
PARCAT_ERROR(DiagramShapeError);
PARCAT_ERROR(ComponentShapeError);
PARCAT_ERROR(NotIsomorphism);
PARCAT_ERROR(NotEquivalence);
PARCAT_ERROR(WitnessNotFound);
PARCAT_ERROR(DomainError);
PARCAT_ERROR(RelationWitnessNotFound);
PARCAT_ERROR(NotInvertible);
PARCAT_ERROR(ClosureOverflow);
PARCAT_ERROR(RequiresGlobal);
PARCAT_ERROR(GradeDomainError);
PARCAT_ERROR(NotCovariantPair);
PARCAT_ERROR(InvalidIdempotentFamily);
PARCAT_ERROR(NotContinuous);
PARCAT_ERROR(NotUnital);

#undef PARCAT_ERROR

// Budget errors get their own exit code, so keep them apart from the macro family.
class SearchBudgetExceeded : public Error {
public:
    explicit SearchBudgetExceeded(const std::string& what)
        : Error("SearchBudgetExceeded: " + what) {}
};

}  // namespace parcat
