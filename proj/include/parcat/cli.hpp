#pragma once

#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "parcat/specfile.hpp"

namespace parcat {

// Exit codes of the command-line tool.
enum ExitCode : int { kExitPass = 0, kExitFailed = 1, kExitMalformed = 2, kExitBudget = 3 };

struct CommandOutput {
    RenderedReport report;
    std::optional<SpecFile> output;
    int exit_code() const { return report.report.passed() ? kExitPass : kExitFailed; }
};

struct ValidateOptions {
    std::string input;
    bool strictness_warnings = false;
};
// Dispatches on the document kind.
CommandOutput cmd_validate(const ValidateOptions& o);

struct ConstructOptions {
    std::string op;  // smash|globalize|trace|polyad|equivariantize|algebra
    std::string input;
    std::optional<long long> cap;
    std::optional<std::string> object;
    bool skip_pentagon = false;
};
CommandOutput cmd_construct(const ConstructOptions& o);

struct EnumerateOptions {
    std::string what;  // central-idempotents|equivariant
    std::string input;
    std::optional<std::string> carrier;
    long long budget = 1'000'000;
};
CommandOutput cmd_enumerate(const EnumerateOptions& o);

// MalformedSpec → 2, SearchBudgetExceeded and ClosureOverflow → 3, any other
// library error → 1.
int exit_code_for(const std::exception& e);

// The whole tool: parses args (without the program name), writes the report to
// `out` and diagnostics to `err`, returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parcat
