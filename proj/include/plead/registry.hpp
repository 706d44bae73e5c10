#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "plead/taxonomy.hpp"

// The corpus of classified explanation requirements: load, validate, lint,
// cross-tabulate.

namespace plead {

struct ExplanationRequirement {
    std::string id;
    std::string label;
    std::string parent;  // empty = none
    Classification classification;
    std::string example_text;  // empty = none

    auto operator<=>(const ExplanationRequirement&) const = default;
};

class Registry {
public:
    Registry() = default;

    // Preserves document order.
    const std::vector<ExplanationRequirement>& requirements() const { return reqs_; }
    const std::vector<RecipientClass>& recipient_extensions() const { return extensions_; }

    const ExplanationRequirement* find(const std::string& id) const;
    std::size_t size() const { return reqs_.size(); }

    friend Registry load_registry(const std::string& document);
    friend bool operator==(const Registry& a, const Registry& b) = default;

private:
    std::vector<ExplanationRequirement> reqs_;
    std::vector<RecipientClass> extensions_;
};

// Thrown by load_registry; `code` is one of ParseError, UnknownGoal,
// UnknownRecipient, DuplicateId, DanglingParent, CyclicParent,
// InvalidClassification.
struct LoadError : std::runtime_error {
    LoadError(std::string code_, const std::string& detail)
        : std::runtime_error(code_ + ": " + detail), code(std::move(code_)) {}
    std::string code;
};

// All-or-nothing load of the JSON registry document.
Registry load_registry(const std::string& document);

std::string serialize_registry(const Registry& r);

struct StreamlineGroup {
    std::vector<std::string> requirement_ids;  // >= 2, registry order
};

struct LintWarning {
    std::string code;  // "ParentRankMismatch", "DimensionOverload"
    std::string message;
};

struct LintReport {
    std::vector<StreamlineGroup> streamline_groups;
    std::vector<LintWarning> warnings;

    bool empty() const { return streamline_groups.empty() && warnings.empty(); }
};

LintReport lint_registry(const Registry& r);

struct ClassificationMatrix {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // registry order

    std::string cell(const std::string& requirement_label, const std::string& column) const;
    std::string to_csv() const;
};

ClassificationMatrix matrix(const Registry& r);

}  // namespace plead
