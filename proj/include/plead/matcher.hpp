#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "plead/provenance.hpp"
#include "plead/registry.hpp"

// Compiles minimum-content items into provenance patterns and binds them
// against a graph for one subject.

namespace plead {

struct ContentPattern {
    std::string item_id;
    prov::NodeSelector selector;
    std::vector<std::string> extract;  // attribute keys to pull from each match
    bool required = true;
};

struct BoundNode {
    std::string node_id;
    // Extracted attributes in `extract` order; keys missing on the node are
    // skipped. Metadata rides along so the renderer can redact.
    std::vector<std::pair<std::string, prov::AttrValue>> values;
};

struct ContentBindings {
    std::string requirement_id;
    std::string subject_id;
    std::map<std::string, std::vector<BoundNode>> bindings;  // item id -> matches
    std::vector<std::string> missing;  // required items with no match

    bool complete() const { return missing.empty(); }
};

struct PatternError : std::runtime_error {
    PatternError(std::string code_, const std::string& detail)
        : std::runtime_error(code_ + ": " + detail), code(std::move(code_)) {}
    std::string code;  // UnmappedItem, BadSelector
};

// Mapping file: {"requirement_id": {"item_id": {"selector": {...},
// "extract": [...], "required": bool}}}. Every minimum-content item of the
// requirement must be mapped.
std::vector<ContentPattern> compile_patterns(const ExplanationRequirement& req,
                                             const std::string& mapping_json);

ContentBindings bind(const std::vector<ContentPattern>& patterns,
                     const prov::ProvGraph& g, const std::string& subject,
                     const std::string& requirement_id);

}  // namespace plead
