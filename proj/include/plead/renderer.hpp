#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "plead/matcher.hpp"
#include "plead/registry.hpp"

// Template-based explanation rendering with recipient/goal selection,
// confidentiality enforcement and sensitivity redaction.
//
// Slot syntax inside a template body:
//   {item_id}        first extracted value of the item's first bound node
//   {item_id.attr}   value of `attr` on the first bound node that carries it
//   {#each item_id}...{/each}   one pass per bound node; inside the block,
//                               {id} is the node id and {attr} an extracted
//                               attribute of the current node

namespace plead {

struct Template {
    std::string id;
    std::string requirement_id;
    std::set<std::string> recipient_selector;  // empty = wildcard
    std::set<Goal> goal_selector;              // empty = wildcard
    std::string body;

    int specificity() const {
        return (recipient_selector.empty() ? 0 : 1) + (goal_selector.empty() ? 0 : 1);
    }
};

enum class RenderMode { Strict, GapMarked };

struct ExplanationInstance {
    std::string requirement_id;
    std::string subject_id;
    RecipientClass recipient;
    std::string text;
    ContentBindings bindings;
    std::string generated_at;
    std::vector<std::string> gaps;  // item ids rendered as gap markers
};

struct RenderError : std::runtime_error {
    RenderError(std::string code_, const std::string& detail)
        : std::runtime_error(code_ + ": " + detail), code(std::move(code_)) {}
    std::string code;  // NoTemplate, MissingContent, ConfidentialOutward,
                       // UnboundSlot, MissingCategoryLabel
};

// Template file: JSON array of {"id","requirement","recipients":[...]|"*",
// "goals":[...]|"*","body"}.
std::vector<Template> load_templates(const std::string& templates_json);

// Highest-specificity admissible template; ties broken by id order.
const Template& select_template(const std::vector<Template>& templates,
                                const ExplanationRequirement& req,
                                const RecipientClass& recipient);

ExplanationInstance render(const Template& t, const ContentBindings& b,
                           const ExplanationRequirement& req,
                           const RecipientClass& recipient, RenderMode mode,
                           const std::string& generated_at);

// Category label when the attribute is identifiable, raw value otherwise.
std::string redact(const std::string& value, const prov::AttrValue& meta);

}  // namespace plead
