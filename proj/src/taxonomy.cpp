#include "plead/taxonomy.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace plead {

GoalFamily goal_family(Goal g) {
    switch (g) {
        case Goal::Accountability:
        case Goal::Accuracy:
        case Goal::Consequences:
        case Goal::DataMinimisation:
        case Goal::Fairness:
        case Goal::Information:
        case Goal::Reassurance:
        case Goal::Satisfaction:
        case Goal::Persuasiveness:
        case Goal::Transparency:
        case Goal::Trust:
            return GoalFamily::Understandability;
        case Goal::Access:
        case Goal::ContestingADecision:
        case Goal::Efficiency:
        case Goal::Erasure:
        case Goal::MakingAComplaint:
        case Goal::ModifyingABehaviour:
        case Goal::HumanIntervention:
        case Goal::Portability:
        case Goal::Rectification:
        case Goal::FurtherInformation:
        case Goal::Restriction:
        case Goal::Scrutability:
            return GoalFamily::Intervenability;
    }
    throw std::logic_error("goal_family: unreachable");
}

std::vector<Goal> all_goals() {
    std::vector<Goal> out;
    for (int i = static_cast<int>(Goal::Accountability);
         i <= static_cast<int>(Goal::Scrutability); ++i) {
        out.push_back(static_cast<Goal>(i));
    }
    return out;
}

std::optional<Facing> core_recipient_facing(const std::string& name) {
    static const std::map<std::string, Facing> core = {
        {"data_subject", Facing::OutwardFacing},
        {"supervisory_authority", Facing::OutwardFacing},
        {"third_party", Facing::OutwardFacing},
        {"administrator", Facing::InwardFacing},
        {"business_analyst", Facing::InwardFacing},
        {"legal_engineer", Facing::InwardFacing},
        {"data_engineer", Facing::InwardFacing},
        {"manager", Facing::InwardFacing},
    };
    auto it = core.find(name);
    if (it == core.end()) return std::nullopt;
    return it->second;
}

ValidationReport validate_classification(const Classification& c) {
    ValidationReport report;
    auto violate = [&](std::string code, std::string msg) {
        report.violations.push_back({std::move(code), std::move(msg)});
    };

    if (c.sources.empty())
        violate("MissingSources", "classification must name at least one source");
    if (c.goals.empty())
        violate("MissingGoals", "classification must pursue at least one goal");
    if (c.recipients.empty())
        violate("MissingRecipients", "classification must name at least one recipient");

    if (c.trigger.event_name.empty())
        violate("EmptyTriggerEvent", "trigger event name must be nonempty");

    if (c.content.minimum_content.empty()) {
        violate("MissingMinimumContent", "minimum content must list at least one item");
    } else {
        std::set<std::string> seen;
        for (const auto& item : c.content.minimum_content) {
            if (item.id.empty())
                violate("EmptyContentItemId", "minimum content item has empty id");
            if (!seen.insert(item.id).second)
                violate("DuplicateContentItem",
                        "minimum content item id repeated: " + item.id);
        }
    }

    for (const auto& r : c.recipients) {
        if (r.name.empty()) {
            violate("EmptyRecipientName", "recipient name must be nonempty");
            continue;
        }
        auto core = core_recipient_facing(r.name);
        if (core) {
            if (*core != r.facing)
                violate("RecipientFacingMismatch",
                        "core recipient '" + r.name + "' declared with the wrong facing");
        } else if (!r.is_extension) {
            violate("UnknownRecipient",
                    "recipient '" + r.name + "' is neither core nor a declared extension");
        }
        if (c.content.confidentiality == Confidentiality::Confidential &&
            r.facing == Facing::OutwardFacing) {
            violate("ConfidentialOutwardRecipient",
                    "confidential content may not target outward-facing recipient '" +
                        r.name + "'");
        }
    }

    return report;
}

namespace {

TaxonomyVocabulary build_vocabulary() {
    TaxonomyVocabulary v;
    v.dimensions = {
        {"source", {}, {"primary_explicit", "primary_implicit", "secondary", "tertiary"}},
        {"perspective", {}, {"ex_ante", "ex_post"}},
        {"autonomy", {}, {"proactive", "reactive"}},
        {"trigger", {"kind", "event_name"}, {"action", "processing", "decision"}},
        {"content",
         {"sensitivity", "confidentiality", "minimum_content"},
         {"aggregated", "identifiable", "disclosable", "confidential"}},
        {"scope", {}, {"local", "universal"}},
        {"explainability_goal", {"understandability", "intervenability"}, {}},
        {"intended_recipient", {"outward_facing", "inward_facing"}, {}},
        {"priority", {}, {"mandatory", "discretionary"}},
    };
    for (Goal g : all_goals()) {
        v.goals.emplace_back(to_token(g), goal_family(g));
        // Goal tokens live under the explainability_goal dimension.
        v.dimensions[6].values.push_back(to_token(g));
    }
    v.dimensions[7].values = {"data_subject",   "supervisory_authority", "third_party",
                              "administrator",  "business_analyst",      "legal_engineer",
                              "data_engineer",  "manager"};
    return v;
}

}  // namespace

const TaxonomyVocabulary& vocabulary() {
    static const TaxonomyVocabulary v = build_vocabulary();
    return v;
}

std::string to_token(SourceVariant v) {
    switch (v) {
        case SourceVariant::PrimaryExplicit: return "primary_explicit";
        case SourceVariant::PrimaryImplicit: return "primary_implicit";
        case SourceVariant::Secondary: return "secondary";
        case SourceVariant::Tertiary: return "tertiary";
    }
    return {};
}

std::string to_token(Perspective v) {
    return v == Perspective::ExAnte ? "ex_ante" : "ex_post";
}

std::string to_token(Autonomy v) {
    return v == Autonomy::Proactive ? "proactive" : "reactive";
}

std::string to_token(TriggerKind v) {
    switch (v) {
        case TriggerKind::Action: return "action";
        case TriggerKind::Processing: return "processing";
        case TriggerKind::Decision: return "decision";
    }
    return {};
}

std::string to_token(Sensitivity v) {
    return v == Sensitivity::Aggregated ? "aggregated" : "identifiable";
}

std::string to_token(Confidentiality v) {
    return v == Confidentiality::Disclosable ? "disclosable" : "confidential";
}

std::string to_token(Scope v) { return v == Scope::Local ? "local" : "universal"; }

std::string to_token(Priority v) {
    return v == Priority::Mandatory ? "mandatory" : "discretionary";
}

std::string to_token(Facing v) {
    return v == Facing::OutwardFacing ? "outward" : "inward";
}

std::string to_token(GoalFamily v) {
    return v == GoalFamily::Understandability ? "understandability" : "intervenability";
}

std::string to_token(Goal v) {
    switch (v) {
        case Goal::Accountability: return "accountability";
        case Goal::Accuracy: return "accuracy";
        case Goal::Consequences: return "consequences";
        case Goal::DataMinimisation: return "data_minimisation";
        case Goal::Fairness: return "fairness";
        case Goal::Information: return "information";
        case Goal::Reassurance: return "reassurance";
        case Goal::Satisfaction: return "satisfaction";
        case Goal::Persuasiveness: return "persuasiveness";
        case Goal::Transparency: return "transparency";
        case Goal::Trust: return "trust";
        case Goal::Access: return "access";
        case Goal::ContestingADecision: return "contesting_a_decision";
        case Goal::Efficiency: return "efficiency";
        case Goal::Erasure: return "erasure";
        case Goal::MakingAComplaint: return "making_a_complaint";
        case Goal::ModifyingABehaviour: return "modifying_a_behaviour";
        case Goal::HumanIntervention: return "human_intervention";
        case Goal::Portability: return "portability";
        case Goal::Rectification: return "rectification";
        case Goal::FurtherInformation: return "further_information";
        case Goal::Restriction: return "restriction";
        case Goal::Scrutability: return "scrutability";
    }
    return {};
}

namespace {

template <typename E>
std::optional<E> from_token_impl(const std::string& t, const std::vector<E>& values) {
    for (E v : values)
        if (to_token(v) == t) return v;
    return std::nullopt;
}

}  // namespace

std::optional<SourceVariant> source_variant_from_token(const std::string& t) {
    return from_token_impl<SourceVariant>(
        t, {SourceVariant::PrimaryExplicit, SourceVariant::PrimaryImplicit,
            SourceVariant::Secondary, SourceVariant::Tertiary});
}

std::optional<Perspective> perspective_from_token(const std::string& t) {
    return from_token_impl<Perspective>(t, {Perspective::ExAnte, Perspective::ExPost});
}

std::optional<Autonomy> autonomy_from_token(const std::string& t) {
    return from_token_impl<Autonomy>(t, {Autonomy::Proactive, Autonomy::Reactive});
}

std::optional<TriggerKind> trigger_kind_from_token(const std::string& t) {
    return from_token_impl<TriggerKind>(
        t, {TriggerKind::Action, TriggerKind::Processing, TriggerKind::Decision});
}

std::optional<Sensitivity> sensitivity_from_token(const std::string& t) {
    return from_token_impl<Sensitivity>(t, {Sensitivity::Aggregated, Sensitivity::Identifiable});
}

std::optional<Confidentiality> confidentiality_from_token(const std::string& t) {
    return from_token_impl<Confidentiality>(
        t, {Confidentiality::Disclosable, Confidentiality::Confidential});
}

std::optional<Scope> scope_from_token(const std::string& t) {
    return from_token_impl<Scope>(t, {Scope::Local, Scope::Universal});
}

std::optional<Priority> priority_from_token(const std::string& t) {
    return from_token_impl<Priority>(t, {Priority::Mandatory, Priority::Discretionary});
}

std::optional<Goal> goal_from_token(const std::string& t) {
    return from_token_impl<Goal>(t, all_goals());
}

std::optional<Facing> facing_from_token(const std::string& t) {
    return from_token_impl<Facing>(t, {Facing::OutwardFacing, Facing::InwardFacing});
}

}  // namespace plead
