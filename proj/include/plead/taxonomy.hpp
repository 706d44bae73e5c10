#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

// Core vocabulary: the nine classification dimensions of an explanation
// requirement, their enumerated values, and classification validation.

namespace plead {

enum class SourceVariant { PrimaryExplicit, PrimaryImplicit, Secondary, Tertiary };

struct SourceRank {
    SourceVariant variant = SourceVariant::PrimaryExplicit;
    std::string citation_note;  // e.g. "Art. 22"

    auto operator<=>(const SourceRank&) const = default;
};

enum class Perspective { ExAnte, ExPost };
enum class Autonomy { Proactive, Reactive };

enum class TriggerKind { Action, Processing, Decision };

struct TriggerSpec {
    TriggerKind kind = TriggerKind::Decision;
    std::string event_name;  // concrete triggering event, e.g. "loan_application"

    auto operator<=>(const TriggerSpec&) const = default;
};

enum class Sensitivity { Aggregated, Identifiable };
enum class Confidentiality { Disclosable, Confidential };

struct ContentItem {
    std::string id;
    std::string description;

    auto operator<=>(const ContentItem&) const = default;
};

struct ContentSpec {
    Sensitivity sensitivity = Sensitivity::Aggregated;
    Confidentiality confidentiality = Confidentiality::Disclosable;
    std::vector<ContentItem> minimum_content;  // ordered, nonempty, ids unique

    auto operator<=>(const ContentSpec&) const = default;
};

enum class Scope { Local, Universal };
enum class Priority { Mandatory, Discretionary };

enum class GoalFamily { Understandability, Intervenability };

enum class Goal {
    // Understandability family (11)
    Accountability,
    Accuracy,
    Consequences,
    DataMinimisation,
    Fairness,
    Information,
    Reassurance,
    Satisfaction,
    Persuasiveness,
    Transparency,
    Trust,
    // Intervenability family (12)
    Access,
    ContestingADecision,
    Efficiency,
    Erasure,
    MakingAComplaint,
    ModifyingABehaviour,
    HumanIntervention,
    Portability,
    Rectification,
    FurtherInformation,
    Restriction,
    Scrutability,
};

GoalFamily goal_family(Goal g);

enum class Facing { OutwardFacing, InwardFacing };

struct RecipientClass {
    Facing facing = Facing::OutwardFacing;
    std::string name;  // "data_subject", "administrator", ...
    bool is_extension = false;

    auto operator<=>(const RecipientClass&) const = default;
};

// Core recipient names and their bound facing. Extensions declare their own.
std::optional<Facing> core_recipient_facing(const std::string& name);

struct Classification {
    std::set<SourceRank> sources;      // nonempty
    Perspective perspective = Perspective::ExAnte;
    Autonomy autonomy = Autonomy::Proactive;
    TriggerSpec trigger;
    ContentSpec content;
    Scope scope = Scope::Universal;
    std::set<Goal> goals;              // nonempty
    std::set<RecipientClass> recipients;  // nonempty
    Priority priority = Priority::Mandatory;

    auto operator<=>(const Classification&) const = default;
};

struct Violation {
    std::string code;     // e.g. "MissingGoals"
    std::string message;

    auto operator<=>(const Violation&) const = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

ValidationReport validate_classification(const Classification& c);

// ---- Vocabulary introspection -------------------------------------------

struct DimensionInfo {
    std::string name;                    // "source", "perspective", ...
    std::vector<std::string> sub_properties;  // e.g. {"sensitivity", "confidentiality", "minimum_content"}
    std::vector<std::string> values;     // enumerated value tokens, empty for open dimensions
};

struct TaxonomyVocabulary {
    std::vector<DimensionInfo> dimensions;  // exactly 9
    std::vector<std::pair<std::string, GoalFamily>> goals;  // all 23 tokens with family
};

const TaxonomyVocabulary& vocabulary();

std::vector<Goal> all_goals();

// ---- Token conversions (lower_snake_case wire tokens) --------------------

std::string to_token(SourceVariant v);
std::string to_token(Perspective v);
std::string to_token(Autonomy v);
std::string to_token(TriggerKind v);
std::string to_token(Sensitivity v);
std::string to_token(Confidentiality v);
std::string to_token(Scope v);
std::string to_token(Priority v);
std::string to_token(Goal v);
std::string to_token(Facing v);
std::string to_token(GoalFamily v);

std::optional<SourceVariant> source_variant_from_token(const std::string& t);
std::optional<Perspective> perspective_from_token(const std::string& t);
std::optional<Autonomy> autonomy_from_token(const std::string& t);
std::optional<TriggerKind> trigger_kind_from_token(const std::string& t);
std::optional<Sensitivity> sensitivity_from_token(const std::string& t);
std::optional<Confidentiality> confidentiality_from_token(const std::string& t);
std::optional<Scope> scope_from_token(const std::string& t);
std::optional<Priority> priority_from_token(const std::string& t);
std::optional<Goal> goal_from_token(const std::string& t);
std::optional<Facing> facing_from_token(const std::string& t);

}  // namespace plead
