#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plead/renderer.hpp"

// Decides when each explanation fires and to whom, from the requirement's
// perspective/autonomy/trigger/recipient/confidentiality values.

namespace plead {

enum class EventKind { ProcessingAnnounced, DecisionMade, RequestReceived, ActionPerformed };

std::string to_token(EventKind k);
std::optional<EventKind> event_kind_from_token(const std::string& t);

struct Event {
    EventKind kind = EventKind::DecisionMade;
    std::string event_name;
    std::string subject_id;
    std::string occurred_at;
    std::optional<RecipientClass> requester;    // RequestReceived only
    std::string requested_requirement;          // RequestReceived names a requirement
};

enum class Timing { Immediate, OnRequestFulfilment };

struct DeliveryAction {
    std::string requirement_id;
    std::string subject_id;
    std::vector<RecipientClass> recipients;
    Timing timing = Timing::Immediate;
    Priority priority = Priority::Mandatory;  // recorded for compliance reports
    std::optional<ExplanationInstance> explanation;  // absent = deferred
};

struct DeliveryError : std::runtime_error {
    DeliveryError(std::string code_, const std::string& detail)
        : std::runtime_error(code_ + ": " + detail), code(std::move(code_)) {}
    std::string code;  // StaleGraph, ExAntePostDecisionContent
};

// One action per (fired requirement, recipient). Inward recipients render
// gap-marked, outward recipients render strict.
std::vector<DeliveryAction> on_event(const Event& e, const Registry& r,
                                     const prov::ProvGraph& g,
                                     const std::vector<Template>& templates,
                                     const std::string& patterns_json,
                                     const std::string& clock);

// Proactive ex-ante requirements matching a ProcessingAnnounced event.
std::vector<DeliveryAction> schedule_ex_ante(const Registry& r, const Event& announce,
                                             const prov::ProvGraph& g,
                                             const std::vector<Template>& templates,
                                             const std::string& patterns_json,
                                             const std::string& clock);

// Event log JSONL: {"kind","event","subject","at","requester"?,"requirement"?}
std::vector<Event> parse_event_log(const std::string& jsonl);

std::string action_to_json(const DeliveryAction& a);

}  // namespace plead
