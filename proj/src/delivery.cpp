#include "plead/delivery.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace plead {

using nlohmann::json;

std::string to_token(EventKind k) {
    switch (k) {
        case EventKind::ProcessingAnnounced: return "processing_announced";
        case EventKind::DecisionMade: return "decision_made";
        case EventKind::RequestReceived: return "request_received";
        case EventKind::ActionPerformed: return "action_performed";
    }
    return {};
}

std::optional<EventKind> event_kind_from_token(const std::string& t) {
    for (EventKind k : {EventKind::ProcessingAnnounced, EventKind::DecisionMade,
                        EventKind::RequestReceived, EventKind::ActionPerformed})
        if (to_token(k) == t) return k;
    return std::nullopt;
}

namespace {

// Trigger kinds map onto event categories one-to-one.
bool trigger_matches(const TriggerSpec& trigger, const Event& e) {
    if (trigger.event_name != e.event_name) return false;
    switch (trigger.kind) {
        case TriggerKind::Action: return e.kind == EventKind::ActionPerformed;
        case TriggerKind::Processing: return e.kind == EventKind::ProcessingAnnounced;
        case TriggerKind::Decision: return e.kind == EventKind::DecisionMade;
    }
    return false;
}

bool fires(const ExplanationRequirement& req, const Event& e) {
    const auto& c = req.classification;
    if (c.autonomy == Autonomy::Reactive)
        return e.kind == EventKind::RequestReceived &&
               e.requested_requirement == req.id;
    return trigger_matches(c.trigger, e);
}

bool decision_node_present(const prov::ProvGraph& g, const std::string& subject) {
    for (const auto& edge : g.edges()) {
        if (edge.relation != prov::Relation::WasDerivedFrom || edge.to != subject)
            continue;
        const auto* node = g.find(edge.from);
        if (node && node->has_type("decision")) return true;
    }
    return false;
}

bool generated_by_decision_activity(const prov::ProvGraph& g, const std::string& id) {
    for (const auto& edge : g.edges()) {
        if (edge.relation != prov::Relation::WasGeneratedBy || edge.from != id) continue;
        const auto* activity = g.find(edge.to);
        if (activity && activity->has_type("decision")) return true;
    }
    return false;
}

}  // namespace

std::vector<DeliveryAction> on_event(const Event& e, const Registry& r,
                                     const prov::ProvGraph& g,
                                     const std::vector<Template>& templates,
                                     const std::string& patterns_json,
                                     const std::string& clock) {
    std::vector<DeliveryAction> actions;
    for (const auto& req : r.requirements()) {
        if (!fires(req, e)) continue;
        const auto& c = req.classification;

        const std::string subject = e.subject_id;
        if (c.perspective == Perspective::ExPost && !decision_node_present(g, subject))
            throw DeliveryError("StaleGraph", subject + " (for " + req.id + ")");

        const auto patterns = compile_patterns(req, patterns_json);
        const auto bindings = bind(patterns, g, subject, req.id);

        if (c.perspective == Perspective::ExAnte) {
            for (const auto& [item, nodes] : bindings.bindings)
                for (const auto& node : nodes)
                    if (generated_by_decision_activity(g, node.node_id))
                        throw DeliveryError("ExAntePostDecisionContent",
                                            req.id + "/" + item + ": " + node.node_id);
        }

        std::vector<RecipientClass> targets;
        if (c.autonomy == Autonomy::Reactive) {
            if (!e.requester) continue;
            const bool classified = std::any_of(
                c.recipients.begin(), c.recipients.end(), [&](const RecipientClass& rc) {
                    return rc.name == e.requester->name;
                });
            if (!classified) continue;
            targets.push_back(*e.requester);
        } else {
            targets.assign(c.recipients.begin(), c.recipients.end());
        }

        for (const auto& recipient : targets) {
            DeliveryAction action;
            action.requirement_id = req.id;
            action.subject_id = subject;
            action.recipients = {recipient};
            action.timing = c.autonomy == Autonomy::Reactive
                                ? Timing::OnRequestFulfilment
                                : Timing::Immediate;
            action.priority = c.priority;

            const RenderMode mode = recipient.facing == Facing::InwardFacing
                                        ? RenderMode::GapMarked
                                        : RenderMode::Strict;
            const Template& t = select_template(templates, req, recipient);
            action.explanation = render(t, bindings, req, recipient, mode, clock);
            actions.push_back(std::move(action));
        }
    }
    return actions;
}

std::vector<DeliveryAction> schedule_ex_ante(const Registry& r, const Event& announce,
                                             const prov::ProvGraph& g,
                                             const std::vector<Template>& templates,
                                             const std::string& patterns_json,
                                             const std::string& clock) {
    auto actions = on_event(announce, r, g, templates, patterns_json, clock);
    std::erase_if(actions, [&](const DeliveryAction& a) {
        const auto* req = r.find(a.requirement_id);
        return !req || req->classification.perspective != Perspective::ExAnte ||
               req->classification.autonomy != Autonomy::Proactive;
    });
    return actions;
}

std::vector<Event> parse_event_log(const std::string& jsonl) {
    std::vector<Event> events;
    std::istringstream in(jsonl);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::parse_error& err) {
            throw DeliveryError("MalformedEvent",
                                "line " + std::to_string(line_no) + ": " + err.what());
        }
        Event e;
        auto kind = event_kind_from_token(rec.at("kind").get<std::string>());
        if (!kind)
            throw DeliveryError("MalformedEvent",
                                "line " + std::to_string(line_no) + ": unknown kind");
        e.kind = *kind;
        e.event_name = rec.value("event", "");
        e.subject_id = rec.at("subject").get<std::string>();
        e.occurred_at = rec.value("at", "");
        if (rec.contains("requester")) {
            RecipientClass rc;
            rc.name = rec["requester"].at("name").get<std::string>();
            auto facing = facing_from_token(rec["requester"].at("facing").get<std::string>());
            if (!facing)
                throw DeliveryError("MalformedEvent",
                                    "line " + std::to_string(line_no) + ": bad facing");
            rc.facing = *facing;
            e.requester = rc;
        }
        if (rec.contains("requirement"))
            e.requested_requirement = rec["requirement"].get<std::string>();
        if (e.kind == EventKind::RequestReceived && !e.requester)
            throw DeliveryError("MalformedEvent",
                                "line " + std::to_string(line_no) +
                                    ": request_received needs a requester");
        events.push_back(std::move(e));
    }
    return events;
}

std::string action_to_json(const DeliveryAction& a) {
    json rec;
    rec["requirement"] = a.requirement_id;
    rec["subject"] = a.subject_id;
    rec["recipients"] = json::array();
    for (const auto& r : a.recipients)
        rec["recipients"].push_back({{"facing", to_token(r.facing)}, {"name", r.name}});
    rec["timing"] =
        a.timing == Timing::Immediate ? "immediate" : "on_request_fulfilment";
    rec["priority"] = to_token(a.priority);
    if (a.explanation) {
        json ex;
        ex["text"] = a.explanation->text;
        ex["generated_at"] = a.explanation->generated_at;
        ex["gaps"] = a.explanation->gaps;
        rec["explanation"] = ex;
    } else {
        rec["deferred"] = true;
    }
    return rec.dump();
}

}  // namespace plead
