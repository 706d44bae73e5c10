#include "plead/registry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace plead {

using nlohmann::json;

const ExplanationRequirement* Registry::find(const std::string& id) const {
    for (const auto& r : reqs_)
        if (r.id == id) return &r;
    return nullptr;
}

namespace {

[[noreturn]] void parse_error(const std::string& where, const std::string& what) {
    throw LoadError("ParseError", where + ": " + what);
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_string())
        parse_error(where, std::string("missing or non-string field '") + key + "'");
    return obj[key].get<std::string>();
}

template <typename T>
T token_or_fail(const std::optional<T>& v, const std::string& token,
                const std::string& where) {
    if (!v) parse_error(where, "unknown token '" + token + "'");
    return *v;
}

Classification parse_classification(const json& j, const std::string& where,
                                    const std::vector<RecipientClass>& extensions) {
    Classification c;

    if (!j.contains("source") || !j["source"].is_array())
        parse_error(where, "missing 'source' array");
    for (const auto& s : j["source"]) {
        SourceRank rank;
        if (s.is_string()) {
            const auto tok = s.get<std::string>();
            rank.variant = token_or_fail(source_variant_from_token(tok), tok, where);
        } else if (s.is_object()) {
            const auto tok = require_string(s, "rank", where);
            rank.variant = token_or_fail(source_variant_from_token(tok), tok, where);
            if (s.contains("note")) rank.citation_note = s["note"].get<std::string>();
        } else {
            parse_error(where, "source entry must be a token or an object");
        }
        c.sources.insert(rank);
    }

    {
        const auto tok = require_string(j, "perspective", where);
        c.perspective = token_or_fail(perspective_from_token(tok), tok, where);
    }
    {
        const auto tok = require_string(j, "autonomy", where);
        c.autonomy = token_or_fail(autonomy_from_token(tok), tok, where);
    }

    if (!j.contains("trigger") || !j["trigger"].is_object())
        parse_error(where, "missing 'trigger' object");
    {
        const auto& t = j["trigger"];
        const auto tok = require_string(t, "kind", where);
        c.trigger.kind = token_or_fail(trigger_kind_from_token(tok), tok, where);
        c.trigger.event_name = require_string(t, "event", where);
    }

    if (!j.contains("content") || !j["content"].is_object())
        parse_error(where, "missing 'content' object");
    {
        const auto& ct = j["content"];
        const auto sens = require_string(ct, "sensitivity", where);
        c.content.sensitivity = token_or_fail(sensitivity_from_token(sens), sens, where);
        const auto conf = require_string(ct, "confidentiality", where);
        c.content.confidentiality =
            token_or_fail(confidentiality_from_token(conf), conf, where);
        if (!ct.contains("minimum") || !ct["minimum"].is_array())
            parse_error(where, "missing 'content.minimum' array");
        for (const auto& item : ct["minimum"]) {
            c.content.minimum_content.push_back(
                {require_string(item, "id", where), require_string(item, "description", where)});
        }
    }

    {
        const auto tok = require_string(j, "scope", where);
        c.scope = token_or_fail(scope_from_token(tok), tok, where);
    }

    if (!j.contains("goals") || !j["goals"].is_array())
        parse_error(where, "missing 'goals' array");
    for (const auto& g : j["goals"]) {
        const auto tok = g.get<std::string>();
        auto goal = goal_from_token(tok);
        if (!goal) throw LoadError("UnknownGoal", tok);
        c.goals.insert(*goal);
    }

    if (!j.contains("recipients") || !j["recipients"].is_array())
        parse_error(where, "missing 'recipients' array");
    for (const auto& r : j["recipients"]) {
        RecipientClass rc;
        rc.name = require_string(r, "name", where);
        const auto facing = require_string(r, "facing", where);
        rc.facing = token_or_fail(facing_from_token(facing), facing, where);
        if (!core_recipient_facing(rc.name)) {
            const bool declared = std::any_of(
                extensions.begin(), extensions.end(),
                [&](const RecipientClass& e) { return e.name == rc.name; });
            if (!declared) throw LoadError("UnknownRecipient", rc.name);
            rc.is_extension = true;
        }
        c.recipients.insert(rc);
    }

    {
        const auto tok = require_string(j, "priority", where);
        c.priority = token_or_fail(priority_from_token(tok), tok, where);
    }

    return c;
}

}  // namespace

Registry load_registry(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw LoadError("ParseError", e.what());
    }
    if (!doc.is_object() || !doc.contains("requirements") ||
        !doc["requirements"].is_array())
        parse_error("document", "expected object with 'requirements' array");

    Registry reg;
    if (doc.contains("recipient_extensions")) {
        for (const auto& e : doc["recipient_extensions"]) {
            RecipientClass rc;
            rc.name = require_string(e, "name", "recipient_extensions");
            const auto facing = require_string(e, "facing", "recipient_extensions");
            rc.facing = token_or_fail(facing_from_token(facing), facing,
                                      "recipient_extensions");
            rc.is_extension = true;
            reg.extensions_.push_back(rc);
        }
    }

    std::set<std::string> ids;
    for (const auto& rj : doc["requirements"]) {
        ExplanationRequirement req;
        req.id = require_string(rj, "id", "requirement");
        const std::string where = "requirement '" + req.id + "'";
        req.label = require_string(rj, "label", where);
        if (rj.contains("parent")) req.parent = rj["parent"].get<std::string>();
        if (rj.contains("example")) req.example_text = rj["example"].get<std::string>();
        req.classification = parse_classification(rj, where, reg.extensions_);
        if (!ids.insert(req.id).second) throw LoadError("DuplicateId", req.id);
        reg.reqs_.push_back(std::move(req));
    }

    // Parent resolution and cycle check.
    for (const auto& r : reg.reqs_) {
        if (!r.parent.empty() && !reg.find(r.parent))
            throw LoadError("DanglingParent", r.id + " -> " + r.parent);
    }
    for (const auto& r : reg.reqs_) {
        std::vector<std::string> path{r.id};
        const ExplanationRequirement* cur = &r;
        while (!cur->parent.empty()) {
            if (std::find(path.begin(), path.end(), cur->parent) != path.end()) {
                path.push_back(cur->parent);
                std::string joined;
                for (const auto& p : path) joined += (joined.empty() ? "" : " -> ") + p;
                throw LoadError("CyclicParent", joined);
            }
            path.push_back(cur->parent);
            cur = reg.find(cur->parent);
        }
    }

    for (const auto& r : reg.reqs_) {
        auto report = validate_classification(r.classification);
        if (!report.ok()) {
            std::string detail = r.id;
            for (const auto& v : report.violations) detail += "; " + v.code;
            throw LoadError("InvalidClassification", detail);
        }
    }

    return reg;
}

std::string serialize_registry(const Registry& r) {
    json doc;
    doc["requirements"] = json::array();
    for (const auto& req : r.requirements()) {
        json rj;
        rj["id"] = req.id;
        rj["label"] = req.label;
        if (!req.parent.empty()) rj["parent"] = req.parent;
        const auto& c = req.classification;
        rj["source"] = json::array();
        for (const auto& s : c.sources) {
            if (s.citation_note.empty()) {
                rj["source"].push_back(to_token(s.variant));
            } else {
                rj["source"].push_back(
                    json{{"rank", to_token(s.variant)}, {"note", s.citation_note}});
            }
        }
        rj["perspective"] = to_token(c.perspective);
        rj["autonomy"] = to_token(c.autonomy);
        rj["trigger"] = {{"kind", to_token(c.trigger.kind)},
                         {"event", c.trigger.event_name}};
        json minimum = json::array();
        for (const auto& item : c.content.minimum_content)
            minimum.push_back({{"id", item.id}, {"description", item.description}});
        rj["content"] = {{"sensitivity", to_token(c.content.sensitivity)},
                         {"confidentiality", to_token(c.content.confidentiality)},
                         {"minimum", minimum}};
        rj["scope"] = to_token(c.scope);
        rj["goals"] = json::array();
        for (const auto& g : c.goals) rj["goals"].push_back(to_token(g));
        rj["recipients"] = json::array();
        for (const auto& rc : c.recipients)
            rj["recipients"].push_back(
                {{"facing", to_token(rc.facing)}, {"name", rc.name}});
        rj["priority"] = to_token(c.priority);
        if (!req.example_text.empty()) rj["example"] = req.example_text;
        doc["requirements"].push_back(std::move(rj));
    }
    doc["recipient_extensions"] = json::array();
    for (const auto& e : r.recipient_extensions())
        doc["recipient_extensions"].push_back(
            {{"facing", to_token(e.facing)}, {"name", e.name}});
    return doc.dump(2) + "\n";
}

namespace {

int rank_level(SourceVariant v) {
    switch (v) {
        case SourceVariant::PrimaryExplicit: return 0;
        case SourceVariant::PrimaryImplicit: return 1;
        case SourceVariant::Secondary: return 2;
        case SourceVariant::Tertiary: return 3;
    }
    return 3;
}

int most_primary_level(const Classification& c) {
    int best = 99;
    for (const auto& s : c.sources) best = std::min(best, rank_level(s.variant));
    return best;
}

// Streamlining compares everything but the minimum-content item text.
Classification streamline_key(const Classification& c) {
    Classification key = c;
    key.content.minimum_content.clear();
    return key;
}

}  // namespace

LintReport lint_registry(const Registry& r) {
    LintReport report;

    std::map<Classification, std::vector<std::string>> groups;
    for (const auto& req : r.requirements())
        groups[streamline_key(req.classification)].push_back(req.id);
    for (const auto& req : r.requirements()) {
        auto it = groups.find(streamline_key(req.classification));
        if (it != groups.end() && it->second.size() >= 2) {
            report.streamline_groups.push_back({it->second});
            groups.erase(it);
        }
    }

    for (const auto& req : r.requirements()) {
        if (req.parent.empty()) continue;
        const auto* parent = r.find(req.parent);
        if (!parent) continue;
        if (most_primary_level(req.classification) <
            most_primary_level(parent->classification)) {
            report.warnings.push_back(
                {"ParentRankMismatch",
                 "'" + req.id + "' cites a more primary source than its parent '" +
                     req.parent + "'"});
        }
    }

    const std::size_t recipient_values = 8 + r.recipient_extensions().size();
    if (recipient_values > 9) {
        report.warnings.push_back(
            {"DimensionOverload",
             "intended_recipient lists " + std::to_string(recipient_values) +
                 " values, above the conciseness bound of 9"});
    }

    return report;
}

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

ClassificationMatrix matrix(const Registry& r) {
    ClassificationMatrix m;
    m.header = {"Requirement",     "Source",       "Perspective",
                "Autonomy",        "Trigger",      "Sensitivity",
                "Confidentiality", "Minimum content", "Scope",
                "Understandability", "Intervenability", "Intended recipient",
                "Priority"};
    for (const auto& req : r.requirements()) {
        const auto& c = req.classification;
        std::vector<std::string> sources, minimum, und, inter, recipients;
        for (const auto& s : c.sources) {
            std::string cell = to_token(s.variant);
            if (!s.citation_note.empty()) cell += " (" + s.citation_note + ")";
            sources.push_back(cell);
        }
        for (const auto& item : c.content.minimum_content)
            minimum.push_back(item.description);
        for (const auto& g : c.goals) {
            (goal_family(g) == GoalFamily::Understandability ? und : inter)
                .push_back(to_token(g));
        }
        for (const auto& rc : c.recipients) recipients.push_back(rc.name);
        m.rows.push_back({req.label,
                          join(sources, "; "),
                          to_token(c.perspective),
                          to_token(c.autonomy),
                          to_token(c.trigger.kind) + ":" + c.trigger.event_name,
                          to_token(c.content.sensitivity),
                          to_token(c.content.confidentiality),
                          join(minimum, "; "),
                          to_token(c.scope),
                          join(und, "; "),
                          join(inter, "; "),
                          join(recipients, "; "),
                          to_token(c.priority)});
    }
    return m;
}

std::string ClassificationMatrix::cell(const std::string& requirement_label,
                                       const std::string& column) const {
    auto col = std::find(header.begin(), header.end(), column);
    if (col == header.end()) return {};
    const auto idx = static_cast<std::size_t>(col - header.begin());
    for (const auto& row : rows)
        if (!row.empty() && row[0] == requirement_label) return row[idx];
    return {};
}

std::string ClassificationMatrix::to_csv() const {
    std::ostringstream out;
    std::vector<std::string> escaped;
    for (const auto& h : header) escaped.push_back(csv_escape(h));
    out << join(escaped, ",") << "\n";
    for (const auto& row : rows) {
        escaped.clear();
        for (const auto& cell : row) escaped.push_back(csv_escape(cell));
        out << join(escaped, ",") << "\n";
    }
    return out.str();
}

}  // namespace plead
