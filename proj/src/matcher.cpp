#include "plead/matcher.hpp"

#include "json.hpp"

namespace plead {

using nlohmann::json;

namespace {

prov::NodeSelector parse_selector(const json& j, const std::string& item_id) {
    prov::NodeSelector sel;
    auto bad = [&](const std::string& reason) -> PatternError {
        return PatternError("BadSelector", item_id + ": " + reason);
    };
    if (!j.is_object()) throw bad("selector must be an object");
    if (j.contains("kind")) {
        auto k = prov::node_kind_from_token(j["kind"].get<std::string>());
        if (!k) throw bad("unknown node kind");
        sel.kind = *k;
    }
    if (j.contains("type")) sel.type_label = j["type"].get<std::string>();
    if (j.contains("attrs")) {
        for (const auto& a : j["attrs"]) {
            prov::AttrPredicate pred;
            pred.key = a.at("key").get<std::string>();
            if (a.contains("equals")) pred.equals = a["equals"].get<std::string>();
            sel.attr_predicates.push_back(std::move(pred));
        }
    }
    if (j.contains("path")) {
        if (!j["path"].is_array()) throw bad("path must be an array");
        std::vector<prov::PathStep> steps;
        for (const auto& s : j["path"]) {
            prov::PathStep step;
            auto rel = prov::relation_from_token(s.at("rel").get<std::string>());
            if (!rel) throw bad("unknown relation in path");
            step.relation = *rel;
            const std::string dir = s.at("dir").get<std::string>();
            if (dir == "in") {
                step.inbound = true;
            } else if (dir == "out") {
                step.inbound = false;
            } else {
                throw bad("path direction must be 'in' or 'out'");
            }
            steps.push_back(step);
        }
        sel.path = std::move(steps);
    }
    return sel;
}

}  // namespace

std::vector<ContentPattern> compile_patterns(const ExplanationRequirement& req,
                                             const std::string& mapping_json) {
    json doc;
    try {
        doc = json::parse(mapping_json);
    } catch (const json::parse_error& e) {
        throw PatternError("BadSelector", std::string("mapping file: ") + e.what());
    }
    const json* req_map = nullptr;
    if (doc.is_object() && doc.contains(req.id)) req_map = &doc[req.id];

    std::vector<ContentPattern> patterns;
    for (const auto& item : req.classification.content.minimum_content) {
        if (!req_map || !req_map->contains(item.id))
            throw PatternError("UnmappedItem", req.id + "/" + item.id);
        const json& pj = (*req_map)[item.id];
        ContentPattern p;
        p.item_id = item.id;
        p.selector = parse_selector(pj.at("selector"), item.id);
        if (pj.contains("extract"))
            for (const auto& k : pj["extract"]) p.extract.push_back(k.get<std::string>());
        if (p.extract.empty())
            throw PatternError("BadSelector", item.id + ": extract keys must be nonempty");
        if (pj.contains("required")) p.required = pj["required"].get<bool>();
        patterns.push_back(std::move(p));
    }
    return patterns;
}

ContentBindings bind(const std::vector<ContentPattern>& patterns,
                     const prov::ProvGraph& g, const std::string& subject,
                     const std::string& requirement_id) {
    if (!g.find(subject)) throw prov::UnknownSubject(subject);

    ContentBindings out;
    out.requirement_id = requirement_id;
    out.subject_id = subject;
    for (const auto& p : patterns) {
        const auto matches = prov::query(g, p.selector, subject);
        if (matches.empty() && p.required) {
            out.missing.push_back(p.item_id);
            continue;
        }
        auto& slot = out.bindings[p.item_id];
        for (const auto& node : matches) {
            BoundNode bound;
            bound.node_id = node.id;
            for (const auto& key : p.extract) {
                auto it = node.attributes.find(key);
                if (it != node.attributes.end())
                    bound.values.emplace_back(key, it->second);
            }
            slot.push_back(std::move(bound));
        }
    }
    return out;
}

}  // namespace plead
