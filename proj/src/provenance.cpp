#include "plead/provenance.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace plead {
namespace prov {

using nlohmann::json;

std::string to_token(NodeKind k) {
    switch (k) {
        case NodeKind::Entity: return "entity";
        case NodeKind::Activity: return "activity";
        case NodeKind::Agent: return "agent";
    }
    return {};
}

std::string to_token(Relation r) {
    switch (r) {
        case Relation::Used: return "used";
        case Relation::WasGeneratedBy: return "was_generated_by";
        case Relation::WasAssociatedWith: return "was_associated_with";
        case Relation::WasDerivedFrom: return "was_derived_from";
        case Relation::WasAttributedTo: return "was_attributed_to";
        case Relation::WasInformedBy: return "was_informed_by";
    }
    return {};
}

std::optional<NodeKind> node_kind_from_token(const std::string& t) {
    for (NodeKind k : {NodeKind::Entity, NodeKind::Activity, NodeKind::Agent})
        if (to_token(k) == t) return k;
    return std::nullopt;
}

std::optional<Relation> relation_from_token(const std::string& t) {
    for (Relation r : {Relation::Used, Relation::WasGeneratedBy,
                       Relation::WasAssociatedWith, Relation::WasDerivedFrom,
                       Relation::WasAttributedTo, Relation::WasInformedBy})
        if (to_token(r) == t) return r;
    return std::nullopt;
}

namespace {

// Required endpoint kinds per relation.
std::pair<NodeKind, NodeKind> endpoint_kinds(Relation r) {
    switch (r) {
        case Relation::Used: return {NodeKind::Activity, NodeKind::Entity};
        case Relation::WasGeneratedBy: return {NodeKind::Entity, NodeKind::Activity};
        case Relation::WasAssociatedWith: return {NodeKind::Activity, NodeKind::Agent};
        case Relation::WasDerivedFrom: return {NodeKind::Entity, NodeKind::Entity};
        case Relation::WasAttributedTo: return {NodeKind::Entity, NodeKind::Agent};
        case Relation::WasInformedBy: return {NodeKind::Activity, NodeKind::Activity};
    }
    return {NodeKind::Entity, NodeKind::Entity};
}

}  // namespace

const ProvNode* ProvGraph::find(const std::string& id) const {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
}

std::vector<std::string> ProvGraph::subject_index(const std::string& subject_id) const {
    std::vector<std::string> out;
    for (const auto& e : edges_) {
        if (e.to != subject_id) continue;
        if (e.relation == Relation::WasAttributedTo ||
            e.relation == Relation::WasDerivedFrom)
            out.push_back(e.from);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ProvGraph ingest(const std::string& jsonl) {
    ProvGraph g;
    std::istringstream in(jsonl);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::parse_error& e) {
            throw IngestError("MalformedLine",
                              "line " + std::to_string(line_no) + ": " + e.what());
        }
        auto malformed = [&](const std::string& reason) -> IngestError {
            return IngestError("MalformedLine",
                               "line " + std::to_string(line_no) + ": " + reason);
        };
        if (!rec.is_object() || !rec.contains("rec")) throw malformed("missing 'rec'");
        const std::string kind = rec["rec"].get<std::string>();
        if (kind == "node") {
            ProvNode node;
            if (!rec.contains("id") || !rec.contains("kind"))
                throw malformed("node needs 'id' and 'kind'");
            node.id = rec["id"].get<std::string>();
            auto nk = node_kind_from_token(rec["kind"].get<std::string>());
            if (!nk) throw malformed("unknown node kind");
            node.kind = *nk;
            if (rec.contains("types"))
                for (const auto& t : rec["types"])
                    node.type_labels.insert(t.get<std::string>());
            if (rec.contains("attrs")) {
                for (auto it = rec["attrs"].begin(); it != rec["attrs"].end(); ++it) {
                    AttrValue v;
                    v.value = it.value().at("v").get<std::string>();
                    if (it.value().contains("pii")) v.identifiable = it.value()["pii"].get<bool>();
                    if (it.value().contains("cat"))
                        v.category_label = it.value()["cat"].get<std::string>();
                    if (v.identifiable && v.category_label.empty())
                        throw malformed("identifiable attribute '" + it.key() +
                                        "' lacks a category label");
                    node.attributes[it.key()] = std::move(v);
                }
            }
            if (rec.contains("ts")) node.timestamp = rec["ts"].get<std::string>();
            if (!g.nodes_.emplace(node.id, node).second)
                throw IngestError("DuplicateNode", node.id);
        } else if (kind == "edge") {
            if (!rec.contains("rel") || !rec.contains("from") || !rec.contains("to"))
                throw malformed("edge needs 'rel', 'from', 'to'");
            auto rel = relation_from_token(rec["rel"].get<std::string>());
            if (!rel) throw malformed("unknown relation");
            g.edges_.push_back(
                {*rel, rec["from"].get<std::string>(), rec["to"].get<std::string>()});
        } else {
            throw malformed("unknown record type '" + kind + "'");
        }
    }

    // References may be forward within the batch; check at the end.
    for (const auto& e : g.edges_) {
        const ProvNode* from = g.find(e.from);
        const ProvNode* to = g.find(e.to);
        if (!from || !to) throw IngestError("DanglingEdge", e.from + " -> " + e.to);
        const auto [from_kind, to_kind] = endpoint_kinds(e.relation);
        if (from->kind != from_kind || to->kind != to_kind)
            throw IngestError("KindViolation", to_token(e.relation) + " " + e.from +
                                                  " -> " + e.to);
    }
    return g;
}

std::string serialize(const ProvGraph& g) {
    std::ostringstream out;
    for (const auto& [id, node] : g.nodes()) {
        json rec;
        rec["rec"] = "node";
        rec["id"] = id;
        rec["kind"] = to_token(node.kind);
        rec["types"] = node.type_labels;
        json attrs = json::object();
        for (const auto& [key, v] : node.attributes) {
            json a;
            a["v"] = v.value;
            if (v.identifiable) a["pii"] = true;
            if (!v.category_label.empty()) a["cat"] = v.category_label;
            attrs[key] = a;
        }
        rec["attrs"] = attrs;
        if (!node.timestamp.empty()) rec["ts"] = node.timestamp;
        out << rec.dump() << "\n";
    }
    for (const auto& e : g.edges()) {
        out << json{{"rec", "edge"}, {"rel", to_token(e.relation)},
                    {"from", e.from}, {"to", e.to}}
                   .dump()
            << "\n";
    }
    return out.str();
}

namespace {

bool matches_filters(const ProvNode& n, const NodeSelector& sel) {
    if (sel.kind && n.kind != *sel.kind) return false;
    if (sel.type_label && !n.has_type(*sel.type_label)) return false;
    for (const auto& pred : sel.attr_predicates) {
        auto it = n.attributes.find(pred.key);
        if (it == n.attributes.end()) return false;
        if (pred.equals && it->second.value != *pred.equals) return false;
    }
    return true;
}

}  // namespace

std::vector<ProvNode> query(const ProvGraph& g, const NodeSelector& sel,
                            const std::string& subject) {
    std::set<std::string> candidates;
    if (sel.path) {
        if (!g.find(subject)) throw UnknownSubject(subject);
        std::set<std::string> frontier{subject};
        for (const auto& step : *sel.path) {
            std::set<std::string> next;
            for (const auto& e : g.edges()) {
                if (e.relation != step.relation) continue;
                if (step.inbound) {
                    if (frontier.count(e.to)) next.insert(e.from);
                } else {
                    if (frontier.count(e.from)) next.insert(e.to);
                }
            }
            frontier = std::move(next);
        }
        candidates = std::move(frontier);
    } else {
        for (const auto& [id, node] : g.nodes()) candidates.insert(id);
    }

    std::vector<ProvNode> out;
    for (const auto& id : candidates) {
        const ProvNode* node = g.find(id);
        if (node && matches_filters(*node, sel)) out.push_back(*node);
    }
    std::sort(out.begin(), out.end(), [](const ProvNode& a, const ProvNode& b) {
        return std::tie(a.timestamp, a.id) < std::tie(b.timestamp, b.id);
    });
    return out;
}

}  // namespace prov
}  // namespace plead
