#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Simplified provenance audit trail: the substrate explanations are bound
// against. Six PROV-DM core relations, in-memory graph, JSONL ingest.

namespace plead {
namespace prov {

enum class NodeKind { Entity, Activity, Agent };

enum class Relation {
    Used,               // Activity -> Entity
    WasGeneratedBy,     // Entity -> Activity
    WasAssociatedWith,  // Activity -> Agent
    WasDerivedFrom,     // Entity -> Entity
    WasAttributedTo,    // Entity -> Agent
    WasInformedBy,      // Activity -> Activity
};

std::string to_token(NodeKind k);
std::string to_token(Relation r);
std::optional<NodeKind> node_kind_from_token(const std::string& t);
std::optional<Relation> relation_from_token(const std::string& t);

struct AttrValue {
    std::string value;
    bool identifiable = false;   // personal data, as judged by the log author
    std::string category_label;  // redaction label; required when identifiable

    auto operator<=>(const AttrValue&) const = default;
};

struct ProvNode {
    std::string id;
    NodeKind kind = NodeKind::Entity;
    std::set<std::string> type_labels;
    std::map<std::string, AttrValue> attributes;
    std::string timestamp;  // ISO-8601 with timezone, optional

    bool has_type(const std::string& label) const { return type_labels.count(label) > 0; }

    auto operator<=>(const ProvNode&) const = default;
};

struct ProvEdge {
    Relation relation = Relation::Used;
    std::string from;
    std::string to;

    auto operator<=>(const ProvEdge&) const = default;
};

struct IngestError : std::runtime_error {
    IngestError(std::string code_, const std::string& detail)
        : std::runtime_error(code_ + ": " + detail), code(std::move(code_)) {}
    std::string code;  // MalformedLine, DuplicateNode, DanglingEdge, KindViolation
};

struct UnknownSubject : std::runtime_error {
    explicit UnknownSubject(const std::string& id)
        : std::runtime_error("unknown subject node: " + id) {}
};

struct PathStep {
    Relation relation = Relation::WasDerivedFrom;
    bool inbound = false;  // false: follow edges from current node; true: edges into it
};

struct AttrPredicate {
    std::string key;
    std::optional<std::string> equals;  // absent = existence check
};

struct NodeSelector {
    std::optional<NodeKind> kind;
    std::optional<std::string> type_label;
    std::vector<AttrPredicate> attr_predicates;
    std::optional<std::vector<PathStep>> path;  // anchored at the query subject
};

class ProvGraph {
public:
    const std::map<std::string, ProvNode>& nodes() const { return nodes_; }
    const std::vector<ProvEdge>& edges() const { return edges_; }

    const ProvNode* find(const std::string& id) const;

    // Entity nodes attributed or derived (transitively, one hop) to the subject.
    std::vector<std::string> subject_index(const std::string& subject_id) const;

    friend ProvGraph ingest(const std::string& jsonl);
    friend bool operator==(const ProvGraph& a, const ProvGraph& b) = default;

private:
    std::map<std::string, ProvNode> nodes_;
    std::vector<ProvEdge> edges_;
};

// Whole-batch ingest; dangling references are resolved once the batch ends.
ProvGraph ingest(const std::string& jsonl);

std::string serialize(const ProvGraph& g);

// All nodes satisfying the selector, ordered by (timestamp, id). A selector
// with a path is anchored at `subject`; without one it scans the whole graph.
std::vector<ProvNode> query(const ProvGraph& g, const NodeSelector& sel,
                            const std::string& subject = {});

}  // namespace prov
}  // namespace plead
