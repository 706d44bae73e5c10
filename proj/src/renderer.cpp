#include "plead/renderer.hpp"

#include <algorithm>

#include "json.hpp"

namespace plead {

using nlohmann::json;

std::vector<Template> load_templates(const std::string& templates_json) {
    json doc;
    try {
        doc = json::parse(templates_json);
    } catch (const json::parse_error& e) {
        throw RenderError("BadTemplateFile", e.what());
    }
    if (!doc.is_array()) throw RenderError("BadTemplateFile", "expected a JSON array");

    std::vector<Template> out;
    for (const auto& tj : doc) {
        Template t;
        t.id = tj.at("id").get<std::string>();
        t.requirement_id = tj.at("requirement").get<std::string>();
        if (tj.contains("recipients") && tj["recipients"].is_array())
            for (const auto& r : tj["recipients"])
                t.recipient_selector.insert(r.get<std::string>());
        if (tj.contains("goals") && tj["goals"].is_array()) {
            for (const auto& g : tj["goals"]) {
                auto goal = goal_from_token(g.get<std::string>());
                if (!goal)
                    throw RenderError("BadTemplateFile",
                                      t.id + ": unknown goal " + g.get<std::string>());
                t.goal_selector.insert(*goal);
            }
        }
        t.body = tj.at("body").get<std::string>();
        if (t.body.empty()) throw RenderError("BadTemplateFile", t.id + ": empty body");
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

bool admits(const Template& t, const ExplanationRequirement& req,
            const RecipientClass& recipient) {
    if (t.requirement_id != req.id) return false;
    if (!t.recipient_selector.empty() && !t.recipient_selector.count(recipient.name))
        return false;
    if (!t.goal_selector.empty()) {
        for (const Goal g : t.goal_selector)
            if (!req.classification.goals.count(g)) return false;
    }
    return true;
}

}  // namespace

const Template& select_template(const std::vector<Template>& templates,
                                const ExplanationRequirement& req,
                                const RecipientClass& recipient) {
    const Template* best = nullptr;
    for (const auto& t : templates) {
        if (!admits(t, req, recipient)) continue;
        if (!best || t.specificity() > best->specificity() ||
            (t.specificity() == best->specificity() && t.id < best->id))
            best = &t;
    }
    if (!best) throw RenderError("NoTemplate", req.id + " / " + recipient.name);
    return *best;
}

std::string redact(const std::string& value, const prov::AttrValue& meta) {
    if (!meta.identifiable) return value;
    if (meta.category_label.empty())
        throw RenderError("MissingCategoryLabel", value);
    return meta.category_label;
}

namespace {

struct SlotContext {
    const ContentBindings* bindings;
    Sensitivity sensitivity;
    std::vector<std::string>* gaps;
    RenderMode mode;
    std::vector<std::string>* missing_refs;
};

std::string attr_text(const prov::AttrValue& v, Sensitivity sensitivity) {
    return sensitivity == Sensitivity::Aggregated ? redact(v.value, v) : v.value;
}

bool is_missing(const ContentBindings& b, const std::string& item_id) {
    return std::find(b.missing.begin(), b.missing.end(), item_id) != b.missing.end();
}

std::string gap_marker(const std::string& item_id) {
    return "⟨unavailable: " + item_id + "⟩";
}

// Resolves a plain slot {item_id} or {item_id.attr}.
std::string resolve_slot(const std::string& name, const SlotContext& ctx) {
    std::string item_id = name;
    std::string attr;
    if (auto dot = name.find('.'); dot != std::string::npos) {
        item_id = name.substr(0, dot);
        attr = name.substr(dot + 1);
    }
    const auto& b = *ctx.bindings;
    if (is_missing(b, item_id)) {
        ctx.missing_refs->push_back(item_id);
        ctx.gaps->push_back(item_id);
        return gap_marker(item_id);
    }
    auto it = b.bindings.find(item_id);
    if (it == b.bindings.end()) throw RenderError("UnboundSlot", name);
    if (it->second.empty()) {
        // optional item with no matches
        ctx.gaps->push_back(item_id);
        return gap_marker(item_id);
    }
    if (attr.empty()) {
        const auto& first = it->second.front();
        if (first.values.empty()) throw RenderError("UnboundSlot", name);
        return attr_text(first.values.front().second, ctx.sensitivity);
    }
    for (const auto& node : it->second)
        for (const auto& [key, value] : node.values)
            if (key == attr) return attr_text(value, ctx.sensitivity);
    throw RenderError("UnboundSlot", name);
}

std::string render_each(const std::string& item_id, const std::string& block,
                        const SlotContext& ctx) {
    const auto& b = *ctx.bindings;
    if (is_missing(b, item_id)) {
        ctx.missing_refs->push_back(item_id);
        ctx.gaps->push_back(item_id);
        return gap_marker(item_id);
    }
    auto it = b.bindings.find(item_id);
    if (it == b.bindings.end()) throw RenderError("UnboundSlot", item_id);

    std::string out;
    for (const auto& node : it->second) {
        std::string piece;
        std::size_t pos = 0;
        while (pos < block.size()) {
            const auto open = block.find('{', pos);
            if (open == std::string::npos) {
                piece += block.substr(pos);
                break;
            }
            piece += block.substr(pos, open - pos);
            const auto close = block.find('}', open);
            if (close == std::string::npos) throw RenderError("UnboundSlot", block);
            const std::string slot = block.substr(open + 1, close - open - 1);
            if (slot == "id") {
                piece += node.node_id;
            } else {
                bool found = false;
                for (const auto& [key, value] : node.values) {
                    if (key == slot) {
                        piece += attr_text(value, ctx.sensitivity);
                        found = true;
                        break;
                    }
                }
                if (!found) throw RenderError("UnboundSlot", item_id + "#" + slot);
            }
            pos = close + 1;
        }
        out += piece;
    }
    return out;
}

std::string render_body(const std::string& body, const SlotContext& ctx) {
    std::string out;
    std::size_t pos = 0;
    while (pos < body.size()) {
        const auto open = body.find('{', pos);
        if (open == std::string::npos) {
            out += body.substr(pos);
            break;
        }
        out += body.substr(pos, open - pos);
        if (body.compare(open, 6, "{#each") == 0) {
            const auto name_end = body.find('}', open);
            if (name_end == std::string::npos)
                throw RenderError("UnboundSlot", "unterminated each block");
            std::string item_id = body.substr(open + 6, name_end - open - 6);
            item_id.erase(0, item_id.find_first_not_of(' '));
            const auto block_end = body.find("{/each}", name_end);
            if (block_end == std::string::npos)
                throw RenderError("UnboundSlot", "missing {/each} for " + item_id);
            const std::string block =
                body.substr(name_end + 1, block_end - name_end - 1);
            out += render_each(item_id, block, ctx);
            pos = block_end + 7;
        } else {
            const auto close = body.find('}', open);
            if (close == std::string::npos)
                throw RenderError("UnboundSlot", "unterminated slot");
            out += resolve_slot(body.substr(open + 1, close - open - 1), ctx);
            pos = close + 1;
        }
    }
    return out;
}

}  // namespace

ExplanationInstance render(const Template& t, const ContentBindings& b,
                           const ExplanationRequirement& req,
                           const RecipientClass& recipient, RenderMode mode,
                           const std::string& generated_at) {
    const auto& content = req.classification.content;
    if (content.confidentiality == Confidentiality::Confidential &&
        recipient.facing == Facing::OutwardFacing)
        throw RenderError("ConfidentialOutward", recipient.name);

    ExplanationInstance inst;
    inst.requirement_id = req.id;
    inst.subject_id = b.subject_id;
    inst.recipient = recipient;
    inst.bindings = b;
    inst.generated_at = generated_at;

    std::vector<std::string> missing_refs;
    SlotContext ctx{&b, content.sensitivity, &inst.gaps, mode, &missing_refs};
    inst.text = render_body(t.body, ctx);

    if (mode == RenderMode::Strict && !missing_refs.empty()) {
        std::string detail;
        for (const auto& id : missing_refs) detail += (detail.empty() ? "" : ", ") + id;
        throw RenderError("MissingContent", detail);
    }
    return inst;
}

}  // namespace plead
