// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "plead/delivery.hpp"
#include "plead/matcher.hpp"
#include "plead/registry.hpp"
#include "plead/renderer.hpp"
#include "plead/taxonomy.hpp"
#include "plead/turtle.hpp"

namespace fs = std::filesystem;
using namespace plead;

namespace {

std::string data_path(const std::string& name) {
    return std::string(PLEAD_DATA_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

// ---- criterion 1: vocabulary counts --------------------------------------

Check criterion_vocabulary() {
    Check c;
    const auto& v = vocabulary();
    c.require(v.dimensions.size() == 9,
              "expected 9 dimensions, got " + std::to_string(v.dimensions.size()));
    int understandability = 0, intervenability = 0;
    for (Goal g : all_goals())
        (goal_family(g) == GoalFamily::Understandability ? understandability
                                                         : intervenability)++;
    c.require(understandability == 11, "expected 11 Understandability goals, got " +
                                           std::to_string(understandability));
    c.require(intervenability == 12, "expected 12 Intervenability goals, got " +
                                         std::to_string(intervenability));
    return c;
}

// ---- criterion 2: ontology counts ----------------------------------------

Check criterion_ontology() {
    Check c;
    const auto ts = rdf::emit_vocabulary();
    const std::string rdf_type = std::string(rdf::kRdfNs) + "type";
    int classes = 0, properties = 0;
    for (const auto& t : ts.triples) {
        if (t.predicate != rdf_type) continue;
        if (t.object == rdf::Term::iri(std::string(rdf::kOwlNs) + "Class")) ++classes;
        if (t.object == rdf::Term::iri(std::string(rdf::kOwlNs) + "ObjectProperty"))
            ++properties;
    }
    c.require(classes == 10, "expected 10 classes, got " + std::to_string(classes));
    c.require(properties == 9,
              "expected 9 object properties, got " + std::to_string(properties));
    return c;
}

// ---- criterion 3: reference instance round-trip --------------------------

Check criterion_roundtrip() {
    Check c;
    const auto original = rdf::parse_turtle(read_file(data_path("listing1.ttl")));
    const auto reparsed = rdf::parse_turtle(rdf::write_turtle(original));
    c.require(reparsed == original, "parse/write/parse is not the identity");

    const auto reg = load_registry(read_file(data_path("gdpr_registry.json")));
    const auto emitted = rdf::requirements_to_triples(reg.requirements());
    const std::string xplain1 = std::string(rdf::kPleadNs) + "xplain1";
    const auto produced = emitted.with_subject(xplain1);
    for (const auto& t : original.triples)
        c.require(produced.count(t) == 1,
                  "missing reference triple with predicate " + t.predicate);
    c.require(produced.size() == original.triples.size(),
              "extra triples beyond the reference instance");
    return c;
}

// ---- criterion 4: corpus fidelity ----------------------------------------

Check criterion_corpus() {
    Check c;
    const auto reg = load_registry(read_file(data_path("gdpr_registry.json")));
    c.require(reg.size() == 19,
              "expected 19 requirements, got " + std::to_string(reg.size()));
    const auto m = matrix(reg);
    c.require(m.cell("Key decision points", "Minimum content") ==
                  "Key data values; associated weights",
              "'Key decision points' minimum-content cell mismatch");
    c.require(m.cell("Verification of the results", "Minimum content") ==
                  "Processed data; data source; model rules; audit trails",
              "'Verification of the results' minimum-content cell mismatch");
    return c;
}

// ---- criterion 5: loan-scenario goldens via the CLI ----------------------

Check criterion_goldens() {
    Check c;
    const fs::path out = fs::temp_directory_path() / "plead_acceptance_out";
    fs::remove_all(out);

    std::ostringstream cmd;
    cmd << '"' << PLEAD_CLI_PATH << '"' << " simulate"
        << " --registry " << data_path("gdpr_registry.json")
        << " --patterns " << data_path("patterns.json")
        << " --templates " << data_path("templates.json")
        << " --trail " << data_path("loan_trail.jsonl")
        << " --events " << data_path("events.jsonl")
        << " --at 2021-02-18T12:00:00Z --out " << out.string()
        << " > /dev/null";

    const auto start = std::chrono::steady_clock::now();
    const int rc = std::system(cmd.str().c_str());
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    c.require(rc == 0, "simulate exited with status " + std::to_string(rc));
    c.require(elapsed < 5000,
              "simulate took " + std::to_string(elapsed) + " ms (budget 5000)");
    if (!c.ok) return c;

    std::string all;
    for (const auto& entry : fs::directory_iterator(out / "explanations"))
        all += read_file(entry.path().string()) + "\n";

    const std::vector<std::string> goldens = {
        "This is because of negative credit history.",
        "below the acceptance threshold of 750",
        "The current score of 715",
        "records/70551",
        "records/70552",
        "records/70553",
    };
    for (const auto& g : goldens)
        c.require(all.find(g) != std::string::npos, "rendered texts lack \"" + g + "\"");
    return c;
}

// ---- criterion 6: ICO minimum-content coverage ---------------------------

Check criterion_ico_coverage() {
    Check c;
    const auto reg = load_registry(read_file(data_path("gdpr_registry.json")));
    const auto graph = prov::ingest(read_file(data_path("loan_trail.jsonl")));
    const auto mapping = read_file(data_path("patterns.json"));

    struct IcoItem {
        const char* description;
        const char* requirement;
        const char* item;
    };
    const std::vector<IcoItem> box = {
        {"which information were taken into account", "how_decision_reached",
         "necessary_data"},
        {"the rationale behind the decision", "why_decision_reached", "rationale"},
        {"the key decision points that formed the basis for the decision",
         "key_decision_points", "key_data_values"},
        {"alternative decisions considered and why not preferred",
         "alternatives_considered", "alternative_decisions"},
        {"how to ask for a review", "how_to_request_review", "review_process"},
        {"how to make an appeal and the available grounds",
         "how_to_exercise_rights", "available_rights"},
    };

    int item_no = 0;
    for (const auto& entry : box) {
        ++item_no;
        const auto* req = reg.find(entry.requirement);
        if (!req) {
            c.require(false, std::string("requirement missing: ") + entry.requirement);
            continue;
        }
        const auto bindings = plead::bind(compile_patterns(*req, mapping), graph,
                                   "applications_no/437", req->id);
        const auto it = bindings.bindings.find(entry.item);
        const bool covered = it != bindings.bindings.end() && !it->second.empty();
        std::cout << "    coverage item " << item_no << " (" << entry.description
                  << "): " << (covered ? "covered" : "NOT covered") << " by "
                  << entry.requirement << "/" << entry.item << "\n";
        c.require(covered, std::string("item uncovered: ") + entry.description);
    }
    return c;
}

// ---- criterion 7: property suites ----------------------------------------

Check criterion_properties() {
    Check c;
    std::mt19937 rng(31337);
    auto roll = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    // Confidentiality: no render ever pairs confidential content with an
    // outward recipient, across randomized runs.
    {
        int violations = 0, runs = 0;
        const std::vector<RecipientClass> candidates = {
            {Facing::OutwardFacing, "data_subject", false},
            {Facing::OutwardFacing, "third_party", false},
            {Facing::InwardFacing, "administrator", false},
        };
        ExplanationRequirement req;
        req.id = "r";
        while (runs < 10000) {
            Classification cls;
            cls.sources = {{SourceVariant::Secondary, ""}};
            cls.trigger = {TriggerKind::Decision, "e"};
            cls.content.confidentiality = roll(0, 1) ? Confidentiality::Confidential
                                                     : Confidentiality::Disclosable;
            cls.content.minimum_content = {{"item", "item"}};
            cls.goals = {Goal::Fairness};
            req.classification = cls;
            for (const auto& recipient : candidates) {
                ++runs;
                Template t{"t", "r", {}, {}, "body"};
                ContentBindings b;
                try {
                    const auto inst =
                        render(t, b, req, recipient, RenderMode::GapMarked, "now");
                    if (cls.content.confidentiality == Confidentiality::Confidential &&
                        inst.recipient.facing == Facing::OutwardFacing)
                        ++violations;
                } catch (const RenderError&) {
                    // rejection is the expected handling
                }
            }
        }
        c.require(violations == 0, std::to_string(violations) +
                                       " confidential/outward pairings escaped");
    }

    // Sensitivity: aggregated renders never contain a pii-flagged raw value.
    {
        int leaks = 0;
        for (int iter = 0; iter < 2000; ++iter) {
            ExplanationRequirement req;
            req.id = "r";
            req.classification.content.sensitivity = Sensitivity::Aggregated;
            ContentBindings b;
            const std::string secret = "RAW_" + std::to_string(iter);
            b.bindings["item"] = {
                {"n", {{"k", prov::AttrValue{secret, true, "the category"}}}}};
            Template t{"t", "r", {}, {}, "{item.k} and {#each item}{k}{/each}"};
            const auto inst =
                render(t, b, req, {Facing::InwardFacing, "administrator", false},
                       RenderMode::GapMarked, "now");
            if (inst.text.find(secret) != std::string::npos) ++leaks;
        }
        c.require(leaks == 0, std::to_string(leaks) + " aggregated renders leaked pii");
    }

    // Round-trip: registry and Turtle serializations are identity, on the
    // shipped corpus replicated with fresh ids to exceed 1,000 instances.
    {
        const auto base = load_registry(read_file(data_path("gdpr_registry.json")));
        int instances = 0, failures = 0;
        for (int iter = 0; iter < 53 && failures == 0; ++iter) {
            auto doc = serialize_registry(base);
            const std::string version = "v" + std::to_string(iter) + "_";
            // Re-version requirement ids and the parent references to them.
            for (const std::string marker : {"\"id\": \"", "\"parent\": \""})
                for (std::size_t pos = doc.find(marker); pos != std::string::npos;
                     pos = doc.find(marker, pos + 1))
                    doc.insert(pos + marker.size(), version);
            const auto reg = load_registry(doc);
            instances += static_cast<int>(reg.size());
            if (load_registry(serialize_registry(reg)) != reg) ++failures;
            const auto ts = rdf::requirements_to_triples(reg.requirements());
            if (rdf::parse_turtle(rdf::write_turtle(ts)) != ts) ++failures;
        }
        c.require(instances >= 1000, "only " + std::to_string(instances) +
                                         " round-tripped instances");
        c.require(failures == 0, std::to_string(failures) + " round-trip failures");
    }

    // Delivery: reactive requirements fire only on RequestReceived, and the
    // engine's (requirement, recipient) output matches a direct filter.
    {
        const auto reg = load_registry(read_file(data_path("gdpr_registry.json")));
        const auto graph = prov::ingest(read_file(data_path("loan_trail.jsonl")));
        const auto templates = load_templates(read_file(data_path("templates.json")));
        const auto mapping = read_file(data_path("patterns.json"));

        int mismatches = 0, reactive_violations = 0;
        for (int iter = 0; iter < 300; ++iter) {
            Event e;
            e.kind = static_cast<EventKind>(roll(0, 3));
            e.event_name = std::vector<std::string>{
                "loan_application", "loan_decision", "review_request",
                "unrelated"}[static_cast<std::size_t>(roll(0, 3))];
            e.subject_id = e.kind == EventKind::ProcessingAnnounced
                               ? "processing/loan_screening"
                               : "applications_no/437";
            if (e.kind == EventKind::RequestReceived) {
                e.requester = RecipientClass{Facing::OutwardFacing, "data_subject",
                                             false};
                const auto& reqs = reg.requirements();
                e.requested_requirement =
                    reqs[static_cast<std::size_t>(
                             roll(0, static_cast<int>(reqs.size()) - 1))]
                        .id;
            }

            std::vector<std::pair<std::string, std::string>> expected;
            for (const auto& req : reg.requirements()) {
                const auto& cls = req.classification;
                if (cls.autonomy == Autonomy::Reactive) {
                    if (e.kind == EventKind::RequestReceived &&
                        e.requested_requirement == req.id &&
                        cls.recipients.count(*e.requester))
                        expected.push_back({req.id, e.requester->name});
                    continue;
                }
                const bool kind_match =
                    (cls.trigger.kind == TriggerKind::Action &&
                     e.kind == EventKind::ActionPerformed) ||
                    (cls.trigger.kind == TriggerKind::Processing &&
                     e.kind == EventKind::ProcessingAnnounced) ||
                    (cls.trigger.kind == TriggerKind::Decision &&
                     e.kind == EventKind::DecisionMade);
                if (!kind_match || cls.trigger.event_name != e.event_name) continue;
                for (const auto& rc : cls.recipients)
                    expected.push_back({req.id, rc.name});
            }

            const auto actions = on_event(e, reg, graph, templates, mapping, "now");
            std::vector<std::pair<std::string, std::string>> got;
            for (const auto& a : actions) {
                got.push_back({a.requirement_id, a.recipients.front().name});
                const auto* req = reg.find(a.requirement_id);
                if (req->classification.autonomy == Autonomy::Reactive &&
                    e.kind != EventKind::RequestReceived)
                    ++reactive_violations;
            }
            if (got != expected) ++mismatches;
        }
        c.require(mismatches == 0,
                  std::to_string(mismatches) + " engine/filter mismatches");
        c.require(reactive_violations == 0,
                  std::to_string(reactive_violations) + " reactive misfires");
    }
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"1 vocabulary counts (9 dimensions, 11 + 12 goals)", criterion_vocabulary},
        {"2 ontology counts (10 classes, 9 object properties)", criterion_ontology},
        {"3 reference instance round-trip", criterion_roundtrip},
        {"4 corpus fidelity (19 requirements, matrix cells)", criterion_corpus},
        {"5 loan-scenario goldens via the CLI", criterion_goldens},
        {"6 ICO minimum-content coverage", criterion_ico_coverage},
        {"7 property suites", criterion_properties},
    };

    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << name;
        if (!c.ok) std::cout << " — " << c.detail;
        std::cout << "\n";
        if (!c.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
