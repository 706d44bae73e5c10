#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "plead/delivery.hpp"
#include "plead/matcher.hpp"
#include "plead/provenance.hpp"
#include "plead/registry.hpp"
#include "plead/renderer.hpp"
#include "plead/taxonomy.hpp"
#include "plead/turtle.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write " + path.string());
    out << content;
}

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

void emit_error(bool as_json, const std::string& code, const std::string& message) {
    if (as_json) {
        std::cout << json{{"errors", {{{"code", code}, {"message", message}}}}}.dump()
                  << "\n";
    } else {
        std::cerr << "error: " << code << ": " << message << "\n";
    }
}

plead::RecipientClass resolve_recipient(const plead::Registry& reg,
                                        const std::string& name) {
    plead::RecipientClass rc;
    rc.name = name;
    if (auto facing = plead::core_recipient_facing(name)) {
        rc.facing = *facing;
        return rc;
    }
    for (const auto& e : reg.recipient_extensions()) {
        if (e.name == name) return e;
    }
    throw plead::LoadError("UnknownRecipient", name);
}

std::string sanitize_filename(std::string s) {
    for (char& c : s)
        if (c == '/' || c == '\\' || c == ':') c = '_';
    return s;
}

struct Options {
    std::string registry_path;
    std::string patterns_path;
    std::string templates_path;
    std::string trail_path;
    std::string events_path;
    std::string out_dir = ".";
    bool as_json = false;
    std::string at;  // injectable clock
    std::string mode = "strict";
};

int cmd_validate(const Options& opt) {
    const auto reg = plead::load_registry(read_file(opt.registry_path));
    const auto lint = plead::lint_registry(reg);
    if (opt.as_json) {
        json out;
        out["requirements"] = reg.size();
        out["valid"] = true;
        out["lint_warnings"] = lint.warnings.size();
        out["streamline_groups"] = lint.streamline_groups.size();
        std::cout << out.dump() << "\n";
    } else {
        std::cout << reg.size() << " requirements valid\n";
        if (!lint.empty())
            std::cout << lint.warnings.size() << " lint warning(s), "
                      << lint.streamline_groups.size() << " streamlining group(s)\n";
    }
    return kExitOk;
}

int cmd_lint(const Options& opt) {
    const auto reg = plead::load_registry(read_file(opt.registry_path));
    const auto report = plead::lint_registry(reg);
    if (opt.as_json) {
        json out;
        out["warnings"] = json::array();
        for (const auto& w : report.warnings)
            out["warnings"].push_back({{"code", w.code}, {"message", w.message}});
        out["streamline_groups"] = json::array();
        for (const auto& g : report.streamline_groups)
            out["streamline_groups"].push_back(g.requirement_ids);
        std::cout << out.dump() << "\n";
    } else {
        for (const auto& g : report.streamline_groups) {
            std::cout << "streamlining candidates:";
            for (const auto& id : g.requirement_ids) std::cout << " " << id;
            std::cout << "\n";
        }
        for (const auto& w : report.warnings)
            std::cout << "warning: " << w.code << ": " << w.message << "\n";
        if (report.empty()) std::cout << "no findings\n";
    }
    return kExitOk;
}

int cmd_export(const Options& opt, const std::string& format) {
    const auto reg = plead::load_registry(read_file(opt.registry_path));
    const fs::path out_dir(opt.out_dir);
    if (format == "ttl") {
        write_file(out_dir / "vocabulary.ttl",
                   plead::rdf::write_turtle(plead::rdf::emit_vocabulary()));
        write_file(out_dir / "instances.ttl", plead::rdf::to_turtle(reg.requirements()));
        std::cout << "wrote " << (out_dir / "vocabulary.ttl").string() << " and "
                  << (out_dir / "instances.ttl").string() << "\n";
    } else if (format == "csv") {
        write_file(out_dir / "matrix.csv", plead::matrix(reg).to_csv());
        std::cout << "wrote " << (out_dir / "matrix.csv").string() << "\n";
    } else {
        emit_error(opt.as_json, "UsageError", "format must be ttl or csv");
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_ingest(const Options& opt) {
    const auto graph = plead::prov::ingest(read_file(opt.trail_path));
    if (opt.as_json) {
        std::cout << json{{"nodes", graph.nodes().size()},
                          {"edges", graph.edges().size()}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "ingested " << graph.nodes().size() << " nodes, "
                  << graph.edges().size() << " edges\n";
    }
    return kExitOk;
}

int cmd_explain(const Options& opt, const std::string& requirement,
                const std::string& subject, const std::string& recipient_name) {
    const auto reg = plead::load_registry(read_file(opt.registry_path));
    const auto* req = reg.find(requirement);
    if (!req) {
        emit_error(opt.as_json, "UnknownRequirement", requirement);
        return kExitValidation;
    }
    const auto graph = plead::prov::ingest(read_file(opt.trail_path));
    const auto patterns_json = read_file(opt.patterns_path);
    const auto templates = plead::load_templates(read_file(opt.templates_path));
    const auto recipient = resolve_recipient(reg, recipient_name);

    const auto patterns = plead::compile_patterns(*req, patterns_json);
    const auto bindings = plead::bind(patterns, graph, subject, req->id);
    const auto mode = opt.mode == "gapmarked" ? plead::RenderMode::GapMarked
                                              : plead::RenderMode::Strict;
    const auto clock = opt.at.empty() ? now_iso8601() : opt.at;
    const auto& t = plead::select_template(templates, *req, recipient);
    const auto inst = plead::render(t, bindings, *req, recipient, mode, clock);

    if (opt.as_json) {
        std::cout << json{{"requirement", inst.requirement_id},
                          {"subject", inst.subject_id},
                          {"recipient", recipient_name},
                          {"text", inst.text},
                          {"gaps", inst.gaps}}
                         .dump()
                  << "\n";
    } else {
        std::cout << inst.text << "\n";
    }
    return kExitOk;
}

int cmd_simulate(const Options& opt) {
    const auto reg = plead::load_registry(read_file(opt.registry_path));
    const auto graph = plead::prov::ingest(read_file(opt.trail_path));
    const auto patterns_json = read_file(opt.patterns_path);
    const auto templates = plead::load_templates(read_file(opt.templates_path));
    const auto events = plead::parse_event_log(read_file(opt.events_path));
    const auto clock = opt.at.empty() ? now_iso8601() : opt.at;

    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir / "explanations");
    std::ofstream log(out_dir / "actions.jsonl", std::ios::binary);
    if (!log) throw IoFailure("cannot write action log");

    std::size_t count = 0;
    for (const auto& e : events) {
        const auto actions =
            plead::on_event(e, reg, graph, templates, patterns_json, clock);
        for (const auto& a : actions) {
            log << plead::action_to_json(a) << "\n";
            if (a.explanation) {
                const std::string name = sanitize_filename(
                    a.requirement_id + "__" + a.recipients.front().name + ".txt");
                write_file(out_dir / "explanations" / name, a.explanation->text + "\n");
            }
            ++count;
        }
    }
    std::cout << "replayed " << events.size() << " event(s), emitted " << count
              << " delivery action(s) to " << (out_dir / "actions.jsonl").string()
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PLEAD explanation taxonomy toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the shared flags after the subcommand too

    Options opt;
    app.add_option("--registry", opt.registry_path, "registry JSON file");
    app.add_option("--patterns", opt.patterns_path, "content pattern mapping JSON");
    app.add_option("--templates", opt.templates_path, "template JSON file");
    app.add_option("--trail", opt.trail_path, "audit trail JSONL");
    app.add_option("--events", opt.events_path, "event log JSONL");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_flag("--json", opt.as_json, "machine-readable output");
    app.add_option("--at", opt.at, "fixed clock instant for generated_at");
    app.add_option("--mode", opt.mode, "render mode: strict|gapmarked")
        ->check(CLI::IsMember({"strict", "gapmarked"}));

    auto* validate = app.add_subcommand("validate", "validate a registry");
    auto* lint = app.add_subcommand("lint", "lint a registry");
    auto* exp = app.add_subcommand("export", "export ttl or csv artifacts");
    std::string format = "ttl";
    exp->add_option("--format", format, "ttl|csv");
    auto* ingest = app.add_subcommand("ingest", "ingest and check an audit trail");
    auto* explain = app.add_subcommand("explain", "render one explanation");
    std::string requirement, subject, recipient;
    explain->add_option("requirement", requirement)->required();
    explain->add_option("subject", subject)->required();
    explain->add_option("recipient", recipient)->required();
    auto* simulate = app.add_subcommand("simulate", "replay an event log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (lint->parsed()) return cmd_lint(opt);
        if (exp->parsed()) return cmd_export(opt, format);
        if (ingest->parsed()) return cmd_ingest(opt);
        if (explain->parsed()) return cmd_explain(opt, requirement, subject, recipient);
        if (simulate->parsed()) return cmd_simulate(opt);
    } catch (const IoFailure& e) {
        emit_error(opt.as_json, "IoError", e.what());
        return kExitIo;
    } catch (const plead::LoadError& e) {
        emit_error(opt.as_json, e.code, e.what());
        return kExitValidation;
    } catch (const plead::prov::IngestError& e) {
        emit_error(opt.as_json, e.code, e.what());
        return kExitValidation;
    } catch (const plead::PatternError& e) {
        emit_error(opt.as_json, e.code, e.what());
        return kExitValidation;
    } catch (const plead::RenderError& e) {
        emit_error(opt.as_json, e.code, e.what());
        return kExitValidation;
    } catch (const plead::DeliveryError& e) {
        emit_error(opt.as_json, e.code, e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        emit_error(opt.as_json, "Error", e.what());
        return kExitValidation;
    }
    return kExitUsage;
}
