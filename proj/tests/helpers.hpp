#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "plead/taxonomy.hpp"

namespace plead::test {

inline std::string data_path(const std::string& name) {
    return std::string(PLEAD_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string read_fixture(const std::string& name) {
    return read_file(data_path(name));
}

// The classification of the first corpus row, matching the RDF appendix
// instance: proactive, ex ante, mandatory, universal, aggregated and
// disclosable, goals {information, transparency, fairness}, data subject.
inline Classification listing1_classification() {
    Classification c;
    c.sources = {{SourceVariant::PrimaryImplicit, "Art. 22"}};
    c.perspective = Perspective::ExAnte;
    c.autonomy = Autonomy::Proactive;
    c.trigger = {TriggerKind::Processing, "loan_application"};
    c.content.sensitivity = Sensitivity::Aggregated;
    c.content.confidentiality = Confidentiality::Disclosable;
    c.content.minimum_content = {
        {"logic_significance", "Information about the logic & significance of the decision"}};
    c.scope = Scope::Universal;
    c.goals = {Goal::Information, Goal::Transparency, Goal::Fairness};
    c.recipients = {{Facing::OutwardFacing, "data_subject", false}};
    c.priority = Priority::Mandatory;
    return c;
}

}  // namespace plead::test
