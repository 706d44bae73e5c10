#include "doctest.h"

#include <algorithm>
#include <map>

#include "helpers.hpp"
#include "plead/taxonomy.hpp"

using namespace plead;

TEST_CASE("goal families partition into 11 + 12") {
    CHECK(goal_family(Goal::Transparency) == GoalFamily::Understandability);
    CHECK(goal_family(Goal::Scrutability) == GoalFamily::Intervenability);

    int understandability = 0, intervenability = 0;
    for (Goal g : all_goals()) {
        if (goal_family(g) == GoalFamily::Understandability)
            ++understandability;
        else
            ++intervenability;
    }
    CHECK(understandability == 11);
    CHECK(intervenability == 12);
    CHECK(all_goals().size() == 23);
}

TEST_CASE("goal tokens are unique and reversible") {
    std::set<std::string> tokens;
    for (Goal g : all_goals()) {
        const auto tok = to_token(g);
        CHECK(tokens.insert(tok).second);
        REQUIRE(goal_from_token(tok).has_value());
        CHECK(*goal_from_token(tok) == g);
    }
}

TEST_CASE("vocabulary has nine dimensions") {
    const auto& v = vocabulary();
    CHECK(v.dimensions.size() == 9);
    CHECK(v.dimensions.size() <= 9);  // conciseness bound
    CHECK(v.goals.size() == 23);
}

TEST_CASE("no value token appears under two dimensions") {
    const auto& v = vocabulary();
    std::map<std::string, int> owner_count;
    for (const auto& dim : v.dimensions) {
        std::set<std::string> within;
        for (const auto& value : dim.values) {
            CHECK(within.insert(value).second);  // no duplication within a dimension
            ++owner_count[value];
        }
    }
    for (const auto& [value, count] : owner_count) {
        INFO("value: " << value);
        CHECK(count == 1);
    }
}

TEST_CASE("valid classification produces an empty report") {
    const auto report = validate_classification(test::listing1_classification());
    CHECK(report.ok());
}

TEST_CASE("missing goals is a violation") {
    auto c = test::listing1_classification();
    c.goals.clear();
    const auto report = validate_classification(c);
    REQUIRE_FALSE(report.ok());
    CHECK(std::any_of(report.violations.begin(), report.violations.end(),
                      [](const Violation& v) { return v.code == "MissingGoals"; }));
}

TEST_CASE("confidential content cannot target an outward recipient") {
    auto c = test::listing1_classification();
    c.content.confidentiality = Confidentiality::Confidential;
    const auto report = validate_classification(c);
    REQUIRE_FALSE(report.ok());
    CHECK(std::any_of(report.violations.begin(), report.violations.end(),
                      [](const Violation& v) {
                          return v.code == "ConfidentialOutwardRecipient";
                      }));
}

TEST_CASE("core recipient names are bound to their facing") {
    auto c = test::listing1_classification();
    c.recipients = {{Facing::InwardFacing, "data_subject", false}};
    const auto report = validate_classification(c);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.front().code == "RecipientFacingMismatch");

    c.recipients = {{Facing::InwardFacing, "site_reliability", true}};
    CHECK(validate_classification(c).ok());  // declared extension picks its facing
}

TEST_CASE("empty trigger event and duplicate content items are violations") {
    auto c = test::listing1_classification();
    c.trigger.event_name.clear();
    CHECK_FALSE(validate_classification(c).ok());

    c = test::listing1_classification();
    c.content.minimum_content.push_back(c.content.minimum_content.front());
    const auto report = validate_classification(c);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.front().code == "DuplicateContentItem");
}
