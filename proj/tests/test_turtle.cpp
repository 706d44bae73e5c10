#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "plead/registry.hpp"
#include "plead/turtle.hpp"

using namespace plead;
using namespace plead::rdf;

namespace {

const std::string kXplain1 = std::string(kPleadNs) + "xplain1";
const std::string kRdfType = std::string(kRdfNs) + "type";

int count_typed(const TripleSet& ts, const std::string& type_iri) {
    int n = 0;
    for (const auto& t : ts.triples)
        if (t.predicate == kRdfType && t.object == Term::iri(type_iri)) ++n;
    return n;
}

}  // namespace

TEST_CASE("reference instance parses to sixteen triples") {
    const auto ts = parse_turtle(test::read_fixture("listing1.ttl"));
    CHECK(ts.triples.size() == 16);
    const auto subject = ts.with_subject(kXplain1);
    CHECK(subject.size() == 16);
    CHECK(subject.count({kXplain1, std::string(kPleadNs) + "hasSource",
                         Term::iri(std::string(kPleadNs) + "implicit_art_22")}) == 1);
    // The printed line-wrap inside the example literal collapses to one space.
    CHECK(subject.count({kXplain1, std::string(kPleadNs) + "example",
                         Term::literal("To be able to process applications quickly "
                                       "and accurately, the Bank uses an automated "
                                       "system.")}) == 1);
}

TEST_CASE("parse / write / parse is the identity on the reference instance") {
    const auto ts = parse_turtle(test::read_fixture("listing1.ttl"));
    CHECK(parse_turtle(write_turtle(ts)) == ts);
}

TEST_CASE("serializing the first corpus requirement reproduces the reference") {
    const auto reg = load_registry(test::read_fixture("gdpr_registry.json"));
    const auto emitted = requirements_to_triples(reg.requirements());
    const auto expected = parse_turtle(test::read_fixture("listing1.ttl"));
    CHECK(emitted.with_subject(kXplain1) == expected.with_subject(kXplain1));
}

TEST_CASE("vocabulary declares ten classes and nine object properties") {
    const auto ts = emit_vocabulary();
    CHECK(count_typed(ts, std::string(kOwlNs) + "Class") == 10);
    CHECK(count_typed(ts, std::string(kOwlNs) + "ObjectProperty") == 9);
    CHECK(count_typed(ts, std::string(kOwlNs) + "DatatypeProperty") == 1);

    // Every object property has domain Explanation and a dimension range.
    const std::string domain = std::string(kRdfsNs) + "domain";
    const std::string range = std::string(kRdfsNs) + "range";
    int domains = 0, ranges = 0;
    for (const auto& t : ts.triples) {
        if (t.predicate == domain &&
            t.object == Term::iri(std::string(kPleadNs) + "Explanation"))
            ++domains;
        if (t.predicate == range) ++ranges;
    }
    CHECK(domains == 10);  // 9 object properties + plead:example
    CHECK(ranges == 9);
    CHECK(ts.triples.count({std::string(kPleadNs) + "hasGoal", range,
                            Term::iri(std::string(kPleadNs) + "ExplainabilityGoal")}) ==
          1);
}

TEST_CASE("writer output is deterministic") {
    const auto reg = load_registry(test::read_fixture("gdpr_registry.json"));
    const auto a = to_turtle(reg.requirements());
    const auto b = to_turtle(reg.requirements());
    CHECK(a == b);
    CHECK(a.rfind("@prefix owl:", 0) == 0);  // sorted prefix header
    CHECK(parse_turtle(a) == requirements_to_triples(reg.requirements()));
}

TEST_CASE("literal escapes round-trip through the writer") {
    TripleSet ts;
    ts.add(std::string(kPleadNs) + "x", std::string(kPleadNs) + "example",
           Term::literal("line one\nsaid \"two\"\tand \\ done"));
    CHECK(parse_turtle(write_turtle(ts)) == ts);
}

TEST_CASE("syntax errors report position and expectation") {
    try {
        parse_turtle("plead:x plead:hasGoal .");
        FAIL("expected a syntax error");
    } catch (const TurtleSyntaxError& e) {
        CHECK(e.line == 1);
        CHECK(e.expected == "object");
    }
    CHECK_THROWS_AS(parse_turtle("plead:x a owl:Thing"), TurtleSyntaxError);
    CHECK_THROWS_AS(parse_turtle("@prefix plead <x> ."), TurtleSyntaxError);
    CHECK_THROWS_AS(parse_turtle("plead:x plead:example \"unterminated"),
                    TurtleSyntaxError);
}

TEST_CASE("undeclared prefixes are rejected") {
    try {
        parse_turtle("foo:bar a owl:Class .");
        FAIL("expected an unknown-prefix error");
    } catch (const UnknownPrefixError& e) {
        CHECK(e.prefix == "foo");
    }
    // A declared prefix overrides the defaults.
    const auto ts = parse_turtle("@prefix ex: <http://example.org/> .\n"
                                 "ex:a a owl:Class .");
    CHECK(ts.triples.count({"http://example.org/a", kRdfType,
                            Term::iri(std::string(kOwlNs) + "Class")}) == 1);
}

TEST_CASE("comments and object lists parse") {
    const auto ts = parse_turtle("# header comment\n"
                                 "plead:x plead:hasGoal plead:a , plead:b . # tail\n");
    CHECK(ts.triples.size() == 2);
}

TEST_CASE("single-valued properties reject repetition on read-back") {
    const std::string text =
        "plead:x a owl:NamedIndividual ;\n"
        "    plead:hasPerspective plead:ex_ante , plead:ex_post .";
    CHECK_THROWS_AS(from_turtle(text), CardinalityViolation);
}

TEST_CASE("read-back recovers per-dimension tokens") {
    const auto reg = load_registry(test::read_fixture("gdpr_registry.json"));
    const auto instances = from_turtle(to_turtle(reg.requirements()));
    REQUIRE(instances.size() == 19);

    const auto it = std::find_if(instances.begin(), instances.end(),
                                 [](const ParsedInstance& i) { return i.name == "xplain1"; });
    REQUIRE(it != instances.end());
    CHECK(it->properties.at("hasGoal") ==
          std::vector<std::string>{"fairness1", "information1", "transparency1"});
    CHECK(it->properties.at("hasIntendedRecipient") ==
          std::vector<std::string>{"consumer1"});
    CHECK(it->properties.at("hasPerspective") == std::vector<std::string>{"ex_ante"});
    CHECK(it->example_text ==
          "To be able to process applications quickly and accurately, the Bank uses "
          "an automated system.");
}

TEST_CASE("names that cannot form a prefixed local name are rejected") {
    ExplanationRequirement req;
    req.id = "ok_id";
    req.classification = test::listing1_classification();
    req.classification.trigger.event_name = "bad name!";
    CHECK_THROWS_AS(to_turtle({req}), UnserializableName);
}
