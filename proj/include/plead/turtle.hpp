#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "plead/registry.hpp"

// RDF serialization of the taxonomy and of classified requirements, in the
// Turtle subset the vocabulary needs: @prefix, prefixed names, `a`,
// predicate lists (;), object lists (,), quoted literals, comments.

namespace plead {
namespace rdf {

inline const char* kPleadNs = "https://openprovenance.org/ns/plead#";
inline const char* kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const char* kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline const char* kOwlNs = "http://www.w3.org/2002/07/owl#";

struct Term {
    enum class Kind { Iri, Literal };
    Kind kind = Kind::Iri;
    std::string value;  // absolute IRI, or literal text (unescaped)

    static Term iri(std::string v) { return {Kind::Iri, std::move(v)}; }
    static Term literal(std::string v) { return {Kind::Literal, std::move(v)}; }

    auto operator<=>(const Term&) const = default;
};

struct Triple {
    std::string subject;    // absolute IRI
    std::string predicate;  // absolute IRI
    Term object;

    auto operator<=>(const Triple&) const = default;
};

struct TripleSet {
    std::set<Triple> triples;
    std::map<std::string, std::string> prefixes;  // prefix -> namespace IRI

    TripleSet();

    void add(const std::string& s, const std::string& p, Term o);
    std::set<Triple> with_subject(const std::string& iri) const;

    friend bool operator==(const TripleSet& a, const TripleSet& b) {
        return a.triples == b.triples;
    }
};

struct TurtleSyntaxError : std::runtime_error {
    TurtleSyntaxError(int line_, int column_, const std::string& expected_)
        : std::runtime_error("syntax error at " + std::to_string(line_) + ":" +
                             std::to_string(column_) + ", expected " + expected_),
          line(line_),
          column(column_),
          expected(expected_) {}
    int line;
    int column;
    std::string expected;
};

struct UnknownPrefixError : std::runtime_error {
    explicit UnknownPrefixError(const std::string& name)
        : std::runtime_error("unknown prefix: " + name), prefix(name) {}
    std::string prefix;
};

struct CardinalityViolation : std::runtime_error {
    CardinalityViolation(std::string subject_, std::string property_)
        : std::runtime_error("repeated single-valued property " + property_ +
                             " on " + subject_),
          subject(std::move(subject_)),
          property(std::move(property_)) {}
    std::string subject;
    std::string property;
};

struct UnserializableName : std::runtime_error {
    explicit UnserializableName(const std::string& name)
        : std::runtime_error("cannot form a prefixed name from: " + name) {}
};

// Parse the supported Turtle subset into an expanded triple set.
TripleSet parse_turtle(const std::string& text);

// Deterministic serialization: stable sort of subjects and predicates,
// object lists collapsed with ',', predicate lists with ';'.
std::string write_turtle(const TripleSet& ts);

// The vocabulary document: 10 classes, 9 object properties with domain
// Explanation and the matching dimension class as range, plus the string
// valued `plead:example` property.
TripleSet emit_vocabulary();

// One owl:NamedIndividual per requirement (plead:xplain1, plead:xplain2, ...
// in list order), dimension values attached through the 9 object properties.
TripleSet requirements_to_triples(const std::vector<ExplanationRequirement>& reqs);

std::string to_turtle(const std::vector<ExplanationRequirement>& reqs);

// A parsed explanation instance: the per-dimension tokens found on one
// owl:NamedIndividual. Unknown plead individuals stay as opaque tokens.
struct ParsedInstance {
    std::string name;  // local name, e.g. "xplain1"
    std::map<std::string, std::vector<std::string>> properties;  // property local name -> object tokens
    std::string example_text;
};

std::vector<ParsedInstance> from_turtle(const std::string& text);

}  // namespace rdf
}  // namespace plead
