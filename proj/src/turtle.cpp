#include "plead/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace plead {
namespace rdf {

TripleSet::TripleSet() {
    prefixes = {
        {"plead", kPleadNs},
        {"rdf", kRdfNs},
        {"rdfs", kRdfsNs},
        {"owl", kOwlNs},
    };
}

void TripleSet::add(const std::string& s, const std::string& p, Term o) {
    triples.insert({s, p, std::move(o)});
}

std::set<Triple> TripleSet::with_subject(const std::string& iri) const {
    std::set<Triple> out;
    for (const auto& t : triples)
        if (t.subject == iri) out.insert(t);
    return out;
}

// ---- Parser --------------------------------------------------------------

namespace {

struct Token {
    enum class Kind {
        PrefixDirective,  // @prefix
        PrefixedName,     // value = "prefix:local"
        IriRef,           // value = absolute IRI
        A,                // keyword 'a'
        Literal,          // value = unescaped text
        Semicolon,
        Comma,
        Dot,
        End,
    };
    Kind kind;
    std::string value;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        const int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Token::Kind::End, "", line, col};
        const char c = text_[pos_];
        if (c == ';') { advance(); return {Token::Kind::Semicolon, ";", line, col}; }
        if (c == ',') { advance(); return {Token::Kind::Comma, ",", line, col}; }
        if (c == '.') { advance(); return {Token::Kind::Dot, ".", line, col}; }
        if (c == '"') return lex_literal(line, col);
        if (c == '<') return lex_iriref(line, col);
        if (c == '@') {
            std::string word = take_while([](char ch) {
                return std::isalpha(static_cast<unsigned char>(ch)) || ch == '@';
            });
            if (word == "@prefix") return {Token::Kind::PrefixDirective, word, line, col};
            throw TurtleSyntaxError(line, col, "@prefix");
        }
        if (is_name_char(c) || c == ':') return lex_name(line, col);
        throw TurtleSyntaxError(line, col, "term");
    }

private:
    static bool is_name_char(char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    template <typename Pred>
    std::string take_while(Pred pred) {
        std::string out;
        while (pos_ < text_.size() && pred(text_[pos_])) {
            out += text_[pos_];
            advance();
        }
        return out;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token lex_literal(int line, int col) {
        advance();  // opening quote
        std::string out;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '"') {
                advance();
                return {Token::Kind::Literal, out, line, col};
            }
            if (c == '\\') {
                advance();
                if (pos_ >= text_.size()) break;
                const char esc = text_[pos_];
                switch (esc) {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    default:
                        throw TurtleSyntaxError(line_, col_, "string escape");
                }
                advance();
            } else if (c == '\n') {
                // A raw line-wrap inside a quoted literal (as printed sources
                // wrap long strings) collapses with its indent to one space.
                advance();
                while (pos_ < text_.size() &&
                       (text_[pos_] == ' ' || text_[pos_] == '\t'))
                    advance();
                out += ' ';
            } else {
                out += c;
                advance();
            }
        }
        throw TurtleSyntaxError(line, col, "closing '\"'");
    }

    Token lex_iriref(int line, int col) {
        advance();  // '<'
        std::string out;
        while (pos_ < text_.size() && text_[pos_] != '>') {
            out += text_[pos_];
            advance();
        }
        if (pos_ >= text_.size()) throw TurtleSyntaxError(line, col, "closing '>'");
        advance();  // '>'
        return {Token::Kind::IriRef, out, line, col};
    }

    Token lex_name(int line, int col) {
        std::string name = take_while(is_name_char);
        if (pos_ < text_.size() && text_[pos_] == ':') {
            advance();
            std::string local = take_while(is_name_char);
            return {Token::Kind::PrefixedName, name + ":" + local, line, col};
        }
        if (name == "a") return {Token::Kind::A, "a", line, col};
        throw TurtleSyntaxError(line, col, "':' in prefixed name");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) { shift(); }

    TripleSet parse() {
        while (cur_.kind != Token::Kind::End) {
            if (cur_.kind == Token::Kind::PrefixDirective) {
                parse_prefix();
            } else {
                parse_statement();
            }
        }
        return std::move(ts_);
    }

private:
    void shift() { cur_ = lexer_.next(); }

    void expect(Token::Kind kind, const char* what) {
        if (cur_.kind != kind)
            throw TurtleSyntaxError(cur_.line, cur_.column, what);
    }

    std::string expand(const std::string& prefixed) {
        const auto colon = prefixed.find(':');
        const std::string prefix = prefixed.substr(0, colon);
        const std::string local = prefixed.substr(colon + 1);
        auto it = ts_.prefixes.find(prefix);
        if (it == ts_.prefixes.end()) throw UnknownPrefixError(prefix);
        return it->second + local;
    }

    void parse_prefix() {
        shift();  // @prefix
        expect(Token::Kind::PrefixedName, "prefix name");
        const auto colon = cur_.value.find(':');
        const std::string prefix = cur_.value.substr(0, colon);
        if (cur_.value.size() != colon + 1)
            throw TurtleSyntaxError(cur_.line, cur_.column, "bare 'prefix:'");
        shift();
        expect(Token::Kind::IriRef, "namespace IRI");
        ts_.prefixes[prefix] = cur_.value;
        shift();
        expect(Token::Kind::Dot, "'.'");
        shift();
    }

    std::string parse_iri_term(const char* what) {
        if (cur_.kind == Token::Kind::PrefixedName) {
            std::string iri = expand(cur_.value);
            shift();
            return iri;
        }
        if (cur_.kind == Token::Kind::IriRef) {
            std::string iri = cur_.value;
            shift();
            return iri;
        }
        throw TurtleSyntaxError(cur_.line, cur_.column, what);
    }

    Term parse_object() {
        if (cur_.kind == Token::Kind::Literal) {
            Term t = Term::literal(cur_.value);
            shift();
            return t;
        }
        return Term::iri(parse_iri_term("object"));
    }

    void parse_statement() {
        const std::string subject = parse_iri_term("subject");
        while (true) {
            std::string predicate;
            if (cur_.kind == Token::Kind::A) {
                predicate = std::string(kRdfNs) + "type";
                shift();
            } else {
                predicate = parse_iri_term("predicate");
            }
            while (true) {
                ts_.add(subject, predicate, parse_object());
                if (cur_.kind != Token::Kind::Comma) break;
                shift();
            }
            if (cur_.kind == Token::Kind::Semicolon) {
                shift();
                continue;
            }
            expect(Token::Kind::Dot, "'.', ';' or ','");
            shift();
            break;
        }
    }

    Lexer lexer_;
    Token cur_;
    TripleSet ts_;
};

}  // namespace

TripleSet parse_turtle(const std::string& text) { return Parser(text).parse(); }

// ---- Writer --------------------------------------------------------------

namespace {

std::string shorten(const TripleSet& ts, const std::string& iri) {
    for (const auto& [prefix, ns] : ts.prefixes) {
        if (iri.size() > ns.size() && iri.compare(0, ns.size(), ns) == 0)
            return prefix + ":" + iri.substr(ns.size());
    }
    return "<" + iri + ">";
}

std::string escape_literal(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string format_object(const TripleSet& ts, const Term& t) {
    if (t.kind == Term::Kind::Literal) return "\"" + escape_literal(t.value) + "\"";
    return shorten(ts, t.value);
}

// rdf:type leads, remaining predicates alphabetical; keeps output close to
// the conventional layout for vocabulary documents.
bool predicate_less(const std::string& a, const std::string& b) {
    const std::string rdf_type = std::string(kRdfNs) + "type";
    if (a == rdf_type && b != rdf_type) return true;
    if (b == rdf_type && a != rdf_type) return false;
    return a < b;
}

}  // namespace

std::string write_turtle(const TripleSet& ts) {
    std::ostringstream out;

    std::vector<std::pair<std::string, std::string>> used_prefixes(ts.prefixes.begin(),
                                                                   ts.prefixes.end());
    std::sort(used_prefixes.begin(), used_prefixes.end());
    for (const auto& [prefix, ns] : used_prefixes)
        out << "@prefix " << prefix << ": <" << ns << "> .\n";

    std::vector<std::string> subjects;
    for (const auto& t : ts.triples)
        if (subjects.empty() || subjects.back() != t.subject)
            if (std::find(subjects.begin(), subjects.end(), t.subject) == subjects.end())
                subjects.push_back(t.subject);
    std::sort(subjects.begin(), subjects.end());

    for (const auto& subject : subjects) {
        out << "\n";
        const auto triples = ts.with_subject(subject);

        std::vector<std::string> predicates;
        for (const auto& t : triples)
            if (std::find(predicates.begin(), predicates.end(), t.predicate) ==
                predicates.end())
                predicates.push_back(t.predicate);
        std::sort(predicates.begin(), predicates.end(), predicate_less);

        out << shorten(ts, subject) << " ";
        bool first_predicate = true;
        for (const auto& predicate : predicates) {
            if (!first_predicate) out << " ;\n    ";
            first_predicate = false;
            out << shorten(ts, predicate) << " ";
            std::vector<std::string> objects;
            for (const auto& t : triples)
                if (t.predicate == predicate) objects.push_back(format_object(ts, t.object));
            std::sort(objects.begin(), objects.end());
            bool first_object = true;
            for (const auto& object : objects) {
                if (!first_object) out << " ,\n        ";
                first_object = false;
                out << object;
            }
        }
        out << " .\n";
    }
    return out.str();
}

// ---- Vocabulary ----------------------------------------------------------

namespace {

const std::vector<std::pair<std::string, std::string>>& property_ranges() {
    static const std::vector<std::pair<std::string, std::string>> props = {
        {"hasSource", "Source"},
        {"hasPerspective", "Perspective"},
        {"hasAutonomy", "Autonomy"},
        {"hasTrigger", "Trigger"},
        {"hasContent", "Content"},
        {"hasScope", "Scope"},
        {"hasGoal", "ExplainabilityGoal"},
        {"hasIntendedRecipient", "IntendedRecipient"},
        {"hasPriority", "Priority"},
    };
    return props;
}

std::string plead(const std::string& local) { return std::string(kPleadNs) + local; }
std::string rdf_type() { return std::string(kRdfNs) + "type"; }

}  // namespace

TripleSet emit_vocabulary() {
    TripleSet ts;
    const std::string owl_class = std::string(kOwlNs) + "Class";

    ts.add(plead("Explanation"), rdf_type(), Term::iri(owl_class));
    for (const auto& [prop, range] : property_ranges()) {
        ts.add(plead(range), rdf_type(), Term::iri(owl_class));
        ts.add(plead(prop), rdf_type(),
               Term::iri(std::string(kOwlNs) + "ObjectProperty"));
        ts.add(plead(prop), std::string(kRdfsNs) + "domain",
               Term::iri(plead("Explanation")));
        ts.add(plead(prop), std::string(kRdfsNs) + "range", Term::iri(plead(range)));
    }
    ts.add(plead("example"), rdf_type(),
           Term::iri(std::string(kOwlNs) + "DatatypeProperty"));
    ts.add(plead("example"), std::string(kRdfsNs) + "domain",
           Term::iri(plead("Explanation")));
    return ts;
}

// ---- Instances -----------------------------------------------------------

namespace {

bool valid_local_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            return false;
    return true;
}

std::string require_local(const std::string& s) {
    if (!valid_local_name(s)) throw UnserializableName(s);
    return s;
}

std::string camel_case(const std::string& id) {
    std::string out;
    bool upper = true;
    for (char c : require_local(id)) {
        if (c == '_' || c == '-') {
            upper = true;
            continue;
        }
        out += upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
        upper = false;
    }
    return out;
}

std::string slug(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!out.empty() && out.back() != '_') {
            out += '_';
        }
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

std::string source_token(const SourceRank& s) {
    std::string base;
    switch (s.variant) {
        case SourceVariant::PrimaryExplicit: base = "explicit"; break;
        case SourceVariant::PrimaryImplicit: base = "implicit"; break;
        case SourceVariant::Secondary: base = "secondary"; break;
        case SourceVariant::Tertiary: base = "tertiary"; break;
    }
    const std::string note = slug(s.citation_note);
    return note.empty() ? base : base + "_" + note;
}

std::string recipient_token(const RecipientClass& r) {
    // The vocabulary calls the data subject recipient "consumer".
    if (r.name == "data_subject") return "consumer";
    return r.name;
}

}  // namespace

TripleSet requirements_to_triples(const std::vector<ExplanationRequirement>& reqs) {
    TripleSet ts;
    std::size_t n = 0;
    for (const auto& req : reqs) {
        ++n;
        const std::string suffix = std::to_string(n);
        const std::string subject = plead("xplain" + suffix);
        const auto& c = req.classification;

        ts.add(subject, rdf_type(), Term::iri(std::string(kOwlNs) + "NamedIndividual"));
        ts.add(subject, rdf_type(), Term::iri(plead(camel_case(req.id))));

        for (const auto& s : c.sources)
            ts.add(subject, plead("hasSource"), Term::iri(plead(source_token(s))));
        ts.add(subject, plead("hasPerspective"),
               Term::iri(plead(to_token(c.perspective))));
        ts.add(subject, plead("hasAutonomy"), Term::iri(plead(to_token(c.autonomy))));
        ts.add(subject, plead("hasTrigger"),
               Term::iri(plead(require_local(c.trigger.event_name))));
        ts.add(subject, plead("hasScope"), Term::iri(plead(to_token(c.scope))));
        ts.add(subject, plead("hasPriority"), Term::iri(plead(to_token(c.priority))));

        ts.add(subject, plead("hasContent"),
               Term::iri(plead(to_token(c.content.sensitivity))));
        ts.add(subject, plead("hasContent"),
               Term::iri(plead(to_token(c.content.confidentiality))));
        const auto& items = c.content.minimum_content;
        for (std::size_t j = 0; j < items.size(); ++j) {
            const std::string name =
                items.size() == 1 ? "minimum" + suffix
                                  : "minimum" + suffix + "_" + std::to_string(j + 1);
            ts.add(subject, plead("hasContent"), Term::iri(plead(name)));
        }

        for (const auto& g : c.goals)
            ts.add(subject, plead("hasGoal"), Term::iri(plead(to_token(g) + suffix)));
        for (const auto& r : c.recipients)
            ts.add(subject, plead("hasIntendedRecipient"),
                   Term::iri(plead(recipient_token(r) + suffix)));

        if (!req.example_text.empty())
            ts.add(subject, plead("example"), Term::literal(req.example_text));
    }
    return ts;
}

std::string to_turtle(const std::vector<ExplanationRequirement>& reqs) {
    return write_turtle(requirements_to_triples(reqs));
}

std::vector<ParsedInstance> from_turtle(const std::string& text) {
    const TripleSet ts = parse_turtle(text);
    const std::string named_individual = std::string(kOwlNs) + "NamedIndividual";
    const std::string plead_ns = kPleadNs;

    std::vector<std::string> subjects;
    for (const auto& t : ts.triples) {
        if (t.predicate == rdf_type() && t.object.kind == Term::Kind::Iri &&
            t.object.value == named_individual)
            subjects.push_back(t.subject);
    }
    std::sort(subjects.begin(), subjects.end());

    std::vector<ParsedInstance> out;
    for (const auto& subject : subjects) {
        ParsedInstance inst;
        if (subject.compare(0, plead_ns.size(), plead_ns) == 0)
            inst.name = subject.substr(plead_ns.size());
        else
            inst.name = subject;

        bool has_plead_property = false;
        for (const auto& t : ts.with_subject(subject)) {
            if (t.predicate.compare(0, plead_ns.size(), plead_ns) != 0) continue;
            const std::string prop = t.predicate.substr(plead_ns.size());
            has_plead_property = true;
            if (prop == "example" && t.object.kind == Term::Kind::Literal) {
                inst.example_text = t.object.value;
                continue;
            }
            std::string token = t.object.value;
            if (t.object.kind == Term::Kind::Iri &&
                token.compare(0, plead_ns.size(), plead_ns) == 0)
                token = token.substr(plead_ns.size());
            inst.properties[prop].push_back(token);
        }
        if (!has_plead_property) continue;

        for (const char* single :
             {"hasPerspective", "hasAutonomy", "hasScope", "hasPriority"}) {
            auto it = inst.properties.find(single);
            if (it != inst.properties.end() && it->second.size() > 1)
                throw CardinalityViolation(inst.name, single);
        }
        for (auto& [prop, values] : inst.properties)
            std::sort(values.begin(), values.end());
        out.push_back(std::move(inst));
    }
    return out;
}

}  // namespace rdf
}  // namespace plead
