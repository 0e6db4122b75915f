#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "colog/types.hpp"

namespace colog {

struct SourcePos {
    int line = 0;
    int col = 0;
};

/// Atom argument: a variable, an integer constant, or a (not yet encoded)
/// string constant. String constants are resolved to Values through the
/// dictionary before compilation.
struct Term {
    enum class Kind { Variable, IntConst, StrConst };

    Kind kind = Kind::Variable;
    std::string text;  // variable name or string literal contents
    Value number = 0;  // IntConst payload
    SourcePos pos;

    static Term variable(std::string name, SourcePos p = {}) {
        return Term{Kind::Variable, std::move(name), 0, p};
    }
    static Term integer(Value v, SourcePos p = {}) { return Term{Kind::IntConst, {}, v, p}; }
    static Term string(std::string s, SourcePos p = {}) {
        return Term{Kind::StrConst, std::move(s), 0, p};
    }

    bool is_constant() const { return kind != Kind::Variable; }

    bool operator==(const Term& o) const {
        if (kind != o.kind) return false;
        return kind == Kind::IntConst ? number == o.number : text == o.text;
    }
};

struct Atom {
    std::string relation;
    std::vector<Term> args;
    SourcePos pos;

    std::size_t arity() const { return args.size(); }
    bool operator==(const Atom& o) const { return relation == o.relation && args == o.args; }
};

/// An x != y guard; both sides are body variables.
struct Guard {
    std::string lhs;
    std::string rhs;
    SourcePos pos;

    bool operator==(const Guard& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

struct Rule {
    Atom head;
    std::vector<Atom> body;
    std::vector<Guard> guards;

    bool operator==(const Rule& o) const {
        return head == o.head && body == o.body && guards == o.guards;
    }
};

struct RelationDecl {
    std::string name;
    std::size_t arity = 0;
    SourcePos first_use;
};

/// Parsed program: relation signatures (inferred from first use), ground
/// facts, and rules.
struct Program {
    std::vector<RelationDecl> relations; // first-use order
    std::vector<Atom> facts;
    std::vector<Rule> rules;

    const RelationDecl* find_relation(std::string_view name) const {
        for (const auto& r : relations)
            if (r.name == name) return &r;
        return nullptr;
    }
};

/// Structural equality ignoring source positions and relation-declaration
/// order; used by the parse/print round-trip tests.
bool structurally_equal(const Program& a, const Program& b);

struct Diagnostic {
    SourcePos pos;
    std::string message;
};

std::string format_diagnostic(const Diagnostic& d);

/// Error carrying one diagnostic with its source position.
class DiagnosticError : public std::runtime_error {
public:
    explicit DiagnosticError(Diagnostic d)
        : std::runtime_error(format_diagnostic(d)), diagnostic_(std::move(d)) {}

    const Diagnostic& diagnostic() const { return diagnostic_; }

private:
    Diagnostic diagnostic_;
};

/// Facts grouped per relation, after constant resolution.
using FactMap = std::map<std::string, std::vector<Row>>;

} // namespace colog
