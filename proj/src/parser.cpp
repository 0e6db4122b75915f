#include "colog/parser.hpp"

#include <cctype>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace colog {

std::string format_diagnostic(const Diagnostic& d) {
    std::ostringstream os;
    os << d.pos.line << ":" << d.pos.col << ": " << d.message;
    return os.str();
}

bool structurally_equal(const Program& a, const Program& b) {
    auto sig = [](const Program& p) {
        std::set<std::pair<std::string, std::size_t>> s;
        for (const auto& r : p.relations) s.emplace(r.name, r.arity);
        return s;
    };
    return sig(a) == sig(b) && a.facts == b.facts && a.rules == b.rules;
}

namespace {

enum class Tok {
    Ident,
    Int,
    Str,
    LParen,
    RParen,
    Comma,
    Dot,
    Turnstile, // :-
    Neq,       // !=
    Cmp,       // < <= > >= == (recognized only to reject with a clear message)
    Bang,      // ! not followed by =
    End,
};

struct Token {
    Tok kind;
    std::string text;
    Value number = 0;
    SourcePos pos;
};

[[noreturn]] void fail(SourcePos pos, std::string msg) {
    throw DiagnosticError({pos, std::move(msg)});
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_ws_and_comments();
            SourcePos pos{line_, col_};
            if (at_end()) {
                out.push_back({Tok::End, "", 0, pos});
                return out;
            }
            const char c = peek();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                out.push_back({Tok::Ident, lex_ident(), 0, pos});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                out.push_back(lex_int(pos));
            } else if (c == '"') {
                out.push_back(lex_string(pos));
            } else if (c == '(') {
                advance();
                out.push_back({Tok::LParen, "(", 0, pos});
            } else if (c == ')') {
                advance();
                out.push_back({Tok::RParen, ")", 0, pos});
            } else if (c == ',') {
                advance();
                out.push_back({Tok::Comma, ",", 0, pos});
            } else if (c == '.') {
                advance();
                out.push_back({Tok::Dot, ".", 0, pos});
            } else if (c == ':') {
                advance();
                if (at_end() || peek() != '-') fail(pos, "expected ':-'");
                advance();
                out.push_back({Tok::Turnstile, ":-", 0, pos});
            } else if (c == '!') {
                advance();
                if (!at_end() && peek() == '=') {
                    advance();
                    out.push_back({Tok::Neq, "!=", 0, pos});
                } else {
                    out.push_back({Tok::Bang, "!", 0, pos});
                }
            } else if (c == '<' || c == '>' || c == '=') {
                std::string op(1, c);
                advance();
                if (!at_end() && peek() == '=') {
                    op += '=';
                    advance();
                }
                out.push_back({Tok::Cmp, op, 0, pos});
            } else {
                fail(pos, std::string("unexpected character '") + c + "'");
            }
        }
    }

private:
    bool at_end() const { return i_ >= text_.size(); }
    char peek() const { return text_[i_]; }

    void advance() {
        if (text_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip_ws_and_comments() {
        for (;;) {
            while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
            if (at_end()) return;
            if (peek() == '%') {
                while (!at_end() && peek() != '\n') advance();
            } else if (peek() == '/' && i_ + 1 < text_.size() && text_[i_ + 1] == '/') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                return;
            }
        }
    }

    std::string lex_ident() {
        std::string s;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            s += peek();
            advance();
        }
        return s;
    }

    Token lex_int(SourcePos pos) {
        std::uint64_t v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
            if (v > std::numeric_limits<Value>::max())
                fail(pos, "integer constant out of 32-bit range");
            advance();
        }
        return {Tok::Int, "", static_cast<Value>(v), pos};
    }

    Token lex_string(SourcePos pos) {
        advance(); // opening quote
        std::string s;
        while (!at_end() && peek() != '"') {
            char c = peek();
            if (c == '\n') fail(pos, "unterminated string constant");
            if (c == '\\') {
                advance();
                if (at_end()) fail(pos, "unterminated string constant");
                switch (peek()) {
                    case 'n': c = '\n'; break;
                    case 't': c = '\t'; break;
                    case 'r': c = '\r'; break;
                    case '"': c = '"'; break;
                    case '\\': c = '\\'; break;
                    default: fail({line_, col_}, "unknown escape sequence in string");
                }
            }
            s += c;
            advance();
        }
        if (at_end()) fail(pos, "unterminated string constant");
        advance(); // closing quote
        return {Tok::Str, std::move(s), 0, pos};
    }

    std::string_view text_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Program run() {
        Program prog;
        while (cur().kind != Tok::End) parse_clause(prog);
        return prog;
    }

private:
    const Token& cur() const { return toks_[p_]; }
    const Token& next() const { return toks_[p_ + 1 < toks_.size() ? p_ + 1 : p_]; }
    Token eat() { return toks_[p_++]; }

    Token expect(Tok kind, const char* what) {
        if (cur().kind != kind) fail(cur().pos, std::string("expected ") + what);
        return eat();
    }

    void parse_clause(Program& prog) {
        Atom head = parse_atom(prog);
        if (cur().kind == Tok::Dot) {
            eat();
            for (const Term& t : head.args)
                if (!t.is_constant())
                    fail(t.pos, "facts must be ground; use a rule with a body to derive '" +
                                    head.relation + "'");
            prog.facts.push_back(std::move(head));
            return;
        }
        expect(Tok::Turnstile, "':-' or '.' after atom");
        Rule rule;
        rule.head = std::move(head);
        for (;;) {
            parse_body_item(prog, rule);
            if (cur().kind == Tok::Comma) {
                eat();
                continue;
            }
            expect(Tok::Dot, "'.' at end of rule");
            break;
        }
        if (rule.body.empty())
            fail(rule.head.pos, "rule body must contain at least one atom");
        prog.rules.push_back(std::move(rule));
    }

    void parse_body_item(Program& prog, Rule& rule) {
        if (cur().kind == Tok::Bang)
            fail(cur().pos, "negation is not supported; programs must be positive");
        if (cur().kind == Tok::Ident && next().kind == Tok::LParen) {
            rule.body.push_back(parse_atom(prog));
            return;
        }
        // Guard: term OP term.
        Token lhs = eat();
        if (cur().kind == Tok::Cmp)
            fail(cur().pos, "only '!=' guards are supported, got '" + cur().text + "'");
        Token op = expect(Tok::Neq, "'!=' or an atom");
        Token rhs = eat();
        if (lhs.kind != Tok::Ident || rhs.kind != Tok::Ident)
            fail(op.pos, "inequality guards must compare two variables");
        rule.guards.push_back({lhs.text, rhs.text, op.pos});
    }

    Atom parse_atom(Program& prog) {
        Token name = expect(Tok::Ident, "relation name");
        if (std::isupper(static_cast<unsigned char>(name.text[0])))
            fail(name.pos, "relation names must start with a lowercase letter");
        expect(Tok::LParen, "'(' after relation name");
        Atom atom;
        atom.relation = name.text;
        atom.pos = name.pos;
        for (;;) {
            atom.args.push_back(parse_term());
            if (cur().kind == Tok::Comma) {
                eat();
                continue;
            }
            expect(Tok::RParen, "')' or ',' in argument list");
            break;
        }
        register_use(prog, atom);
        return atom;
    }

    Term parse_term() {
        Token t = eat();
        switch (t.kind) {
            case Tok::Ident: return Term::variable(t.text, t.pos);
            case Tok::Int: return Term::integer(t.number, t.pos);
            case Tok::Str: return Term::string(t.text, t.pos);
            default: fail(t.pos, "expected variable or constant");
        }
    }

    void register_use(Program& prog, const Atom& atom) {
        for (auto& decl : prog.relations) {
            if (decl.name != atom.relation) continue;
            if (decl.arity != atom.arity()) {
                std::ostringstream os;
                os << "relation '" << atom.relation << "' used with arity " << atom.arity()
                   << " but first used with arity " << decl.arity << " at line "
                   << decl.first_use.line;
                fail(atom.pos, os.str());
            }
            return;
        }
        prog.relations.push_back({atom.relation, atom.arity(), atom.pos});
    }

    std::vector<Token> toks_;
    std::size_t p_ = 0;
};

void print_term(std::ostream& os, const Term& t) {
    switch (t.kind) {
        case Term::Kind::Variable: os << t.text; break;
        case Term::Kind::IntConst: os << t.number; break;
        case Term::Kind::StrConst: {
            os << '"';
            for (char c : t.text) {
                switch (c) {
                    case '"': os << "\\\""; break;
                    case '\\': os << "\\\\"; break;
                    case '\n': os << "\\n"; break;
                    case '\t': os << "\\t"; break;
                    case '\r': os << "\\r"; break;
                    default: os << c;
                }
            }
            os << '"';
            break;
        }
    }
}

void print_atom(std::ostream& os, const Atom& a) {
    os << a.relation << "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) os << ", ";
        print_term(os, a.args[i]);
    }
    os << ")";
}

} // namespace

Program parse_program(std::string_view text) {
    Lexer lx(text);
    Parser parser(lx.run());
    return parser.run();
}

std::string print_program(const Program& program) {
    std::ostringstream os;
    for (const Atom& f : program.facts) {
        print_atom(os, f);
        os << ".\n";
    }
    for (const Rule& r : program.rules) {
        print_atom(os, r.head);
        os << " :- ";
        bool first = true;
        for (const Atom& a : r.body) {
            if (!first) os << ", ";
            print_atom(os, a);
            first = false;
        }
        for (const Guard& g : r.guards) {
            if (!first) os << ", ";
            os << g.lhs << " != " << g.rhs;
            first = false;
        }
        os << ".\n";
    }
    return os.str();
}

std::vector<Diagnostic> validate_program(const Program& program) {
    std::vector<Diagnostic> diags;
    auto check_arity = [&](const Atom& atom) {
        const RelationDecl* decl = program.find_relation(atom.relation);
        if (!decl) {
            diags.push_back({atom.pos, "relation '" + atom.relation + "' is not declared"});
        } else if (decl->arity != atom.arity()) {
            std::ostringstream os;
            os << "relation '" << atom.relation << "' used with arity " << atom.arity()
               << " but declared with arity " << decl->arity;
            diags.push_back({atom.pos, os.str()});
        }
    };

    for (const Atom& f : program.facts) {
        check_arity(f);
        for (const Term& t : f.args)
            if (!t.is_constant()) diags.push_back({t.pos, "facts must be ground"});
    }

    for (const Rule& rule : program.rules) {
        check_arity(rule.head);
        for (const Atom& a : rule.body) check_arity(a);
        if (rule.body.empty()) {
            diags.push_back({rule.head.pos, "rule body must contain at least one atom"});
            continue;
        }

        std::unordered_set<std::string> body_vars;
        for (const Atom& a : rule.body)
            for (const Term& t : a.args)
                if (!t.is_constant()) body_vars.insert(t.text);

        for (const Term& t : rule.head.args) {
            if (t.is_constant()) {
                diags.push_back({t.pos, "constants in rule heads are not supported"});
            } else if (!body_vars.count(t.text)) {
                diags.push_back({t.pos, "head variable '" + t.text +
                                            "' does not occur in the rule body"});
            }
        }
        for (const Guard& g : rule.guards) {
            if (!body_vars.count(g.lhs))
                diags.push_back({g.pos, "guard variable '" + g.lhs +
                                            "' does not occur in the rule body"});
            if (!body_vars.count(g.rhs))
                diags.push_back({g.pos, "guard variable '" + g.rhs +
                                            "' does not occur in the rule body"});
        }

        // Left-to-right joins cannot start from a disconnected atom.
        std::unordered_set<std::string> bound;
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            const Atom& a = rule.body[i];
            bool shares = i == 0;
            for (const Term& t : a.args)
                if (!t.is_constant() && bound.count(t.text)) shares = true;
            if (!shares)
                diags.push_back({a.pos,
                                 "atom '" + a.relation +
                                     "' shares no variable with the preceding body atoms "
                                     "(cross products are not supported)"});
            for (const Term& t : a.args)
                if (!t.is_constant()) bound.insert(t.text);
        }
    }
    return diags;
}

} // namespace colog
