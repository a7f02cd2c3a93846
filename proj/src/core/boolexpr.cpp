#include "core/boolexpr.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include "core/error.hpp"

namespace qmind::boolexpr {

ExprPtr Expr::var(std::string name) {
    if (name.empty()) fail(errc::invalid_argument, "variable name must be nonempty");
    return std::make_shared<Expr>(Expr{ExprKind::Var, std::move(name), {}});
}

ExprPtr Expr::neg(ExprPtr child) {
    return std::make_shared<Expr>(Expr{ExprKind::Not, {}, {std::move(child)}});
}

namespace {

ExprPtr nary(ExprKind kind, std::vector<ExprPtr> children) {
    std::vector<ExprPtr> flat;
    for (auto& c : children) {
        if (!c) fail(errc::invalid_argument, "null expression node");
        if (c->kind == kind)
            flat.insert(flat.end(), c->children.begin(), c->children.end());
        else
            flat.push_back(std::move(c));
    }
    if (flat.empty()) fail(errc::invalid_argument, "connective needs at least one operand");
    if (flat.size() == 1) return flat[0];
    return std::make_shared<Expr>(Expr{kind, {}, std::move(flat)});
}

}  // namespace

ExprPtr Expr::conj(std::vector<ExprPtr> children) {
    return nary(ExprKind::And, std::move(children));
}

ExprPtr Expr::disj(std::vector<ExprPtr> children) {
    return nary(ExprKind::Or, std::move(children));
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name) return false;
    if (a->children.size() != b->children.size()) return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!equal(a->children[i], b->children[i])) return false;
    return true;
}

// ---- parsing ---------------------------------------------------------------

namespace {

struct Token {
    enum Kind { End, LParen, RParen, Not, And, Or, Ident } kind;
    std::string text;
    std::size_t column;  // 1-based, in code points
};

[[noreturn]] void syntax_error(std::size_t column, const std::string& what) {
    fail(errc::parse_error, "syntax error at column " + std::to_string(column) + ": " + what);
}

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_cont(unsigned char c) { return std::isalnum(c) || c == '_'; }

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    std::size_t column = 1;
    while (i < text.size()) {
        const unsigned char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            ++column;
            continue;
        }
        const std::size_t at = column;
        if (c == '(') {
            tokens.push_back({Token::LParen, "(", at});
            ++i, ++column;
        } else if (c == ')') {
            tokens.push_back({Token::RParen, ")", at});
            ++i, ++column;
        } else if (c == '~' || c == '!') {
            tokens.push_back({Token::Not, std::string(1, c), at});
            ++i, ++column;
        } else if (c == '&') {
            tokens.push_back({Token::And, "&", at});
            ++i, ++column;
        } else if (c == '|') {
            tokens.push_back({Token::Or, "|", at});
            ++i, ++column;
        } else if (c == 0xC2 && i + 1 < text.size() &&
                   static_cast<unsigned char>(text[i + 1]) == 0xAC) {
            tokens.push_back({Token::Not, "¬", at});  // NOT SIGN
            i += 2, ++column;
        } else if (c == 0xE2 && i + 2 < text.size() &&
                   static_cast<unsigned char>(text[i + 1]) == 0x88 &&
                   static_cast<unsigned char>(text[i + 2]) == 0xA7) {
            tokens.push_back({Token::And, "∧", at});  // LOGICAL AND
            i += 3, ++column;
        } else if (c == 0xE2 && i + 2 < text.size() &&
                   static_cast<unsigned char>(text[i + 1]) == 0x88 &&
                   static_cast<unsigned char>(text[i + 2]) == 0xA8) {
            tokens.push_back({Token::Or, "∨", at});  // LOGICAL OR
            i += 3, ++column;
        } else if (ident_start(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && ident_cont(text[j])) ++j;
            while (j + 1 < text.size() && text[j] == '.' && ident_start(text[j + 1])) {
                j += 2;
                while (j < text.size() && ident_cont(text[j])) ++j;
            }
            tokens.push_back({Token::Ident, text.substr(i, j - i), at});
            column += j - i;
            i = j;
        } else {
            syntax_error(at, "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
        }
    }
    tokens.push_back({Token::End, "", column});
    return tokens;
}

struct Parser {
    const std::vector<Token>& tokens;
    std::size_t pos = 0;

    const Token& peek() const { return tokens[pos]; }
    const Token& take() { return tokens[pos++]; }

    ExprPtr parse_or() {
        std::vector<ExprPtr> parts{parse_and()};
        while (peek().kind == Token::Or) {
            take();
            parts.push_back(parse_and());
        }
        return parts.size() == 1 ? parts[0] : Expr::disj(std::move(parts));
    }

    ExprPtr parse_and() {
        std::vector<ExprPtr> parts{parse_unary()};
        while (peek().kind == Token::And) {
            take();
            parts.push_back(parse_unary());
        }
        return parts.size() == 1 ? parts[0] : Expr::conj(std::move(parts));
    }

    ExprPtr parse_unary() {
        if (peek().kind == Token::Not) {
            take();
            return Expr::neg(parse_unary());
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        const Token& t = take();
        if (t.kind == Token::Ident) return Expr::var(t.text);
        if (t.kind == Token::LParen) {
            ExprPtr inner = parse_or();
            if (peek().kind != Token::RParen) syntax_error(peek().column, "expected ')'");
            take();
            return inner;
        }
        if (t.kind == Token::End) syntax_error(t.column, "expected an operand");
        syntax_error(t.column, "expected an operand, found '" + t.text + "'");
    }
};

}  // namespace

ExprPtr parse(const std::string& text) {
    const std::vector<Token> tokens = lex(text);
    Parser p{tokens};
    ExprPtr expr = p.parse_or();
    if (p.peek().kind != Token::End)
        syntax_error(p.peek().column, "unexpected trailing '" + p.peek().text + "'");
    return expr;
}

// ---- formatting ------------------------------------------------------------

namespace {

void format_into(const ExprPtr& e, std::string& out, ExprKind parent) {
    switch (e->kind) {
        case ExprKind::Var:
            out += e->name;
            return;
        case ExprKind::Not:
            out += '~';
            format_into(e->children[0], out, ExprKind::Not);
            return;
        case ExprKind::And: {
            const bool parens = parent == ExprKind::Not;
            if (parens) out += '(';
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                if (i) out += " & ";
                format_into(e->children[i], out, ExprKind::And);
            }
            if (parens) out += ')';
            return;
        }
        case ExprKind::Or: {
            const bool parens = parent == ExprKind::Not || parent == ExprKind::And;
            if (parens) out += '(';
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                if (i) out += " | ";
                format_into(e->children[i], out, ExprKind::Or);
            }
            if (parens) out += ')';
            return;
        }
    }
}

}  // namespace

std::string format(const ExprPtr& expr) {
    if (!expr) fail(errc::invalid_argument, "null expression");
    std::string out;
    format_into(expr, out, ExprKind::Var);
    return out;
}

// ---- evaluation ------------------------------------------------------------

bool evaluate(const ExprPtr& expr, const Assignment& a) {
    if (!expr) fail(errc::invalid_argument, "null expression");
    switch (expr->kind) {
        case ExprKind::Var: {
            auto it = a.find(expr->name);
            if (it == a.end())
                fail(errc::invalid_argument, "unbound variable '" + expr->name + "'");
            return it->second;
        }
        case ExprKind::Not:
            return !evaluate(expr->children[0], a);
        case ExprKind::And:
            for (const auto& c : expr->children)
                if (!evaluate(c, a)) return false;
            return true;
        case ExprKind::Or:
            for (const auto& c : expr->children)
                if (evaluate(c, a)) return true;
            return false;
    }
    fail(errc::invalid_argument, "corrupt expression node");
}

namespace {

void collect_names(const ExprPtr& e, std::set<std::string>& names) {
    if (e->kind == ExprKind::Var) {
        names.insert(e->name);
        return;
    }
    for (const auto& c : e->children) collect_names(c, names);
}

}  // namespace

std::vector<std::string> variable_names(const ExprPtr& expr) {
    if (!expr) fail(errc::invalid_argument, "null expression");
    std::set<std::string> names;
    collect_names(expr, names);
    return {names.begin(), names.end()};
}

std::vector<std::string> satisfying_assignments(const ExprPtr& expr,
                                                const std::vector<std::string>& var_order) {
    constexpr std::size_t max_vars = 24;
    if (var_order.empty()) fail(errc::invalid_argument, "variable order is empty");
    if (var_order.size() > max_vars)
        fail(errc::invalid_argument,
             "enumeration limited to " + std::to_string(max_vars) + " variables");
    Assignment a;
    for (const auto& name : var_order)
        if (!a.emplace(name, false).second)
            fail(errc::invalid_argument, "duplicate variable '" + name + "' in order");
    for (const auto& name : variable_names(expr))
        if (!a.contains(name))
            fail(errc::invalid_argument, "variable '" + name + "' missing from order");

    const std::size_t n = var_order.size();
    std::vector<std::string> result;
    for (std::size_t v = 0; v < (std::size_t{1} << n); ++v) {
        for (std::size_t i = 0; i < n; ++i) a[var_order[i]] = (v >> i) & 1;
        if (!evaluate(expr, a)) continue;
        std::string bits(n, '0');
        for (std::size_t i = 0; i < n; ++i)
            if (v >> i & 1) bits[n - 1 - i] = '1';
        result.push_back(std::move(bits));
    }
    return result;
}

// ---- the three-variable clause format --------------------------------------

namespace {

Literal literal_of(const ExprPtr& e, int clause_index) {
    const ExprPtr& atom = e->kind == ExprKind::Not ? e->children[0] : e;
    if (atom->kind != ExprKind::Var)
        fail(errc::invalid_argument,
             "clause " + std::to_string(clause_index) +
                 " must contain only possibly negated variables");
    if (atom->name != "A" && atom->name != "B" && atom->name != "C")
        fail(errc::invalid_argument,
             "variable '" + atom->name + "' outside {A, B, C} in clause " +
                 std::to_string(clause_index));
    return {atom->name[0], e->kind == ExprKind::Not};
}

}  // namespace

Cnf3Expression to_cnf3(const ExprPtr& expr) {
    if (!expr) fail(errc::invalid_argument, "null expression");
    if (expr->kind != ExprKind::And || expr->children.size() != 3)
        fail(errc::invalid_argument,
             "expected a conjunction of exactly 3 clauses, got " + format(expr));
    Cnf3Expression out;
    for (int i = 0; i < 3; ++i) {
        const ExprPtr& c = expr->children[static_cast<std::size_t>(i)];
        if (c->kind != ExprKind::Or || c->children.size() != 2)
            fail(errc::invalid_argument,
                 "clause " + std::to_string(i + 1) + " must be a disjunction of exactly 2 literals");
        Clause clause{literal_of(c->children[0], i + 1), literal_of(c->children[1], i + 1)};
        if (clause.first.variable == clause.second.variable)
            fail(errc::invalid_argument,
                 "clause " + std::to_string(i + 1) + " repeats variable '" +
                     std::string(1, clause.first.variable) + "'");
        out.clauses[static_cast<std::size_t>(i)] = clause;
    }
    return out;
}

ExprPtr cnf3_to_expression(const Cnf3Expression& expr) {
    std::vector<ExprPtr> clauses;
    for (const Clause& c : expr.clauses) {
        auto lit = [](const Literal& l) {
            ExprPtr v = Expr::var(std::string(1, l.variable));
            return l.negated ? Expr::neg(std::move(v)) : v;
        };
        clauses.push_back(Expr::disj({lit(c.first), lit(c.second)}));
    }
    return Expr::conj(std::move(clauses));
}

std::string format_cnf3(const Cnf3Expression& expr) {
    return format(cnf3_to_expression(expr));
}

}  // namespace qmind::boolexpr
