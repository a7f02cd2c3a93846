#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qmind::boolexpr {

// Boolean AST. And/Or are n-ary and flattened on construction, so the tree
// shape is canonical: no And directly under And, no Or directly under Or.
enum class ExprKind { Var, Not, And, Or };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    std::string name;               // Var only
    std::vector<ExprPtr> children;  // Not: 1, And/Or: >= 2

    static ExprPtr var(std::string name);
    static ExprPtr neg(ExprPtr child);
    static ExprPtr conj(std::vector<ExprPtr> children);
    static ExprPtr disj(std::vector<ExprPtr> children);
};

bool equal(const ExprPtr& a, const ExprPtr& b);

using Assignment = std::map<std::string, bool>;

// Grammar: identifiers (dots allowed, e.g. beta.Fp2); prefix ~ ! or U+00AC;
// infix & or U+2227 (binds tighter) and | or U+2228; parentheses.
// Syntax errors carry a 1-based column.
ExprPtr parse(const std::string& text);

// Minimal-parentheses ASCII rendering; parse(format(e)) == e.
std::string format(const ExprPtr& expr);

bool evaluate(const ExprPtr& expr, const Assignment& a);

// Distinct variable names, sorted.
std::vector<std::string> variable_names(const ExprPtr& expr);

// All assignments over var_order that satisfy expr, as bitstrings with
// var_order[0] in the rightmost position, ascending by integer value.
std::vector<std::string> satisfying_assignments(const ExprPtr& expr,
                                                const std::vector<std::string>& var_order);

// The constrained three-variable format: exactly three clauses, each the
// disjunction of two literals over distinct variables from {A, B, C}.
struct Literal {
    char variable = 'A';
    bool negated = false;
    bool operator==(const Literal&) const = default;
};

struct Clause {
    Literal first;
    Literal second;
    bool operator==(const Clause&) const = default;
};

struct Cnf3Expression {
    std::array<Clause, 3> clauses;
    bool operator==(const Cnf3Expression&) const = default;
};

Cnf3Expression to_cnf3(const ExprPtr& expr);
ExprPtr cnf3_to_expression(const Cnf3Expression& expr);
std::string format_cnf3(const Cnf3Expression& expr);

}  // namespace qmind::boolexpr
