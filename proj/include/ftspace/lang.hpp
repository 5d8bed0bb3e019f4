#pragma once

// The belief-expression language: nature events, negation, finite conjunction and
// disjunction, and belief operators B_i^p.

#include "ftspace/typespace.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ftspace::lang {

using types::TypeSpace;

enum class Kind { Nat, Not, And, Or, Bel };

/// Immutable AST node handle. Subtrees may be shared, which keeps the recursive
/// families of the sober-drunk module linear in size.
class Expr {
public:
    static Expr nat(std::string event);
    static Expr neg(Expr e);
    /// Throws DomainError on an empty list.
    static Expr conj(std::vector<Expr> parts);
    static Expr disj(std::vector<Expr> parts);
    /// Throws DomainError unless 0 <= p <= 1.
    static Expr bel(std::string player, Rational p, Expr e);

    Kind kind() const { return node_->kind; }
    /// Event name for Nat, player name for Bel.
    const std::string& name() const { return node_->name; }
    const Rational& threshold() const { return node_->p; }
    const std::vector<Expr>& children() const { return node_->children; }
    const Expr& child() const { return node_->children.front(); }

    /// Node identity, used as a memo key.
    const void* id() const { return node_.get(); }

private:
    struct Node {
        Kind kind;
        std::string name;
        Rational p;
        std::vector<Expr> children;
    };
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Parses the canonical grammar (whitespace insensitive). With a nature space,
/// unknown event names are rejected at parse time. Errors are ParseError with the
/// byte offset of the problem.
Expr parse(std::string_view text, const types::NatureSpace* nature = nullptr);

/// Canonical text; parse(to_string(e)) reproduces e.
std::string to_string(const Expr& e);

/// Nested belief operators: 0 for Nat, +1 per Bel, max over conjuncts.
std::size_t depth(const Expr& e);

/// Replaces every Or by not-and-not.
Expr desugar(const Expr& e);

/// Evaluates expressions on one space, caching events by node. Reuse one evaluator
/// for a corpus that shares subexpressions.
class Evaluator {
public:
    explicit Evaluator(const TypeSpace& space) : space_(space) {}
    /// φ^M. Throws DomainError for unknown nature events or players.
    const Subset& operator()(const Expr& e);

private:
    const TypeSpace& space_;
    std::unordered_map<const void*, Subset> memo_;
    std::vector<Expr> keep_;  // keeps memo keys alive
};

Subset eval(const TypeSpace& space, const Expr& e);

/// φ ∈ D(m)
bool desc_contains(const TypeSpace& space, std::size_t m, const Expr& e);

/// T_i(m)(φ^M), the largest p with B_i^p(φ) ∈ D(m).
Rational believed_value(const TypeSpace& space, std::size_t player, std::size_t m, const Expr& e);

} // namespace ftspace::lang
