#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vsp/element.hpp"
#include "vsp/field.hpp"

namespace vsp {

/// Linear combination of variables and named constants.
class Term {
public:
    Term() = default;
    static Term variable(const FieldCtx& field, const std::string& name);
    static Term constant(const FieldCtx& field, const std::string& name);

    const std::map<std::string, Scalar>& variables() const { return vars_; }
    const std::map<std::string, Scalar>& constants() const { return consts_; }
    bool is_zero() const { return vars_.empty() && consts_.empty(); }
    Scalar coefficient(const std::string& var, const FieldCtx& field) const;
    /// The term with `var` removed.
    Term without(const std::string& var) const;

    Term operator-() const;
    friend Term operator+(const Term& a, const Term& b);
    friend Term operator-(const Term& a, const Term& b);
    friend Term operator*(const Scalar& c, const Term& t);

    /// `x + 2*y + -1/2*$c`, or `0`.
    std::string to_string() const;

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term&, const Term&) = default;

private:
    void add(std::map<std::string, Scalar>& into, const std::string& key, const Scalar& c);
    std::map<std::string, Scalar> vars_;
    std::map<std::string, Scalar> consts_;
};

enum class FormulaKind { True, False, Eq, Xn, Not, And, Or, Implies, Exists, Forall };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula node. Subformulas may be shared, so a formula is a DAG.
class Formula {
public:
    static FormulaPtr truth(bool value);
    static FormulaPtr eq(Term lhs, Term rhs);
    static FormulaPtr xn(std::uint64_t n, Term t);
    static FormulaPtr negation(FormulaPtr f);
    static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
    static FormulaPtr exists(std::string var, FormulaPtr body);
    static FormulaPtr forall(std::string var, FormulaPtr body);

    FormulaKind kind() const { return kind_; }
    const Term& lhs() const { return lhs_; }
    const Term& rhs() const { return rhs_; }
    const Term& term() const { return lhs_; }
    std::uint64_t n() const { return n_; }
    const std::string& var() const { return var_; }
    const FormulaPtr& left() const { return a_; }
    const FormulaPtr& right() const { return b_; }
    const FormulaPtr& child() const { return a_; }
    const FormulaPtr& body() const { return a_; }

    bool is_quantifier_free() const;
    std::set<std::string> free_variables() const;
    std::set<std::string> constants() const;

    /// Fully parenthesized rendering in the input grammar.
    std::string to_string() const;
    /// Number of distinct nodes.
    std::size_t dag_size() const;

private:
    Formula() = default;
    static std::shared_ptr<Formula> node(FormulaKind kind);
    FormulaKind kind_ = FormulaKind::True;
    Term lhs_, rhs_;
    std::uint64_t n_ = 0;
    std::string var_;
    FormulaPtr a_, b_;
};

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

/// Grammar:
///   formula := unary (op unary)*    op ∈ {&, |, ->}
///   unary   := 'TRUE' | 'FALSE' | '!' unary | ('E'|'A') var '.' formula
///            | 'X'n '(' term ')' | term '=' term | '(' formula ')'
///   term    := item ('+' item)*       item := ['-'] (scalar ['*' atom] | atom)
///   atom    := [a-z][a-z0-9]* | '$'name
/// A scalar-only item must be 0. Chains `a & b -> c` nest to the left and a
/// quantifier scopes over the rest of its chain.
FormulaPtr parse_formula(std::string_view text, const FieldCtx& field,
                         const std::set<std::string>* known_constants = nullptr);

struct Env {
    std::map<std::string, ModelElement> vars;
    std::map<std::string, ModelElement> consts;
};

ModelElement eval_term(const Term& t, const Env& env, const FieldCtx& field);

/// Evaluates a quantifier-free formula; shared subformulas are evaluated once.
bool eval_qf(const FormulaPtr& phi, const Env& env, const FieldCtx& field);

}  // namespace vsp
