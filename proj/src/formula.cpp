#include "vsp/formula.hpp"

#include <cctype>
#include <functional>
#include <unordered_set>

#include "vsp/error.hpp"
#include "vsp/model.hpp"

namespace vsp {

Term Term::variable(const FieldCtx& field, const std::string& name) {
    Term t;
    t.vars_.emplace(name, field.one());
    return t;
}

Term Term::constant(const FieldCtx& field, const std::string& name) {
    Term t;
    t.consts_.emplace(name, field.one());
    return t;
}

Scalar Term::coefficient(const std::string& var, const FieldCtx& field) const {
    auto it = vars_.find(var);
    return it == vars_.end() ? field.zero() : it->second;
}

Term Term::without(const std::string& var) const {
    Term t = *this;
    t.vars_.erase(var);
    return t;
}

void Term::add(std::map<std::string, Scalar>& into, const std::string& key, const Scalar& c) {
    auto it = into.find(key);
    if (it == into.end()) {
        if (!c.is_zero()) into.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) into.erase(it);
}

Term Term::operator-() const {
    Term t = *this;
    for (auto& [_, c] : t.vars_) c = -c;
    for (auto& [_, c] : t.consts_) c = -c;
    return t;
}

Term operator+(const Term& a, const Term& b) {
    Term t = a;
    for (const auto& [k, c] : b.vars_) t.add(t.vars_, k, c);
    for (const auto& [k, c] : b.consts_) t.add(t.consts_, k, c);
    return t;
}

Term operator-(const Term& a, const Term& b) { return a + (-b); }

Term operator*(const Scalar& c, const Term& t) {
    Term out;
    if (c.is_zero()) return out;
    for (const auto& [k, s] : t.vars_) out.vars_.emplace(k, c * s);
    for (const auto& [k, s] : t.consts_) out.consts_.emplace(k, c * s);
    return out;
}

std::string Term::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    auto item = [&](const std::string& atom, const Scalar& c) {
        if (!out.empty()) out += " + ";
        if (!c.is_one()) out += c.to_string() + "*";
        out += atom;
    };
    for (const auto& [k, c] : vars_) item(k, c);
    for (const auto& [k, c] : consts_) item("$" + k, c);
    return out;
}

std::shared_ptr<Formula> Formula::node(FormulaKind kind) {
    std::shared_ptr<Formula> f(new Formula());
    f->kind_ = kind;
    return f;
}

FormulaPtr Formula::truth(bool value) {
    static const FormulaPtr t = node(FormulaKind::True);
    static const FormulaPtr f = node(FormulaKind::False);
    return value ? t : f;
}

FormulaPtr Formula::eq(Term lhs, Term rhs) {
    auto f = node(FormulaKind::Eq);
    f->lhs_ = std::move(lhs);
    f->rhs_ = std::move(rhs);
    return f;
}

FormulaPtr Formula::xn(std::uint64_t n, Term t) {
    auto f = node(FormulaKind::Xn);
    f->n_ = n;
    f->lhs_ = std::move(t);
    return f;
}

FormulaPtr Formula::negation(FormulaPtr c) {
    auto f = node(FormulaKind::Not);
    f->a_ = std::move(c);
    return f;
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
    auto f = node(FormulaKind::And);
    f->a_ = std::move(a);
    f->b_ = std::move(b);
    return f;
}

FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
    auto f = node(FormulaKind::Or);
    f->a_ = std::move(a);
    f->b_ = std::move(b);
    return f;
}

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
    auto f = node(FormulaKind::Implies);
    f->a_ = std::move(a);
    f->b_ = std::move(b);
    return f;
}

FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
    auto f = node(FormulaKind::Exists);
    f->var_ = std::move(var);
    f->a_ = std::move(body);
    return f;
}

FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
    auto f = node(FormulaKind::Forall);
    f->var_ = std::move(var);
    f->a_ = std::move(body);
    return f;
}

namespace {

bool is_quantifier(FormulaKind k) { return k == FormulaKind::Exists || k == FormulaKind::Forall; }

template <class F>
void visit_dag(const Formula* root, F&& f) {
    std::unordered_set<const Formula*> seen;
    std::vector<const Formula*> stack{root};
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        if (!n || !seen.insert(n).second) continue;
        f(*n);
        stack.push_back(n->left().get());
        stack.push_back(n->right().get());
    }
}

}  // namespace

bool Formula::is_quantifier_free() const {
    bool qf = true;
    visit_dag(this, [&](const Formula& n) { qf = qf && !is_quantifier(n.kind()); });
    return qf;
}

std::set<std::string> Formula::free_variables() const {
    std::unordered_map<const Formula*, std::set<std::string>> memo;
    std::function<const std::set<std::string>&(const Formula*)> go = [&](const Formula* n) -> const std::set<std::string>& {
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        std::set<std::string> out;
        switch (n->kind()) {
            case FormulaKind::Eq:
                for (const auto& [v, _] : n->rhs().variables()) out.insert(v);
                [[fallthrough]];
            case FormulaKind::Xn:
                for (const auto& [v, _] : n->lhs().variables()) out.insert(v);
                break;
            case FormulaKind::Exists:
            case FormulaKind::Forall:
                out = go(n->body().get());
                out.erase(n->var());
                break;
            default:
                if (n->left()) out = go(n->left().get());
                if (n->right()) {
                    const auto& r = go(n->right().get());
                    out.insert(r.begin(), r.end());
                }
        }
        return memo[n] = std::move(out);
    };
    return go(this);
}

std::set<std::string> Formula::constants() const {
    std::set<std::string> out;
    visit_dag(this, [&](const Formula& n) {
        for (const auto& [c, _] : n.lhs().constants()) out.insert(c);
        for (const auto& [c, _] : n.rhs().constants()) out.insert(c);
    });
    return out;
}

std::size_t Formula::dag_size() const {
    std::size_t count = 0;
    visit_dag(this, [&](const Formula&) { ++count; });
    return count;
}

namespace {

// A quantifier reaching the end of the rendering would capture a following connective.
bool opens_scope(const Formula& f) {
    if (f.kind() == FormulaKind::Not) return opens_scope(*f.child());
    return f.kind() == FormulaKind::Exists || f.kind() == FormulaKind::Forall;
}

std::string left_operand(const Formula& f) { return opens_scope(f) ? "(" + f.to_string() + ")" : f.to_string(); }

}  // namespace

std::string Formula::to_string() const {
    switch (kind_) {
        case FormulaKind::True: return "TRUE";
        case FormulaKind::False: return "FALSE";
        case FormulaKind::Eq: return lhs_.to_string() + " = " + rhs_.to_string();
        case FormulaKind::Xn: return "X" + std::to_string(n_) + "(" + lhs_.to_string() + ")";
        case FormulaKind::Not: return "!" + a_->to_string();
        case FormulaKind::And: return "(" + left_operand(*a_) + " & " + b_->to_string() + ")";
        case FormulaKind::Or: return "(" + left_operand(*a_) + " | " + b_->to_string() + ")";
        case FormulaKind::Implies: return "(" + left_operand(*a_) + " -> " + b_->to_string() + ")";
        case FormulaKind::Exists: return "E " + var_ + ". " + a_->to_string();
        case FormulaKind::Forall: return "A " + var_ + ". " + a_->to_string();
    }
    return {};
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind() != b->kind()) return false;
    if (a->lhs() != b->lhs() || a->rhs() != b->rhs() || a->n() != b->n() || a->var() != b->var()) return false;
    return structurally_equal(a->left(), b->left()) && structurally_equal(a->right(), b->right());
}

namespace {

class Parser {
public:
    Parser(std::string_view text, const FieldCtx& field, const std::set<std::string>* known)
        : text_(text), field_(field), known_(known) {}

    FormulaPtr parse() {
        auto f = chain(formula());
        skip_ws();
        if (pos_ != text_.size()) error("unexpected trailing input");
        return f;
    }

private:
    [[noreturn]] void error(const std::string& msg) const { throw ParseError(ErrorKind::ParseError, msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(std::string_view tok) {
        skip_ws();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok) {
        if (!accept(tok)) error("expected '" + std::string(tok) + "'");
    }

    // Keyword followed by a non-identifier character.
    bool accept_keyword(std::string_view kw) {
        skip_ws();
        if (text_.substr(pos_, kw.size()) != kw) return false;
        std::size_t end = pos_ + kw.size();
        if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
            return false;
        }
        pos_ = end;
        return true;
    }

    std::string variable_name() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_]))) {
            error("expected a variable");
        }
        while (pos_ < text_.size() && (std::islower(static_cast<unsigned char>(text_[pos_])) ||
                                       std::isdigit(static_cast<unsigned char>(text_[pos_])))) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    // Binary connectives after `lhs`, nested to the left.
    FormulaPtr chain(FormulaPtr lhs) {
        while (true) {
            FormulaKind op;
            if (accept("&")) {
                op = FormulaKind::And;
            } else if (accept("|")) {
                op = FormulaKind::Or;
            } else if (accept("->")) {
                op = FormulaKind::Implies;
            } else {
                return lhs;
            }
            auto rhs = unary();
            lhs = op == FormulaKind::And   ? Formula::conj(lhs, rhs)
                  : op == FormulaKind::Or ? Formula::disj(lhs, rhs)
                                          : Formula::implies(lhs, rhs);
        }
    }

    FormulaPtr formula() {
        if (peek() == '(') {
            std::size_t open = pos_;
            ++pos_;
            auto f = chain(formula());
            if (accept(")")) return f;
            if (pos_ >= text_.size()) {
                pos_ = open;
                error("unbalanced parenthesis");
            }
            error("expected '&', '|', '->' or ')'");
        }
        return unary();
    }

    FormulaPtr unary() {
        char c = peek();
        if (c == '(') return formula();
        if (accept("!")) return Formula::negation(unary());
        if (accept_keyword("TRUE")) return Formula::truth(true);
        if (accept_keyword("FALSE")) return Formula::truth(false);
        if (accept_keyword("E") || accept_keyword("A")) {
            bool ex = text_[pos_ - 1] == 'E';
            auto v = variable_name();
            expect(".");
            auto body = chain(unary());
            return ex ? Formula::exists(v, body) : Formula::forall(v, body);
        }
        if (c == 'X') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) error("expected the index of X");
            auto digits = text_.substr(start, pos_ - start);
            if (digits.size() > 18) error("X index too large");
            std::uint64_t n = std::stoull(std::string(digits));
            if (pos_ >= text_.size() || text_[pos_] != '(') error("expected '(' after X" + std::string(digits));
            ++pos_;
            auto t = term();
            expect(")");
            return Formula::xn(n, std::move(t));
        }
        auto lhs = term();
        expect("=");
        auto rhs = term();
        return Formula::eq(std::move(lhs), std::move(rhs));
    }

    Term term() {
        Term t = item();
        while (accept("+")) t = t + item();
        return t;
    }

    Term item() {
        skip_ws();
        bool negative = accept("-");
        skip_ws();
        char c = pos_ < text_.size() ? text_[pos_] : '\0';
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
            std::string lit(text_.substr(start, pos_ - start));
            Scalar s;
            try {
                s = field_.parse_scalar(negative ? "-" + lit : lit);
            } catch (const Error& e) {
                pos_ = start;
                throw ParseError(e.kind(), e.what(), pos_);
            }
            if (accept("*")) return s * atom();
            if (!s.is_zero()) {
                pos_ = start;
                error("a scalar must multiply a variable or constant");
            }
            return Term{};
        }
        Term a = atom();
        return negative ? -a : a;
    }

    Term atom() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '$') {
            std::size_t start = ++pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            if (start == pos_) error("expected a constant name");
            std::string name(text_.substr(start, pos_ - start));
            if (known_ && !known_->count(name)) {
                pos_ = start - 1;
                throw ParseError(ErrorKind::UnknownConstant, "unknown constant $" + name, pos_);
            }
            return Term::constant(field_, name);
        }
        return Term::variable(field_, variable_name());
    }

    std::string_view text_;
    FieldCtx field_;
    const std::set<std::string>* known_;
    std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text, const FieldCtx& field, const std::set<std::string>* known_constants) {
    return Parser(text, field, known_constants).parse();
}

ModelElement eval_term(const Term& t, const Env& env, const FieldCtx& field) {
    (void)field;
    ModelElement out;
    for (const auto& [v, c] : t.variables()) {
        auto it = env.vars.find(v);
        if (it == env.vars.end()) fail(ErrorKind::UnboundSymbol, "unbound variable " + v);
        out += c * it->second;
    }
    for (const auto& [k, c] : t.constants()) {
        auto it = env.consts.find(k);
        if (it == env.consts.end()) fail(ErrorKind::UnknownConstant, "unknown constant $" + k);
        out += c * it->second;
    }
    return out;
}

bool eval_qf(const FormulaPtr& phi, const Env& env, const FieldCtx& field) {
    std::unordered_map<const Formula*, bool> memo;
    std::function<bool(const Formula*)> go = [&](const Formula* n) -> bool {
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        bool r = false;
        switch (n->kind()) {
            case FormulaKind::True: r = true; break;
            case FormulaKind::False: r = false; break;
            case FormulaKind::Eq: r = eval_term(n->lhs() - n->rhs(), env, field).is_zero(); break;
            case FormulaKind::Xn: r = in_Xn(eval_term(n->term(), env, field), n->n()); break;
            case FormulaKind::Not: r = !go(n->child().get()); break;
            case FormulaKind::And: r = go(n->left().get()) && go(n->right().get()); break;
            case FormulaKind::Or: r = go(n->left().get()) || go(n->right().get()); break;
            case FormulaKind::Implies: r = !go(n->left().get()) || go(n->right().get()); break;
            case FormulaKind::Exists:
            case FormulaKind::Forall:
                fail(ErrorKind::NotQuantifierFree, "eval_qf needs a quantifier-free formula");
        }
        memo.emplace(n, r);
        return r;
    };
    return go(phi.get());
}

}  // namespace vsp
