#include "vsp/qe.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "vsp/error.hpp"

namespace vsp {

namespace {

void require_infinite(const FieldCtx& field) {
    if (field.is_finite()) {
        fail(ErrorKind::FieldNotInfinite,
             "quantifier elimination needs an infinite field; the theory over " + field.name() + " is incomplete");
    }
}

void require_qf(const FormulaPtr& phi) {
    if (!phi->is_quantifier_free()) fail(ErrorKind::NotQuantifierFree, "expected a quantifier-free formula");
}

// Simplifying constructors.

FormulaPtr mk_not(const FormulaPtr& a) {
    switch (a->kind()) {
        case FormulaKind::True: return Formula::truth(false);
        case FormulaKind::False: return Formula::truth(true);
        case FormulaKind::Not: return a->child();
        default: return Formula::negation(a);
    }
}

FormulaPtr mk_and2(const FormulaPtr& a, const FormulaPtr& b) {
    if (a->kind() == FormulaKind::False || b->kind() == FormulaKind::False) return Formula::truth(false);
    if (a->kind() == FormulaKind::True) return b;
    if (b->kind() == FormulaKind::True || a == b) return a;
    return Formula::conj(a, b);
}

FormulaPtr mk_or2(const FormulaPtr& a, const FormulaPtr& b) {
    if (a->kind() == FormulaKind::True || b->kind() == FormulaKind::True) return Formula::truth(true);
    if (a->kind() == FormulaKind::False) return b;
    if (b->kind() == FormulaKind::False || a == b) return a;
    return Formula::disj(a, b);
}

FormulaPtr balanced(const std::vector<FormulaPtr>& v, std::size_t lo, std::size_t hi, bool conj) {
    if (hi - lo == 1) return v[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    auto l = balanced(v, lo, mid, conj);
    auto r = balanced(v, mid, hi, conj);
    return conj ? Formula::conj(l, r) : Formula::disj(l, r);
}

FormulaPtr mk_nary(const std::vector<FormulaPtr>& parts, bool conj) {
    const FormulaKind unit = conj ? FormulaKind::True : FormulaKind::False;
    std::vector<FormulaPtr> kept;
    std::unordered_set<const Formula*> seen;
    for (const auto& p : parts) {
        if (p->kind() == unit) continue;
        if (p->kind() == (conj ? FormulaKind::False : FormulaKind::True)) return p;
        if (seen.insert(p.get()).second) kept.push_back(p);
    }
    if (kept.empty()) return Formula::truth(conj);
    return balanced(kept, 0, kept.size(), conj);
}

FormulaPtr mk_and(const std::vector<FormulaPtr>& parts) { return mk_nary(parts, true); }
FormulaPtr mk_or(const std::vector<FormulaPtr>& parts) { return mk_nary(parts, false); }

FormulaPtr mk_xn(std::uint64_t n, const Term& t) {
    if (t.is_zero()) return Formula::truth(true);
    return Formula::xn(n, t);
}

template <class F>
void for_each_node(const FormulaPtr& root, F&& f) {
    std::unordered_set<const Formula*> seen;
    std::vector<const Formula*> stack{root.get()};
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        if (!n || !seen.insert(n).second) continue;
        f(*n);
        stack.push_back(n->left().get());
        stack.push_back(n->right().get());
    }
}

// An atom mentioning x, read as X^n(x - center).
struct XAtom {
    std::size_t center;
    std::uint64_t n;
};

struct Analysis {
    std::vector<Term> centers;
    std::vector<std::uint64_t> hi;  // largest index used with each center
    std::vector<XAtom> atoms;
    std::unordered_map<const Formula*, std::size_t> atom_of;
};

Analysis analyze(const FormulaPtr& phi, const std::string& var) {
    Analysis an;
    std::map<Term, std::size_t> center_index;
    std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> atom_index;
    for_each_node(phi, [&](const Formula& node) {
        Term s;
        std::uint64_t n = 0;
        if (node.kind() == FormulaKind::Eq) {
            s = node.lhs() - node.rhs();
        } else if (node.kind() == FormulaKind::Xn) {
            s = node.term();
            n = node.n();
        } else {
            return;
        }
        auto it = s.variables().find(var);
        if (it == s.variables().end()) return;
        Term m = (-it->second.inverse()) * s.without(var);
        auto [cit, fresh] = center_index.try_emplace(m, an.centers.size());
        if (fresh) {
            an.centers.push_back(m);
            an.hi.push_back(0);
        }
        std::size_t c = cit->second;
        an.hi[c] = std::max(an.hi[c], n);
        auto [ait, new_atom] = atom_index.try_emplace({c, n}, an.atoms.size());
        if (new_atom) an.atoms.push_back({c, n});
        an.atom_of.emplace(&node, ait->second);
    });
    return an;
}

// φ with every x-atom replaced by its truth value.
using TruthKey = std::vector<char>;

FormulaPtr residual(const FormulaPtr& phi, const Analysis& an, const TruthKey& truth) {
    std::unordered_map<const Formula*, FormulaPtr> memo;
    std::function<FormulaPtr(const FormulaPtr&)> go = [&](const FormulaPtr& n) -> FormulaPtr {
        if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
        FormulaPtr r;
        switch (n->kind()) {
            case FormulaKind::True:
            case FormulaKind::False: r = n; break;
            case FormulaKind::Eq:
            case FormulaKind::Xn:
                if (auto it = an.atom_of.find(n.get()); it != an.atom_of.end()) {
                    r = Formula::truth(truth[it->second]);
                } else if (n->kind() == FormulaKind::Xn ? n->term().is_zero() : n->lhs() == n->rhs()) {
                    r = Formula::truth(true);
                } else {
                    r = n;
                }
                break;
            case FormulaKind::Not: r = mk_not(go(n->child())); break;
            case FormulaKind::And: r = mk_and2(go(n->left()), go(n->right())); break;
            case FormulaKind::Or: r = mk_or2(go(n->left()), go(n->right())); break;
            case FormulaKind::Implies: r = mk_or2(mk_not(go(n->left())), go(n->right())); break;
            case FormulaKind::Exists:
            case FormulaKind::Forall: fail(ErrorKind::NotQuantifierFree, "expected a quantifier-free formula");
        }
        memo.emplace(n.get(), r);
        return r;
    };
    return go(phi);
}

// Weight vectors over the anchored centers, each entry capped.
using WVec = std::vector<std::uint64_t>;

TruthKey truth_key(const Analysis& an, const std::vector<std::size_t>& members, const WVec& w) {
    std::vector<int> pos(an.centers.size(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<int>(i);
    TruthKey key(an.atoms.size(), 0);
    for (std::size_t a = 0; a < an.atoms.size(); ++a) {
        int p = pos[an.atoms[a].center];
        key[a] = p >= 0 && w[p] <= an.atoms[a].n;
    }
    return key;
}

// Adds one axis to a weight vector: every entry outside `block` grows by 1.
WVec add_axis(const WVec& w, const std::vector<int>& block_of, int block, const WVec& cap) {
    WVec out = w;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (block_of[i] != block && out[i] < cap[i]) ++out[i];
    }
    return out;
}

// Capped weight vectors packed into one integer in mixed radix.
class WeightCodec {
public:
    explicit WeightCodec(const WVec& cap) : cap_(cap) {
        std::uint64_t stride = 1;
        for (auto c : cap_) {
            stride_.push_back(stride);
            if (stride > UINT64_MAX / (c + 1)) fail(ErrorKind::ResourceLimit, "too many x-atoms to eliminate");
            stride *= c + 1;
        }
    }

    std::uint64_t digit(std::uint64_t code, std::size_t i) const { return code / stride_[i] % (cap_[i] + 1); }

    WVec decode(std::uint64_t code) const {
        WVec w(cap_.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = digit(code, i);
        return w;
    }

    std::uint64_t encode(const WVec& w) const {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < w.size(); ++i) code += w[i] * stride_[i];
        return code;
    }

    std::uint64_t add_axis(std::uint64_t code, const std::vector<int>& block_of, int block) const {
        std::uint64_t out = code;
        for (std::size_t i = 0; i < cap_.size(); ++i) {
            if (block_of[i] != block && digit(code, i) < cap_[i]) out += stride_[i];
        }
        return out;
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < cap_.size(); ++i) out += std::min(digit(a, i) + digit(b, i), cap_[i]) * stride_[i];
        return out;
    }

private:
    WVec cap_;
    std::vector<std::uint64_t> stride_;
};

// Sorted, duplicate-free.
using WeightSet = std::vector<std::uint64_t>;

void normalize(WeightSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}


// Coefficient vectors of parameter terms.
class SymbolSpace {
public:
    explicit SymbolSpace(const FieldCtx& field) : field_(field) {}

    void add(const Term& t) {
        for (const auto& [v, _] : t.variables()) insert({false, v});
        for (const auto& [c, _] : t.constants()) insert({true, c});
    }

    std::size_t size() const { return symbols_.size(); }

    Vec vec(const Term& t) const {
        Vec v = zero_vec(field_, symbols_.size());
        for (const auto& [name, c] : t.variables()) v[index_.at({false, name})] = c;
        for (const auto& [name, c] : t.constants()) v[index_.at({true, name})] = c;
        return v;
    }

    Term term(const Vec& v) const {
        Term t;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero()) continue;
            const auto& [is_const, name] = symbols_[i];
            t = t + v[i] * (is_const ? Term::constant(field_, name) : Term::variable(field_, name));
        }
        return t;
    }

private:
    void insert(std::pair<bool, std::string> key) {
        if (index_.emplace(key, symbols_.size()).second) symbols_.push_back(std::move(key));
    }

    FieldCtx field_;
    std::vector<std::pair<bool, std::string>> symbols_;
    std::map<std::pair<bool, std::string>, std::size_t> index_;
};

// Partition of the anchored centers by equality of their components on one axis.
struct Pattern {
    Subspace flat;
    std::vector<int> block_of;
    int blocks = 0;
};

std::vector<int> partition(std::size_t count, const std::function<bool(std::size_t, std::size_t)>& same, int& blocks) {
    std::vector<int> block_of(count, -1);
    blocks = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (block_of[i] >= 0) continue;
        block_of[i] = blocks;
        for (std::size_t k = i + 1; k < count; ++k) {
            if (block_of[k] < 0 && same(i, k)) block_of[k] = blocks;
        }
        ++blocks;
    }
    return block_of;
}

// Quantifier-free condition for one anchor and one choice of which
// differences are light.
class AnchoredCase {
public:
    AnchoredCase(const FieldCtx& field, const Analysis& an, const FormulaPtr& phi, const SymbolSpace& space,
                 std::vector<std::size_t> members, std::vector<std::uint64_t> theta,
                 std::map<TruthKey, FormulaPtr>& residuals)
        : field_(field), an_(an), phi_(phi), space_(space), members_(std::move(members)), theta_(std::move(theta)),
          residuals_(residuals) {}

    FormulaPtr build() {
        const std::size_t k = members_.size();
        const Term& anchor = an_.centers[members_[0]];
        for (auto c : members_) u_.push_back(space_.vec(an_.centers[c] - anchor));
        cap_.resize(k);
        for (std::size_t i = 0; i < k; ++i) cap_[i] = an_.hi[members_[i]] + 1;
        codec_.emplace(cap_);

        const std::size_t dim = space_.size();
        std::vector<Vec> light(u_.begin() + 1, u_.end());
        top_ = Subspace::from_generators(field_, dim, light);
        std::vector<Vec> diffs;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                auto d = sub(u_[j], u_[i]);
                if (!is_zero_vec(d)) diffs.push_back(d);
            }
        }
        // Every span of differences is a possible trace of an axis kernel.
        std::set<Subspace> flats{Subspace::zero(field_, dim)};
        std::vector<Subspace> queue{Subspace::zero(field_, dim)};
        while (!queue.empty()) {
            auto l = queue.back();
            queue.pop_back();
            for (const auto& d : diffs) {
                if (l.contains(d)) continue;
                auto bigger = l.sum(Subspace::from_generators(field_, dim, {d}));
                if (flats.insert(bigger).second) queue.push_back(bigger);
            }
        }
        for (const auto& f : flats) {
            if (f != top_) {
                Pattern p{f, {}, 0};
                p.block_of = partition(k, [&](std::size_t a, std::size_t b) { return f.contains(sub(u_[a], u_[b])); },
                                       p.blocks);
                patterns_.push_back(std::move(p));
            }
            if (!f.is_zero()) measured_.push_back(f);
        }
        for (const auto& p : patterns_) {
            std::vector<char> misses(k);
            for (std::size_t i = 0; i < k; ++i) misses[i] = !p.flat.contains(u_[i]);
            misses_.push_back(std::move(misses));
        }
        for (const auto& f : measured_) {
            std::vector<char> outside;
            for (const auto& p : patterns_) outside.push_back(!p.flat.contains(f));
            outside_.push_back(std::move(outside));
        }

        std::vector<std::size_t> counts(patterns_.size(), 0);
        std::vector<std::uint64_t> used(k, 0);
        enumerate(0, counts, used, WeightSet{0});

        std::vector<FormulaPtr> pieces;
        for (const auto& [key, which] : by_key_) {
            auto rho = residual_for(key);
            if (rho->kind() == FormulaKind::False) continue;
            if (which.size() == count_vectors_.size()) {
                pieces.push_back(rho);
                continue;
            }
            // Under the guard exactly one count vector holds, so list the shorter side.
            const bool complement = 2 * which.size() > count_vectors_.size();
            std::vector<char> listed(count_vectors_.size(), complement);
            for (auto idx : which) listed[idx] = !complement;
            std::vector<FormulaPtr> options;
            for (std::size_t idx = 0; idx < listed.size(); ++idx) {
                if (listed[idx]) options.push_back(counts_equal(count_vectors_[idx]));
            }
            auto any = mk_or(options);
            pieces.push_back(mk_and2(rho, complement ? mk_not(any) : any));
        }
        return mk_or(pieces);
    }

private:
    FormulaPtr residual_for(const TruthKey& key) {
        auto it = residuals_.find(key);
        if (it != residuals_.end()) return it->second;
        return residuals_[key] = residual(phi_, an_, key);
    }

    // `reach` holds the weight vectors reachable with the counts fixed so far.
    void enumerate(std::size_t p, std::vector<std::size_t>& counts, std::vector<std::uint64_t>& used,
                   const WeightSet& reach) {
        if (p == patterns_.size()) {
            record(counts, reach);
            return;
        }
        // Axes with this pattern carry every light difference outside it.
        std::uint64_t limit = UINT64_MAX;
        for (std::size_t i = 1; i < members_.size(); ++i) {
            if (misses_[p][i]) limit = std::min(limit, theta_[i] - used[i]);
        }
        for (std::uint64_t c = 0; c <= limit; ++c) {
            counts[p] = c;
            for (std::size_t i = 1; i < members_.size(); ++i) {
                if (misses_[p][i]) used[i] += c;
            }
            if (c == 0) {
                enumerate(p + 1, counts, used, reach);
            } else {
                WeightSet next;
                const auto& add = contribution(p, c);
                next.reserve(reach.size() * add.size());
                for (auto a : reach) {
                    for (auto b : add) next.push_back(codec_->add(a, b));
                }
                normalize(next);
                enumerate(p + 1, counts, used, next);
            }
            for (std::size_t i = 1; i < members_.size(); ++i) {
                if (misses_[p][i]) used[i] -= c;
            }
        }
        counts[p] = 0;
    }

    const WeightSet& contribution(std::size_t p, std::size_t c) {
        auto& table = contributions_[p];
        if (table.empty()) table.push_back({0});
        while (table.size() <= c) {
            WeightSet next;
            for (auto w : table.back()) {
                for (int b = 0; b <= patterns_[p].blocks; ++b) {
                    next.push_back(codec_->add_axis(w, patterns_[p].block_of, b));
                }
            }
            normalize(next);
            table.push_back(std::move(next));
        }
        return table[c];
    }

    void record(const std::vector<std::size_t>& counts, const WeightSet& reach) {
        const std::size_t idx = count_vectors_.size();
        count_vectors_.push_back(counts);
        auto cached = keys_of_reach_.find(reach);
        if (cached != keys_of_reach_.end()) {
            for (const auto& key : cached->second) by_key_[key].push_back(idx);
            return;
        }
        std::set<TruthKey> keys;
        const auto max_cap = *std::max_element(cap_.begin(), cap_.end());
        const std::vector<int> one_block(cap_.size(), 0);
        for (auto w : reach) {
            for (std::uint64_t fresh = 0; fresh <= max_cap; ++fresh) {
                if (codec_->digit(w, 0) <= an_.hi[members_[0]]) keys.insert(truth_key(an_, members_, codec_->decode(w)));
                w = codec_->add_axis(w, one_block, -1);
            }
        }
        for (const auto& key : keys) by_key_[key].push_back(idx);
        keys_of_reach_.emplace(reach, std::move(keys));
    }

    // W(f(L)) >= t: some combination with leading coefficient 1 and the others in
    // {0, ..., t+1} has weight at least t.
    FormulaPtr weight_at_least(std::size_t flat, std::uint64_t t) {
        if (t == 0) return Formula::truth(true);
        auto key = std::make_pair(flat, t);
        if (auto it = at_least_.find(key); it != at_least_.end()) return it->second;
        const auto& basis = measured_[flat].basis();
        std::vector<Term> terms;
        for (const auto& b : basis) terms.push_back(space_.term(b));
        std::vector<FormulaPtr> options;
        std::vector<std::uint64_t> lambda(terms.size(), 0);
        while (true) {
            Term combo = terms[0];
            for (std::size_t i = 1; i < terms.size(); ++i) {
                if (lambda[i]) combo = combo + field_.from_int(static_cast<long long>(lambda[i])) * terms[i];
            }
            options.push_back(mk_not(mk_xn(t - 1, combo)));
            std::size_t pos = 1;
            while (pos < terms.size() && ++lambda[pos] > t + 1) lambda[pos++] = 0;
            if (pos >= terms.size()) break;
        }
        auto f = mk_or(options);
        at_least_.emplace(key, f);
        return f;
    }

    FormulaPtr counts_equal(const std::vector<std::size_t>& counts) {
        std::vector<FormulaPtr> parts;
        for (std::size_t f = 0; f < measured_.size(); ++f) {
            std::uint64_t w = 0;
            for (std::size_t p = 0; p < patterns_.size(); ++p) {
                if (outside_[f][p]) w += counts[p];
            }
            parts.push_back(mk_and2(weight_at_least(f, w), mk_not(weight_at_least(f, w + 1))));
        }
        return mk_and(parts);
    }

    const FieldCtx& field_;
    const Analysis& an_;
    const FormulaPtr& phi_;
    const SymbolSpace& space_;
    std::vector<std::size_t> members_;  // anchor first, then the light centers
    std::vector<std::uint64_t> theta_;  // aligned with members_
    std::map<TruthKey, FormulaPtr>& residuals_;

    std::vector<Vec> u_;
    WVec cap_;
    std::optional<WeightCodec> codec_;
    Subspace top_;
    std::vector<Pattern> patterns_;
    std::vector<Subspace> measured_;  // nonzero flats
    std::vector<std::vector<char>> misses_;   // pattern -> member -> difference outside the flat
    std::vector<std::vector<char>> outside_;  // measured flat -> pattern -> not contained
    std::map<WeightSet, std::set<TruthKey>> keys_of_reach_;
    std::map<std::size_t, std::vector<WeightSet>> contributions_;
    std::vector<std::vector<std::size_t>> count_vectors_;
    std::map<TruthKey, std::vector<std::size_t>> by_key_;
    std::map<std::pair<std::size_t, std::uint64_t>, FormulaPtr> at_least_;
};

// Choices of light centers. Centers whose differences from the anchor are
// parallel have equal weight, so the light ones among them are those with
// the largest thresholds.
std::vector<std::vector<std::size_t>> light_subsets(const std::vector<std::size_t>& others,
                                                    const std::vector<Vec>& diff,
                                                    const std::vector<std::uint64_t>& theta) {
    std::vector<std::vector<std::size_t>> groups;
    std::vector<Vec> directions;
    for (std::size_t i = 0; i < others.size(); ++i) {
        Vec d = diff[i];
        for (const auto& s : d) {
            if (!s.is_zero()) {
                d = scale(s.inverse(), d);
                break;
            }
        }
        auto it = std::find(directions.begin(), directions.end(), d);
        if (it == directions.end()) {
            directions.push_back(d);
            groups.push_back({i});
        } else {
            groups[it - directions.begin()].push_back(i);
        }
    }
    std::vector<std::vector<std::size_t>> out{{}};
    for (const auto& g : groups) {
        std::set<std::uint64_t> thresholds;
        for (auto i : g) thresholds.insert(theta[i]);
        std::vector<std::vector<std::size_t>> next;
        for (const auto& base : out) {
            next.push_back(base);
            for (auto t : thresholds) {
                auto with = base;
                for (auto i : g) {
                    if (theta[i] >= t) with.push_back(i);
                }
                next.push_back(std::move(with));
            }
        }
        out = std::move(next);
    }
    for (auto& s : out) std::sort(s.begin(), s.end());
    return out;
}

}  // namespace

FormulaPtr eliminate_exists(const FormulaPtr& phi, const std::string& var, const FieldCtx& field) {
    require_infinite(field);
    require_qf(phi);
    Analysis an = analyze(phi, var);
    if (an.centers.empty()) return phi;

    std::map<TruthKey, FormulaPtr> residuals;
    // x a fresh free vector: every x-atom fails.
    TruthKey none(an.atoms.size(), 0);
    residuals[none] = residual(phi, an, none);
    std::vector<FormulaPtr> disjuncts{residuals[none]};
    if (disjuncts[0]->kind() == FormulaKind::True) return disjuncts[0];

    SymbolSpace space(field);
    for (const auto& c : an.centers) space.add(c);

    for (std::size_t j0 = 0; j0 < an.centers.size(); ++j0) {
        std::vector<std::size_t> others;
        std::vector<Vec> diff;
        std::vector<std::uint64_t> theta;
        std::vector<Term> diff_terms;
        for (std::size_t j = 0; j < an.centers.size(); ++j) {
            if (j == j0) continue;
            others.push_back(j);
            diff_terms.push_back(an.centers[j] - an.centers[j0]);
            diff.push_back(space.vec(diff_terms.back()));
            theta.push_back(an.hi[j0] + an.hi[j]);
        }
        for (const auto& light : light_subsets(others, diff, theta)) {
            std::vector<FormulaPtr> cond;
            std::vector<std::size_t> members{j0};
            std::vector<std::uint64_t> member_theta{0};
            std::size_t next = 0;
            for (std::size_t i = 0; i < others.size(); ++i) {
                bool is_light = next < light.size() && light[next] == i;
                if (is_light) {
                    ++next;
                    members.push_back(others[i]);
                    member_theta.push_back(theta[i]);
                    cond.push_back(mk_xn(theta[i], diff_terms[i]));
                } else {
                    cond.push_back(mk_not(mk_xn(theta[i], diff_terms[i])));
                }
            }
            auto guard = mk_and(cond);
            if (guard->kind() == FormulaKind::False) continue;
            AnchoredCase c(field, an, phi, space, members, member_theta, residuals);
            auto piece = mk_and2(guard, c.build());
            if (piece->kind() == FormulaKind::True) return piece;
            disjuncts.push_back(piece);
        }
    }
    return mk_or(disjuncts);
}

FormulaPtr eliminate_all(const FormulaPtr& phi, const FieldCtx& field) {
    require_infinite(field);
    std::unordered_map<const Formula*, FormulaPtr> memo;
    std::function<FormulaPtr(const FormulaPtr&)> go = [&](const FormulaPtr& n) -> FormulaPtr {
        if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
        FormulaPtr r = n;
        switch (n->kind()) {
            case FormulaKind::Not: {
                auto c = go(n->child());
                if (c != n->child()) r = mk_not(c);
                break;
            }
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Implies: {
                auto a = go(n->left());
                auto b = go(n->right());
                if (a != n->left() || b != n->right()) {
                    r = n->kind() == FormulaKind::And  ? mk_and2(a, b)
                        : n->kind() == FormulaKind::Or ? mk_or2(a, b)
                                                       : mk_or2(mk_not(a), b);
                }
                break;
            }
            case FormulaKind::Exists: r = eliminate_exists(go(n->body()), n->var(), field); break;
            case FormulaKind::Forall: r = mk_not(eliminate_exists(mk_not(go(n->body())), n->var(), field)); break;
            default: break;
        }
        memo.emplace(n.get(), r);
        return r;
    };
    return go(phi);
}

bool decide_sentence(const FormulaPtr& sigma, const FieldCtx& field) {
    require_infinite(field);
    auto vars = sigma->free_variables();
    auto consts = sigma->constants();
    if (!vars.empty() || !consts.empty()) {
        std::string names;
        for (const auto& v : vars) names += (names.empty() ? "" : ", ") + v;
        for (const auto& c : consts) names += (names.empty() ? "$" : ", $") + c;
        fail(ErrorKind::FreeSymbols, "not a sentence; free symbols: " + names);
    }
    return eval_qf(eliminate_all(sigma, field), Env{}, field);
}

std::optional<ModelElement> witness_search(const FormulaPtr& phi, const std::string& var, const Env& env,
                                           const Model& model, WitnessTemplate* used) {
    const FieldCtx& field = model.field();
    require_infinite(field);
    require_qf(phi);
    Analysis an = analyze(phi, var);

    std::vector<ModelElement> values;
    for (const auto& c : an.centers) values.push_back(eval_term(c, env, field));
    FreshAllocator base(model, values);
    for (const auto& [_, v] : env.vars) base.avoid(v);
    for (const auto& [_, v] : env.consts) base.avoid(v);

    std::map<TruthKey, bool> verdicts;
    auto holds = [&](const TruthKey& key) {
        auto it = verdicts.find(key);
        if (it != verdicts.end()) return it->second;
        return verdicts[key] = eval_qf(residual(phi, an, key), env, field);
    };
    auto verify = [&](const ModelElement& x) {
        Env e = env;
        e.vars[var] = x;
        return eval_qf(phi, e, field);
    };

    for (std::size_t j0 = 0; j0 < an.centers.size(); ++j0) {
        std::vector<std::size_t> members{j0};
        std::vector<ModelElement> u{ModelElement{}};
        for (std::size_t j = 0; j < an.centers.size(); ++j) {
            if (j == j0) continue;
            auto d = values[j] - values[j0];
            if (in_Xn(d, an.hi[j0] + an.hi[j])) {
                members.push_back(j);
                u.push_back(d);
            }
        }
        const std::size_t k = members.size();
        WVec cap(k);
        for (std::size_t i = 0; i < k; ++i) cap[i] = an.hi[members[i]] + 1;

        std::set<AxisId> axes;
        for (const auto& d : u) {
            auto a = d.axes();
            axes.insert(a.begin(), a.end());
        }
        std::vector<AxisId> axis_list(axes.begin(), axes.end());
        std::vector<std::vector<int>> block_of;
        std::vector<std::vector<std::size_t>> block_rep;
        for (auto axis : axis_list) {
            std::vector<ModelElement> comps;
            for (const auto& d : u) comps.push_back(d.axis_component(axis));
            int blocks = 0;
            auto b = partition(k, [&](std::size_t x, std::size_t y) { return comps[x] == comps[y]; }, blocks);
            std::vector<std::size_t> reps(blocks);
            for (std::size_t i = k; i-- > 0;) reps[b[i]] = i;
            block_of.push_back(std::move(b));
            block_rep.push_back(std::move(reps));
        }

        // Reachable weight vectors after each axis, with the choice that led there.
        std::vector<std::map<WVec, std::pair<WVec, int>>> layers(axis_list.size() + 1);
        layers[0][WVec(k, 0)] = {WVec{}, -1};
        for (std::size_t a = 0; a < axis_list.size(); ++a) {
            const int blocks = static_cast<int>(block_rep[a].size());
            for (const auto& [w, _] : layers[a]) {
                for (int b = 0; b <= blocks; ++b) {
                    layers[a + 1].try_emplace(add_axis(w, block_of[a], b, cap), std::make_pair(w, b));
                }
            }
        }

        const auto max_cap = static_cast<long long>(*std::max_element(cap.begin(), cap.end()));
        for (long long fresh = max_cap; fresh >= 0; --fresh) {
            for (const auto& [w, _] : layers.back()) {
                WVec total = w;
                for (long long f = 0; f < fresh; ++f) total = add_axis(total, std::vector<int>(k, 0), -1, cap);
                if (total[0] > an.hi[j0] || !holds(truth_key(an, members, total))) continue;

                WitnessTemplate tmpl;
                tmpl.anchor = j0;
                tmpl.centers = an.centers;
                tmpl.fresh_axis_count = static_cast<std::size_t>(fresh);
                FreshAllocator alloc = base;
                ModelElement x = values[j0];
                WVec state = w;
                for (std::size_t a = axis_list.size(); a-- > 0;) {
                    auto [prev, choice] = layers[a + 1].at(state);
                    const auto axis = axis_list[a];
                    if (choice == static_cast<int>(block_rep[a].size())) {
                        x += alloc.fresh_coord(axis);
                        tmpl.parallel_fresh.insert(axis);
                    } else {
                        auto rep = block_rep[a][choice];
                        x += u[rep].axis_component(axis);
                        tmpl.hull_choices.emplace_back(axis, members[rep]);
                    }
                    state = prev;
                }
                std::reverse(tmpl.hull_choices.begin(), tmpl.hull_choices.end());
                for (long long f = 0; f < fresh; ++f) x += alloc.fresh_axis_element();
                if (!verify(x)) continue;
                if (used) *used = std::move(tmpl);
                return x;
            }
        }
    }

    // x a fresh free vector.
    if (holds(TruthKey(an.atoms.size(), 0))) {
        FreshAllocator alloc = base;
        auto x = alloc.fresh_free();
        if (verify(x)) {
            if (used) {
                *used = WitnessTemplate{};
                used->fresh_free = true;
                used->centers = an.centers;
            }
            return x;
        }
    }
    return std::nullopt;
}

}  // namespace vsp
