#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vsp/element.hpp"
#include "vsp/formula.hpp"
#include "vsp/model.hpp"

namespace vsp {

/// Shape of an existential witness x for a formula whose x-atoms read
/// X^n(x - m_j). Either x is a fresh free vector, or x = m_anchor + y with y in
/// F: on each axis met by the differences m_j - m_anchor, y copies the
/// component of one of them or takes a fresh coordinate, and y may add
/// components on fresh axes.
struct WitnessTemplate {
    bool fresh_free = false;
    std::size_t anchor = 0;  // index into centers
    std::vector<Term> centers;
    std::vector<std::pair<AxisId, std::size_t>> hull_choices;  // axis -> center whose difference is copied
    std::set<AxisId> parallel_fresh;
    std::size_t fresh_axis_count = 0;
};

/// Searches all witness templates for φ(var) under `env` in a rich model.
/// A returned witness has been checked with eval_qf.
std::optional<ModelElement> witness_search(const FormulaPtr& phi, const std::string& var, const Env& env,
                                           const Model& model, WitnessTemplate* used = nullptr);

/// Quantifier-free ψ equivalent to ∃var φ in every model of the theory.
/// Subformulas of the result are shared.
FormulaPtr eliminate_exists(const FormulaPtr& phi, const std::string& var, const FieldCtx& field);
/// Eliminates quantifiers innermost first, reading ∀ as ¬∃¬.
FormulaPtr eliminate_all(const FormulaPtr& phi, const FieldCtx& field);
/// Truth of a sentence: eliminate, then evaluate in the zero structure.
bool decide_sentence(const FormulaPtr& sigma, const FieldCtx& field);

}  // namespace vsp
