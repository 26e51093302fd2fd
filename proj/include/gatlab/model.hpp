#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gatlab/formula.hpp"

namespace gatlab {

using Elem = std::uint32_t;
using Tuple = std::vector<Elem>;

/// Tabulated set-valued model. Each sort has one carrier per tuple of its
/// telescope; each operation one value per tuple of its telescope.
/// Elements are global ids, every element lives in exactly one carrier.
class FiniteModel {
public:
    explicit FiniteModel(std::shared_ptr<const Theory> theory, std::string name = {});

    const Theory& theory() const noexcept { return *theory_; }
    const std::shared_ptr<const Theory>& theory_ptr() const noexcept { return theory_; }
    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    /// Creates the (possibly empty) carrier of `sort` at `index`.
    void declare_carrier(SymbolId sort, const Tuple& index);
    Elem add_element(SymbolId sort, const Tuple& index, std::string name);
    void set_op(SymbolId op, const Tuple& args, Elem value);

    /// nullptr when the carrier was never declared.
    const std::vector<Elem>* carrier(SymbolId sort, const Tuple& index) const;
    std::optional<Elem> op_value(SymbolId op, const Tuple& args) const;

    const std::map<Tuple, std::vector<Elem>>& carriers(SymbolId sort) const {
        return carriers_.at(sort);
    }
    const std::map<Tuple, Elem>& table(SymbolId op) const { return tables_.at(op); }

    std::size_t element_count() const noexcept { return names_.size(); }
    const std::string& element_name(Elem e) const { return names_.at(e); }
    SymbolId element_sort(Elem e) const { return sorts_.at(e); }
    std::optional<Elem> find_element(const std::string& name) const;

private:
    std::shared_ptr<const Theory> theory_;
    std::string name_;
    std::vector<std::string> names_;
    std::vector<SymbolId> sorts_;
    std::vector<std::map<Tuple, std::vector<Elem>>> carriers_;
    std::vector<std::map<Tuple, Elem>> tables_;
};

/// Throws MissingTableEntry if an operation entry is absent.
Elem eval_term(const FiniteModel& m, const Term& t, const Tuple& x);

/// Carrier of `a` at `x`; throws MissingTableEntry if undeclared.
const std::vector<Elem>& eval_type(const FiniteModel& m, const TypeExpr& a, const Tuple& x);

/// Calls `visit` with every extension of `x` along `ext`, in lexicographic
/// order. Stops early when `visit` returns false; returns false in that case.
bool for_each_extension(const FiniteModel& m, const Tuple& x, const std::vector<TypeExpr>& ext,
                        const std::function<bool(const Tuple&)>& visit);

/// M(Γ) in lexicographic dependent-product order.
std::vector<Tuple> enumerate_context(const FiniteModel& m, const Context& ctx);

bool eval_formula(const FiniteModel& m, const Formula& phi, const Tuple& x);
inline bool eval_formula(const FiniteModel& m, const Context&, const Formula& phi, const Tuple& x) {
    return eval_formula(m, phi, x);
}

/// |φ|_M as the ordered sublist of M(Γ) satisfying φ.
std::vector<Tuple> satisfying(const FiniteModel& m, const Context& ctx, const Formula& phi);

struct ModelCheck {
    bool ok = true;
    ErrorKind kind = ErrorKind::InvalidModel;
    std::string message;
    std::optional<std::uint32_t> equation; // index of the first failing equation
    Tuple witness;                         // telescope tuple where it fails
};

/// Typing of every table entry plus exhaustive validity of all equations.
ModelCheck check_model(const FiniteModel& m);

std::string tuple_to_string(const FiniteModel& m, const Tuple& x);

} // namespace gatlab
