#pragma once

#include <string>

#include "gatlab/io/parse.hpp"

namespace gatlab::io {

// Printers emit text that the corresponding parser reads back to the same
// structure.

std::string print_theory(const Theory& th);
/// The context with repeated names made distinct, for printing.
Context distinct_names(const Context& ctx);
std::string print_context(const Theory& th, const Context& ctx);
std::string print_formula_file(const FormulaFile& file);
std::string print_model(const FiniteModel& m, const std::string& theory_ref);
std::string print_hom(const ModelHom& h, const std::string& source_ref, const std::string& target_ref);
std::string print_category(const FinCategory& c);
std::string print_functor(const Functor& f, const std::string& source_ref, const std::string& target_ref);
std::string print_proof(const ProofFile& proof);

} // namespace gatlab::io
