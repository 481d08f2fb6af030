#pragma once

#include <stdexcept>
#include <string>

#include "nct/symbol.hpp"

namespace nct {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the shared expression grammar.  Accepts everything the printers
/// emit plus transcription conveniences: bare integers and fractions, `I`,
/// `tt` for t1^2+t2^2, and grouped letters `d1(k^2)` which expand to
/// k*d1(k) + d1(k)*k.
SymbolExpr parse_symbol_expr(const std::string& text);

/// Display variant that re-groups k*d(k) + d(k)*k sibling pairs of equal
/// coefficient into d(k^2) letters.  Printing sugar only; the canonical
/// expression stays expanded.
std::string print_grouped_k2(const SymbolExpr& e);

}  // namespace nct
