#pragma once

#include "nct/symbol.hpp"

namespace nct {

enum class Half { Functions, Forms };

/// Operator symbol split into homogeneous components of orders 2, 1, 0.
struct OperatorSymbol {
  SymbolExpr a2, a1, a0;
  Half half;
};

struct ParametrixTerms {
  SymbolExpr b0, b1, b2;
};

/// Symbol of the Laplacian on functions (orders 2/1/0).
OperatorSymbol symbol_functions();

/// Symbol of the Laplacian on (1,0)-forms; the order-0 part vanishes.
OperatorSymbol symbol_forms();

/// Adjoint symbol: sum over l of 1/l! dxi^l delta^l (star x); finite for
/// xi-polynomial symbols without b0 letters.
SymbolExpr adjoint_symbol(const SymbolExpr& x);

/// Product symbol, truncated to terms of order >= min_order.
SymbolExpr compose_symbols(const SymbolExpr& x, const SymbolExpr& y, int min_order);

/// Resolvent parametrix terms b0, b1, b2 of orders -2, -3, -4.
ParametrixTerms compute_parametrix(const OperatorSymbol& op);

/// Residuals of the graded composition slices (with the unit treated as a
/// symbol of order 2): order 0 must give exactly 1 and the two lower slices
/// exactly 0, so every field below is empty on success.  Residuals are
/// reported in the b0-free quotient normal form.
struct ResidualReport {
  SymbolExpr order0, order_m1, order_m2;
  bool ok() const;
};

ResidualReport verify_parametrix(const ParametrixTerms& p, const OperatorSymbol& op);

}  // namespace nct
