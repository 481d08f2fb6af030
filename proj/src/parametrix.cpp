#include "nct/parametrix.hpp"

namespace nct {

namespace {

ScalarPoly xv(Var v) { return ScalarPoly::var(v); }

SymbolExpr k_word(int n, ScalarPoly c = ScalarPoly::one()) {
  return SymbolExpr::word(Word{Atom::k(n)}, c);
}

SymbolExpr kd_word(int n, Atom d, ScalarPoly c) {
  return SymbolExpr::word(Word{Atom::k(n), d}, c);
}

}  // namespace

OperatorSymbol symbol_functions() {
  OperatorSymbol s;
  s.half = Half::Functions;
  s.a2 = leading_symbol();

  ScalarPoly t1 = xv(Var::T1), x1 = xv(Var::X1), x2 = xv(Var::X2);
  ScalarPoly tt = ScalarPoly::tau_abs2();
  Atom d1 = Atom::dk(1, 0), d2 = Atom::dk(0, 1);

  s.a1 = kd_word(1, d1, x1.scaled(GaussRat(2)));
  s.a1 += kd_word(1, d2, (tt * x2).scaled(GaussRat(2)));
  s.a1 += kd_word(1, d2, (t1 * x1).scaled(GaussRat(2)));
  s.a1 += kd_word(1, d1, (t1 * x2).scaled(GaussRat(2)));

  s.a0 = kd_word(1, Atom::dk(2, 0), ScalarPoly::one());
  s.a0 += kd_word(1, Atom::dk(0, 2), tt);
  s.a0 += kd_word(1, Atom::dk(1, 1), t1.scaled(GaussRat(2)));
  return s;
}

OperatorSymbol symbol_forms() {
  OperatorSymbol s;
  s.half = Half::Forms;
  s.a2 = leading_symbol();

  ScalarPoly t1 = xv(Var::T1), x1 = xv(Var::X1), x2 = xv(Var::X2);
  ScalarPoly tt = ScalarPoly::tau_abs2();
  ScalarPoly tau = t1 + xv(Var::T2).scaled(GaussRat::imag_unit());
  ScalarPoly taubar = t1 - xv(Var::T2).scaled(GaussRat::imag_unit());

  auto dk2 = [](int j) {  // delta_j(k^2), expanded
    Atom d = (j == 1) ? Atom::dk(1, 0) : Atom::dk(0, 1);
    SymbolExpr e;
    e.add(Word{Atom::k(1), d}, ScalarPoly::one());
    e.add(Word{d, Atom::k(1)}, ScalarPoly::one());
    return e;
  };

  s.a1 = dk2(1).scaled(x1) + dk2(2).scaled(tau * x1) +
         dk2(1).scaled(taubar * x2) + dk2(2).scaled(tt * x2);
  s.a0 = SymbolExpr::zero();
  return s;
}

namespace {

int max_order(const SymbolExpr& x) {
  bool have = false;
  int best = 0;
  for (const auto& [w, c] : x.terms())
    for (const auto& [m, g] : c.terms()) {
      int o = order_of(w, m);
      if (!have || o > best) best = o;
      have = true;
    }
  return best;
}

SymbolExpr drop_below_order(const SymbolExpr& x, int min_order) {
  SymbolExpr out;
  for (const auto& [w, c] : x.terms()) {
    ScalarPoly keep;
    for (const auto& [m, g] : c.terms())
      if (order_of(w, m) >= min_order) keep.add_term(m, g);
    if (!keep.is_zero()) out.add(w, keep);
  }
  return out;
}

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

SymbolExpr adjoint_symbol(const SymbolExpr& x) {
  SymbolExpr out;
  SymbolExpr cur = star(x);
  for (int l1 = 0;; ++l1) {
    SymbolExpr row = cur;  // delta_1^l1 (star x)
    bool row_alive = !row.is_zero();
    for (int l2 = 0;; ++l2) {
      SymbolExpr term = row;
      for (int i = 0; i < l1; ++i) term = dxi(1, term);
      for (int i = 0; i < l2; ++i) term = dxi(2, term);
      if (term.is_zero()) {
        if (l2 == 0) row_alive = false;
        break;
      }
      GaussRat c(rat(1, factorial(l1) * factorial(l2)));
      out += term.scaled(c);
      row = delta(2, row);
      if (row.is_zero()) break;
    }
    if (!row_alive) break;
    cur = delta(1, cur);
    if (cur.is_zero()) break;
  }
  return out;
}

SymbolExpr compose_symbols(const SymbolExpr& x, const SymbolExpr& y, int min_order) {
  if (x.is_zero() || y.is_zero()) return SymbolExpr::zero();
  int budget = max_order(x) + max_order(y) - min_order;
  SymbolExpr out;
  for (int l1 = 0; l1 <= budget; ++l1)
    for (int l2 = 0; l1 + l2 <= budget; ++l2) {
      SymbolExpr dx = x;
      for (int i = 0; i < l1; ++i) dx = dxi(1, dx);
      for (int i = 0; i < l2; ++i) dx = dxi(2, dx);
      if (dx.is_zero()) continue;
      SymbolExpr dy = y;
      for (int i = 0; i < l1; ++i) dy = delta(1, dy);
      for (int i = 0; i < l2; ++i) dy = delta(2, dy);
      if (dy.is_zero()) continue;
      GaussRat c(rat(1, factorial(l1) * factorial(l2)));
      out += nc_mul(dx, dy).scaled(c);
    }
  return drop_below_order(out, min_order);
}

ParametrixTerms compute_parametrix(const OperatorSymbol& op) {
  ParametrixTerms p;
  SymbolExpr b0 = SymbolExpr::atom(Atom::b0(1));
  p.b0 = b0;

  const SymbolExpr& a2 = op.a2;
  const SymbolExpr& a1 = op.a1;
  const SymbolExpr& a0 = op.a0;

  SymbolExpr b1 = nc_mul(b0, nc_mul(a1, b0));
  b1 += nc_mul(dxi(1, b0), nc_mul(delta(1, a2), b0));
  b1 += nc_mul(dxi(2, b0), nc_mul(delta(2, a2), b0));
  p.b1 = b1.scaled(GaussRat(-1));

  SymbolExpr b2 = nc_mul(b0, nc_mul(a0, b0));
  b2 += nc_mul(p.b1, nc_mul(a1, b0));
  b2 += nc_mul(dxi(1, b0), nc_mul(delta(1, a1), b0));
  b2 += nc_mul(dxi(2, b0), nc_mul(delta(2, a1), b0));
  b2 += nc_mul(dxi(1, p.b1), nc_mul(delta(1, a2), b0));
  b2 += nc_mul(dxi(2, p.b1), nc_mul(delta(2, a2), b0));
  b2 += nc_mul(dxi(1, dxi(1, b0)), nc_mul(delta(1, delta(1, a2)), b0))
            .scaled(GaussRat::frac(1, 2));
  b2 += nc_mul(dxi(2, dxi(2, b0)), nc_mul(delta(2, delta(2, a2)), b0))
            .scaled(GaussRat::frac(1, 2));
  b2 += nc_mul(dxi(1, dxi(2, b0)), nc_mul(delta(1, delta(2, a2)), b0));
  p.b2 = b2.scaled(GaussRat(-1));
  return p;
}

bool ResidualReport::ok() const {
  return order0.is_zero() && order_m1.is_zero() && order_m2.is_zero();
}

ResidualReport verify_parametrix(const ParametrixTerms& p, const OperatorSymbol& op) {
  SymbolExpr a2p = op.a2 + SymbolExpr::one();
  ResidualReport r;

  SymbolExpr e0 = nc_mul(p.b0, a2p) - SymbolExpr::one();
  r.order0 = b0_quotient_numerator(e0);

  SymbolExpr e1 = nc_mul(p.b1, a2p) + nc_mul(p.b0, op.a1);
  e1 += nc_mul(dxi(1, p.b0), delta(1, op.a2));
  e1 += nc_mul(dxi(2, p.b0), delta(2, op.a2));
  r.order_m1 = b0_quotient_numerator(e1);

  SymbolExpr e2 = nc_mul(p.b2, a2p) + nc_mul(p.b1, op.a1) + nc_mul(p.b0, op.a0);
  e2 += nc_mul(dxi(1, p.b1), delta(1, op.a2));
  e2 += nc_mul(dxi(2, p.b1), delta(2, op.a2));
  e2 += nc_mul(dxi(1, p.b0), delta(1, op.a1));
  e2 += nc_mul(dxi(2, p.b0), delta(2, op.a1));
  e2 += nc_mul(dxi(1, dxi(1, p.b0)), delta(1, delta(1, op.a2)))
            .scaled(GaussRat::frac(1, 2));
  e2 += nc_mul(dxi(2, dxi(2, p.b0)), delta(2, delta(2, op.a2)))
            .scaled(GaussRat::frac(1, 2));
  e2 += nc_mul(dxi(1, dxi(2, p.b0)), delta(1, delta(2, op.a2)));
  r.order_m2 = b0_quotient_numerator(e2);
  return r;
}

}  // namespace nct
