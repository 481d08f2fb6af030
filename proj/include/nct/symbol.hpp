#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nct/scalar_poly.hpp"

namespace nct {

/// Letters of the word algebra:
///   Kpow(n)  -- k^n, n != 0
///   DK(a,b)  -- d1^a d2^b applied to k, a+b >= 1
///   B0pow(j) -- b0^j, j >= 1, where b0 inverts (leading form + 1)
struct Atom {
  enum class Kind { Kpow, DK, B0pow };
  Kind kind;
  int a = 0;  // Kpow: exponent; DK: d1-multiplicity; B0pow: power
  int b = 0;  // DK: d2-multiplicity

  static Atom k(int n) { return {Kind::Kpow, n, 0}; }
  static Atom dk(int a, int b) { return {Kind::DK, a, b}; }
  static Atom b0(int j) { return {Kind::B0pow, j, 0}; }

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

using Word = std::vector<Atom>;

/// Canonical form: adjacent Kpow merged, adjacent B0pow merged, and inside
/// every maximal run of mutually commuting {Kpow, B0pow} atoms the B0 part
/// precedes the K part.  Kpow exponents that cancel to zero vanish.
Word canon(const Word& w);

int word_b0_total(const Word& w);
std::string word_str(const Word& w);

struct SingularB0 : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Free-algebra element: exact linear combination of canonical words with
/// ScalarPoly coefficients.  Immutable-by-convention value type.
class SymbolExpr {
 public:
  SymbolExpr() = default;
  explicit SymbolExpr(const ScalarPoly& c) { add(Word{}, c); }

  static SymbolExpr atom(Atom a, ScalarPoly c = ScalarPoly::one());
  static SymbolExpr word(Word w, ScalarPoly c = ScalarPoly::one());
  static SymbolExpr zero() { return SymbolExpr(); }
  static SymbolExpr one() { return SymbolExpr(ScalarPoly::one()); }

  void add(const Word& w, const ScalarPoly& c);  // canonizes w
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Word, ScalarPoly>& terms() const { return terms_; }
  ScalarPoly coeff(const Word& w) const;

  SymbolExpr& operator+=(const SymbolExpr& o);
  SymbolExpr& operator-=(const SymbolExpr& o);
  friend SymbolExpr operator+(SymbolExpr a, const SymbolExpr& b) { return a += b; }
  friend SymbolExpr operator-(SymbolExpr a, const SymbolExpr& b) { return a -= b; }
  friend bool operator==(const SymbolExpr& a, const SymbolExpr& b) {
    return a.terms_ == b.terms_;
  }

  SymbolExpr scaled(const ScalarPoly& c) const;
  SymbolExpr scaled(const GaussRat& c) const;

  std::string str() const;

 private:
  std::map<Word, ScalarPoly> terms_;
};

SymbolExpr nc_mul(const SymbolExpr& x, const SymbolExpr& y);

/// Derivation delta_j, j in {1,2}.  Leibniz over atoms; on b0 it uses
/// delta(b0) = -b0 delta(A2) b0 with A2 the shared leading symbol.
SymbolExpr delta(int j, const SymbolExpr& x);

/// xi-partial, i in {1,2}: monomial derivative on coefficients plus the
/// Leibniz action on b0 atoms.
SymbolExpr dxi(int i, const SymbolExpr& x);

/// Star: reverses words, conjugates coefficients, DK(a,b) -> (-1)^{a+b} DK.
SymbolExpr star(const SymbolExpr& x);

/// Order of one term: xi-degree minus twice the b0 weight of the word.
int order_of(const Word& w, const ScalarMono& m);

/// Order of a whole expression; MixedDegree if terms disagree.
int order_of(const SymbolExpr& x);

/// Sum of the terms of exact order n (monomial-level split).
SymbolExpr extract_order(const SymbolExpr& x, int n);

/// Exhaustively applies the defining relation of b0,
///   (xi form) * b0 * k^2 = 1 - b0,
/// wherever a term's coefficient carries the quadratic form as a factor and
/// the word has an adjacent b0/k^2 block.  Identity on irreducible input.
/// One-sided; use symbol_zero_mod_b0 for a decision procedure.
SymbolExpr reduce_b0(const SymbolExpr& x);

/// Decides x = 0 in the quotient algebra where b0 inverts (A2 + 1): per
/// word skeleton, every b0 block is cleared against a common power of
/// (A2 + 1) and the resulting b0-free words must cancel exactly.  The
/// returned expression is that numerator (empty iff x vanishes).
SymbolExpr b0_quotient_numerator(const SymbolExpr& x);
bool symbol_zero_mod_b0(const SymbolExpr& x);

/// delta_1^a delta_2^b of k as an expression (single DK word).
SymbolExpr dk_expr(int a, int b);

/// Shared leading symbol A2 = (x1^2 + 2 t1 x1 x2 + |tau|^2 x2^2) k^2.
SymbolExpr leading_symbol();

}  // namespace nct
