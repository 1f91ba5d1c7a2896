#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lamod/matrix.hpp"

namespace lamod {

/// A weakly decreasing sequence of positive part sizes.
using Partition = std::vector<int>;

/// Polynomial over Z_p, coefficients ascending, canonical residues,
/// trailing zeros trimmed (the zero polynomial has no coefficients).
class PolyModP {
 public:
  PolyModP() = default;
  PolyModP(i64 p, std::vector<i64> coeffs);

  static PolyModP zero(i64 p) { return PolyModP(p, {}); }
  static PolyModP one(i64 p) { return PolyModP(p, {1}); }
  static PolyModP x(i64 p) { return PolyModP(p, {0, 1}); }
  static PolyModP x_minus(i64 p, i64 c) { return PolyModP(p, {-c, 1}); }

  i64 p() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  i64 coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0;
  }
  const std::vector<i64>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  PolyModP add(const PolyModP& o) const;
  PolyModP sub(const PolyModP& o) const;
  PolyModP mul(const PolyModP& o) const;
  std::pair<PolyModP, PolyModP> divmod(const PolyModP& d) const;  // d monic-leading unit
  PolyModP pow(int k) const;
  bool divides(const PolyModP& other) const;

  i64 eval(i64 x) const;
  FpMatrix eval(const FpMatrix& a) const;
  FpMatrix companion() const;  // monic, degree >= 1

  bool is_irreducible() const;

  std::string str() const;  // "X^2+X+1"

  // Constant-coefficient-first lexicographic order (deterministic listing).
  static bool lex_less(const PolyModP& a, const PolyModP& b);

  friend bool operator==(const PolyModP&, const PolyModP&) = default;
  friend auto operator<=>(const PolyModP&, const PolyModP&) = default;

 private:
  i64 p_ = 0;
  std::vector<i64> c_;
};

/// All monic irreducibles of degree d over Z_p except X itself, in
/// constant-coefficient-first lexicographic order.
std::vector<PolyModP> irreducible_polys(i64 p, int d);

/// Monic minimal polynomial of a square matrix over Z_p.
PolyModP min_poly_mod_p(const FpMatrix& a);

/// Distinct monic irreducible factors with multiplicities, sorted by
/// (degree, lex). Input must factor completely over Z_p (always true here).
std::vector<std::pair<PolyModP, int>> factor_into_irreducibles(const PolyModP& f);

/// Elementary divisors of an invertible (or any) matrix over Z_p: for each
/// irreducible factor f of the minimal polynomial, the exponent partition.
std::vector<std::pair<PolyModP, Partition>> elementary_divisors_mod_p(const FpMatrix& a);

/// g(sigma_A), evaluating the canonical integer lift of g at a structured
/// matrix.
StructuredMatrix eval_poly_at_matrix(const PolyModP& g, const StructuredMatrix& a);

/// True iff m == f^k for some k >= 1.
bool is_power_of(const PolyModP& m, const PolyModP& f);

}  // namespace lamod
