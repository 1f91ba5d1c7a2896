#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamod/tables.hpp"

namespace lamod {

/// Finite magma table; Alexander quandles index elements in the module's
/// mixed-radix enumeration order.
struct QuandleTable {
  int size = 0;
  std::vector<int> op;  // row-major: op[x * size + y] = x * y
  std::optional<LambdaModule> origin;

  int at(int x, int y) const { return op[static_cast<std::size_t>(x) * size + y]; }
};

/// x * y = t x + (1 - t) y. Asserts the idempotence and column-permutation
/// axioms always, and right self-distributivity exhaustively for orders
/// <= 128 (quandle_axioms_hold covers any order).
QuandleTable alexander_quandle(const LambdaModule& m);

/// Exhaustive check of all three quandle axioms.
bool quandle_axioms_hold(const QuandleTable& q);

/// 1 - t invertible.
bool is_connected(const LambdaModule& m);

/// (1 - t)M with its induced action, standardized.
LambdaModule image_module(const LambdaModule& m);

/// |M| = |N| and (1-t)M isomorphic to (1-t)N.
bool quandles_isomorphic(const LambdaModule& m, const LambdaModule& n,
                         i64 budget = kDefaultUnitBudget);

/// Exhaustive bijection search with propagation pruning; independent of the
/// module-theoretic criterion.
bool quandle_isomorphic_bruteforce(const QuandleTable& a, const QuandleTable& b,
                                   int size_budget = 16);
std::optional<std::vector<int>> quandle_isomorphism(const QuandleTable& a, const QuandleTable& b,
                                                    int size_budget = 16);

struct ExtensionStep {
  int grown_coord;    // coordinate whose exponent was raised (pre-sort)
  i64 module_growth;  // |M_{i+1}| / |M_i|
  i64 image_growth;   // |a_{i+1}(M_{i+1})| / |a_i(M_i)|
  int rank;
};

struct ExtensionResult {
  LambdaModule extended;                // M with (1-t)M = embedded N
  std::vector<GroupElement> inclusion;  // image in M of each input basis vector
  std::vector<ExtensionStep> steps;

  GroupElement include(const GroupElement& n_elem) const;
};

/// Minimal extension M of N with (1-t)M equal to the embedded copy of N and
/// |M/N| = |N/(1-t)N| (the inductive construction; returns N itself when
/// (1-t)N = N).
ExtensionResult extend(const LambdaModule& n);

/// Extension padded with identity-action cyclic summands to order
/// p^target_exponent; requires 2i - j <= target where |N| = p^i,
/// |(1-t)N| = p^j.
LambdaModule extend_to_order(const LambdaModule& n, int target_exponent);

struct QuandleEntry {
  QuandleTable table;
  LambdaModule origin;       // the module the quandle is built on
  LambdaModule image;        // canonical N with (1-t)origin isomorphic to N
  std::string image_family;  // family of N in the classification
  Params image_params;
  bool connected;
};

/// One quandle per isomorphism class of order p^n, built by extending every
/// canonical module N of order p^i with 2i - j <= n.
std::vector<QuandleEntry> enumerate_quandles(i64 p, int n);

i64 count_quandles(i64 p, int n);
i64 count_connected(i64 p, int n);

}  // namespace lamod
