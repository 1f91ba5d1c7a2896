#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "lamod/poly.hpp"

namespace lamod {

/// Raised when a brute-force sweep would exceed the configured unit-group
/// budget and no exact fast path applies.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr i64 kDefaultUnitBudget = 1'000'000;

i64 gl_order(i64 p, int n);                 // |GL(n, Z_p)|
i64 gl_order_mod_pe(i64 p, int e, int n);   // |GL(n, Z_{p^e})|
i64 unit_group_order(const GroupShape& s);  // |GL(M)|

/// Visit every unit of the structured-matrix ring; return false from the
/// callback to stop early.
void for_each_unit(const GroupShape& s, const std::function<bool(const StructuredMatrix&)>& fn);

/// Materialized unit group; refuses when |GL(M)| exceeds the budget.
std::vector<StructuredMatrix> enumerate_units(const GroupShape& s, i64 budget = kDefaultUnitBudget);

/// Conjugation-invariant probe vector: for each monic g of degree <= 2, and
/// each (X-c)^m with m <= 4, and each s <= e_1, the order of
/// ker(g(sigma_A)) intersected with p^s M. A pre-screen only.
using Fingerprint = std::vector<i64>;
Fingerprint fingerprint(const StructuredMatrix& a);

/// Exhaustive conjugacy decision: a unit P with P A = B P, if one exists.
std::optional<StructuredMatrix> are_conjugate_oracle(const StructuredMatrix& a,
                                                     const StructuredMatrix& b,
                                                     i64 budget = kDefaultUnitBudget);

struct ConjClass {
  StructuredMatrix rep;  // lexicographically least member (oracle path)
  i64 size;
};

/// Conjugacy classes of GL(M)_f, the units whose mod-p reduction has minimal
/// polynomial a power of f. Homocyclic shapes Z_p^n use the rational
/// canonical form fast path; everything else needs |GL(M)| within budget.
std::vector<ConjClass> conjugacy_classes(const GroupShape& s, const PolyModP& f,
                                         i64 budget = kDefaultUnitBudget);

/// Partition of the whole of GL(M) into conjugacy classes. `class_of` maps
/// every unit to the index of its class in `reps`. Oracle path only.
struct ConjugacyPartition {
  std::vector<StructuredMatrix> reps;  // lex-least member per class, sorted
  std::vector<i64> sizes;
  std::unordered_map<StructuredMatrix, int, StructuredMatrixHash> class_of;
};
ConjugacyPartition conjugacy_partition(const GroupShape& s, i64 budget = kDefaultUnitBudget);

/// Membership in GL(M)_f.
bool in_gl_f(const StructuredMatrix& a, const PolyModP& f);

/// Similarity over Z_p decided by elementary-divisor multisets.
bool rcf_conjugate(const FpMatrix& a, const FpMatrix& b);

/// Centralizer order in GL(n, Z_p) of a matrix with the given elementary
/// divisors; class size is |GL(n,p)| / this.
i64 centralizer_order_gl(i64 p, const std::vector<std::pair<PolyModP, Partition>>& eldivs);

/// All partitions of m, descending-lex order, each partition descending.
std::vector<Partition> partitions_of(int m);

}  // namespace lamod
