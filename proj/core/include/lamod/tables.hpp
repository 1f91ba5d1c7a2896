#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lamod/decomposition.hpp"

namespace lamod {

using Params = std::vector<std::pair<std::string, std::string>>;

/// One canonical module of order p^n.
struct TableRow {
  GroupShape shape;
  std::string family;  // stable family identifier, e.g. "Z[p^2,p].skew"
  Params params;
  LambdaModule module;
  int image_exp;  // |(1-t)M| = p^image_exp, computed directly
  std::vector<PolyModP> irreducibles;  // distinct irreducible factors of the reduced action
};

struct RowData {
  Params params;
  StructuredMatrix matrix;
  std::vector<PolyModP> irreducibles;
};

/// A parameterized family of canonical forms on one shape, with the
/// closed-form cardinality of every |(1-t)M| stratum.
struct TableFamily {
  std::string name;
  std::function<GroupShape(i64 p)> shape;
  std::function<std::vector<RowData>(i64 p)> rows;
  std::vector<std::pair<int, std::function<i64(i64 p)>>> strata;  // (image exponent, count)
  std::function<i64(i64 p)> total;
};

/// The family list for order p^n, in table order.
const std::vector<TableFamily>& table_families(int n);

struct ClassificationReport {
  i64 p = 0;
  int n = 0;
  std::vector<TableRow> rows;
  std::vector<std::pair<std::string, i64>> totals_by_shape;  // first-appearance order
  std::vector<std::pair<int, i64>> totals_by_image_exp;      // ascending exponent
  i64 grand_total = 0;
};

/// Closed-form number of nonisomorphic modules of order p^n, n <= 4.
i64 count_modules(i64 p, int n);

/// One TableRow per isomorphism class of order p^n, grouped by family.
ClassificationReport enumerate_modules(i64 p, int n);

/// |(1-t)M|.
i64 image_order(const LambdaModule& m);

enum class CheckStatus { pass, fail, skipped };

struct VerificationCheck {
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct VerificationReport {
  i64 p = 0;
  int n = 0;
  std::vector<VerificationCheck> checks;
  bool any_failed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::fail) return true;
    return false;
  }
  bool any_skipped() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::skipped) return true;
    return false;
  }
};

/// Checks soundness, per-family counts, strata, distinctness and (within
/// budget) completeness of the generated classification against the
/// brute-force conjugacy oracle.
VerificationReport verify_table(i64 p, int n, i64 budget = kDefaultUnitBudget);

}  // namespace lamod
