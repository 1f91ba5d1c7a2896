#include "lamod/tables.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lamod {

namespace {

std::vector<i64> units_mod(i64 p, int e) {
  i64 q = checked_pow(p, e);
  std::vector<i64> out;
  for (i64 b = 1; b < q; ++b)
    if (b % p != 0) out.push_back(b);
  return out;
}

std::string num(i64 v) { return std::to_string(v); }

// Distinct linear factors X - b mod p for the listed diagonal residues.
std::vector<PolyModP> linear_factors(i64 p, std::initializer_list<i64> residues) {
  std::vector<PolyModP> out;
  for (i64 b : residues) {
    PolyModP f = PolyModP::x_minus(p, mod_reduce(b, p));
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  std::sort(out.begin(), out.end(), PolyModP::lex_less);
  return out;
}

StructuredMatrix sm(const GroupShape& s, std::vector<i64> ent) {
  return StructuredMatrix::reduced(s, std::move(ent));
}

// Shapes, p-generic.
GroupShape sh_zero(i64 p) { return GroupShape::zero(p); }
GroupShape sh_e(i64 p, int e) { return GroupShape::cyclic(p, e); }
GroupShape sh_21(i64 p) { return GroupShape::make(p, {{2, 1}, {1, 1}}); }
GroupShape sh_31(i64 p) { return GroupShape::make(p, {{3, 1}, {1, 1}}); }
GroupShape sh_22(i64 p) { return GroupShape::make(p, {{2, 2}}); }
GroupShape sh_211(i64 p) { return GroupShape::make(p, {{2, 1}, {1, 2}}); }
GroupShape sh_1n(i64 p, int n) { return GroupShape::make(p, {{1, n}}); }

i64 half(i64 v) { return v / 2; }
i64 irr2_count(i64 p) { return half(p * p - p); }
i64 irr3_count(i64 p) { return (p * p * p - p) / 3; }
i64 irr4_count(i64 p) { return (p * p * p * p - p * p) / 4; }

Params poly_params(const char* name, const PolyModP& f) {
  Params out;
  for (int i = 0; i < f.degree(); ++i)
    out.emplace_back(std::string(name) + num(i), num(f.coeff(i)));
  return out;
}

// ---------------------------------------------------------------------------
// Family definitions. Parameter loops run ascending, leftmost outermost.

std::vector<TableFamily> families_n0() {
  return {
      {"0.zero",
       sh_zero,
       [](i64 p) {
         std::vector<RowData> rows;
         rows.push_back({{}, StructuredMatrix::identity(sh_zero(p)), {}});
         return rows;
       },
       {{0, [](i64) { return i64{1}; }}},
       [](i64) { return i64{1}; }},
  };
}

// [b] on a cyclic shape Z_{p^e}.
TableFamily scalar_family(int e) {
  return {
      "Z[p^" + std::to_string(e) + "].scalar",
      [e](i64 p) { return sh_e(p, e); },
      [e](i64 p) {
        std::vector<RowData> rows;
        for (i64 b : units_mod(p, e))
          rows.push_back({{{"b", num(b)}}, sm(sh_e(p, e), {b}), linear_factors(p, {b})});
        return rows;
      },
      [e]() {
        std::vector<std::pair<int, std::function<i64(i64)>>> strata;
        strata.emplace_back(0, [](i64) { return i64{1}; });
        for (int s = 1; s < e; ++s)
          strata.emplace_back(s, [s](i64 p) { return checked_mul(checked_pow(p, s - 1), p - 1); });
        strata.emplace_back(e, [e](i64 p) { return checked_mul(checked_pow(p, e - 1), p - 2); });
        return strata;
      }(),
      [e](i64 p) { return checked_mul(checked_pow(p, e - 1), p - 1); },
  };
}

std::vector<TableFamily> families_n1() { return {scalar_family(1)}; }

std::vector<TableFamily> families_n2() {
  std::vector<TableFamily> fams;
  fams.push_back(scalar_family(2));
  fams.push_back({
      "Z[p,p].diag",
      [](i64 p) { return sh_1n(p, 2); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 c = b; c < p; ++c)
            rows.push_back({{{"b", num(b)}, {"c", num(c)}},
                            sm(sh_1n(p, 2), {b, 0, 0, c}),
                            linear_factors(p, {b, c})});
        return rows;
      },
      {{0, [](i64) { return i64{1}; }},
       {1, [](i64 p) { return p - 2; }},
       {2, [](i64 p) { return binomial(p - 1, 2); }}},
      [](i64 p) { return binomial(p, 2); },
  });
  fams.push_back({
      "Z[p,p].jordan",
      [](i64 p) { return sh_1n(p, 2); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          rows.push_back({{{"b", num(b)}}, sm(sh_1n(p, 2), {b, 1, 0, b}), linear_factors(p, {b})});
        return rows;
      },
      {{1, [](i64) { return i64{1}; }}, {2, [](i64 p) { return p - 2; }}},
      [](i64 p) { return p - 1; },
  });
  fams.push_back({
      "Z[p,p].companion2",
      [](i64 p) { return sh_1n(p, 2); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (const PolyModP& f : irreducible_polys(p, 2))
          rows.push_back({poly_params("b", f),
                          sm(sh_1n(p, 2), {0, 1, -f.coeff(0), -f.coeff(1)}),
                          {f}});
        return rows;
      },
      {{2, irr2_count}},
      irr2_count,
  });
  return fams;
}

std::vector<TableFamily> families_n3() {
  std::vector<TableFamily> fams;
  fams.push_back(scalar_family(3));
  fams.push_back({
      "Z[p^2,p].diag",
      sh_21,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b : units_mod(p, 2))
          for (i64 c = 1; c < p; ++c)
            rows.push_back({{{"b", num(b)}, {"c", num(c)}},
                            sm(sh_21(p), {b, 0, 0, c}),
                            linear_factors(p, {b, c})});
        return rows;
      },
      {{0, [](i64) { return i64{1}; }},
       {1, [](i64 p) { return 2 * p - 3; }},
       {2, [](i64 p) { return (p - 2) * (2 * p - 1); }},
       {3, [](i64 p) { return p * (p - 2) * (p - 2); }}},
      [](i64 p) { return p * (p - 1) * (p - 1); },
  });
  fams.push_back({
      "Z[p^2,p].shear",
      sh_21,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          rows.push_back({{{"b", num(b)}}, sm(sh_21(p), {b, 0, 1, b}), linear_factors(p, {b})});
        return rows;
      },
      {{1, [](i64) { return i64{1}; }}, {3, [](i64 p) { return p - 2; }}},
      [](i64 p) { return p - 1; },
  });
  fams.push_back({
      "Z[p^2,p].skew",
      sh_21,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 g = 0; g < p; ++g)
            rows.push_back({{{"b", num(b)}, {"gamma", num(g)}},
                            sm(sh_21(p), {b, p, g, b}),
                            linear_factors(p, {b})});
        return rows;
      },
      {{1, [](i64) { return i64{1}; }},
       {2, [](i64 p) { return p - 1; }},
       {3, [](i64 p) { return p * (p - 2); }}},
      [](i64 p) { return p * (p - 1); },
  });
  fams.push_back({
      "Z[p,p,p].diag",
      [](i64 p) { return sh_1n(p, 3); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 c = b; c < p; ++c)
            for (i64 d = c; d < p; ++d)
              rows.push_back({{{"b", num(b)}, {"c", num(c)}, {"d", num(d)}},
                              sm(sh_1n(p, 3), {b, 0, 0, 0, c, 0, 0, 0, d}),
                              linear_factors(p, {b, c, d})});
        return rows;
      },
      {{0, [](i64) { return i64{1}; }},
       {1, [](i64 p) { return p - 2; }},
       {2, [](i64 p) { return binomial(p - 1, 2); }},
       {3, [](i64 p) { return binomial(p, 3); }}},
      [](i64 p) { return binomial(p + 1, 3); },
  });
  fams.push_back({
      "Z[p,p,p].jordan2_diag",
      [](i64 p) { return sh_1n(p, 3); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 c = 1; c < p; ++c)
            rows.push_back({{{"b", num(b)}, {"c", num(c)}},
                            sm(sh_1n(p, 3), {b, 1, 0, 0, b, 0, 0, 0, c}),
                            linear_factors(p, {b, c})});
        return rows;
      },
      {{1, [](i64) { return i64{1}; }},
       {2, [](i64 p) { return 2 * (p - 2); }},
       {3, [](i64 p) { return (p - 2) * (p - 2); }}},
      [](i64 p) { return (p - 1) * (p - 1); },
  });
  fams.push_back({
      "Z[p,p,p].jordan3",
      [](i64 p) { return sh_1n(p, 3); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          rows.push_back({{{"b", num(b)}},
                          sm(sh_1n(p, 3), {b, 1, 0, 0, b, 1, 0, 0, b}),
                          linear_factors(p, {b})});
        return rows;
      },
      {{2, [](i64) { return i64{1}; }}, {3, [](i64 p) { return p - 2; }}},
      [](i64 p) { return p - 1; },
  });
  fams.push_back({
      "Z[p,p,p].companion3",
      [](i64 p) { return sh_1n(p, 3); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (const PolyModP& f : irreducible_polys(p, 3))
          rows.push_back({poly_params("b", f),
                          sm(sh_1n(p, 3),
                             {0, 1, 0, 0, 0, 1, -f.coeff(0), -f.coeff(1), -f.coeff(2)}),
                          {f}});
        return rows;
      },
      {{3, irr3_count}},
      irr3_count,
  });
  fams.push_back({
      "Z[p,p,p].companion2_diag",
      [](i64 p) { return sh_1n(p, 3); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (const PolyModP& f : irreducible_polys(p, 2))
          for (i64 c = 1; c < p; ++c) {
            Params pr = poly_params("b", f);
            pr.emplace_back("c", num(c));
            std::vector<PolyModP> irr = {f, PolyModP::x_minus(p, c)};
            std::sort(irr.begin(), irr.end(), PolyModP::lex_less);
            rows.push_back({std::move(pr),
                            sm(sh_1n(p, 3),
                               {0, 1, 0, -f.coeff(0), -f.coeff(1), 0, 0, 0, c}),
                            std::move(irr)});
          }
        return rows;
      },
      {{2, irr2_count}, {3, [](i64 p) { return checked_mul(irr2_count(p), p - 2); }}},
      [](i64 p) { return checked_mul(irr2_count(p), p - 1); },
  });
  return fams;
}

std::vector<TableFamily> families_n4() {
  std::vector<TableFamily> fams;
  // Z_{p^4}.
  fams.push_back(scalar_family(4));
  // Z_{p^3} x Z_p.
  fams.push_back({
      "Z[p^3,p].diag",
      sh_31,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b : units_mod(p, 3))
          for (i64 c = 1; c < p; ++c)
            rows.push_back({{{"b", num(b)}, {"c", num(c)}},
                            sm(sh_31(p), {b, 0, 0, c}),
                            linear_factors(p, {b, c})});
        return rows;
      },
      {{0, [](i64) { return i64{1}; }},
       {1, [](i64 p) { return 2 * p - 3; }},
       {2, [](i64 p) { return 2 * (p - 1) * (p - 1); }},
       {3, [](i64 p) { return p * (p - 2) * (2 * p - 1); }},
       {4, [](i64 p) { return p * p * (p - 2) * (p - 2); }}},
      [](i64 p) { return p * p * (p - 1) * (p - 1); },
  });
  fams.push_back({
      "Z[p^3,p].shear",
      sh_31,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p * p; ++b) {
          if (b % p == 0) continue;
          rows.push_back({{{"b", num(b)}}, sm(sh_31(p), {b, 0, 1, b}), linear_factors(p, {b})});
        }
        return rows;
      },
      {{1, [](i64) { return i64{1}; }},
       {2, [](i64 p) { return p - 1; }},
       {4, [](i64 p) { return p * (p - 2); }}},
      [](i64 p) { return p * (p - 1); },
  });
  fams.push_back({
      "Z[p^3,p].skew",
      sh_31,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p * p; ++b) {
          if (b % p == 0) continue;
          for (i64 g = 0; g < p; ++g)
            rows.push_back({{{"b", num(b)}, {"gamma", num(g)}},
                            sm(sh_31(p), {b, p * p, g, b}),
                            linear_factors(p, {b})});
        }
        return rows;
      },
      {{1, [](i64) { return i64{1}; }},
       {2, [](i64 p) { return p * p - 1; }},
       {4, [](i64 p) { return p * p * (p - 2); }}},
      [](i64 p) { return p * p * (p - 1); },
  });
  // Z_{p^2}^2.
  fams.push_back({
      "Z[p^2,p^2].diag",
      sh_22,
      [](i64 p) {
        std::vector<RowData> rows;
        auto us = units_mod(p, 2);
        for (i64 b : us)
          for (i64 c : us) {
            if (c < b) continue;
            rows.push_back({{{"b", num(b)}, {"c", num(c)}},
                            sm(sh_22(p), {b, 0, 0, c}),
                            linear_factors(p, {b, c})});
          }
        return rows;
      },
      {{0, [](i64) { return i64{1}; }},
       {1, [](i64 p) { return p - 1; }},
       {2, [](i64 p) { return p * (p - 2) + binomial(p, 2); }},
       {3, [](i64 p) { return p * (p - 1) * (p - 2); }},
       {4, [](i64 p) { return binomial(p * (p - 2) + 1, 2); }}},
      [](i64 p) { return binomial(p * (p - 1) + 1, 2); },
  });
  fams.push_back({
      "Z[p^2,p^2].upper_p",
      sh_22,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b : units_mod(p, 2))
          rows.push_back({{{"b", num(b)}}, sm(sh_22(p), {b, p, 0, b}), linear_factors(p, {b})});
        return rows;
      },
      {{1, [](i64) { return i64{1}; }},
       {2, [](i64 p) { return p - 1; }},
       {4, [](i64 p) { return p * (p - 2); }}},
      [](i64 p) { return p * (p - 1); },
  });
  fams.push_back({
      "Z[p^2,p^2].companion_p",
      sh_22,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (const PolyModP& f : irreducible_polys(p, 2)) {
            Params pr{{"b", num(b)}};
            for (const auto& [k, v] : poly_params("b_", f)) pr.emplace_back(k, v);
            rows.push_back({std::move(pr),
                            sm(sh_22(p), {b, p, -p * f.coeff(0), b - p * f.coeff(1)}),
                            linear_factors(p, {b})});
          }
        return rows;
      },
      {{2, irr2_count}, {4, [](i64 p) { return checked_mul(irr2_count(p), p - 2); }}},
      [](i64 p) { return checked_mul(irr2_count(p), p - 1); },
  });
  fams.push_back({
      "Z[p^2,p^2].jordan_p",
      sh_22,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 a = 0; a < p; ++a)
            for (i64 g = 0; g < p; ++g)
              rows.push_back({{{"b", num(b)}, {"alpha", num(a)}, {"gamma", num(g)}},
                              sm(sh_22(p), {b + p * a, 1, p * g, b}),
                              linear_factors(p, {b})});
        return rows;
      },
      {{2, [](i64 p) { return p; }},
       {3, [](i64 p) { return p * (p - 1); }},
       {4, [](i64 p) { return p * p * (p - 2); }}},
      [](i64 p) { return p * p * (p - 1); },
  });
  fams.push_back({
      "Z[p^2,p^2].companion_unit",
      sh_22,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 a = 0; a < p; ++a)
          for (i64 bb = 0; bb < p; ++bb)
            for (const PolyModP& f : irreducible_polys(p, 2)) {
              Params pr{{"alpha", num(a)}, {"beta", num(bb)}};
              for (const auto& [k, v] : poly_params("b_", f)) pr.emplace_back(k, v);
              rows.push_back({std::move(pr),
                              sm(sh_22(p), {p * a, 1 + p * bb, -f.coeff(0), -f.coeff(1)}),
                              {f}});
            }
        return rows;
      },
      {{4, [](i64 p) { return checked_mul(p * p, irr2_count(p)); }}},
      [](i64 p) { return checked_mul(p * p, irr2_count(p)); },
  });
  // Z_{p^2} x Z_p^2, first block.
  fams.push_back({
      "Z[p^2,p,p].diag",
      sh_211,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b : units_mod(p, 2))
          for (i64 c = 1; c < p; ++c)
            for (i64 d = c; d < p; ++d)
              rows.push_back({{{"b", num(b)}, {"c", num(c)}, {"d", num(d)}},
                              sm(sh_211(p), {b, 0, 0, 0, c, 0, 0, 0, d}),
                              linear_factors(p, {b, c, d})});
        return rows;
      },
      {{0, [](i64) { return i64{1}; }},
       {1, [](i64 p) { return 2 * p - 3; }},
       {2, [](i64 p) { return half((p - 2) * (5 * p - 3)); }},
       {3, [](i64 p) { return half((p - 2) * (3 * p * p - 6 * p + 1)); }},
       {4, [](i64 p) { return half(p * (p - 1) * (p - 2) * (p - 2)); }}},
      [](i64 p) { return half(p * p * (p - 1) * (p - 1)); },
  });
  fams.push_back({
      "Z[p^2,p,p].shear_diag",
      sh_211,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 c = 1; c < p; ++c)
            rows.push_back({{{"b", num(b)}, {"c", num(c)}},
                            sm(sh_211(p), {b, 0, 0, 1, b, 0, 0, 0, c}),
                            linear_factors(p, {b, c})});
        return rows;
      },
      {{1, [](i64) { return i64{1}; }},
       {2, [](i64 p) { return p - 2; }},
       {3, [](i64 p) { return p - 2; }},
       {4, [](i64 p) { return (p - 2) * (p - 2); }}},
      [](i64 p) { return (p - 1) * (p - 1); },
  });
  // The eta-entry of this form rescales by any unit under conjugation by
  // diag(u, u, w) with u = w mod p, so eta ranges over {0, 1} only; the
  // classes with a unit pairing between the off-diagonal rows sit in the
  // delta-family below. Aggregate counts agree with the diag/shear split.
  fams.push_back({
      "Z[p^2,p,p].skew_eta",
      sh_211,
      [](i64 p) {
        std::vector<RowData> rows;
        i64 eta_top = p < 2 ? p : 2;
        for (i64 b = 1; b < p; ++b)
          for (i64 h = 0; h < eta_top; ++h)
            rows.push_back({{{"b", num(b)}, {"eta", num(h)}},
                            sm(sh_211(p), {b, p, 0, 0, b, 0, h, 0, b}),
                            linear_factors(p, {b})});
        return rows;
      },
      {{1, [](i64) { return i64{1}; }},
       {2, [](i64) { return i64{1}; }},
       {4, [](i64 p) { return 2 * (p - 2); }}},
      [](i64 p) { return 2 * (p - 1); },
  });
  fams.push_back({
      "Z[p^2,p,p].skew_shear",
      sh_211,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 d = 1; d < p; ++d)
            rows.push_back({{{"b", num(b)}, {"delta", num(d)}},
                            sm(sh_211(p), {b, p, 0, d, b, 0, 0, 0, b}),
                            linear_factors(p, {b})});
        return rows;
      },
      {{2, [](i64 p) { return p - 1; }}, {4, [](i64 p) { return (p - 1) * (p - 2); }}},
      [](i64 p) { return (p - 1) * (p - 1); },
  });
  fams.push_back({
      "Z[p^2,p,p].diag_jordan",
      sh_211,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b : units_mod(p, 2))
          for (i64 c = 1; c < p; ++c)
            rows.push_back({{{"b", num(b)}, {"c", num(c)}},
                            sm(sh_211(p), {b, 0, 0, 0, c, 1, 0, 0, c}),
                            linear_factors(p, {b, c})});
        return rows;
      },
      {{1, [](i64) { return i64{1}; }},
       {2, [](i64 p) { return 2 * p - 3; }},
       {3, [](i64 p) { return (p - 2) * (2 * p - 1); }},
       {4, [](i64 p) { return p * (p - 2) * (p - 2); }}},
      [](i64 p) { return p * (p - 1) * (p - 1); },
  });
  fams.push_back({
      "Z[p^2,p,p].glue",
      sh_211,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          rows.push_back({{{"b", num(b)}},
                          sm(sh_211(p), {b, 0, 0, 0, b, 1, 1, 0, b}),
                          linear_factors(p, {b})});
        return rows;
      },
      {{2, [](i64) { return i64{1}; }}, {4, [](i64 p) { return p - 2; }}},
      [](i64 p) { return p - 1; },
  });
  fams.push_back({
      "Z[p^2,p,p].skew_jordan",
      sh_211,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 h = 0; h < p; ++h)
            rows.push_back({{{"b", num(b)}, {"eta", num(h)}},
                            sm(sh_211(p), {b, p, 0, 0, b, 1, h, 0, b}),
                            linear_factors(p, {b})});
        return rows;
      },
      {{2, [](i64) { return i64{1}; }},
       {3, [](i64 p) { return p - 1; }},
       {4, [](i64 p) { return p * (p - 2); }}},
      [](i64 p) { return p * (p - 1); },
  });
  // Z_p^4, first block.
  fams.push_back({
      "Z[p,p,p,p].diag",
      [](i64 p) { return sh_1n(p, 4); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 c = b; c < p; ++c)
            for (i64 d = c; d < p; ++d)
              for (i64 e = d; e < p; ++e)
                rows.push_back({{{"b", num(b)}, {"c", num(c)}, {"d", num(d)}, {"e", num(e)}},
                                sm(sh_1n(p, 4),
                                   {b, 0, 0, 0, 0, c, 0, 0, 0, 0, d, 0, 0, 0, 0, e}),
                                linear_factors(p, {b, c, d, e})});
        return rows;
      },
      {{0, [](i64) { return i64{1}; }},
       {1, [](i64 p) { return p - 2; }},
       {2, [](i64 p) { return binomial(p - 1, 2); }},
       {3, [](i64 p) { return binomial(p, 3); }},
       {4, [](i64 p) { return binomial(p + 1, 4); }}},
      [](i64 p) { return binomial(p + 2, 4); },
  });
  fams.push_back({
      "Z[p,p,p,p].jordan2_diag2",
      [](i64 p) { return sh_1n(p, 4); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 c = 1; c < p; ++c)
            for (i64 d = c; d < p; ++d)
              rows.push_back({{{"b", num(b)}, {"c", num(c)}, {"d", num(d)}},
                              sm(sh_1n(p, 4),
                                 {b, 1, 0, 0, 0, b, 0, 0, 0, 0, c, 0, 0, 0, 0, d}),
                              linear_factors(p, {b, c, d})});
        return rows;
      },
      {{1, [](i64) { return i64{1}; }},
       {2, [](i64 p) { return 2 * (p - 2); }},
       {3, [](i64 p) { return half((p - 2) * (3 * p - 5)); }},
       {4, [](i64 p) { return half((p - 1) * (p - 2) * (p - 2)); }}},
      [](i64 p) { return half(p * (p - 1) * (p - 1)); },
  });
  fams.push_back({
      "Z[p,p,p,p].jordan2_jordan2",
      [](i64 p) { return sh_1n(p, 4); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 c = b; c < p; ++c)
            rows.push_back({{{"b", num(b)}, {"c", num(c)}},
                            sm(sh_1n(p, 4),
                               {b, 1, 0, 0, 0, b, 0, 0, 0, 0, c, 1, 0, 0, 0, c}),
                            linear_factors(p, {b, c})});
        return rows;
      },
      {{2, [](i64) { return i64{1}; }},
       {3, [](i64 p) { return p - 2; }},
       {4, [](i64 p) { return binomial(p - 1, 2); }}},
      [](i64 p) { return binomial(p, 2); },
  });
  fams.push_back({
      "Z[p,p,p,p].jordan3_diag",
      [](i64 p) { return sh_1n(p, 4); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 c = 1; c < p; ++c)
            rows.push_back({{{"b", num(b)}, {"c", num(c)}},
                            sm(sh_1n(p, 4),
                               {b, 1, 0, 0, 0, b, 1, 0, 0, 0, b, 0, 0, 0, 0, c}),
                            linear_factors(p, {b, c})});
        return rows;
      },
      {{2, [](i64) { return i64{1}; }},
       {3, [](i64 p) { return 2 * (p - 2); }},
       {4, [](i64 p) { return (p - 2) * (p - 2); }}},
      [](i64 p) { return (p - 1) * (p - 1); },
  });
  fams.push_back({
      "Z[p,p,p,p].jordan4",
      [](i64 p) { return sh_1n(p, 4); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          rows.push_back({{{"b", num(b)}},
                          sm(sh_1n(p, 4),
                             {b, 1, 0, 0, 0, b, 1, 0, 0, 0, b, 1, 0, 0, 0, b}),
                          linear_factors(p, {b})});
        return rows;
      },
      {{3, [](i64) { return i64{1}; }}, {4, [](i64 p) { return p - 2; }}},
      [](i64 p) { return p - 1; },
  });
  fams.push_back({
      "Z[p,p,p,p].companion2_pair",
      [](i64 p) { return sh_1n(p, 4); },
      [](i64 p) {
        std::vector<RowData> rows;
        auto irr2 = irreducible_polys(p, 2);
        for (std::size_t i = 0; i < irr2.size(); ++i)
          for (std::size_t j = i; j < irr2.size(); ++j) {
            const PolyModP &f = irr2[i], &g = irr2[j];
            Params pr = poly_params("b", f);
            for (const auto& [k, v] : poly_params("c", g)) pr.emplace_back(k, v);
            std::vector<PolyModP> irr = {f};
            if (!(f == g)) irr.push_back(g);
            rows.push_back({std::move(pr),
                            sm(sh_1n(p, 4),
                               {0, 1, 0, 0, -f.coeff(0), -f.coeff(1), 0, 0,
                                0, 0, 0, 1, 0, 0, -g.coeff(0), -g.coeff(1)}),
                            std::move(irr)});
          }
        return rows;
      },
      {{4, [](i64 p) { return binomial(irr2_count(p) + 1, 2); }}},
      [](i64 p) { return binomial(irr2_count(p) + 1, 2); },
  });
  fams.push_back({
      "Z[p,p,p,p].companion2_sq",
      [](i64 p) { return sh_1n(p, 4); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (const PolyModP& f : irreducible_polys(p, 2))
          rows.push_back({poly_params("b", f),
                          sm(sh_1n(p, 4),
                             {0, 1, 1, 0, -f.coeff(0), -f.coeff(1), 0, 1,
                              0, 0, 0, 1, 0, 0, -f.coeff(0), -f.coeff(1)}),
                          {f}});
        return rows;
      },
      {{4, irr2_count}},
      irr2_count,
  });
  fams.push_back({
      "Z[p,p,p,p].companion4",
      [](i64 p) { return sh_1n(p, 4); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (const PolyModP& f : irreducible_polys(p, 4))
          rows.push_back({poly_params("b", f),
                          sm(sh_1n(p, 4),
                             {0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1,
                              -f.coeff(0), -f.coeff(1), -f.coeff(2), -f.coeff(3)}),
                          {f}});
        return rows;
      },
      {{4, irr4_count}},
      irr4_count,
  });
  // Trailing table block: the remaining mixed families, in listed order.
  fams.push_back({
      "Z[p^2,p,p].skew_diag",
      sh_211,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (i64 g = 0; g < p; ++g)
            for (i64 c = 1; c < p; ++c) {
              if (c == b) continue;
              rows.push_back({{{"b", num(b)}, {"gamma", num(g)}, {"c", num(c)}},
                              sm(sh_211(p), {b, p, 0, g, b, 0, 0, 0, c}),
                              linear_factors(p, {b, c})});
            }
        return rows;
      },
      {{2, [](i64 p) { return p - 2; }},
       {3, [](i64 p) { return (p - 2) * (2 * p - 1); }},
       {4, [](i64 p) { return p * (p - 2) * (p - 3); }}},
      [](i64 p) { return p * (p - 1) * (p - 2); },
  });
  fams.push_back({
      "Z[p,p,p,p].companion3_diag",
      [](i64 p) { return sh_1n(p, 4); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (const PolyModP& f : irreducible_polys(p, 3))
          for (i64 c = 1; c < p; ++c) {
            Params pr = poly_params("b", f);
            pr.emplace_back("c", num(c));
            std::vector<PolyModP> irr = {f, PolyModP::x_minus(p, c)};
            std::sort(irr.begin(), irr.end(), PolyModP::lex_less);
            rows.push_back({std::move(pr),
                            sm(sh_1n(p, 4),
                               {0, 1, 0, 0, 0, 0, 1, 0,
                                -f.coeff(0), -f.coeff(1), -f.coeff(2), 0, 0, 0, 0, c}),
                            std::move(irr)});
          }
        return rows;
      },
      {{3, irr3_count}, {4, [](i64 p) { return checked_mul(irr3_count(p), p - 2); }}},
      [](i64 p) { return checked_mul(irr3_count(p), p - 1); },
  });
  fams.push_back({
      "Z[p^2,p,p].diag_companion2",
      sh_211,
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b : units_mod(p, 2))
          for (const PolyModP& f : irreducible_polys(p, 2)) {
            Params pr{{"b", num(b)}};
            for (const auto& [k, v] : poly_params("c", f)) pr.emplace_back(k, v);
            std::vector<PolyModP> irr = {f, PolyModP::x_minus(p, mod_reduce(b, p))};
            std::sort(irr.begin(), irr.end(), PolyModP::lex_less);
            rows.push_back({std::move(pr),
                            sm(sh_211(p), {b, 0, 0, 0, 0, 1, 0, -f.coeff(0), -f.coeff(1)}),
                            std::move(irr)});
          }
        return rows;
      },
      {{2, irr2_count},
       {3, [](i64 p) { return checked_mul(irr2_count(p), p - 1); }},
       {4, [](i64 p) { return checked_mul(irr2_count(p), p * (p - 2)); }}},
      [](i64 p) { return checked_mul(irr2_count(p), p * (p - 1)); },
  });
  fams.push_back({
      "Z[p,p,p,p].companion2_diag2",
      [](i64 p) { return sh_1n(p, 4); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (const PolyModP& f : irreducible_polys(p, 2))
          for (i64 c = 1; c < p; ++c)
            for (i64 d = c; d < p; ++d) {
              Params pr = poly_params("b", f);
              pr.emplace_back("c", num(c));
              pr.emplace_back("d", num(d));
              std::vector<PolyModP> irr = linear_factors(p, {c, d});
              irr.push_back(f);
              std::sort(irr.begin(), irr.end(), PolyModP::lex_less);
              rows.push_back({std::move(pr),
                              sm(sh_1n(p, 4),
                                 {0, 1, 0, 0, -f.coeff(0), -f.coeff(1), 0, 0,
                                  0, 0, c, 0, 0, 0, 0, d}),
                              std::move(irr)});
            }
        return rows;
      },
      {{2, irr2_count},
       {3, [](i64 p) { return checked_mul(irr2_count(p), p - 2); }},
       {4, [](i64 p) { return checked_mul(irr2_count(p), binomial(p - 1, 2)); }}},
      [](i64 p) { return checked_mul(irr2_count(p), binomial(p, 2)); },
  });
  fams.push_back({
      "Z[p,p,p,p].jordan2_companion2",
      [](i64 p) { return sh_1n(p, 4); },
      [](i64 p) {
        std::vector<RowData> rows;
        for (i64 b = 1; b < p; ++b)
          for (const PolyModP& f : irreducible_polys(p, 2)) {
            Params pr{{"b", num(b)}};
            for (const auto& [k, v] : poly_params("c", f)) pr.emplace_back(k, v);
            std::vector<PolyModP> irr = {f, PolyModP::x_minus(p, b)};
            std::sort(irr.begin(), irr.end(), PolyModP::lex_less);
            rows.push_back({std::move(pr),
                            sm(sh_1n(p, 4),
                               {b, 1, 0, 0, 0, b, 0, 0,
                                0, 0, 0, 1, 0, 0, -f.coeff(0), -f.coeff(1)}),
                            std::move(irr)});
          }
        return rows;
      },
      {{3, irr2_count}, {4, [](i64 p) { return checked_mul(irr2_count(p), p - 2); }}},
      [](i64 p) { return checked_mul(irr2_count(p), p - 1); },
  });
  return fams;
}

}  // namespace

const std::vector<TableFamily>& table_families(int n) {
  static const std::vector<TableFamily> f0 = families_n0();
  static const std::vector<TableFamily> f1 = families_n1();
  static const std::vector<TableFamily> f2 = families_n2();
  static const std::vector<TableFamily> f3 = families_n3();
  static const std::vector<TableFamily> f4 = families_n4();
  switch (n) {
    case 0: return f0;
    case 1: return f1;
    case 2: return f2;
    case 3: return f3;
    case 4: return f4;
    default: throw std::invalid_argument("table_families: n must be 0..4");
  }
}

i64 count_modules(i64 p, int n) {
  if (!is_prime(p)) throw std::invalid_argument("count_modules: p must be prime");
  switch (n) {
    case 0: return 1;
    case 1: return p - 1;
    case 2: return 2 * p * p - p - 1;
    case 3: return 3 * checked_pow(p, 3) - 2 * p * p - 1;
    case 4: return 5 * checked_pow(p, 4) - 2 * checked_pow(p, 3) - 2 * p - 1;
    default: throw std::invalid_argument("count_modules: n must be 0..4");
  }
}

i64 image_order(const LambdaModule& m) {
  if (m.shape.is_zero()) return 1;
  StructuredMatrix one_minus_t = StructuredMatrix::identity(m.shape).sub(m.action);
  std::vector<GroupElement> gens;
  for (int c = 0; c < m.shape.rank(); ++c)
    gens.push_back(one_minus_t.apply(GroupElement::basis(m.shape, c)));
  return standardize_subgroup(m, std::move(gens), true).order();
}

ClassificationReport enumerate_modules(i64 p, int n) {
  if (!is_prime(p)) throw std::invalid_argument("enumerate_modules: p must be prime");
  if (n < 0 || n > 4) throw std::invalid_argument("enumerate_modules: n must be 0..4");

  ClassificationReport rep;
  rep.p = p;
  rep.n = n;
  std::map<std::string, i64> shape_totals;
  std::vector<std::string> shape_order;
  std::map<int, i64> image_totals;

  for (const TableFamily& fam : table_families(n)) {
    GroupShape shape = fam.shape(p);
    for (RowData& rd : fam.rows(p)) {
      LambdaModule mod = LambdaModule::make(shape, std::move(rd.matrix));
      i64 img = image_order(mod);
      int img_exp = img == 1 ? 0 : valuation(img, p);
      if (shape_totals.find(shape.str()) == shape_totals.end()) shape_order.push_back(shape.str());
      shape_totals[shape.str()] += 1;
      image_totals[img_exp] += 1;
      rep.rows.push_back(TableRow{shape, fam.name, std::move(rd.params), std::move(mod),
                                  img_exp, std::move(rd.irreducibles)});
    }
  }
  rep.grand_total = static_cast<i64>(rep.rows.size());
  for (const std::string& s : shape_order) rep.totals_by_shape.emplace_back(s, shape_totals[s]);
  for (const auto& [e, c] : image_totals) rep.totals_by_image_exp.emplace_back(e, c);
  if (rep.grand_total != count_modules(p, n))
    throw std::logic_error("enumerate_modules: row count disagrees with the closed form");
  return rep;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

// All elementary-divisor assignments for an invertible n x n matrix over Z_p:
// maps from irreducibles (f != X) to partitions, total weighted size n.
void all_eldiv_multisets(i64 p, int n,
                         std::vector<std::vector<std::pair<PolyModP, Partition>>>& out) {
  std::vector<PolyModP> irrs;
  for (int d = 1; d <= n; ++d)
    for (const PolyModP& f : irreducible_polys(p, d)) irrs.push_back(f);
  std::vector<std::pair<PolyModP, Partition>> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rest) {
    if (rest == 0) {
      auto sorted = cur;
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return PolyModP::lex_less(a.first, b.first); });
      out.push_back(std::move(sorted));
      return;
    }
    if (i >= irrs.size()) return;
    rec(i + 1, rest);  // skip this irreducible
    int d = irrs[i].degree();
    for (int size = 1; size * d <= rest; ++size)
      for (const Partition& lam : partitions_of(size)) {
        cur.emplace_back(irrs[i], lam);
        rec(i + 1, rest - size * d);
        cur.pop_back();
      }
  };
  rec(0, n);
}

std::string status_str(i64 got, i64 want) {
  return "got " + std::to_string(got) + ", expected " + std::to_string(want);
}

}  // namespace

VerificationReport verify_table(i64 p, int n, i64 budget) {
  VerificationReport out;
  out.p = p;
  out.n = n;
  ClassificationReport rep = enumerate_modules(p, n);

  // Grand total against the closed form.
  out.checks.push_back({"grand_total",
                        rep.grand_total == count_modules(p, n) ? CheckStatus::pass : CheckStatus::fail,
                        status_str(rep.grand_total, count_modules(p, n))});

  // Soundness: units (enforced at construction) whose reduced minimal
  // polynomial has exactly the claimed irreducible factors.
  {
    i64 bad = 0;
    for (const TableRow& row : rep.rows) {
      if (row.shape.is_zero()) continue;
      PolyModP mp = min_poly_mod_p(row.module.action.reduce_mod_p());
      std::vector<PolyModP> got;
      for (const auto& [f, mult] : factor_into_irreducibles(mp)) {
        (void)mult;
        got.push_back(f);
      }
      if (got != row.irreducibles) ++bad;
    }
    out.checks.push_back({"soundness",
                          bad == 0 ? CheckStatus::pass : CheckStatus::fail,
                          bad == 0 ? "all rows in their claimed stratum"
                                   : std::to_string(bad) + " rows with unexpected factors"});
  }

  // Per-family totals and per-stratum counts against the printed formulas.
  {
    i64 bad_total = 0, bad_strata = 0;
    for (const TableFamily& fam : table_families(n)) {
      std::map<int, i64> actual;
      i64 fam_total = 0;
      for (const TableRow& row : rep.rows) {
        if (row.family != fam.name) continue;
        ++actual[row.image_exp];
        ++fam_total;
      }
      if (fam_total != fam.total(p)) ++bad_total;
      std::map<int, i64> expected;
      for (const auto& [exp, fn] : fam.strata) expected[exp] += fn(p);
      for (auto& [e, c] : expected)
        if (actual[e] != c) ++bad_strata;
      for (auto& [e, c] : actual)
        if (expected.find(e) == expected.end() && c != 0) ++bad_strata;
    }
    out.checks.push_back({"family_counts",
                          bad_total == 0 ? CheckStatus::pass : CheckStatus::fail,
                          bad_total == 0 ? "all family totals match"
                                         : std::to_string(bad_total) + " family totals differ"});
    out.checks.push_back({"strata_counts",
                          bad_strata == 0 ? CheckStatus::pass : CheckStatus::fail,
                          bad_strata == 0 ? "all stratum counts match"
                                          : std::to_string(bad_strata) + " stratum counts differ"});
  }

  // Distinctness + completeness per shape: the oracle partition within
  // budget, elementary-divisor bijection on homocyclic Z_p^n otherwise.
  std::map<std::string, std::vector<const TableRow*>> by_shape;
  std::vector<std::string> shape_order;
  for (const TableRow& row : rep.rows) {
    if (by_shape.find(row.shape.str()) == by_shape.end()) shape_order.push_back(row.shape.str());
    by_shape[row.shape.str()].push_back(&row);
  }
  for (const std::string& sname : shape_order) {
    const auto& rows = by_shape[sname];
    const GroupShape& shape = rows[0]->shape.is_zero() ? rows[0]->shape : rows[0]->module.shape;
    if (shape.is_zero()) {
      out.checks.push_back({"completeness[" + sname + "]", CheckStatus::pass, "trivial"});
      continue;
    }
    i64 gl = unit_group_order(shape);
    if (gl <= budget) {
      ConjugacyPartition part = conjugacy_partition(shape, budget);
      std::vector<int> row_count(part.reps.size(), 0);
      bool lookup_ok = true;
      for (const TableRow* row : rows) {
        auto it = part.class_of.find(row->module.action);
        if (it == part.class_of.end()) {
          lookup_ok = false;
          break;
        }
        ++row_count[it->second];
      }
      bool exactly_one = lookup_ok;
      for (int c : row_count)
        if (c != 1) exactly_one = false;
      i64 size_sum = 0;
      for (i64 s : part.sizes) size_sum += s;
      bool class_eq = size_sum == gl;
      out.checks.push_back({"completeness[" + sname + "]",
                            exactly_one && class_eq ? CheckStatus::pass : CheckStatus::fail,
                            std::to_string(part.reps.size()) + " classes over " +
                                std::to_string(gl) + " units, " + std::to_string(rows.size()) +
                                " rows (oracle)"});
      out.checks.push_back({"distinctness[" + sname + "]",
                            exactly_one ? CheckStatus::pass : CheckStatus::fail,
                            "per-class row multiplicity 1"});
    } else if (shape.is_homocyclic_rank_one_exponent()) {
      std::vector<std::vector<std::pair<PolyModP, Partition>>> all;
      all_eldiv_multisets(p, shape.rank(), all);
      std::sort(all.begin(), all.end());
      std::vector<std::vector<std::pair<PolyModP, Partition>>> got;
      for (const TableRow* row : rows)
        got.push_back(elementary_divisors_mod_p(row->module.action.reduce_mod_p()));
      std::sort(got.begin(), got.end());
      bool distinct = std::adjacent_find(got.begin(), got.end()) == got.end();
      bool complete = got == all;
      out.checks.push_back({"completeness[" + sname + "]",
                            complete ? CheckStatus::pass : CheckStatus::fail,
                            "rational-canonical-form bijection (fast path), " +
                                std::to_string(rows.size()) + " rows"});
      out.checks.push_back({"distinctness[" + sname + "]",
                            distinct ? CheckStatus::pass : CheckStatus::fail,
                            "pairwise distinct elementary divisors"});
    } else {
      out.checks.push_back({"completeness[" + sname + "]", CheckStatus::skipped,
                            "skipped: budget (|GL(M)| = " + std::to_string(gl) + ")"});
      out.checks.push_back(
          {"distinctness[" + sname + "]", CheckStatus::skipped, "skipped: budget"});
    }
  }
  return out;
}

}  // namespace lamod
