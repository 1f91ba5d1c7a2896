#include <doctest.h>

#include <vector>

#include "lamod/poly.hpp"

using namespace lamod;

namespace {

// Brute-force minimal polynomial: least-degree monic annihilator, found by
// enumerating all monic polynomials by (degree, lex). Independent of the
// linear-algebra path.
PolyModP min_poly_bruteforce(const FpMatrix& a) {
  i64 p = a.p();
  int n = a.n();
  for (int d = 1; d <= n; ++d) {
    std::vector<i64> c(d + 1, 0);
    c[d] = 1;
    while (true) {
      PolyModP f(p, c);
      if (f.eval(a).is_zero()) return f;
      int i = 0;
      while (i < d && c[i] == p - 1) c[i++] = 0;
      if (i == d) break;
      ++c[i];
    }
  }
  return PolyModP::zero(p);
}

// det(XI - A) via cofactor expansion with polynomial entries.
PolyModP char_poly(const FpMatrix& a) {
  i64 p = a.p();
  int n = a.n();
  std::vector<PolyModP> m(static_cast<std::size_t>(n) * n, PolyModP::zero(p));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::vector<i64> coeffs = {mod_reduce(-a.at(r, c), p)};
      if (r == c) coeffs.push_back(1);
      m[r * n + c] = PolyModP(p, coeffs);
    }
  std::function<PolyModP(std::vector<int>, std::vector<int>)> det =
      [&](std::vector<int> rows, std::vector<int> cols) -> PolyModP {
    if (rows.empty()) return PolyModP::one(p);
    PolyModP acc = PolyModP::zero(p);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<int> sub_rows(rows.begin() + 1, rows.end());
      std::vector<int> sub_cols;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (j != k) sub_cols.push_back(cols[j]);
      PolyModP term = m[rows[0] * n + cols[k]].mul(det(sub_rows, sub_cols));
      acc = (k % 2 == 0) ? acc.add(term) : acc.sub(term);
    }
    return acc;
  };
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return det(idx, idx);
}

i64 moebius(i64 m) {
  i64 out = 1;
  for (i64 d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    m /= d;
    if (m % d == 0) return 0;
    out = -out;
  }
  if (m > 1) out = -out;
  return out;
}

// Necklace count of monic irreducibles of degree d over Z_p.
i64 irr_count_formula(i64 p, int d) {
  i64 sum = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    i64 pw = 1;
    for (int i = 0; i < d / e; ++i) pw *= p;
    sum += moebius(e) * pw;
  }
  return sum / d;
}

}  // namespace

TEST_CASE("poly basics") {
  PolyModP f(2, {1, 1});  // X + 1
  CHECK(f.mul(f) == PolyModP(2, {1, 0, 1}));
  CHECK(f.str() == "X+1");
  CHECK(PolyModP(3, {-1, 1}).str() == "X+2");
  auto [q, r] = PolyModP(2, {1, 0, 1}).divmod(f);
  CHECK(q == f);
  CHECK(r.is_zero());
}

TEST_CASE("irreducible_polys examples") {
  auto i22 = irreducible_polys(2, 2);
  REQUIRE(i22.size() == 1);
  CHECK(i22[0] == PolyModP(2, {1, 1, 1}));

  auto i31 = irreducible_polys(3, 1);
  REQUIRE(i31.size() == 2);
  CHECK(i31[0] == PolyModP(3, {1, 1}));  // X + 1 = X - 2
  CHECK(i31[1] == PolyModP(3, {2, 1}));  // X + 2 = X - 1

  CHECK(irreducible_polys(2, 4).size() == 3);
}

TEST_CASE("irreducible counts match the necklace formula and trial factorization") {
  for (i64 p : {2, 3, 5})
    for (int d = 1; d <= 4; ++d) {
      auto list = irreducible_polys(p, d);
      i64 want = irr_count_formula(p, d);
      if (d == 1) want -= 1;  // X itself is excluded
      CHECK(static_cast<i64>(list.size()) == want);
      for (const PolyModP& f : list) {
        CHECK(f.is_monic());
        CHECK(f.coeff(0) != 0);
        CHECK(f.is_irreducible());
      }
    }
}

TEST_CASE("min_poly examples") {
  CHECK(min_poly_mod_p(FpMatrix::identity(2, 2)) == PolyModP(2, {1, 1}));
  PolyModP f(2, {1, 1, 1});
  CHECK(min_poly_mod_p(f.companion()) == f);
  FpMatrix a(2, 2, {1, 0, 1, 1});
  CHECK(min_poly_mod_p(a) == PolyModP(2, {1, 0, 1}));  // (X+1)^2
}

TEST_CASE("min_poly agrees with brute force and divides the characteristic polynomial") {
  for (i64 p : {2, 3}) {
    int n = 3;
    // A spread of matrices: companions, triangulars, and a few pseudo-random.
    std::vector<FpMatrix> cases;
    for (const PolyModP& f : irreducible_polys(p, 3)) cases.push_back(f.companion());
    cases.push_back(FpMatrix::identity(p, n));
    cases.push_back(FpMatrix(p, n, {1, 1, 0, 0, 1, 1, 0, 0, 1}));
    cases.push_back(FpMatrix(p, n, {1, 0, 0, 1, 1, 0, 0, 1, 2 % p}));
    std::uint64_t state = 42;
    for (int t = 0; t < 20; ++t) {
      std::vector<i64> e(static_cast<std::size_t>(n) * n);
      for (i64& v : e) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        v = static_cast<i64>((state >> 33) % p);
      }
      cases.emplace_back(p, n, std::move(e));
    }
    for (const FpMatrix& a : cases) {
      PolyModP mp = min_poly_mod_p(a);
      CHECK(mp == min_poly_bruteforce(a));
      CHECK(mp.eval(a).is_zero());
      CHECK(mp.divides(char_poly(a)));
    }
  }
}

TEST_CASE("elementary divisors examples") {
  auto ed = elementary_divisors_mod_p(FpMatrix::identity(3, 3));
  REQUIRE(ed.size() == 1);
  CHECK(ed[0].first == PolyModP(3, {2, 1}));  // X - 1
  CHECK(ed[0].second == Partition{1, 1, 1});

  PolyModP f(2, {1, 1});
  auto ed2 = elementary_divisors_mod_p(f.pow(2).companion());
  REQUIRE(ed2.size() == 1);
  CHECK(ed2[0].first == f);
  CHECK(ed2[0].second == Partition{2});

  PolyModP g(2, {1, 1, 1});
  auto ed3 = elementary_divisors_mod_p(g.companion());
  REQUIRE(ed3.size() == 1);
  CHECK(ed3[0].first == g);
  CHECK(ed3[0].second == Partition{1});
}

TEST_CASE("elementary divisors reassemble to a similar matrix") {
  // Block-diagonal reassembly of companions of f^k has the same divisors.
  for (i64 p : {2, 3}) {
    PolyModP f = irreducible_polys(p, 2)[0];
    PolyModP l = irreducible_polys(p, 1)[0];
    int n = 4;
    std::vector<i64> e(16, 0);
    FpMatrix cf = f.companion();
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) e[r * n + c] = cf.at(r, c);
    e[2 * n + 2] = mod_reduce(-l.coeff(0), p);
    e[3 * n + 3] = mod_reduce(-l.coeff(0), p);
    FpMatrix a(p, n, std::move(e));
    auto ed = elementary_divisors_mod_p(a);
    REQUIRE(ed.size() == 2);
    CHECK(ed[0].second.size() + ed[1].second.size() == 3);
  }
}

TEST_CASE("eval_poly_at_matrix") {
  GroupShape s = GroupShape::make(2, {{2, 1}, {1, 1}});
  StructuredMatrix id = StructuredMatrix::identity(s);
  CHECK(eval_poly_at_matrix(PolyModP(2, {1, 1}), id) ==
        StructuredMatrix::make(s, {2, 0, 0, 0}));  // (X+1)(I) = 2I, zero in layer 2
  StructuredMatrix a = StructuredMatrix::make(s, {1, 0, 1, 1});
  CHECK(eval_poly_at_matrix(PolyModP::x(2), a) == a);
  // (X-1)^2 over Z_2 is X^2+1; with the canonical lift its value at this
  // action is 2I (A^2 = I here), and a further square annihilates every
  // element, which is what membership in the (X+1)-primary part needs.
  StructuredMatrix sq = eval_poly_at_matrix(PolyModP(2, {1, 0, 1}), a);
  CHECK(sq == StructuredMatrix::make(s, {2, 0, 0, 0}));
  StructuredMatrix sq2 = sq.mul(sq);
  for (i64 i = 0; i < s.order(); ++i)
    CHECK(sq2.apply(GroupElement::from_index(s, i)).is_zero());
}

TEST_CASE("is_power_of") {
  PolyModP f(2, {1, 1});
  CHECK(is_power_of(f, f));
  CHECK(is_power_of(f.pow(3), f));
  CHECK_FALSE(is_power_of(PolyModP(2, {1, 1, 1}), f));
  CHECK_FALSE(is_power_of(f.mul(PolyModP(2, {1, 1, 1})), f));
}
