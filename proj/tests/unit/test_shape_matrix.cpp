#include <doctest.h>

#include <random>
#include <vector>

#include "lamod/matrix.hpp"

using namespace lamod;

namespace {

GroupShape z4z2() { return GroupShape::make(2, {{2, 1}, {1, 1}}); }

// Exhaustive bijection oracle for unit-ness.
bool acts_bijectively(const StructuredMatrix& a) {
  const GroupShape& s = a.shape();
  std::vector<char> hit(s.order(), 0);
  for (i64 i = 0; i < s.order(); ++i) {
    i64 img = a.apply(GroupElement::from_index(s, i)).index();
    if (hit[img]) return false;
    hit[img] = 1;
  }
  return true;
}

std::vector<StructuredMatrix> all_structured(const GroupShape& s) {
  // Every admissible grid, unit or not.
  int n = s.rank();
  std::vector<std::pair<i64, i64>> pos;  // (step, count)
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      int er = s.exponent_of(r), ec = s.exponent_of(c);
      i64 step = er > ec ? checked_pow(s.p(), er - ec) : 1;
      pos.push_back({step, s.modulus_of(r) / step});
    }
  std::vector<StructuredMatrix> out;
  std::vector<i64> idx(pos.size(), 0), ent(pos.size(), 0);
  while (true) {
    out.push_back(StructuredMatrix::make(s, ent));
    std::size_t i = 0;
    while (i < pos.size()) {
      if (++idx[i] < pos[i].second) {
        ent[i] = idx[i] * pos[i].first;
        break;
      }
      idx[i] = 0;
      ent[i] = 0;
      ++i;
    }
    if (i == pos.size()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("shape order") {
  CHECK(z4z2().order() == 8);
  CHECK(GroupShape::cyclic(3, 4).order() == 81);
  CHECK(GroupShape::make(2, {{2, 1}, {1, 2}}).order() == 16);
  CHECK(GroupShape::zero(5).order() == 1);
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(GroupShape::make(4, {{1, 1}}), std::invalid_argument);   // p not prime
  CHECK_THROWS_AS(GroupShape::make(2, {{1, 1}, {2, 1}}), std::invalid_argument);  // ascending exps
  CHECK_THROWS_AS(GroupShape::make(2, {{1, 0}}), std::invalid_argument);
  // Overflow policy: moduli beyond the supported range are refused, not wrapped.
  CHECK_THROWS_AS(GroupShape::make(2, {{40, 1}}), std::overflow_error);
}

TEST_CASE("element enumeration round trip and order") {
  GroupShape s = z4z2();
  for (i64 i = 0; i < s.order(); ++i) {
    GroupElement x = GroupElement::from_index(s, i);
    CHECK(x.index() == i);
  }
  // First coordinate (largest exponent) is most significant.
  CHECK(GroupElement::from_index(s, 1).coords() == std::vector<i64>{0, 1});
  CHECK(GroupElement::from_index(s, 2).coords() == std::vector<i64>{1, 0});
}

TEST_CASE("mat_apply examples") {
  GroupShape s = z4z2();
  StructuredMatrix id = StructuredMatrix::identity(s);
  CHECK(id.apply(GroupElement(s, {3, 1})) == GroupElement(s, {3, 1}));

  StructuredMatrix a = StructuredMatrix::make(s, {1, 2, 1, 1});
  CHECK(a.apply(GroupElement(s, {1, 0})) == GroupElement(s, {1, 1}));

  StructuredMatrix b = StructuredMatrix::make(s, {3, 0, 1, 1});
  CHECK(b.apply(GroupElement(s, {2, 1})) == GroupElement(s, {2, 1}));
}

TEST_CASE("mat_mul matches composed application on all of Z4 x Z2") {
  GroupShape s = z4z2();
  StructuredMatrix a = StructuredMatrix::make(s, {1, 2, 1, 1});
  StructuredMatrix b = StructuredMatrix::make(s, {3, 0, 1, 1});
  StructuredMatrix ab = a.mul(b);
  for (i64 i = 0; i < s.order(); ++i) {
    GroupElement x = GroupElement::from_index(s, i);
    CHECK(ab.apply(x) == a.apply(b.apply(x)));
  }
}

TEST_CASE("nilpotent square agrees with composed application") {
  GroupShape s = z4z2();
  StructuredMatrix n = StructuredMatrix::make(s, {0, 0, 1, 0});
  StructuredMatrix n2 = n.mul(n);
  for (i64 i = 0; i < s.order(); ++i) {
    GroupElement x = GroupElement::from_index(s, i);
    CHECK(n2.apply(x) == n.apply(n.apply(x)));
    CHECK(n2.apply(x).is_zero());
  }
}

TEST_CASE("divisibility constraint is validated") {
  GroupShape s = z4z2();
  CHECK_THROWS_AS(StructuredMatrix::make(s, {1, 1, 0, 1}), std::invalid_argument);
  CHECK_NOTHROW(StructuredMatrix::make(s, {1, 2, 0, 1}));
  CHECK_THROWS_AS(StructuredMatrix::make(s, {4, 0, 0, 1}), std::invalid_argument);  // out of range
}

TEST_CASE("ring homomorphism and closure on shapes of order <= 64") {
  std::vector<GroupShape> shapes = {
      z4z2(),
      GroupShape::make(2, {{2, 1}, {1, 2}}),
      GroupShape::make(3, {{1, 2}}),
      GroupShape::make(2, {{3, 1}, {1, 1}}),
  };
  std::mt19937 rng(12345);
  for (const GroupShape& s : shapes) {
    std::vector<StructuredMatrix> all = all_structured(s);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const StructuredMatrix& a = all[pick(rng)];
      const StructuredMatrix& b = all[pick(rng)];
      StructuredMatrix ab = a.mul(b);  // construction re-checks closure
      for (i64 i = 0; i < s.order(); ++i) {
        GroupElement x = GroupElement::from_index(s, i);
        REQUIRE(ab.apply(x) == a.apply(b.apply(x)));
      }
    }
  }
}

TEST_CASE("is_unit iff bijective, exhaustively on small shapes") {
  for (const GroupShape& s : {z4z2(), GroupShape::make(3, {{1, 2}}),
                              GroupShape::make(2, {{2, 1}, {1, 2}})}) {
    for (const StructuredMatrix& a : all_structured(s))
      REQUIRE(a.is_unit() == acts_bijectively(a));
  }
}

TEST_CASE("is_unit examples") {
  GroupShape s = z4z2();
  CHECK(StructuredMatrix::identity(s).is_unit());
  CHECK_FALSE(StructuredMatrix::make(s, {2, 0, 0, 1}).is_unit());
  CHECK(StructuredMatrix::make(s, {1, 2, 1, 1}).is_unit());
}

TEST_CASE("inverse of every unit on Z4 x Z2 and Z9") {
  for (const GroupShape& s : {z4z2(), GroupShape::cyclic(3, 2)}) {
    StructuredMatrix id = StructuredMatrix::identity(s);
    for (const StructuredMatrix& a : all_structured(s)) {
      if (!a.is_unit()) continue;
      StructuredMatrix inv = a.inverse();
      CHECK(a.mul(inv) == id);
      CHECK(inv.mul(a) == id);
    }
  }
}

TEST_CASE("reduce_mod_p") {
  GroupShape s = z4z2();
  StructuredMatrix a = StructuredMatrix::make(s, {3, 0, 1, 1});
  FpMatrix r = a.reduce_mod_p();
  CHECK(r.at(0, 0) == 1);
  CHECK(r.at(0, 1) == 0);
  CHECK(r.at(1, 0) == 1);
  CHECK(r.at(1, 1) == 1);
  CHECK(StructuredMatrix::identity(s).reduce_mod_p() == FpMatrix::identity(2, 2));

  // The (1,2)-block always reduces to zero when exponents differ.
  StructuredMatrix b = StructuredMatrix::make(s, {1, 2, 0, 1});
  CHECK(b.reduce_mod_p().at(0, 1) == 0);
}

TEST_CASE("reduction is multiplicative") {
  GroupShape s = z4z2();
  std::vector<StructuredMatrix> all = all_structured(s);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const StructuredMatrix& a = all[pick(rng)];
    const StructuredMatrix& b = all[pick(rng)];
    CHECK(a.mul(b).reduce_mod_p() == a.reduce_mod_p().mul(b.reduce_mod_p()));
  }
}
