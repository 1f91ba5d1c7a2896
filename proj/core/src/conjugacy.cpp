#include "lamod/conjugacy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace lamod {

namespace {
// Above this unit-group size the orbit partition trusts the elementary
// generating set (validated separately in tests); below it, an exhaustive
// oracle pass merges any split orbits.
constexpr i64 kOracleMergeCap = 25'000;
}  // namespace

i64 gl_order(i64 p, int n) {
  i64 pn = checked_pow(p, n);
  i64 out = 1;
  i64 pi = 1;
  for (int i = 0; i < n; ++i) {
    out = checked_mul(out, pn - pi);
    pi = checked_mul(pi, p);
  }
  return out;
}

i64 gl_order_mod_pe(i64 p, int e, int n) {
  return checked_mul(checked_pow(p, (e - 1) * n * n), gl_order(p, n));
}

i64 unit_group_order(const GroupShape& s) {
  i64 out = 1;
  const auto& L = s.layers();
  for (std::size_t i = 0; i < L.size(); ++i) {
    out = checked_mul(out, gl_order_mod_pe(s.p(), L[i].exponent, L[i].multiplicity));
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      // Blocks (i,j) and (j,i) each contribute p^{e_j * n_i * n_j} choices.
      int free_exp = 2 * L[j].exponent * L[i].multiplicity * L[j].multiplicity;
      out = checked_mul(out, checked_pow(s.p(), free_exp));
    }
  }
  return out;
}

void for_each_unit(const GroupShape& s, const std::function<bool(const StructuredMatrix&)>& fn) {
  int n = s.rank();
  if (n == 0) {
    fn(StructuredMatrix::identity(s));
    return;
  }
  // Odometer over all admissible entry grids, filtered by is_unit.
  struct Pos {
    i64 step;   // p^{max(0, e_r - e_c)}
    i64 count;  // number of admissible values
  };
  std::vector<Pos> pos(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      int er = s.exponent_of(r), ec = s.exponent_of(c);
      i64 step = er > ec ? checked_pow(s.p(), er - ec) : 1;
      pos[r * n + c] = {step, s.modulus_of(r) / step};
    }
  std::vector<i64> idx(pos.size(), 0);
  std::vector<i64> ent(pos.size(), 0);
  while (true) {
    StructuredMatrix m = StructuredMatrix::make(s, ent);
    if (m.is_unit()) {
      if (!fn(m)) return;
    }
    std::size_t i = 0;
    while (i < pos.size()) {
      if (++idx[i] < pos[i].count) {
        ent[i] = idx[i] * pos[i].step;
        break;
      }
      idx[i] = 0;
      ent[i] = 0;
      ++i;
    }
    if (i == pos.size()) break;
  }
}

std::vector<StructuredMatrix> enumerate_units(const GroupShape& s, i64 budget) {
  i64 total = unit_group_order(s);
  if (total > budget)
    throw BudgetExceeded("enumerate_units: |GL(M)| = " + std::to_string(total) +
                         " exceeds budget " + std::to_string(budget));
  std::vector<StructuredMatrix> out;
  out.reserve(static_cast<std::size_t>(total));
  for_each_unit(s, [&](const StructuredMatrix& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

Fingerprint fingerprint(const StructuredMatrix& a) {
  const GroupShape& s = a.shape();
  i64 p = s.p();
  // Probe operators: monic degree-1 and degree-2 polynomials evaluated with
  // the canonical coefficient lift, plus the exact operators (A - cI)^m for
  // m <= 4. All are carried to conjugates by any intertwiner.
  std::vector<StructuredMatrix> probes;
  for (i64 c0 = 0; c0 < p; ++c0)
    probes.push_back(eval_poly_at_matrix(PolyModP(p, {c0, 1}), a));
  for (i64 c0 = 0; c0 < p; ++c0)
    for (i64 c1 = 0; c1 < p; ++c1)
      probes.push_back(eval_poly_at_matrix(PolyModP(p, {c0, c1, 1}), a));
  for (i64 c = 0; c < p; ++c) {
    StructuredMatrix base = a.sub(StructuredMatrix::scalar(s, c));
    StructuredMatrix acc = base;
    for (int m = 1; m <= 4; ++m) {
      probes.push_back(acc);
      if (m < 4) acc = acc.mul(base);
    }
  }

  Fingerprint out;
  int e1 = s.top_exponent();
  for (const StructuredMatrix& ga : probes) {
    std::vector<i64> counts(e1 + 1, 0);
    for (i64 idx = 0; idx < s.order(); ++idx) {
      GroupElement x = GroupElement::from_index(s, idx);
      if (!ga.apply(x).is_zero()) continue;
      for (int sp = 0; sp <= e1; ++sp)
        if (x.in_p_power_subgroup(sp)) ++counts[sp];
    }
    out.insert(out.end(), counts.begin(), counts.end());
  }
  return out;
}

std::optional<StructuredMatrix> are_conjugate_oracle(const StructuredMatrix& a,
                                                     const StructuredMatrix& b,
                                                     i64 budget) {
  if (!(a.shape() == b.shape()))
    throw std::invalid_argument("are_conjugate_oracle: shape mismatch");
  if (!a.is_unit() || !b.is_unit())
    throw std::invalid_argument("are_conjugate_oracle: inputs must be units");
  i64 total = unit_group_order(a.shape());
  if (total > budget)
    throw BudgetExceeded("are_conjugate_oracle: |GL(M)| = " + std::to_string(total) +
                         " exceeds budget " + std::to_string(budget));
  if (a == b) return StructuredMatrix::identity(a.shape());
  if (fingerprint(a) != fingerprint(b)) return std::nullopt;
  std::optional<StructuredMatrix> witness;
  for_each_unit(a.shape(), [&](const StructuredMatrix& pmat) {
    if (pmat.mul(a) == b.mul(pmat)) {
      witness = pmat;
      return false;
    }
    return true;
  });
  return witness;
}

bool in_gl_f(const StructuredMatrix& a, const PolyModP& f) {
  if (!a.is_unit()) return false;
  return is_power_of(min_poly_mod_p(a.reduce_mod_p()), f);
}

bool rcf_conjugate(const FpMatrix& a, const FpMatrix& b) {
  if (a.p() != b.p() || a.n() != b.n())
    throw std::invalid_argument("rcf_conjugate: dimension or modulus mismatch");
  return elementary_divisors_mod_p(a) == elementary_divisors_mod_p(b);
}

std::vector<Partition> partitions_of(int m) {
  std::vector<Partition> out;
  Partition cur;
  // Descending-lex enumeration: largest first part first.
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rest, maxpart); k >= 1; --k) {
      cur.push_back(k);
      rec(rest - k, k);
      cur.pop_back();
    }
  };
  rec(m, m);
  return out;
}

i64 centralizer_order_gl(i64 p, const std::vector<std::pair<PolyModP, Partition>>& eldivs) {
  i64 out = 1;
  for (const auto& [f, lam] : eldivs) {
    if (lam.empty()) continue;
    i64 q = checked_pow(p, f.degree());
    // Conjugate partition.
    std::vector<int> conj(lam[0], 0);
    for (int part : lam)
      for (int i = 0; i < part; ++i) ++conj[i];
    i64 sum_sq = 0;
    for (int c : conj) sum_sq += static_cast<i64>(c) * c;
    std::map<int, int> mult;
    for (int part : lam) ++mult[part];
    i64 denom_exp = 0;
    i64 numer = 1;
    for (auto [part, m] : mult) {
      (void)part;
      for (int j = 1; j <= m; ++j) numer = checked_mul(numer, checked_pow(q, j) - 1);
      denom_exp += static_cast<i64>(m) * (m + 1) / 2;
    }
    if (sum_sq < denom_exp) throw std::logic_error("centralizer_order_gl: negative exponent");
    out = checked_mul(out, checked_mul(numer, checked_pow(q, static_cast<int>(sum_sq - denom_exp))));
  }
  return out;
}

namespace {

// Generators of the cyclic (or, for p=2 and e>=3, two-generator) unit group
// of Z_{p^e}.
std::vector<i64> unit_group_generators(i64 p, int e) {
  i64 q = checked_pow(p, e);
  i64 phi = q - q / p;
  if (phi == 1) return {};
  if (p == 2 && e >= 3) return {q - 1, 5};
  for (i64 g = 2; g < q; ++g) {
    if (g % p == 0) continue;
    i64 x = g % q;
    i64 ord = 1;
    while (x != 1) {
      x = (x * g) % q;
      ++ord;
    }
    if (ord == phi) return {g};
  }
  throw std::logic_error("unit_group_generators: no generator found");
}

// Elementary generating set of GL(M): transvections with the minimal
// admissible entry in each off-diagonal position, plus diagonal unit-group
// generators. Structured Gaussian elimination reduces any unit to the
// identity by these, so they generate.
std::vector<StructuredMatrix> gl_generators(const GroupShape& s) {
  std::vector<StructuredMatrix> gens;
  int n = s.rank();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (r == c) continue;
      int er = s.exponent_of(r), ec = s.exponent_of(c);
      i64 v = er > ec ? checked_pow(s.p(), er - ec) : 1;
      StructuredMatrix t = StructuredMatrix::identity(s);
      std::vector<i64> e(t.entries());
      e[r * n + c] = v;
      gens.push_back(StructuredMatrix::make(s, std::move(e)));
    }
  for (int d = 0; d < n; ++d)
    for (i64 u : unit_group_generators(s.p(), s.exponent_of(d))) {
      StructuredMatrix t = StructuredMatrix::identity(s);
      std::vector<i64> e(t.entries());
      e[d * n + d] = u;
      gens.push_back(StructuredMatrix::make(s, std::move(e)));
    }
  return gens;
}

// Partition `elems` (a union of conjugacy classes) into orbits under
// conjugation, BFS over the elementary generators; for small unit groups an
// exhaustive oracle pass merges any orbits a deficient generating set might
// have split.
ConjugacyPartition partition_by_conjugation(const GroupShape& s,
                                            std::vector<StructuredMatrix> elems,
                                            i64 budget) {
  i64 total = unit_group_order(s);
  if (total > budget)
    throw BudgetExceeded("conjugacy partition: |GL(M)| = " + std::to_string(total) +
                         " exceeds budget " + std::to_string(budget));
  std::sort(elems.begin(), elems.end(),
            [](const StructuredMatrix& x, const StructuredMatrix& y) { return x.lex_less(y); });

  std::vector<StructuredMatrix> gens = gl_generators(s);
  std::vector<StructuredMatrix> gens_inv;
  gens_inv.reserve(gens.size());
  for (const auto& g : gens) gens_inv.push_back(g.inverse());

  ConjugacyPartition out;
  std::vector<i64> sizes;
  for (const StructuredMatrix& seed : elems) {
    if (out.class_of.count(seed)) continue;
    int id = static_cast<int>(out.reps.size());
    out.reps.push_back(seed);  // elems sorted, so the seed is lex-least
    out.class_of.emplace(seed, id);
    std::vector<StructuredMatrix> frontier{seed};
    i64 size = 1;
    while (!frontier.empty()) {
      std::vector<StructuredMatrix> next;
      for (const StructuredMatrix& cur : frontier)
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
          StructuredMatrix img = gens[gi].mul(cur).mul(gens_inv[gi]);
          if (out.class_of.emplace(img, id).second) {
            ++size;
            next.push_back(std::move(img));
          }
        }
      frontier = std::move(next);
    }
    sizes.push_back(size);
  }
  out.sizes = std::move(sizes);

  if (total <= kOracleMergeCap && out.reps.size() > 1) {
    // Union-find over class ids, merging whenever the exhaustive oracle
    // connects two representatives.
    std::size_t k = out.reps.size();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<Fingerprint> fps;
    fps.reserve(k);
    for (const auto& rep : out.reps) fps.push_back(fingerprint(rep));
    bool merged_any = false;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        std::size_t ri = find(i), rj = find(j);
        if (ri == rj || fps[i] != fps[j]) continue;
        if (are_conjugate_oracle(out.reps[i], out.reps[j], budget)) {
          // Root at the least index so the merged rep stays lex-least.
          parent[std::max(ri, rj)] = std::min(ri, rj);
          merged_any = true;
        }
      }
    if (merged_any) {
      std::map<std::size_t, int> renumber;  // ascending roots keep lex order of reps
      std::vector<StructuredMatrix> reps;
      std::vector<i64> new_sizes;
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t r = find(i);
        auto it = renumber.find(r);
        if (it == renumber.end()) {
          renumber.emplace(r, static_cast<int>(reps.size()));
          reps.push_back(out.reps[r]);  // root has the least index, hence lex-least rep
          new_sizes.push_back(out.sizes[i]);
        } else {
          new_sizes[it->second] += out.sizes[i];
        }
      }
      for (auto& [mat, id] : out.class_of) id = renumber.at(find(static_cast<std::size_t>(id)));
      out.reps = std::move(reps);
      out.sizes = std::move(new_sizes);
    }
  }
  return out;
}

}  // namespace

std::vector<ConjClass> conjugacy_classes(const GroupShape& s, const PolyModP& f, i64 budget) {
  if (s.p() != f.p()) throw std::invalid_argument("conjugacy_classes: prime mismatch");
  if (s.is_zero()) return {{StructuredMatrix::identity(s), 1}};

  if (s.is_homocyclic_rank_one_exponent()) {
    // Z_p^n: classes are the rational canonical forms with elementary
    // divisors f^{lambda_1}, f^{lambda_2}, ...
    int n = s.rank();
    int df = f.degree();
    std::vector<ConjClass> out;
    if (n % df != 0) return out;
    i64 gl = gl_order(s.p(), n);
    for (const Partition& lam : partitions_of(n / df)) {
      std::vector<i64> ent(static_cast<std::size_t>(n) * n, 0);
      int off = 0;
      for (int part : lam) {
        FpMatrix blk = f.pow(part).companion();
        for (int r = 0; r < blk.n(); ++r)
          for (int c = 0; c < blk.n(); ++c) ent[(off + r) * n + (off + c)] = blk.at(r, c);
        off += blk.n();
      }
      StructuredMatrix rep = StructuredMatrix::make(s, std::move(ent));
      i64 size = gl / centralizer_order_gl(s.p(), {{f, lam}});
      out.push_back({std::move(rep), size});
    }
    return out;
  }

  std::vector<StructuredMatrix> elems;
  i64 total = unit_group_order(s);
  if (total > budget)
    throw BudgetExceeded("conjugacy_classes: |GL(M)| = " + std::to_string(total) +
                         " exceeds budget " + std::to_string(budget) + " and no fast path applies");
  for_each_unit(s, [&](const StructuredMatrix& m) {
    if (in_gl_f(m, f)) elems.push_back(m);
    return true;
  });
  ConjugacyPartition part = partition_by_conjugation(s, std::move(elems), budget);
  std::vector<ConjClass> out;
  out.reserve(part.reps.size());
  for (std::size_t i = 0; i < part.reps.size(); ++i)
    out.push_back({part.reps[i], part.sizes[i]});
  return out;
}

ConjugacyPartition conjugacy_partition(const GroupShape& s, i64 budget) {
  if (s.is_zero()) {
    ConjugacyPartition out;
    out.reps = {StructuredMatrix::identity(s)};
    out.sizes = {1};
    out.class_of.emplace(StructuredMatrix::identity(s), 0);
    return out;
  }
  std::vector<StructuredMatrix> elems = enumerate_units(s, budget);
  return partition_by_conjugation(s, std::move(elems), budget);
}

}  // namespace lamod
