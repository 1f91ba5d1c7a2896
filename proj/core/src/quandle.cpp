#include "lamod/quandle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace lamod {

QuandleTable alexander_quandle(const LambdaModule& m) {
  const GroupShape& s = m.shape;
  i64 order = s.order();
  QuandleTable q;
  q.size = static_cast<int>(order);
  q.op.resize(static_cast<std::size_t>(order) * order);
  q.origin = m;

  // x * y = t x + (y - t y); precompute both pieces per element.
  std::vector<GroupElement> tx, rest;
  tx.reserve(order);
  rest.reserve(order);
  for (i64 i = 0; i < order; ++i) {
    GroupElement x = GroupElement::from_index(s, i);
    GroupElement img = m.action.apply(x);
    tx.push_back(img);
    rest.push_back(x.sub(img));
  }
  for (i64 x = 0; x < order; ++x)
    for (i64 y = 0; y < order; ++y)
      q.op[static_cast<std::size_t>(x) * order + y] = static_cast<int>(tx[x].add(rest[y]).index());

  // Axioms (i) and (ii) always; (iii) exhaustively while cheap.
  for (i64 x = 0; x < order; ++x)
    if (q.at(static_cast<int>(x), static_cast<int>(x)) != x)
      throw std::logic_error("alexander_quandle: idempotence failed");
  std::vector<char> seen(order);
  for (i64 y = 0; y < order; ++y) {
    std::fill(seen.begin(), seen.end(), 0);
    for (i64 x = 0; x < order; ++x) seen[q.at(static_cast<int>(x), static_cast<int>(y))] = 1;
    for (char c : seen)
      if (!c) throw std::logic_error("alexander_quandle: column not a permutation");
  }
  if (order <= 128 && !quandle_axioms_hold(q))
    throw std::logic_error("alexander_quandle: distributivity failed");
  return q;
}

bool quandle_axioms_hold(const QuandleTable& q) {
  int n = q.size;
  for (int x = 0; x < n; ++x)
    if (q.at(x, x) != x) return false;
  std::vector<char> seen(n);
  for (int y = 0; y < n; ++y) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int x = 0; x < n; ++x) seen[q.at(x, y)] = 1;
    for (char c : seen)
      if (!c) return false;
  }
  const int* t = q.op.data();
  auto at = [&](int x, int y) { return t[static_cast<std::size_t>(x) * n + y]; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int xy = at(x, y);
      for (int z = 0; z < n; ++z)
        if (at(xy, z) != at(at(x, z), at(y, z))) return false;
    }
  return true;
}

bool is_connected(const LambdaModule& m) {
  return StructuredMatrix::identity(m.shape).sub(m.action).is_unit();
}

LambdaModule image_module(const LambdaModule& m) {
  if (m.shape.is_zero()) return m;
  StructuredMatrix one_minus_t = StructuredMatrix::identity(m.shape).sub(m.action);
  std::vector<GroupElement> gens;
  for (int c = 0; c < m.shape.rank(); ++c)
    gens.push_back(one_minus_t.apply(GroupElement::basis(m.shape, c)));
  return standardize_subgroup(m, std::move(gens), true).standardized();
}

bool quandles_isomorphic(const LambdaModule& m, const LambdaModule& n, i64 budget) {
  if (m.order() != n.order()) return false;
  return lambda_isomorphic(image_module(m), image_module(n), budget);
}

namespace {

// Sorted column cycle types; invariant under quandle isomorphism.
std::vector<std::vector<int>> column_cycle_types(const QuandleTable& q) {
  int n = q.size;
  std::vector<std::vector<int>> out;
  out.reserve(n);
  for (int y = 0; y < n; ++y) {
    std::vector<char> seen(n, 0);
    std::vector<int> cycles;
    for (int x = 0; x < n; ++x) {
      if (seen[x]) continue;
      int len = 0, cur = x;
      while (!seen[cur]) {
        seen[cur] = 1;
        cur = q.at(cur, y);
        ++len;
      }
      cycles.push_back(len);
    }
    std::sort(cycles.begin(), cycles.end());
    out.push_back(std::move(cycles));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct IsoSearch {
  const QuandleTable& a;
  const QuandleTable& b;
  int n;
  std::vector<int> map;   // a -> b, -1 unassigned
  std::vector<char> used;
  std::vector<int> trail;

  IsoSearch(const QuandleTable& a_, const QuandleTable& b_)
      : a(a_), b(b_), n(a_.size), map(n, -1), used(n, 0) {}

  bool assign(int x, int u) {
    if (map[x] >= 0) return map[x] == u;
    if (used[u]) return false;
    map[x] = u;
    used[u] = 1;
    trail.push_back(x);
    return true;
  }

  void rollback(std::size_t mark) {
    while (trail.size() > mark) {
      int x = trail.back();
      trail.pop_back();
      used[map[x]] = 0;
      map[x] = -1;
    }
  }

  // Close the partial map under x*y |-> phi(x)*phi(y); false on conflict.
  bool propagate(std::size_t from) {
    for (std::size_t head = from; head < trail.size(); ++head) {
      int x = trail[head];
      for (int i = 0; i < static_cast<int>(trail.size()); ++i) {
        int y = trail[i];
        if (!assign(a.at(x, y), b.at(map[x], map[y]))) return false;
        if (!assign(a.at(y, x), b.at(map[y], map[x]))) return false;
      }
    }
    return true;
  }

  bool search() {
    int x = -1;
    for (int i = 0; i < n; ++i)
      if (map[i] < 0) { x = i; break; }
    if (x < 0) return true;
    for (int u = 0; u < n; ++u) {
      if (used[u]) continue;
      std::size_t mark = trail.size();
      if (assign(x, u) && propagate(mark) && search()) return true;
      rollback(mark);
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> quandle_isomorphism(const QuandleTable& a, const QuandleTable& b,
                                                    int size_budget) {
  if (a.size != b.size) return std::nullopt;
  if (a.size > size_budget)
    throw BudgetExceeded("quandle_isomorphism: size " + std::to_string(a.size) +
                         " exceeds budget " + std::to_string(size_budget));
  if (a.size == 0) return std::vector<int>{};
  if (column_cycle_types(a) != column_cycle_types(b)) return std::nullopt;
  IsoSearch s(a, b);
  if (!s.search()) return std::nullopt;
  return s.map;
}

bool quandle_isomorphic_bruteforce(const QuandleTable& a, const QuandleTable& b, int size_budget) {
  return quandle_isomorphism(a, b, size_budget).has_value();
}

// ---------------------------------------------------------------------------
// Extension

GroupElement ExtensionResult::include(const GroupElement& n_elem) const {
  GroupElement out = GroupElement::zero(extended.shape);
  for (std::size_t i = 0; i < inclusion.size(); ++i)
    out = out.add(inclusion[i].scaled(n_elem.coord(static_cast<int>(i))));
  return out;
}

namespace {

// A homomorphism given by the images of the domain's basis vectors.
GroupElement apply_cols(const std::vector<GroupElement>& cols, const GroupShape& codomain,
                        const GroupElement& x) {
  GroupElement out = GroupElement::zero(codomain);
  for (std::size_t j = 0; j < cols.size(); ++j) out = out.add(cols[j].scaled(x.coord(static_cast<int>(j))));
  return out;
}

std::unordered_set<i64> image_set(const std::vector<GroupElement>& cols, const GroupShape& domain,
                                  const GroupShape& codomain) {
  std::unordered_set<i64> out;
  for (i64 i = 0; i < domain.order(); ++i)
    out.insert(apply_cols(cols, codomain, GroupElement::from_index(domain, i)).index());
  return out;
}

GroupShape shape_from_exponents(i64 p, const std::vector<int>& exps) {
  std::vector<Layer> layers;
  for (int e : exps) {
    if (!layers.empty() && layers.back().exponent == e)
      ++layers.back().multiplicity;
    else
      layers.push_back({e, 1});
  }
  return GroupShape::make(p, std::move(layers));
}

}  // namespace

ExtensionResult extend(const LambdaModule& n_mod) {
  const GroupShape& nsh = n_mod.shape;
  i64 p = nsh.p();
  int r = nsh.rank();

  ExtensionResult res;
  std::vector<GroupElement> alpha;  // M_i -> N, images of basis vectors
  std::vector<GroupElement> emb;    // N -> M_i
  for (int c = 0; c < r; ++c) {
    GroupElement e = GroupElement::basis(nsh, c);
    alpha.push_back(e.sub(n_mod.action.apply(e)));
    emb.push_back(e);
  }
  GroupShape cur = nsh;  // shape of M_i

  i64 img0 = static_cast<i64>(image_set(alpha, cur, nsh).size());
  int k = nsh.total_exponent() - (img0 == 1 ? 0 : valuation(img0, p));

  for (int step = 0; step < k; ++step) {
    std::unordered_set<i64> img = image_set(alpha, cur, nsh);

    // First element outside pM_i that alpha maps into pN.
    GroupElement a = GroupElement::zero(cur);
    bool found = false;
    for (i64 idx = 0; idx < cur.order() && !found; ++idx) {
      GroupElement cand = GroupElement::from_index(cur, idx);
      if (!cand.has_unit_coord()) continue;
      if (apply_cols(alpha, nsh, cand).in_p_power_subgroup(1)) {
        a = cand;
        found = true;
      }
    }
    if (!found) throw std::logic_error("extend: no admissible element found");

    GroupElement fa = apply_cols(alpha, nsh, a);
    std::vector<i64> bc(fa.coords());
    for (i64& v : bc) v /= p;
    GroupElement b(nsh, std::move(bc));

    if (img.count(b.index())) {
      // b already realized: swap in a fresh target outside the image whose
      // p-multiple is inside, then reduce to the main case.
      GroupElement c_pre = GroupElement::zero(cur);
      for (i64 idx = 0;; ++idx) {
        GroupElement cand = GroupElement::from_index(cur, idx);
        if (apply_cols(alpha, nsh, cand) == b) {
          c_pre = cand;
          break;
        }
      }
      GroupElement a1 = a.sub(c_pre.scaled(p));
      GroupElement bprime = GroupElement::zero(nsh);
      bool fb = false;
      for (i64 idx = 0; idx < nsh.order() && !fb; ++idx) {
        GroupElement cand = GroupElement::from_index(nsh, idx);
        if (img.count(cand.index())) continue;
        if (img.count(cand.scaled(p).index())) {
          bprime = cand;
          fb = true;
        }
      }
      if (!fb) throw std::logic_error("extend: no replacement target found");
      GroupElement d = GroupElement::zero(cur);
      for (i64 idx = 0;; ++idx) {
        GroupElement cand = GroupElement::from_index(cur, idx);
        if (apply_cols(alpha, nsh, cand) == bprime.scaled(p)) {
          d = cand;
          break;
        }
      }
      a = d.has_unit_coord() ? d : d.add(a1);
      if (!a.has_unit_coord()) throw std::logic_error("extend: replacement stays inside pM");
      b = bprime;
    }

    // Normalize a to (pw, 1, 0): s is the first unit coordinate.
    int s = -1;
    for (int c = 0; c < cur.rank(); ++c)
      if (a.coord(c) % p != 0) { s = c; break; }
    i64 q_s = cur.modulus_of(s);
    i64 inv_as = mod_inverse(a.coord(s), q_s);

    // phi column s: (s,s) = inv_as, (j,s) = -a_j * inv_as for j > s.
    int rk = cur.rank();
    std::vector<i64> phi_ent(static_cast<std::size_t>(rk) * rk, 0);
    std::vector<i64> phiinv_ent(static_cast<std::size_t>(rk) * rk, 0);
    for (int i = 0; i < rk; ++i) phi_ent[i * rk + i] = phiinv_ent[i * rk + i] = 1;
    phi_ent[s * rk + s] = inv_as;
    phiinv_ent[s * rk + s] = a.coord(s);
    for (int j = s + 1; j < rk; ++j) {
      phi_ent[j * rk + s] = -a.coord(j) * inv_as;
      phiinv_ent[j * rk + s] = a.coord(j);
    }
    StructuredMatrix phi = StructuredMatrix::reduced(cur, std::move(phi_ent));
    StructuredMatrix phiinv = StructuredMatrix::reduced(cur, std::move(phiinv_ent));

    std::vector<GroupElement> alpha_t = alpha;  // alpha after the basis change
    alpha_t[s] = apply_cols(alpha, nsh, phiinv.apply(GroupElement::basis(cur, s)));

    // w: the sub-s coordinates of phi(a), divided by p.
    std::vector<i64> wc(rk, 0);
    for (int j = 0; j < s; ++j) {
      if (a.coord(j) % p != 0) throw std::logic_error("extend: coordinate before s not divisible by p");
      wc[j] = a.coord(j) / p;
    }
    GroupElement w(cur, std::move(wc));
    GroupElement v = b.sub(apply_cols(alpha_t, nsh, w));

    // Raise exponent s, then re-sort coordinates (stable, descending).
    std::vector<int> exps(cur.flat_exponents());
    exps[s] += 1;
    std::vector<int> order_idx(rk);
    std::iota(order_idx.begin(), order_idx.end(), 0);
    std::stable_sort(order_idx.begin(), order_idx.end(),
                     [&](int x, int y) { return exps[x] > exps[y]; });
    std::vector<int> new_exps;
    for (int oi : order_idx) new_exps.push_back(exps[oi]);
    GroupShape grown = shape_from_exponents(p, new_exps);

    // New alpha columns (position of old coordinate j in the new order).
    std::vector<GroupElement> alpha_next(rk, GroupElement::zero(nsh));
    for (int np = 0; np < rk; ++np) {
      int oj = order_idx[np];
      alpha_next[np] = (oj == s) ? v : alpha_t[oj];
    }
    // Well-definedness of the grown column.
    for (int np = 0; np < rk; ++np)
      if (!alpha_next[np].scaled(grown.modulus_of(np)).is_zero())
        throw std::logic_error("extend: new alpha column not well-defined");

    // iota . phi, applied to the embedding columns.
    auto lift = [&](const GroupElement& x) {
      GroupElement y = phi.apply(x);
      std::vector<i64> c(rk, 0);
      for (int np = 0; np < rk; ++np) {
        int oj = order_idx[np];
        c[np] = (oj == s) ? p * y.coord(oj) : y.coord(oj);
      }
      return GroupElement(grown, std::move(c));
    };
    std::vector<GroupElement> emb_next;
    emb_next.reserve(emb.size());
    for (const GroupElement& u : emb) emb_next.push_back(lift(u));

    // alpha_{i+1} restricted to M_i equals alpha_i.
    for (int c = 0; c < rk; ++c) {
      GroupElement basis_c = GroupElement::basis(cur, c);
      if (!(apply_cols(alpha_next, nsh, lift(basis_c)) == apply_cols(alpha, nsh, basis_c)))
        throw std::logic_error("extend: extension does not restrict to the previous map");
    }

    i64 img_before = static_cast<i64>(img.size());
    GroupShape prev = cur;
    cur = grown;
    alpha = std::move(alpha_next);
    emb = std::move(emb_next);
    i64 img_after = static_cast<i64>(image_set(alpha, cur, nsh).size());
    if (img_after != p * img_before)
      throw std::logic_error("extend: image did not grow by p");
    if (cur.order() != p * prev.order())
      throw std::logic_error("extend: module did not grow by p");
    res.steps.push_back({s, p, p, cur.rank()});
  }

  // t = 1 - emb . alpha on M_k.
  int rk = cur.rank();
  std::vector<i64> t_ent(static_cast<std::size_t>(rk) * rk, 0);
  for (int c = 0; c < rk; ++c) {
    GroupElement e = GroupElement::basis(cur, c);
    GroupElement col = e.sub(apply_cols(emb, cur, apply_cols(alpha, nsh, e)));
    for (int row = 0; row < rk; ++row) t_ent[static_cast<std::size_t>(row) * rk + c] = col.coord(row);
  }
  StructuredMatrix t = StructuredMatrix::reduced(cur, std::move(t_ent));
  res.extended = LambdaModule::make(cur, std::move(t));
  res.inclusion = std::move(emb);

  // (1 - t)M must equal the embedded copy of N exactly.
  {
    std::unordered_set<i64> embedded;
    for (i64 i = 0; i < nsh.order(); ++i)
      embedded.insert(res.include(GroupElement::from_index(nsh, i)).index());
    StructuredMatrix one_minus_t =
        StructuredMatrix::identity(cur).sub(res.extended.action);
    std::unordered_set<i64> image;
    for (i64 i = 0; i < cur.order(); ++i)
      image.insert(one_minus_t.apply(GroupElement::from_index(cur, i)).index());
    if (embedded != image)
      throw std::logic_error("extend: (1-t)M differs from the embedded module");
    i64 img_n = image_order(n_mod);
    if (res.extended.order() * img_n != n_mod.order() * n_mod.order())
      throw std::logic_error("extend: index |M/N| differs from |N/(1-t)N|");
  }
  return res;
}

LambdaModule extend_to_order(const LambdaModule& n_mod, int target_exponent) {
  i64 p = n_mod.shape.p();
  int i_exp = n_mod.shape.total_exponent();
  i64 img = image_order(n_mod);
  int j_exp = img == 1 ? 0 : valuation(img, p);
  int minimal = 2 * i_exp - j_exp;
  if (minimal > target_exponent)
    throw std::invalid_argument(
        "extend_to_order: 2i - j = " + std::to_string(minimal) +
        " exceeds the target exponent " + std::to_string(target_exponent));
  LambdaModule m = extend(n_mod).extended;
  int pad = target_exponent - minimal;
  if (pad > 0) m = direct_sum(p, {m, LambdaModule::cyclic(p, pad, 1)});
  return m;
}

std::vector<QuandleEntry> enumerate_quandles(i64 p, int n) {
  if (!is_prime(p)) throw std::invalid_argument("enumerate_quandles: p must be prime");
  if (n < 0 || n > 4) throw std::invalid_argument("enumerate_quandles: n must be 0..4");
  std::vector<QuandleEntry> out;
  for (int i = 0; i <= n; ++i) {
    ClassificationReport rep = enumerate_modules(p, i);
    for (TableRow& row : rep.rows) {
      if (2 * i - row.image_exp > n) continue;
      LambdaModule m = extend_to_order(row.module, n);
      QuandleEntry entry{alexander_quandle(m), m,       row.module,
                         row.family,           row.params, is_connected(m)};
      out.push_back(std::move(entry));
    }
  }
  if (static_cast<i64>(out.size()) != count_quandles(p, n))
    throw std::logic_error("enumerate_quandles: cardinality disagrees with the closed form");
  return out;
}

i64 count_quandles(i64 p, int n) {
  if (!is_prime(p)) throw std::invalid_argument("count_quandles: p must be prime");
  switch (n) {
    case 0: return 1;
    case 1: return p - 1;
    case 2: return 2 * p * p - 2 * p - 1;
    case 3: return 3 * checked_pow(p, 3) - 4 * p * p + p - 3;
    case 4:
      return 5 * checked_pow(p, 4) - 6 * checked_pow(p, 3) + p * p - 6 * p - 1;
    default: throw std::invalid_argument("count_quandles: n must be 0..4");
  }
}

i64 count_connected(i64 p, int n) {
  if (!is_prime(p)) throw std::invalid_argument("count_connected: p must be prime");
  switch (n) {
    case 0: return 1;
    case 1: return p - 2;
    case 2: return 2 * p * p - 3 * p - 1;
    case 3: return 3 * checked_pow(p, 3) - 6 * p * p + p;
    case 4:
      return 5 * checked_pow(p, 4) - 9 * checked_pow(p, 3) + p * p - 2 * p + 1;
    default: throw std::invalid_argument("count_connected: n must be 0..4");
  }
}

}  // namespace lamod
