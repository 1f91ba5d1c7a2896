#include "lamod/decomposition.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace lamod {

LambdaModule LambdaModule::make(GroupShape shape, StructuredMatrix action) {
  if (!(action.shape() == shape))
    throw std::invalid_argument("LambdaModule: action shape mismatch");
  if (!action.is_unit())
    throw std::invalid_argument("LambdaModule: t must act invertibly");
  return LambdaModule{std::move(shape), std::move(action)};
}

LambdaModule LambdaModule::zero(i64 p) {
  GroupShape s = GroupShape::zero(p);
  return LambdaModule{s, StructuredMatrix::identity(s)};
}

LambdaModule LambdaModule::cyclic(i64 p, int e, i64 t) {
  GroupShape s = GroupShape::cyclic(p, e);
  return make(s, StructuredMatrix::reduced(s, {t}));
}

GroupElement SubmoduleBasis::embed(const GroupElement& x) const {
  if (!(x.shape() == standardized_.shape))
    throw std::invalid_argument("SubmoduleBasis::embed: shape mismatch");
  GroupElement out = GroupElement::zero(ambient_.shape);
  for (int i = 0; i < standardized_.shape.rank(); ++i)
    out = out.add(basis_[i].scaled(x.coord(i)));
  return out;
}

std::optional<GroupElement> SubmoduleBasis::coords_of(const GroupElement& a) const {
  auto it = index_lookup_.find(a.index());
  if (it == index_lookup_.end()) return std::nullopt;
  return GroupElement::from_index(standardized_.shape, it->second);
}

bool SubmoduleBasis::contains(const GroupElement& a) const {
  return index_lookup_.count(a.index()) > 0;
}

SubmoduleBasis standardize_subgroup(const LambdaModule& ambient, std::vector<GroupElement> gens,
                                    bool close_under_t) {
  const GroupShape& shape = ambient.shape;
  for (const GroupElement& g : gens)
    if (!(g.shape() == shape))
      throw std::invalid_argument("standardize_subgroup: generator shape mismatch");

  // Closure of {0} under adding generators and (when requested) applying t;
  // every sum of t-power translates of generators is reachable this way.
  std::vector<GroupElement> span;
  {
    std::unordered_set<i64> seen;
    span.push_back(GroupElement::zero(shape));
    seen.insert(span[0].index());
    for (std::size_t head = 0; head < span.size(); ++head) {
      GroupElement cur = span[head];  // the vector may reallocate below
      for (const GroupElement& g : gens) {
        GroupElement nxt = cur.add(g);
        if (seen.insert(nxt.index()).second) span.push_back(std::move(nxt));
      }
      if (close_under_t) {
        GroupElement img = ambient.action.apply(cur);
        if (seen.insert(img.index()).second) span.push_back(std::move(img));
      }
    }
    if (!close_under_t) {
      for (const GroupElement& g : gens)
        if (!seen.count(ambient.action.apply(g).index()))
          throw std::invalid_argument("standardize_subgroup: span is not t-invariant");
    }
  }

  SubmoduleBasis out;
  out.ambient_ = ambient;
  out.generators_ = std::move(gens);

  int n = shape.rank();
  i64 p = shape.p();
  int e1 = shape.top_exponent();
  i64 q = e1 ? checked_pow(p, e1) : 1;

  // Scale the span into (Z_{p^{e1}})^n (coordinate j multiplied by
  // p^{e1 - e_j}) and compute a Smith-style diagonalization G = U D V over
  // the chain ring Z_{p^{e1}}. The columns of U carry an adapted basis.
  int m = static_cast<int>(span.size());
  std::vector<i64> g(static_cast<std::size_t>(n) * m, 0);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < n; ++r) {
      i64 scale = checked_pow(p, e1 - shape.exponent_of(r));
      g[static_cast<std::size_t>(r) * m + c] = mod_reduce(span[c].coord(r) * scale, q);
    }
  std::vector<i64> u(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i) * n + i] = 1;

  auto val = [&](i64 x) { return x == 0 ? e1 : valuation(x, p); };
  std::vector<int> pivots_val;
  int d = 0;
  for (; d < n; ++d) {
    // Locate the minimal-valuation entry in the remaining block.
    int best_r = -1, best_c = -1, best_v = e1;
    for (int r = d; r < n; ++r)
      for (int c = d; c < m; ++c) {
        int v = val(g[static_cast<std::size_t>(r) * m + c]);
        if (v < best_v) { best_v = v; best_r = r; best_c = c; }
      }
    if (best_r < 0) break;
    // Move pivot to (d, d).
    if (best_r != d)
      for (int c = 0; c < m; ++c)
        std::swap(g[static_cast<std::size_t>(best_r) * m + c], g[static_cast<std::size_t>(d) * m + c]);
    if (best_r != d)
      for (int r = 0; r < n; ++r)
        std::swap(u[static_cast<std::size_t>(r) * n + best_r], u[static_cast<std::size_t>(r) * n + d]);
    if (best_c != d)
      for (int r = 0; r < n; ++r)
        std::swap(g[static_cast<std::size_t>(r) * m + best_c], g[static_cast<std::size_t>(r) * m + d]);
    // Normalize pivot to p^v: row_d *= unit^{-1}; U col_d *= unit.
    i64 piv = g[static_cast<std::size_t>(d) * m + d];
    i64 unit = piv / checked_pow(p, best_v);
    i64 unit_inv = mod_inverse(unit, q);
    for (int c = 0; c < m; ++c)
      g[static_cast<std::size_t>(d) * m + c] = mod_reduce(g[static_cast<std::size_t>(d) * m + c] * unit_inv, q);
    for (int r = 0; r < n; ++r)
      u[static_cast<std::size_t>(r) * n + d] = mod_reduce(u[static_cast<std::size_t>(r) * n + d] * unit, q);
    i64 pv = checked_pow(p, best_v);
    // Clear the pivot column below/above (row ops; mirror on U columns).
    for (int r = 0; r < n; ++r) {
      if (r == d) continue;
      i64 entry = g[static_cast<std::size_t>(r) * m + d];
      if (entry == 0) continue;
      i64 k = entry / pv;
      for (int c = 0; c < m; ++c)
        g[static_cast<std::size_t>(r) * m + c] =
            mod_reduce(g[static_cast<std::size_t>(r) * m + c] - k * g[static_cast<std::size_t>(d) * m + c], q);
      for (int rr = 0; rr < n; ++rr)
        u[static_cast<std::size_t>(rr) * n + d] =
            mod_reduce(u[static_cast<std::size_t>(rr) * n + d] + k * u[static_cast<std::size_t>(rr) * n + r], q);
    }
    // Clear the pivot row (column ops on G only).
    for (int c = 0; c < m; ++c) {
      if (c == d) continue;
      i64 entry = g[static_cast<std::size_t>(d) * m + c];
      if (entry == 0) continue;
      i64 k = entry / pv;
      for (int r = 0; r < n; ++r)
        g[static_cast<std::size_t>(r) * m + c] =
            mod_reduce(g[static_cast<std::size_t>(r) * m + c] - k * g[static_cast<std::size_t>(r) * m + d], q);
    }
    pivots_val.push_back(best_v);
  }

  // Basis elements: p^{a_d} * (column d of U), unscaled back into the
  // ambient coordinate ranges. Valuations ascend, so orders descend.
  std::vector<GroupElement> basis;
  std::vector<int> exps;
  for (std::size_t i = 0; i < pivots_val.size(); ++i) {
    int a = pivots_val[i];
    if (a >= e1) continue;
    std::vector<i64> coords(n, 0);
    for (int r = 0; r < n; ++r) {
      i64 scaled = mod_reduce(checked_pow(p, a) * u[static_cast<std::size_t>(r) * n + i], q);
      i64 scale = checked_pow(p, e1 - shape.exponent_of(r));
      if (scaled % scale != 0)
        throw std::logic_error("standardize_subgroup: basis vector escapes the scaled lattice");
      coords[r] = scaled / scale;
    }
    basis.emplace_back(shape, std::move(coords));
    exps.push_back(e1 - a);
  }

  // Assemble the standardized shape.
  std::vector<Layer> layers;
  for (int e : exps) {
    if (!layers.empty() && layers.back().exponent == e)
      ++layers.back().multiplicity;
    else
      layers.push_back({e, 1});
  }
  GroupShape std_shape = GroupShape::make(p, std::move(layers));
  if (std_shape.order() != static_cast<i64>(span.size()))
    throw std::logic_error("standardize_subgroup: basis does not span the subgroup");

  // Tuple -> ambient element lookup; bijectivity re-checks independence.
  out.index_lookup_.reserve(span.size());
  for (i64 idx = 0; idx < std_shape.order(); ++idx) {
    GroupElement tup = GroupElement::from_index(std_shape, idx);
    GroupElement amb = GroupElement::zero(shape);
    for (std::size_t i = 0; i < basis.size(); ++i) amb = amb.add(basis[i].scaled(tup.coord(static_cast<int>(i))));
    if (!out.index_lookup_.emplace(amb.index(), idx).second)
      throw std::logic_error("standardize_subgroup: adapted basis is not independent");
  }

  // Induced action: coordinates of t * b_i.
  int r = std_shape.rank();
  std::vector<i64> act(static_cast<std::size_t>(r) * r, 0);
  for (int c = 0; c < r; ++c) {
    GroupElement img = ambient.action.apply(basis[c]);
    auto it = out.index_lookup_.find(img.index());
    if (it == out.index_lookup_.end())
      throw std::logic_error("standardize_subgroup: span not closed under t");
    GroupElement tup = GroupElement::from_index(std_shape, it->second);
    for (int rr = 0; rr < r; ++rr) act[static_cast<std::size_t>(rr) * r + c] = tup.coord(rr);
  }
  StructuredMatrix induced = StructuredMatrix::reduced(std_shape, std::move(act));

  out.standardized_ = LambdaModule::make(std_shape, std::move(induced));
  out.basis_ = std::move(basis);
  return out;
}

GeneralModule prime_components(const std::vector<LambdaModule>& blocks) {
  std::map<i64, std::vector<LambdaModule>> grouped;
  for (const LambdaModule& b : blocks) {
    if (b.order() == 1) continue;
    grouped[b.shape.p()].push_back(b);
  }
  GeneralModule out;
  for (auto& [p, parts] : grouped)
    out.emplace(p, parts.size() == 1 ? parts[0] : direct_sum(p, parts));
  return out;
}

std::vector<std::pair<PolyModP, SubmoduleBasis>> f_primary_components(const LambdaModule& m) {
  std::vector<std::pair<PolyModP, SubmoduleBasis>> out;
  if (m.shape.is_zero()) return out;
  i64 p = m.shape.p();
  PolyModP mp = min_poly_mod_p(m.action.reduce_mod_p());
  auto factors = factor_into_irreducibles(mp);

  std::vector<GroupElement> full_basis;
  for (int c = 0; c < m.shape.rank(); ++c) full_basis.push_back(GroupElement::basis(m.shape, c));

  int n_exp = m.shape.total_exponent();
  i64 order_product = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& [fi, ei] = factors[i];
    SubmoduleBasis comp = [&]() {
      if (factors.size() == 1) return standardize_subgroup(m, full_basis, true);
      // Image of F_i(t)^n, with F_i the product of the other factors to
      // their multiplicities and n the total p-exponent of |M|.
      PolyModP big = PolyModP::one(p);
      for (std::size_t j = 0; j < factors.size(); ++j)
        if (j != i) big = big.mul(factors[j].first.pow(factors[j].second));
      StructuredMatrix proj = eval_poly_at_matrix(big, m.action).pow(n_exp);
      std::vector<GroupElement> gens;
      for (const GroupElement& b : full_basis) gens.push_back(proj.apply(b));
      return standardize_subgroup(m, std::move(gens), true);
    }();
    // Component purity: the reduced action's minimal polynomial is a power
    // of f_i.
    if (!comp.standardized().shape.is_zero()) {
      PolyModP comp_mp = min_poly_mod_p(comp.standardized().action.reduce_mod_p());
      if (!is_power_of(comp_mp, fi))
        throw std::logic_error("f_primary_components: component not f-primary");
    }
    order_product = checked_mul(order_product, comp.order());
    out.emplace_back(fi, std::move(comp));
  }
  if (order_product != m.order())
    throw std::logic_error("f_primary_components: component orders do not multiply to |M|");
  return out;
}

LambdaModule direct_sum(i64 p, const std::vector<LambdaModule>& parts,
                        std::vector<std::pair<int, int>>* coord_origin) {
  for (const LambdaModule& part : parts)
    if (part.shape.p() != p)
      throw std::invalid_argument("direct_sum: mixed primes");

  // Gather coordinates, stable-sorted by exponent descending: parts keep
  // their internal order, earlier parts come first within equal exponents.
  struct Coord { int exp; int part; int idx; };
  std::vector<Coord> coords;
  for (int pi = 0; pi < static_cast<int>(parts.size()); ++pi)
    for (int c = 0; c < parts[pi].shape.rank(); ++c)
      coords.push_back({parts[pi].shape.exponent_of(c), pi, c});
  std::stable_sort(coords.begin(), coords.end(),
                   [](const Coord& a, const Coord& b) { return a.exp > b.exp; });

  std::vector<Layer> layers;
  for (const Coord& c : coords) {
    if (!layers.empty() && layers.back().exponent == c.exp)
      ++layers.back().multiplicity;
    else
      layers.push_back({c.exp, 1});
  }
  GroupShape shape = GroupShape::make(p, std::move(layers));

  int n = shape.rank();
  std::vector<i64> ent(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (coords[r].part == coords[c].part)
        ent[static_cast<std::size_t>(r) * n + c] = parts[coords[r].part].action.at(coords[r].idx, coords[c].idx);
  if (coord_origin) {
    coord_origin->clear();
    for (const Coord& c : coords) coord_origin->push_back({c.part, c.idx});
  }
  return LambdaModule::make(shape, StructuredMatrix::make(shape, std::move(ent)));
}

LambdaModule direct_sum(const std::vector<LambdaModule>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: empty part list (prime unknown)");
  return direct_sum(parts[0].shape.p(), parts);
}

namespace {

// Conjugacy of two unit actions on a common shape: rational canonical forms
// on Z_p^n, exhaustive oracle within budget otherwise.
bool actions_conjugate(const LambdaModule& m, const LambdaModule& n, i64 budget) {
  if (m.action == n.action) return true;
  if (m.shape.is_homocyclic_rank_one_exponent())
    return rcf_conjugate(m.action.reduce_mod_p(), n.action.reduce_mod_p());
  return are_conjugate_oracle(m.action, n.action, budget).has_value();
}

}  // namespace

bool lambda_isomorphic(const LambdaModule& m, const LambdaModule& n, i64 budget) {
  if (m.order() == 1 && n.order() == 1) return true;
  if (!(m.shape == n.shape)) return false;

  auto fm = f_primary_components(m);
  auto fn = f_primary_components(n);
  if (fm.size() != fn.size()) return false;
  for (std::size_t i = 0; i < fm.size(); ++i)
    if (!(fm[i].first == fn[i].first)) return false;

  if (fm.size() == 1)
    return actions_conjugate(m, n, budget);

  for (std::size_t i = 0; i < fm.size(); ++i) {
    const LambdaModule& cm = fm[i].second.standardized();
    const LambdaModule& cn = fn[i].second.standardized();
    if (!(cm.shape == cn.shape)) return false;
    if (!actions_conjugate(cm, cn, budget)) return false;
  }
  return true;
}

}  // namespace lamod
