#include "lamod/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace lamod {

PolyModP::PolyModP(i64 p, std::vector<i64> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p_ < 2) throw std::invalid_argument("PolyModP: p must be >= 2");
  for (i64& v : c_) v = mod_reduce(v, p_);
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyModP PolyModP::add(const PolyModP& o) const {
  std::vector<i64> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return PolyModP(p_, std::move(r));
}

PolyModP PolyModP::sub(const PolyModP& o) const {
  std::vector<i64> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
  return PolyModP(p_, std::move(r));
}

PolyModP PolyModP::mul(const PolyModP& o) const {
  if (is_zero() || o.is_zero()) return zero(p_);
  std::vector<i64> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      r[i + j] = mod_reduce(r[i + j] + c_[i] * o.c_[j], p_);
  return PolyModP(p_, std::move(r));
}

std::pair<PolyModP, PolyModP> PolyModP::divmod(const PolyModP& d) const {
  if (d.is_zero()) throw std::invalid_argument("PolyModP::divmod: division by zero");
  i64 lead_inv = mod_inverse(d.c_.back(), p_);
  std::vector<i64> rem(c_);
  int dd = d.degree();
  int qd = degree() - dd;
  if (qd < 0) return {zero(p_), *this};
  std::vector<i64> q(qd + 1, 0);
  for (int k = qd; k >= 0; --k) {
    i64 f = mod_reduce(rem[k + dd] * lead_inv, p_);
    q[k] = f;
    if (f == 0) continue;
    for (int i = 0; i <= dd; ++i)
      rem[k + i] = mod_reduce(rem[k + i] - f * d.c_[i], p_);
  }
  return {PolyModP(p_, std::move(q)), PolyModP(p_, std::move(rem))};
}

PolyModP PolyModP::pow(int k) const {
  if (k < 0) throw std::invalid_argument("PolyModP::pow: negative exponent");
  PolyModP acc = one(p_);
  for (int i = 0; i < k; ++i) acc = acc.mul(*this);
  return acc;
}

bool PolyModP::divides(const PolyModP& other) const {
  return other.divmod(*this).second.is_zero();
}

i64 PolyModP::eval(i64 x) const {
  i64 acc = 0;
  x = mod_reduce(x, p_);
  for (int i = degree(); i >= 0; --i) acc = mod_reduce(acc * x + c_[i], p_);
  return acc;
}

FpMatrix PolyModP::eval(const FpMatrix& a) const {
  FpMatrix acc = FpMatrix::zero(a.p(), a.n());
  FpMatrix id = FpMatrix::identity(a.p(), a.n());
  for (int i = degree(); i >= 0; --i) acc = acc.mul(a).add(id.scaled(c_[i]));
  return acc;
}

FpMatrix PolyModP::companion() const {
  int d = degree();
  if (d < 1 || !is_monic()) throw std::invalid_argument("PolyModP::companion: need monic, degree >= 1");
  FpMatrix m = FpMatrix::zero(p_, d);
  for (int i = 0; i + 1 < d; ++i) m.set(i, i + 1, 1);
  for (int j = 0; j < d; ++j) m.set(d - 1, j, -c_[j]);
  return m;
}

bool PolyModP::is_irreducible() const {
  int d = degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  // Trial division by monic polynomials of degree up to d/2.
  for (int dd = 1; 2 * dd <= d; ++dd) {
    std::vector<i64> c(dd + 1, 0);
    c[dd] = 1;
    bool done = false;
    while (!done) {
      PolyModP cand(p_, c);
      if (cand.degree() == dd && cand.divides(*this)) return false;
      int i = 0;
      while (i < dd) {
        if (++c[i] < p_) break;
        c[i] = 0;
        ++i;
      }
      done = (i == dd);
    }
  }
  return true;
}

std::string PolyModP::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    i64 v = c_[i];
    if (v == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(v);
    } else {
      if (v != 1) out += std::to_string(v);
      out += (i == 1) ? "X" : "X^" + std::to_string(i);
    }
  }
  return out;
}

bool PolyModP::lex_less(const PolyModP& a, const PolyModP& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

std::vector<PolyModP> irreducible_polys(i64 p, int d) {
  if (d < 1) throw std::invalid_argument("irreducible_polys: degree must be >= 1");
  std::vector<PolyModP> out;
  // Ascending constant-first lexicographic enumeration of monic degree-d
  // polynomials; X (constant term 0, degree 1) is excluded, as are all
  // reducible ones.
  std::vector<i64> c(d + 1, 0);
  c[d] = 1;
  while (true) {
    if (c[0] != 0) {
      PolyModP f(p, c);
      if (f.is_irreducible()) out.push_back(f);
    }
    int i = d - 1;
    while (i >= 0 && c[i] == p - 1) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  std::sort(out.begin(), out.end(), PolyModP::lex_less);
  return out;
}

PolyModP min_poly_mod_p(const FpMatrix& a) {
  i64 p = a.p();
  int n = a.n();
  if (n == 0) return PolyModP::one(p);
  int dim = n * n;

  // Stack vec(A^0), vec(A^1), ... until linearly dependent; solve for the
  // dependency by fresh Gaussian elimination (matrices here are tiny).
  std::vector<FpMatrix> pows;
  pows.push_back(FpMatrix::identity(p, n));
  for (int d = 1; d <= dim + 1; ++d) {
    pows.push_back(pows.back().mul(a));
    // Try to write pows[d] as a combination of pows[0..d-1]:
    // build the (dim x d) system  sum_j c_j vec(A^j) = vec(A^d).
    int cols = d;
    std::vector<i64> m(static_cast<std::size_t>(dim) * (cols + 1), 0);
    for (int r = 0; r < dim; ++r) {
      for (int j = 0; j < cols; ++j) m[r * (cols + 1) + j] = pows[j].at(r / n, r % n);
      m[r * (cols + 1) + cols] = pows[d].at(r / n, r % n);
    }
    // Row reduce.
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < cols && rank < dim; ++col) {
      int piv = -1;
      for (int r = rank; r < dim; ++r)
        if (m[r * (cols + 1) + col] != 0) { piv = r; break; }
      if (piv < 0) continue;
      for (int j = 0; j <= cols; ++j)
        std::swap(m[piv * (cols + 1) + j], m[rank * (cols + 1) + j]);
      i64 inv = mod_inverse(m[rank * (cols + 1) + col], p);
      for (int j = 0; j <= cols; ++j)
        m[rank * (cols + 1) + j] = mod_reduce(m[rank * (cols + 1) + j] * inv, p);
      for (int r = 0; r < dim; ++r) {
        if (r == rank) continue;
        i64 f = m[r * (cols + 1) + col];
        if (f == 0) continue;
        for (int j = 0; j <= cols; ++j)
          m[r * (cols + 1) + j] = mod_reduce(m[r * (cols + 1) + j] - f * m[rank * (cols + 1) + j], p);
      }
      pivot_col.push_back(col);
      ++rank;
    }
    // Consistent iff no row has zero coefficients but nonzero rhs.
    bool consistent = true;
    for (int r = rank; r < dim; ++r)
      if (m[r * (cols + 1) + cols] != 0) { consistent = false; break; }
    if (!consistent) continue;
    std::vector<i64> coeffs(d + 1, 0);
    coeffs[d] = 1;
    for (int k = 0; k < rank; ++k)
      coeffs[pivot_col[k]] = mod_reduce(-m[k * (cols + 1) + cols], p);
    return PolyModP(p, std::move(coeffs));
  }
  throw std::logic_error("min_poly_mod_p: no annihilating polynomial found");
}

std::vector<std::pair<PolyModP, int>> factor_into_irreducibles(const PolyModP& f) {
  if (f.is_zero()) throw std::invalid_argument("factor_into_irreducibles: zero polynomial");
  i64 p = f.p();
  std::vector<std::pair<PolyModP, int>> out;
  PolyModP rest = f;
  // Make monic.
  if (!rest.is_monic()) {
    i64 inv = mod_inverse(rest.coeff(rest.degree()), p);
    std::vector<i64> c(rest.coeffs());
    for (i64& v : c) v = mod_reduce(v * inv, p);
    rest = PolyModP(p, std::move(c));
  }
  for (int d = 1; d <= rest.degree(); ++d) {
    if (rest.degree() < d) break;
    // X first (excluded from irreducible_polys), then the listed ones.
    std::vector<PolyModP> cands;
    if (d == 1) cands.push_back(PolyModP::x(p));
    for (const PolyModP& g : irreducible_polys(p, d)) cands.push_back(g);
    for (const PolyModP& g : cands) {
      int mult = 0;
      while (g.divides(rest)) {
        rest = rest.divmod(g).first;
        ++mult;
      }
      if (mult > 0) out.emplace_back(g, mult);
      if (rest.degree() < d) break;
    }
  }
  if (rest.degree() != 0)
    throw std::logic_error("factor_into_irreducibles: incomplete factorization");
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return PolyModP::lex_less(a.first, b.first);
  });
  return out;
}

std::vector<std::pair<PolyModP, Partition>> elementary_divisors_mod_p(const FpMatrix& a) {
  std::vector<std::pair<PolyModP, Partition>> out;
  if (a.n() == 0) return out;
  PolyModP mp = min_poly_mod_p(a);
  for (const auto& [f, mult] : factor_into_irreducibles(mp)) {
    int df = f.degree();
    // Number of parts >= m equals (dim ker f(A)^m - dim ker f(A)^{m-1}) / deg f.
    Partition parts;
    int prev = 0;
    for (int m = 1; m <= mult; ++m) {
      FpMatrix fm = f.pow(m).eval(a);
      int k = fm.kernel_dim();
      int cnt = (k - prev) / df;
      if ((k - prev) % df != 0) throw std::logic_error("elementary_divisors: kernel step not divisible by deg f");
      for (int i = 0; i < cnt; ++i) {
        if (static_cast<int>(parts.size()) < i + 1) parts.push_back(0);
      }
      for (int i = 0; i < cnt; ++i) parts[i] = m;
      prev = k;
    }
    // parts currently lists, for each block index, its exponent; built in
    // nondecreasing sweeps, so sort descending for the canonical partition.
    std::sort(parts.rbegin(), parts.rend());
    out.emplace_back(f, std::move(parts));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return PolyModP::lex_less(x.first, y.first);
  });
  return out;
}

StructuredMatrix eval_poly_at_matrix(const PolyModP& g, const StructuredMatrix& a) {
  const GroupShape& s = a.shape();
  StructuredMatrix acc = StructuredMatrix::zero(s);
  for (int i = g.degree(); i >= 0; --i)
    acc = acc.mul(a).add(StructuredMatrix::scalar(s, g.coeff(i)));
  return acc;
}

bool is_power_of(const PolyModP& m, const PolyModP& f) {
  if (m.degree() < 1 || f.degree() < 1) return false;
  if (m.degree() % f.degree() != 0) return false;
  PolyModP rest = m;
  while (rest.degree() > 0) {
    auto [q, r] = rest.divmod(f);
    if (!r.is_zero()) return false;
    rest = q;
  }
  return rest == PolyModP::one(m.p());
}

}  // namespace lamod
