#include "lamod/matrix.hpp"

#include <stdexcept>

namespace lamod {

// ---------------------------------------------------------------------------
// FpMatrix

FpMatrix::FpMatrix(i64 p, int n, std::vector<i64> entries) : p_(p), n_(n), e_(std::move(entries)) {
  if (static_cast<int>(e_.size()) != n * n)
    throw std::invalid_argument("FpMatrix: wrong entry count");
  for (i64& v : e_) v = mod_reduce(v, p_);
}

FpMatrix FpMatrix::identity(i64 p, int n) {
  std::vector<i64> e(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) e[i * n + i] = 1 % p;
  return FpMatrix(p, n, std::move(e));
}

FpMatrix FpMatrix::zero(i64 p, int n) {
  return FpMatrix(p, n, std::vector<i64>(static_cast<std::size_t>(n) * n, 0));
}

FpMatrix FpMatrix::mul(const FpMatrix& o) const {
  std::vector<i64> r(static_cast<std::size_t>(n_) * n_, 0);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      i64 a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < n_; ++j) r[i * n_ + j] += a * o.at(k, j);
    }
  return FpMatrix(p_, n_, std::move(r));
}

FpMatrix FpMatrix::add(const FpMatrix& o) const {
  std::vector<i64> r(e_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.e_[i];
  return FpMatrix(p_, n_, std::move(r));
}

FpMatrix FpMatrix::sub(const FpMatrix& o) const {
  std::vector<i64> r(e_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.e_[i];
  return FpMatrix(p_, n_, std::move(r));
}

FpMatrix FpMatrix::scaled(i64 c) const {
  std::vector<i64> r(e_);
  c = mod_reduce(c, p_);
  for (i64& v : r) v *= c;
  return FpMatrix(p_, n_, std::move(r));
}

FpMatrix FpMatrix::pow(i64 k) const {
  if (k < 0) throw std::invalid_argument("FpMatrix::pow: negative exponent");
  FpMatrix acc = identity(p_, n_);
  FpMatrix base = *this;
  while (k > 0) {
    if (k & 1) acc = acc.mul(base);
    base = base.mul(base);
    k >>= 1;
  }
  return acc;
}

FpMatrix FpMatrix::transpose() const {
  std::vector<i64> r(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[j * n_ + i] = at(i, j);
  return FpMatrix(p_, n_, std::move(r));
}

i64 FpMatrix::trace() const {
  i64 t = 0;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return mod_reduce(t, p_);
}

bool FpMatrix::is_zero() const {
  for (i64 v : e_)
    if (v != 0) return false;
  return true;
}

namespace {

// Gaussian elimination mod p; returns (rank, det). Destroys `m`.
std::pair<int, i64> eliminate(std::vector<i64>& m, int n, i64 p) {
  int rank = 0;
  i64 det = 1 % p;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (m[r * n + col] != 0) { piv = r; break; }
    if (piv < 0) { det = 0; continue; }
    if (piv != rank) {
      for (int j = 0; j < n; ++j) std::swap(m[piv * n + j], m[rank * n + j]);
      det = mod_reduce(-det, p);
    }
    i64 pv = m[rank * n + col];
    det = mod_reduce(det * pv, p);
    i64 inv = mod_inverse(pv, p);
    for (int j = 0; j < n; ++j) m[rank * n + j] = mod_reduce(m[rank * n + j] * inv, p);
    for (int r = 0; r < n; ++r) {
      if (r == rank) continue;
      i64 f = m[r * n + col];
      if (f == 0) continue;
      for (int j = 0; j < n; ++j)
        m[r * n + j] = mod_reduce(m[r * n + j] - f * m[rank * n + j], p);
    }
    ++rank;
  }
  if (rank < n) det = 0;
  return {rank, det};
}

}  // namespace

i64 FpMatrix::det() const {
  if (n_ == 0) return 1 % p_;
  std::vector<i64> m(e_);
  return eliminate(m, n_, p_).second;
}

int FpMatrix::rank() const {
  if (n_ == 0) return 0;
  std::vector<i64> m(e_);
  return eliminate(m, n_, p_).first;
}

FpMatrix FpMatrix::inverse() const {
  // Gauss-Jordan on [A | I].
  int n = n_;
  std::vector<i64> a(e_);
  FpMatrix inv = identity(p_, n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r * n + col] != 0) { piv = r; break; }
    if (piv < 0) throw std::invalid_argument("FpMatrix::inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(inv.e_[piv * n + j], inv.e_[col * n + j]);
      }
    i64 f = mod_inverse(a[col * n + col], p_);
    for (int j = 0; j < n; ++j) {
      a[col * n + j] = mod_reduce(a[col * n + j] * f, p_);
      inv.e_[col * n + j] = mod_reduce(inv.e_[col * n + j] * f, p_);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      i64 g = a[r * n + col];
      if (g == 0) continue;
      for (int j = 0; j < n; ++j) {
        a[r * n + j] = mod_reduce(a[r * n + j] - g * a[col * n + j], p_);
        inv.e_[r * n + j] = mod_reduce(inv.e_[r * n + j] - g * inv.e_[col * n + j], p_);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// StructuredMatrix

StructuredMatrix StructuredMatrix::make(GroupShape shape, std::vector<i64> entries) {
  StructuredMatrix m;
  int n = shape.rank();
  if (static_cast<int>(entries.size()) != n * n)
    throw std::invalid_argument("StructuredMatrix: wrong entry count");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      i64 v = entries[r * n + c];
      if (v < 0 || v >= shape.modulus_of(r))
        throw std::invalid_argument("StructuredMatrix: entry out of canonical range");
      int er = shape.exponent_of(r), ec = shape.exponent_of(c);
      if (er > ec && v % checked_pow(shape.p(), er - ec) != 0)
        throw std::invalid_argument("StructuredMatrix: divisibility constraint violated");
    }
  m.shape_ = std::move(shape);
  m.e_ = std::move(entries);
  return m;
}

StructuredMatrix StructuredMatrix::reduced(GroupShape shape, std::vector<i64> entries) {
  int n = shape.rank();
  if (static_cast<int>(entries.size()) != n * n)
    throw std::invalid_argument("StructuredMatrix: wrong entry count");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      entries[r * n + c] = mod_reduce(entries[r * n + c], shape.modulus_of(r));
  return make(std::move(shape), std::move(entries));
}

StructuredMatrix StructuredMatrix::identity(const GroupShape& s) {
  int n = s.rank();
  std::vector<i64> e(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) e[i * n + i] = 1;
  return make(s, std::move(e));
}

StructuredMatrix StructuredMatrix::zero(const GroupShape& s) {
  int n = s.rank();
  return make(s, std::vector<i64>(static_cast<std::size_t>(n) * n, 0));
}

StructuredMatrix StructuredMatrix::scalar(const GroupShape& s, i64 c) {
  int n = s.rank();
  std::vector<i64> e(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) e[i * n + i] = mod_reduce(c, s.modulus_of(i));
  return make(s, std::move(e));
}

GroupElement StructuredMatrix::apply(const GroupElement& x) const {
  if (!(x.shape() == shape_)) throw std::invalid_argument("StructuredMatrix::apply: shape mismatch");
  int n = this->n();
  std::vector<i64> y(n, 0);
  for (int r = 0; r < n; ++r) {
    i64 acc = 0;
    for (int c = 0; c < n; ++c) acc += at(r, c) * x.coord(c);
    y[r] = acc;
  }
  return GroupElement(shape_, std::move(y));
}

StructuredMatrix StructuredMatrix::mul(const StructuredMatrix& o) const {
  if (!(o.shape_ == shape_)) throw std::invalid_argument("StructuredMatrix::mul: shape mismatch");
  int n = this->n();
  std::vector<i64> r(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    i64 mod = shape_.modulus_of(i);
    for (int k = 0; k < n; ++k) {
      i64 a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < n; ++j) r[i * n + j] += a * o.at(k, j);
    }
    for (int j = 0; j < n; ++j) r[i * n + j] = mod_reduce(r[i * n + j], mod);
  }
  return make(shape_, std::move(r));
}

StructuredMatrix StructuredMatrix::add(const StructuredMatrix& o) const {
  if (!(o.shape_ == shape_)) throw std::invalid_argument("StructuredMatrix::add: shape mismatch");
  std::vector<i64> r(e_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.e_[i];
  return reduced(shape_, std::move(r));
}

StructuredMatrix StructuredMatrix::sub(const StructuredMatrix& o) const {
  if (!(o.shape_ == shape_)) throw std::invalid_argument("StructuredMatrix::sub: shape mismatch");
  std::vector<i64> r(e_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.e_[i];
  return reduced(shape_, std::move(r));
}

StructuredMatrix StructuredMatrix::pow(i64 k) const {
  if (k < 0) throw std::invalid_argument("StructuredMatrix::pow: negative exponent");
  StructuredMatrix acc = identity(shape_);
  StructuredMatrix base = *this;
  while (k > 0) {
    if (k & 1) acc = acc.mul(base);
    base = base.mul(base);
    k >>= 1;
  }
  return acc;
}

bool StructuredMatrix::is_unit() const {
  // Each diagonal block must be invertible, equivalently invertible mod p.
  i64 p = shape_.p();
  int n = this->n();
  for (std::size_t li = 0; li < shape_.layers().size(); ++li) {
    int lo = 0;
    for (std::size_t lj = 0; lj < li; ++lj) lo += shape_.layers()[lj].multiplicity;
    int m = shape_.layers()[li].multiplicity;
    std::vector<i64> blk(static_cast<std::size_t>(m) * m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) blk[r * m + c] = at(lo + r, lo + c);
    if (FpMatrix(p, m, std::move(blk)).det() == 0) return false;
  }
  (void)n;
  return true;
}

FpMatrix StructuredMatrix::reduce_mod_p() const {
  return FpMatrix(shape_.p(), n(), e_);
}

StructuredMatrix StructuredMatrix::inverse() const {
  if (!is_unit()) throw std::invalid_argument("StructuredMatrix::inverse: not a unit");
  int n = this->n();
  if (n == 0) return *this;
  i64 p = shape_.p();
  int e1 = shape_.top_exponent();
  i64 q = checked_pow(p, e1);

  // Invert mod p, then Hensel-lift X <- X(2I - AX) doubling precision mod q.
  FpMatrix x0 = reduce_mod_p().inverse();
  std::vector<i64> x(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n * n; ++i) x[i] = x0.at(i / n, i % n);

  auto mulq = [&](const std::vector<i64>& a, const std::vector<i64>& b) {
    std::vector<i64> r(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        i64 v = a[i * n + k];
        if (v == 0) continue;
        for (int j = 0; j < n; ++j)
          r[i * n + j] = mod_reduce(r[i * n + j] + v * b[k * n + j], q);
      }
    return r;
  };

  std::vector<i64> lift(e_);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) lift[i * n + j] = mod_reduce(lift[i * n + j], q);

  int prec = 1;
  while (prec < e1) {
    std::vector<i64> ax = mulq(lift, x);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        i64 v = (i == j ? 2 : 0) - ax[i * n + j];
        ax[i * n + j] = mod_reduce(v, q);
      }
    x = mulq(x, ax);
    prec *= 2;
  }

  // Reduce rowwise; the divisibility constraint holds for the matrix of an
  // endomorphism, which make() re-checks.
  std::vector<i64> out(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out[r * n + c] = mod_reduce(x[r * n + c], shape_.modulus_of(r));
  return make(shape_, std::move(out));
}

std::string StructuredMatrix::str() const {
  int n = this->n();
  std::string out = "[";
  for (int r = 0; r < n; ++r) {
    out += r ? ",[" : "[";
    for (int c = 0; c < n; ++c) {
      if (c) out += ",";
      out += std::to_string(at(r, c));
    }
    out += "]";
  }
  out += "]";
  return out;
}

std::size_t StructuredMatrix::hash() const {
  std::size_t h = static_cast<std::size_t>(shape_.order());
  for (i64 v : e_) h = h * 1000003u + static_cast<std::size_t>(v + 1);
  return h;
}

}  // namespace lamod
