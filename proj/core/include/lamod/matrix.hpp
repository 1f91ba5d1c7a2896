#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lamod/shape.hpp"

namespace lamod {

/// Square matrix over Z_p with exact Gaussian-elimination helpers.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(i64 p, int n, std::vector<i64> entries);  // entries reduced mod p
  static FpMatrix identity(i64 p, int n);
  static FpMatrix zero(i64 p, int n);

  i64 p() const { return p_; }
  int n() const { return n_; }
  i64 at(int r, int c) const { return e_[r * n_ + c]; }
  void set(int r, int c, i64 v) { e_[r * n_ + c] = mod_reduce(v, p_); }

  FpMatrix mul(const FpMatrix& o) const;
  FpMatrix add(const FpMatrix& o) const;
  FpMatrix sub(const FpMatrix& o) const;
  FpMatrix scaled(i64 c) const;
  FpMatrix pow(i64 k) const;
  FpMatrix transpose() const;

  i64 det() const;
  int rank() const;
  int kernel_dim() const { return n_ - rank(); }
  bool is_invertible() const { return det() != 0; }
  FpMatrix inverse() const;  // throws if singular
  i64 trace() const;
  bool is_zero() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  i64 p_ = 0;
  int n_ = 0;
  std::vector<i64> e_;
};

/// Endomorphism of a GroupShape in layered block form: entry (r,c) is a
/// canonical residue mod p^{e_r}, and whenever e_r > e_c the entry is
/// divisible by p^{e_r - e_c}. Multiplication, application and inversion
/// all stay inside this ring.
class StructuredMatrix {
 public:
  StructuredMatrix() = default;

  // Strict: entries must already be canonical residues satisfying the
  // divisibility constraint.
  static StructuredMatrix make(GroupShape shape, std::vector<i64> entries);
  // Reduces arbitrary integers rowwise first, then validates divisibility.
  static StructuredMatrix reduced(GroupShape shape, std::vector<i64> entries);
  static StructuredMatrix identity(const GroupShape& s);
  static StructuredMatrix zero(const GroupShape& s);
  static StructuredMatrix scalar(const GroupShape& s, i64 c);

  const GroupShape& shape() const { return shape_; }
  int n() const { return shape_.rank(); }
  i64 at(int r, int c) const { return e_[r * n() + c]; }
  const std::vector<i64>& entries() const { return e_; }

  GroupElement apply(const GroupElement& x) const;
  StructuredMatrix mul(const StructuredMatrix& o) const;
  StructuredMatrix add(const StructuredMatrix& o) const;
  StructuredMatrix sub(const StructuredMatrix& o) const;
  StructuredMatrix pow(i64 k) const;

  bool is_unit() const;            // every diagonal block invertible mod p
  StructuredMatrix inverse() const;  // requires is_unit()
  FpMatrix reduce_mod_p() const;

  // Row-major lexicographic order; the canonical-representative tie-break.
  bool lex_less(const StructuredMatrix& o) const { return e_ < o.e_; }

  std::string str() const;  // "[[3,0],[1,1]]"
  std::size_t hash() const;

  friend bool operator==(const StructuredMatrix& a, const StructuredMatrix& b) {
    return a.shape_ == b.shape_ && a.e_ == b.e_;
  }

 private:
  GroupShape shape_;
  std::vector<i64> e_;
};

struct StructuredMatrixHash {
  std::size_t operator()(const StructuredMatrix& m) const { return m.hash(); }
};

}  // namespace lamod
