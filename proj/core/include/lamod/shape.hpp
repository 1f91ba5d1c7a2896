#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "lamod/checked.hpp"

namespace lamod {

// Largest cyclic-factor modulus accepted. Keeps every intermediate product
// of matrix arithmetic comfortably inside int64 without per-op checks.
inline constexpr i64 kMaxModulus = i64{1} << 20;

struct Layer {
  int exponent;      // e_i
  int multiplicity;  // n_i
  friend bool operator==(const Layer&, const Layer&) = default;
};

/// Isomorphism type of a finite abelian p-group,
/// Z_{p^{e_1}}^{n_1} x ... x Z_{p^{e_k}}^{n_k} with e_1 > ... > e_k > 0.
/// Immutable; copies share one representation.
class GroupShape {
 public:
  // Default-constructed shapes behave as an order-1 placeholder (p = 0);
  // real shapes come from the factories below.
  GroupShape();

  // Validates primality, strictly decreasing exponents, positive
  // multiplicities, and the modulus bound. An empty layer list is the
  // zero module at prime p.
  static GroupShape make(i64 p, std::vector<Layer> layers);
  static GroupShape cyclic(i64 p, int e) { return make(p, {{e, 1}}); }
  static GroupShape zero(i64 p) { return make(p, {}); }

  i64 p() const { return d_->p; }
  const std::vector<Layer>& layers() const { return d_->layers; }
  int rank() const { return static_cast<int>(d_->coord_exp.size()); }
  i64 order() const { return d_->order; }
  int total_exponent() const { return d_->total_exp; }  // order() == p^this
  int top_exponent() const { return d_->layers.empty() ? 0 : d_->layers[0].exponent; }

  int exponent_of(int coord) const { return d_->coord_exp[coord]; }
  i64 modulus_of(int coord) const { return d_->coord_mod[coord]; }
  int layer_of(int coord) const { return d_->coord_layer[coord]; }
  const std::vector<int>& flat_exponents() const { return d_->coord_exp; }

  bool is_zero() const { return d_->layers.empty(); }
  bool is_homocyclic_rank_one_exponent() const {
    return d_->layers.size() == 1 && d_->layers[0].exponent == 1;
  }

  std::string str() const;  // "Z4 x Z2^2"; "0" for the zero module

  friend bool operator==(const GroupShape& a, const GroupShape& b) {
    if (a.d_ == b.d_) return true;
    if (!a.d_ || !b.d_) return false;
    return a.d_->p == b.d_->p && a.d_->layers == b.d_->layers;
  }

 private:
  struct Data {
    i64 p = 0;
    std::vector<Layer> layers;
    std::vector<int> coord_exp;
    std::vector<i64> coord_mod;
    std::vector<int> coord_layer;
    i64 order = 1;
    int total_exp = 0;
  };
  std::shared_ptr<const Data> d_;
};

/// An element of a GroupShape: one canonical residue per cyclic factor.
class GroupElement {
 public:
  GroupElement() = default;
  // Coordinates are reduced to [0, p^{e_i}).
  GroupElement(GroupShape shape, std::vector<i64> coords);

  static GroupElement zero(const GroupShape& s);
  static GroupElement basis(const GroupShape& s, int coord);
  // Mixed-radix enumeration: index 0 .. order-1, lexicographic by
  // coordinates with the largest-exponent layer most significant.
  static GroupElement from_index(const GroupShape& s, i64 index);
  i64 index() const;

  const GroupShape& shape() const { return shape_; }
  const std::vector<i64>& coords() const { return coords_; }
  i64 coord(int i) const { return coords_[i]; }

  GroupElement add(const GroupElement& o) const;
  GroupElement sub(const GroupElement& o) const;
  GroupElement neg() const;
  GroupElement scaled(i64 c) const;
  bool is_zero() const;
  // True iff the element lies in p^s * M.
  bool in_p_power_subgroup(int s) const;
  // True iff some coordinate is a unit (element outside p*M).
  bool has_unit_coord() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.shape_ == b.shape_ && a.coords_ == b.coords_;
  }

 private:
  GroupShape shape_;
  std::vector<i64> coords_;
};

}  // namespace lamod
