#include "lamod/shape.hpp"

#include <stdexcept>

namespace lamod {

GroupShape::GroupShape() {
  static const std::shared_ptr<const Data> placeholder = std::make_shared<const Data>();
  d_ = placeholder;
}

GroupShape GroupShape::make(i64 p, std::vector<Layer> layers) {
  if (!is_prime(p)) throw std::invalid_argument("GroupShape: p must be prime");
  Data d;
  d.p = p;
  d.layers = std::move(layers);
  int prev = 0;
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    const Layer& L = d.layers[i];
    if (L.exponent <= 0 || L.multiplicity <= 0)
      throw std::invalid_argument("GroupShape: exponents and multiplicities must be positive");
    if (i > 0 && L.exponent >= prev)
      throw std::invalid_argument("GroupShape: exponents must be strictly decreasing");
    prev = L.exponent;
    i64 mod = checked_pow(p, L.exponent);
    if (mod > kMaxModulus)
      throw std::overflow_error("GroupShape: cyclic factor modulus exceeds supported range");
    for (int j = 0; j < L.multiplicity; ++j) {
      d.coord_exp.push_back(L.exponent);
      d.coord_mod.push_back(mod);
      d.coord_layer.push_back(static_cast<int>(i));
      d.total_exp += L.exponent;
      d.order = checked_mul(d.order, mod);
    }
  }
  GroupShape s;
  s.d_ = std::make_shared<const Data>(std::move(d));
  return s;
}

std::string GroupShape::str() const {
  if (layers().empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < layers().size(); ++i) {
    if (i) out += " x ";
    out += "Z" + std::to_string(checked_pow(p(), layers()[i].exponent));
    if (layers()[i].multiplicity > 1)
      out += "^" + std::to_string(layers()[i].multiplicity);
  }
  return out;
}

GroupElement::GroupElement(GroupShape shape, std::vector<i64> coords)
    : shape_(std::move(shape)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != shape_.rank())
    throw std::invalid_argument("GroupElement: wrong coordinate count");
  for (int i = 0; i < shape_.rank(); ++i)
    coords_[i] = mod_reduce(coords_[i], shape_.modulus_of(i));
}

GroupElement GroupElement::zero(const GroupShape& s) {
  return GroupElement(s, std::vector<i64>(s.rank(), 0));
}

GroupElement GroupElement::basis(const GroupShape& s, int coord) {
  std::vector<i64> c(s.rank(), 0);
  c[coord] = 1;
  return GroupElement(s, std::move(c));
}

GroupElement GroupElement::from_index(const GroupShape& s, i64 index) {
  std::vector<i64> c(s.rank(), 0);
  for (int i = s.rank() - 1; i >= 0; --i) {
    c[i] = index % s.modulus_of(i);
    index /= s.modulus_of(i);
  }
  return GroupElement(s, std::move(c));
}

i64 GroupElement::index() const {
  i64 idx = 0;
  for (int i = 0; i < shape_.rank(); ++i)
    idx = idx * shape_.modulus_of(i) + coords_[i];
  return idx;
}

GroupElement GroupElement::add(const GroupElement& o) const {
  if (!(shape_ == o.shape_)) throw std::invalid_argument("GroupElement: shape mismatch");
  std::vector<i64> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
  return GroupElement(shape_, std::move(c));
}

GroupElement GroupElement::sub(const GroupElement& o) const {
  if (!(shape_ == o.shape_)) throw std::invalid_argument("GroupElement: shape mismatch");
  std::vector<i64> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] - o.coords_[i];
  return GroupElement(shape_, std::move(c));
}

GroupElement GroupElement::neg() const {
  std::vector<i64> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return GroupElement(shape_, std::move(c));
}

GroupElement GroupElement::scaled(i64 k) const {
  std::vector<i64> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = mod_reduce(k, shape_.modulus_of(i)) * coords_[i];
  return GroupElement(shape_, std::move(c));
}

bool GroupElement::is_zero() const {
  for (i64 c : coords_)
    if (c != 0) return false;
  return true;
}

bool GroupElement::in_p_power_subgroup(int s) const {
  for (int i = 0; i < shape_.rank(); ++i) {
    int e = shape_.exponent_of(i);
    i64 q = checked_pow(shape_.p(), s < e ? s : e);
    if (coords_[i] % q != 0) return false;
  }
  return true;
}

bool GroupElement::has_unit_coord() const {
  for (i64 c : coords_)
    if (c % shape_.p() != 0) return true;
  return false;
}

}  // namespace lamod
