#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lamod/conjugacy.hpp"

namespace lamod {

/// A finite module over Z[t, t^-1] of prime-power order: an abelian p-group
/// together with the invertible matrix by which t acts.
struct LambdaModule {
  GroupShape shape;
  StructuredMatrix action;

  static LambdaModule make(GroupShape shape, StructuredMatrix action);
  static LambdaModule zero(i64 p);
  static LambdaModule cyclic(i64 p, int e, i64 t);

  i64 order() const { return shape.order(); }
  friend bool operator==(const LambdaModule&, const LambdaModule&) = default;
};

/// Composite modules are presented as one prime-power block per prime.
using GeneralModule = std::map<i64, LambdaModule>;

/// A t-invariant subgroup of a LambdaModule presented as a standalone
/// module: an adapted basis, the shape it realizes, the induced action,
/// and the embedding back into the ambient module.
class SubmoduleBasis {
 public:
  const LambdaModule& ambient() const { return ambient_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  const LambdaModule& standardized() const { return standardized_; }
  const std::vector<GroupElement>& basis_images() const { return basis_; }
  i64 order() const { return standardized_.order(); }

  /// Image in the ambient module of a standardized element.
  GroupElement embed(const GroupElement& x) const;
  /// Standardized coordinates of an ambient element, if it lies in the span.
  std::optional<GroupElement> coords_of(const GroupElement& ambient_elem) const;
  bool contains(const GroupElement& ambient_elem) const;

  friend SubmoduleBasis standardize_subgroup(const LambdaModule&, std::vector<GroupElement>, bool);

 private:
  LambdaModule ambient_;
  std::vector<GroupElement> generators_;
  LambdaModule standardized_;
  std::vector<GroupElement> basis_;              // ambient image of each standardized basis vector
  std::unordered_map<i64, i64> index_lookup_;    // ambient element index -> standardized index
};

/// Present the span of `gens` (closed under t when `close_under_t`) as a
/// standalone module. Throws if the span is not t-invariant with closure
/// disabled.
SubmoduleBasis standardize_subgroup(const LambdaModule& ambient, std::vector<GroupElement> gens,
                                    bool close_under_t = true);

/// Split a block-diagonal composite presentation into per-prime components;
/// order-1 blocks are dropped, same-prime blocks merged.
GeneralModule prime_components(const std::vector<LambdaModule>& blocks);

/// The f-primary decomposition: one component per irreducible factor of the
/// reduced minimal polynomial, each realized as a standardized submodule.
std::vector<std::pair<PolyModP, SubmoduleBasis>> f_primary_components(const LambdaModule& m);

/// Block-diagonal sum, layers re-sorted by exponent descending. The
/// `coord_origin` output (optional) records, per merged coordinate, the
/// originating (part, coordinate) pair.
LambdaModule direct_sum(i64 p, const std::vector<LambdaModule>& parts,
                        std::vector<std::pair<int, int>>* coord_origin = nullptr);
LambdaModule direct_sum(const std::vector<LambdaModule>& parts);

/// Module isomorphism: equal shapes and conjugate actions, decided per
/// f-primary component (oracle within budget, rational canonical forms on
/// homocyclic Z_p^n shapes).
bool lambda_isomorphic(const LambdaModule& m, const LambdaModule& n,
                       i64 budget = kDefaultUnitBudget);

}  // namespace lamod
