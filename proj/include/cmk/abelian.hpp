#pragma once

#include "cmk/smith.hpp"

#include <optional>

namespace cmk {

// Finitely generated abelian group in invariant-factor form. Factors satisfy
// d_i | d_{i+1}, factors of 1 are dropped, and 0 (a free Z summand) sorts
// last. Two groups are isomorphic iff their factor lists are equal.
struct FgAbGroup {
  std::vector<Int> factors;

  static FgAbGroup from_factors(std::vector<Int> raw);
  static FgAbGroup free_group(int rank);
  static FgAbGroup trivial() { return FgAbGroup{}; }

  int dim() const { return static_cast<int>(factors.size()); }
  int rank() const;
  Int torsion_order() const;
  // Total order; 0 when infinite.
  Int order() const;
  bool is_trivial() const { return factors.empty(); }
  bool operator==(const FgAbGroup&) const = default;
};

struct GroupElem {
  std::vector<Int> coords;
  bool operator==(const GroupElem&) const = default;
};

GroupElem reduce_elem(const FgAbGroup& g, GroupElem e);
GroupElem zero_elem(const FgAbGroup& g);
GroupElem add_elem(const FgAbGroup& g, const GroupElem& a, const GroupElem& b);
GroupElem neg_elem(const FgAbGroup& g, const GroupElem& a);
GroupElem scale_elem(const FgAbGroup& g, const Int& n, const GroupElem& a);
bool is_zero_elem(const GroupElem& a);

// Homomorphism between groups in coordinates: column j of `matrix` is the
// image of domain generator j, expressed in codomain coordinates.
struct GroupHom {
  FgAbGroup domain;
  FgAbGroup codomain;
  IMat matrix;
};

GroupHom identity_hom(const FgAbGroup& g);
GroupHom compose(const GroupHom& second, const GroupHom& first);
GroupElem apply_hom(const GroupHom& h, const GroupElem& e);
// matrix * (d_i e_i) must vanish in the codomain for every torsion generator.
bool is_well_defined(const GroupHom& h);

struct PresentedGroup {
  FgAbGroup group;
  GroupHom projection;  // from the ambient group onto `group`
  GroupHom section;     // right inverse of the projection, into the free cover
};

// Z^num_gens modulo the row span of `relations` (relations has num_gens
// columns), plus the projection from generator coordinates.
PresentedGroup group_from_relations(int num_gens, const IMat& relations);

// Least n >= 1 with n*g = 0, or nullopt when g has infinite order.
std::optional<Int> element_order(const FgAbGroup& g, const GroupElem& e);

struct KernelCokernel {
  FgAbGroup kernel;
  GroupHom kernel_embedding;  // kernel -> domain
  FgAbGroup cokernel;
  GroupHom cokernel_projection;  // codomain -> cokernel
};

KernelCokernel kernel_cokernel(const GroupHom& h);

// G / <gens> together with the projection.
PresentedGroup subgroup_quotient(const FgAbGroup& g, const std::vector<GroupElem>& gens);

// Does `target` lie in the subgroup generated by `gens`?
bool in_subgroup(const FgAbGroup& g, const std::vector<GroupElem>& gens,
                 const GroupElem& target);

// Order of the subgroup generated by `gens` (the group must be finite).
Int subgroup_order(const FgAbGroup& g, const std::vector<GroupElem>& gens);

}  // namespace cmk
