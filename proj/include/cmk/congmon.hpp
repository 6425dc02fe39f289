#pragma once

#include "cmk/quadfield.hpp"
#include "cmk/structure.hpp"

#include <map>
#include <memory>

namespace cmk {

// Modulus m = m0 * m_infty: a nonzero integral ideal plus a set of real
// places (sorted indices; 0 is the identity embedding, 1 sends sqrt(d) to
// -sqrt(d)).
struct Modulus {
  IdealRep finite = unit_ideal();
  std::vector<int> infinite;
  bool operator==(const Modulus&) const = default;
};

void validate_modulus(const FieldSpec& f, const Modulus& m);

// Residue budget: (R/m0)* is enumerated elementwise.
inline const Int kMaxResidueNorm = Int(1000000);

// (R/m)^* = <+-1>^{m_infty} x (R/m0)^*, with a log map into normalized
// group coordinates.
struct ResidueGroup {
  FieldSpec field;
  Modulus modulus;
  FgAbGroup group;
  int sign_count = 0;

  std::vector<AlgInt> unit_reps;              // canonical unit residues
  std::map<std::pair<Int, Int>, int> unit_index;
  StructureResult unit_structure;
  GroupHom raw_to_group;  // from sign bits ++ unit coordinates onto `group`

  AlgInt reduce_residue(const AlgInt& z) const;
  bool residue_is_unit(const AlgInt& z) const;
  GroupElem log(const std::vector<int>& signs, const AlgInt& residue) const;
  // Signs computed from the element itself at the places of m_infty.
  GroupElem log_element(const AlgInt& a) const;
  // One lift (sign vector, unit residue) per group element.
  std::vector<std::pair<std::vector<int>, AlgInt>> coset_reps() const;
};

ResidueGroup residue_group(const FieldSpec& f, const Modulus& m);

struct GammaGenerator {
  std::vector<int> signs;  // aligned with modulus.infinite
  AlgInt residue;
};

struct GammaDesc {
  enum class Kind { Trivial, Full, Generators } kind = Kind::Trivial;
  std::vector<GammaGenerator> generators;
};

struct CongruenceMonoidSpec {
  FieldSpec field;
  Modulus modulus;
  GammaDesc gamma_desc;
  std::shared_ptr<const ResidueGroup> residues;
  std::vector<GroupElem> gamma;  // generators in residues->group coordinates
};

CongruenceMonoidSpec make_spec(const FieldSpec& f, const Modulus& m,
                               const GammaDesc& gamma);

// Is a in R_{m,Gamma}: coprime to m0 and [a]_m in <Gamma>.
bool in_monoid(const CongruenceMonoidSpec& spec, const AlgInt& a);

// Torsion units of R that lie in the monoid, and their count m.
struct RootsOfUnity {
  std::vector<AlgInt> mu;
  Int count;
};
RootsOfUnity roots_of_unity_in_monoid(const CongruenceMonoidSpec& spec);

// All units of the ring as abstract generators: -1, torsion, and eps0 for
// real quadratic fields.
std::vector<AlgInt> ring_unit_generators(const FieldSpec& f);
std::vector<AlgInt> torsion_units(const FieldSpec& f);

// C = Cl_m^Gamma-bar together with the ideal-class map.
struct RayClassData {
  CongruenceMonoidSpec spec;
  FgAbGroup group;  // C
  FgAbGroup u_group;
  GroupHom res_to_u;  // (R/m)^* -> U
  ClassGroupData cl;  // wide class group
  std::vector<IdealRep> q_ideals;
  std::vector<Int> q_orders;
  GroupHom assemble;  // Z^{dim U + #q} -> C
  std::vector<GroupElem> u_part;

  GroupElem class_of(const IdealRep& a) const;
  GroupElem class_of_element(const AlgInt& a) const;
};

RayClassData ray_class_group(const CongruenceMonoidSpec& spec);

// Order of [p] in C; requires p coprime to m0.
Int f_order(const RayClassData& rcd, const PrimeAbove& p);

struct FOrderMismatch {
  Int p;
  int index = 0;
  Int f_left, f_right;
};

struct FOrderVerdict {
  bool equal_up_to_bound = true;
  Int bound;
  std::optional<FOrderMismatch> witness;
};

// Compare f-orders at all primes with N(p) <= bound coprime to both moduli.
FOrderVerdict class_fields_equal_heuristic(const CongruenceMonoidSpec& a,
                                           const CongruenceMonoidSpec& b,
                                           const Int& prime_bound);

struct MonoidVerdict {
  bool equal_up_to_bound = true;
  Int bound;
  std::optional<AlgInt> witness;  // generator whose saturated membership differs
  int witness_in = 0;             // 0: in A only, 1: in B only
};

// Compare R^* (R_nB cap R_{mA,GammaA}) with R^* (R_mA cap R_{nB,LambdaB})
// on elements of norm <= bound.
MonoidVerdict monoid_class_field_condition(const CongruenceMonoidSpec& a,
                                           const CongruenceMonoidSpec& b,
                                           const Int& norm_bound);

// Conjugate spec under the nontrivial automorphism of a quadratic field.
CongruenceMonoidSpec conjugate_spec(const CongruenceMonoidSpec& spec);

struct GaloisVerdict {
  bool galois_up_to_bound = true;
  Int bound;
  std::optional<AlgInt> witness;
};

GaloisVerdict is_class_field_galois_heuristic(const CongruenceMonoidSpec& spec,
                                              const Int& norm_bound);

// Ideals of norm <= bound in deterministic (norm, a, b, c) order.
std::vector<IdealRep> ideals_up_to_norm(const FieldSpec& f, const Int& bound);

}  // namespace cmk
