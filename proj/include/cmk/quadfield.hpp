#pragma once

#include "cmk/abelian.hpp"

#include <memory>
#include <optional>

namespace cmk {

enum class FieldKind { Rational, Quadratic };

// Q or Q(sqrt(d)) for squarefree d != 0, 1. Algebraic integers are written
// x + y*omega with omega = sqrt(d) for d != 1 mod 4 and (1+sqrt(d))/2 for
// d = 1 mod 4.
struct FieldSpec {
  FieldKind kind = FieldKind::Rational;
  Int d = 0;            // quadratic only
  Int discriminant = 1; // 1 for Q; d or 4d otherwise
  int degree = 1;
  int real_places = 1;  // 1 for Q, 2 for d > 0, 0 for d < 0

  static FieldSpec rational();
  static FieldSpec quadratic(const Int& d);
  bool is_rational() const { return kind == FieldKind::Rational; }
  bool is_real_quadratic() const { return kind == FieldKind::Quadratic && d > 0; }
  bool is_imaginary_quadratic() const { return kind == FieldKind::Quadratic && d < 0; }
  // omega has trace 0, norm -d (d != 1 mod 4) or trace 1, norm (1-d)/4.
  Int omega_trace() const;
  Int omega_norm() const;
  bool operator==(const FieldSpec&) const = default;
};

struct AlgInt {
  Int x = 0;
  Int y = 0;  // always 0 over Q
  bool operator==(const AlgInt&) const = default;
};

AlgInt alg_add(const AlgInt& a, const AlgInt& b);
AlgInt alg_sub(const AlgInt& a, const AlgInt& b);
AlgInt alg_neg(const AlgInt& a);
AlgInt alg_mul(const FieldSpec& f, const AlgInt& a, const AlgInt& b);
AlgInt alg_conj(const FieldSpec& f, const AlgInt& a);
AlgInt alg_pow(const FieldSpec& f, const AlgInt& a, const Int& k);
Int alg_norm(const FieldSpec& f, const AlgInt& a);
Int alg_trace(const FieldSpec& f, const AlgInt& a);
bool alg_is_zero(const AlgInt& a);
std::string alg_to_string(const FieldSpec& f, const AlgInt& a);

// Integral ideal as a 2x2 upper-triangular HNF lattice [[a, b], [0, c]]:
// the columns a and b + c*omega form a Z-basis. Over Q, b = 0, c = 1 and a
// is the positive generator. Invariants: a, c > 0, c | a, c | b, 0 <= b < a.
struct IdealRep {
  Int a = 1;
  Int b = 0;
  Int c = 1;
  bool operator==(const IdealRep&) const = default;
};

IdealRep unit_ideal();
IdealRep rational_ideal(const Int& n);
// HNF of the lattice spanned by the given (x, y) coordinate columns.
IdealRep ideal_from_generators(const FieldSpec& f, const std::vector<AlgInt>& gens);
IdealRep principal_ideal(const FieldSpec& f, const AlgInt& a);
IdealRep ideal_mul(const FieldSpec& f, const IdealRep& a, const IdealRep& b);
IdealRep ideal_pow(const FieldSpec& f, const IdealRep& a, const Int& k);
// Lattice sum (ideal gcd).
IdealRep ideal_add(const FieldSpec& f, const IdealRep& a, const IdealRep& b);
Int ideal_norm(const IdealRep& a);
bool ideal_contains(const FieldSpec& f, const IdealRep& a, const AlgInt& x);
// A | B, i.e. B is contained in A.
bool ideal_divides(const FieldSpec& f, const IdealRep& a, const IdealRep& b);
bool ideals_coprime(const FieldSpec& f, const IdealRep& a, const IdealRep& b);
// sigma(A) for the nontrivial automorphism of a quadratic field.
IdealRep ideal_conj(const FieldSpec& f, const IdealRep& a);
// Checks the HNF invariants and omega-stability.
bool ideal_is_valid(const FieldSpec& f, const IdealRep& a);

struct PrimeAbove {
  Int p = 0;       // underlying rational prime
  IdealRep rep;
  int f = 1;       // inertia degree
  int e = 1;       // ramification index
  int index = 0;   // 0 or 1, distinguishing the two primes of a split p
};

// Primes above p, ordered deterministically (split: smaller HNF b first).
std::vector<PrimeAbove> split_type(const FieldSpec& f, const Int& p);

// Fundamental unit eps0 > 1 of the maximal order, d > 1 squarefree.
AlgInt fundamental_unit(const FieldSpec& f);

struct PellUnit {
  AlgInt eps;  // totally positive fundamental unit
  Int t;       // trace(eps); (t, u) is the least positive solution of
  Int u;       // x^2 - D y^2 = 4
};

PellUnit totally_positive_fundamental_unit(const FieldSpec& f);

// Exact signs (+1/-1) of the chosen real embeddings of a nonzero element.
// Place 0 sends sqrt(d) to +sqrt(d), place 1 to -sqrt(d).
std::vector<int> embedding_signs(const FieldSpec& f, const AlgInt& a,
                                 const std::vector<int>& places);
int embedding_sign(const FieldSpec& f, const AlgInt& a, int place);

// Desk-scale input limits; operations beyond them are rejected.
inline constexpr long kMaxAbsD = 10000;
inline const Int kMaxIdealNorm = Int(100000000);

void validate_field(const FieldSpec& f);

// --- class groups (implemented in forms.cpp) ---

// Isomorphism type plus a classifier into group coordinates. `narrow` refers
// to the strict (totally positive) equivalence for real quadratic fields;
// for imaginary quadratic fields and Q the two notions agree.
class ClassGroupData {
 public:
  FieldSpec field;
  bool narrow = false;
  FgAbGroup group;
  // Ideal representatives realizing each group generator.
  std::vector<IdealRep> generator_ideals;
  // A prime ideal of least norm in each class, indexed by enumeration of the
  // group's elements (lexicographic coordinates).
  std::vector<std::pair<GroupElem, IdealRep>> class_representatives;

  GroupElem classify(const IdealRep& a) const;

  // internals
  struct Impl;
  std::shared_ptr<const Impl> impl;
};

ClassGroupData class_group(const FieldSpec& f);
ClassGroupData narrow_class_group(const FieldSpec& f);

// Some generator of A when A is principal. Exact: imaginary/rational cases
// enumerate short vectors; real quadratic fields walk the reduction cycle of
// the associated form with basis tracking.
std::optional<AlgInt> is_principal_with_generator(const FieldSpec& f, const IdealRep& a);

}  // namespace cmk
