#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmk {

// Exact scalars. Everything in the core is integer or rational arithmetic;
// there is no floating point anywhere below the CLI's decimal printer.
using Int = mpz_class;
using Rat = mpq_class;

using IMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

inline Int int_from(long v) { return Int(v); }

inline Int abs_int(const Int& a) {
  Int r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Floor square root; assumes a >= 0.
inline Int isqrt(const Int& a) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline bool is_square(const Int& a) {
  return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

// Floor k-th root.
inline Int iroot(const Int& a, unsigned long k) {
  Int r;
  mpz_root(r.get_mpz_t(), a.get_mpz_t(), k);
  return r;
}

inline bool is_probable_prime(const Int& p) {
  return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

// Floored division and the matching remainder (0 <= mod < |b|).
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int fmod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline long to_long(const Int& a) {
  if (!a.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
  return a.get_si();
}

// Errors surfaced through the CLI exit codes.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline void check_internal(bool cond, const char* what) {
  if (!cond) throw internal_error(what);
}

// Rational primes up to and including `bound`, from a shared sieve cache.
// The cache only grows; reads are safe after the call returns.
const std::vector<std::uint64_t>& primes_up_to(std::uint64_t bound);

}  // namespace cmk

namespace Eigen {

template <>
struct NumTraits<cmk::Int> : GenericNumTraits<cmk::Int> {
  using Real = cmk::Int;
  using NonInteger = cmk::Int;
  using Nested = cmk::Int;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 60,
  };
};

}  // namespace Eigen
