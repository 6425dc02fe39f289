#include "cmk/quadfield.hpp"

#include <algorithm>
#include <sstream>

namespace cmk {

FieldSpec FieldSpec::rational() { return FieldSpec{}; }

FieldSpec FieldSpec::quadratic(const Int& d) {
  FieldSpec f;
  f.kind = FieldKind::Quadratic;
  f.d = d;
  f.degree = 2;
  f.discriminant = fmod(d, 4) == 1 ? d : 4 * d;
  f.real_places = d > 0 ? 2 : 0;
  validate_field(f);
  return f;
}

void validate_field(const FieldSpec& f) {
  if (f.kind == FieldKind::Rational) return;
  if (f.d == 0 || f.d == 1) throw input_error("field.d must not be 0 or 1");
  if (abs_int(f.d) > kMaxAbsD) throw input_error("field.d exceeds the |d| <= 10^4 limit");
  Int n = abs_int(f.d);
  for (Int p = 2; p * p <= n; ++p)
    if (fmod(n, p * p) == 0) throw input_error("field.d must be squarefree");
}

Int FieldSpec::omega_trace() const {
  if (is_rational()) return 0;
  return fmod(d, 4) == 1 ? 1 : 0;
}

Int FieldSpec::omega_norm() const {
  if (is_rational()) return 0;
  if (fmod(d, 4) == 1) return (1 - d) / 4;
  return Int(-d);
}

AlgInt alg_add(const AlgInt& a, const AlgInt& b) { return {a.x + b.x, a.y + b.y}; }
AlgInt alg_sub(const AlgInt& a, const AlgInt& b) { return {a.x - b.x, a.y - b.y}; }
AlgInt alg_neg(const AlgInt& a) { return {-a.x, -a.y}; }

AlgInt alg_mul(const FieldSpec& f, const AlgInt& a, const AlgInt& b) {
  if (f.is_rational()) {
    check_internal(a.y == 0 && b.y == 0, "rational elements must have y = 0");
    return {a.x * b.x, 0};
  }
  // omega^2 = T*omega - N with T = trace(omega), N = norm(omega).
  Int t = f.omega_trace(), n = f.omega_norm();
  Int yy = a.y * b.y;
  return {a.x * b.x - n * yy, a.x * b.y + a.y * b.x + t * yy};
}

AlgInt alg_conj(const FieldSpec& f, const AlgInt& a) {
  if (f.is_rational()) return a;
  return {a.x + f.omega_trace() * a.y, -a.y};
}

AlgInt alg_pow(const FieldSpec& f, const AlgInt& a, const Int& k) {
  check_internal(k >= 0, "negative power of an algebraic integer");
  AlgInt r{1, 0};
  AlgInt base = a;
  Int e = k;
  while (e > 0) {
    if (fmod(e, 2) == 1) r = alg_mul(f, r, base);
    base = alg_mul(f, base, base);
    e = fdiv(e, 2);
  }
  return r;
}

Int alg_norm(const FieldSpec& f, const AlgInt& a) {
  if (f.is_rational()) return a.x;
  return a.x * a.x + f.omega_trace() * a.x * a.y + f.omega_norm() * a.y * a.y;
}

Int alg_trace(const FieldSpec& f, const AlgInt& a) {
  if (f.is_rational()) return a.x;
  return 2 * a.x + f.omega_trace() * a.y;
}

bool alg_is_zero(const AlgInt& a) { return a.x == 0 && a.y == 0; }

std::string alg_to_string(const FieldSpec& f, const AlgInt& a) {
  std::ostringstream os;
  if (f.is_rational() || a.y == 0) {
    os << a.x;
    return os.str();
  }
  if (a.x != 0)
    os << a.x << (a.y > 0 ? " + " : " - ");
  else if (a.y < 0)
    os << "-";
  Int ay = abs_int(a.y);
  if (ay != 1) os << ay << "*";
  os << "w";
  return os.str();
}

IdealRep unit_ideal() { return IdealRep{1, 0, 1}; }

IdealRep rational_ideal(const Int& n) {
  if (n == 0) throw input_error("ideal must be nonzero");
  return IdealRep{abs_int(n), 0, 1};
}

IdealRep ideal_from_generators(const FieldSpec& f, const std::vector<AlgInt>& gens) {
  if (f.is_rational()) {
    Int a = 0;
    for (const auto& g : gens) {
      check_internal(g.y == 0, "rational elements must have y = 0");
      a = gcd_int(a, g.x);
    }
    if (a == 0) throw input_error("ideal must be nonzero");
    return IdealRep{a, 0, 1};
  }
  // Column HNF on the (x, y) coordinate columns.
  Int px = 0, py = 0;   // pivot column, eventually (b, c)
  std::vector<Int> xs;  // x entries of columns whose y is already cleared
  for (const auto& g : gens) {
    if (g.y == 0) {
      xs.push_back(g.x);
      continue;
    }
    if (py == 0) {
      px = g.x;
      py = g.y;
      continue;
    }
    Int gg, s, t;
    mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), py.get_mpz_t(),
               g.y.get_mpz_t());
    xs.push_back((py / gg) * g.x - (g.y / gg) * px);
    px = s * px + t * g.x;
    py = gg;
  }
  if (py < 0) {
    py = -py;
    px = -px;
  }
  Int a = 0;
  for (const auto& x : xs) a = gcd_int(a, x);
  a = abs_int(a);
  if (a == 0 || py == 0) throw input_error("ideal lattice is not full rank");
  Int b = fmod(px, a);
  IdealRep rep{a, b, py};
  check_internal(ideal_is_valid(f, rep), "ideal HNF invariant violated");
  return rep;
}

bool ideal_is_valid(const FieldSpec& f, const IdealRep& a) {
  if (a.a <= 0 || a.c <= 0 || a.b < 0 || a.b >= a.a) return false;
  if (f.is_rational()) return a.b == 0 && a.c == 1;
  if (fmod(a.a, a.c) != 0 || fmod(a.b, a.c) != 0) return false;
  auto contains = [&](const AlgInt& z) {
    if (fmod(z.y, a.c) != 0) return false;
    return fmod(z.x - (z.y / a.c) * a.b, a.a) == 0;
  };
  AlgInt omega{0, 1};
  return contains(alg_mul(f, omega, AlgInt{a.a, 0})) &&
         contains(alg_mul(f, omega, AlgInt{a.b, a.c}));
}

IdealRep principal_ideal(const FieldSpec& f, const AlgInt& x) {
  if (alg_is_zero(x)) throw input_error("principal ideal of zero");
  if (f.is_rational()) return rational_ideal(x.x);
  AlgInt omega{0, 1};
  IdealRep r = ideal_from_generators(f, {x, alg_mul(f, x, omega)});
  check_internal(ideal_norm(r) == abs_int(alg_norm(f, x)), "principal ideal norm");
  return r;
}

IdealRep ideal_mul(const FieldSpec& f, const IdealRep& a, const IdealRep& b) {
  if (f.is_rational()) return rational_ideal(a.a * b.a);
  AlgInt a1{a.a, 0}, a2{a.b, a.c}, b1{b.a, 0}, b2{b.b, b.c};
  IdealRep r = ideal_from_generators(
      f, {alg_mul(f, a1, b1), alg_mul(f, a1, b2), alg_mul(f, a2, b1), alg_mul(f, a2, b2)});
  check_internal(ideal_norm(r) == ideal_norm(a) * ideal_norm(b),
                 "ideal norm must be multiplicative");
  return r;
}

IdealRep ideal_pow(const FieldSpec& f, const IdealRep& a, const Int& k) {
  check_internal(k >= 0, "negative ideal power");
  IdealRep r = unit_ideal();
  IdealRep base = a;
  Int e = k;
  while (e > 0) {
    if (fmod(e, 2) == 1) r = ideal_mul(f, r, base);
    base = ideal_mul(f, base, base);
    e = fdiv(e, 2);
  }
  return r;
}

IdealRep ideal_add(const FieldSpec& f, const IdealRep& a, const IdealRep& b) {
  if (f.is_rational()) return rational_ideal(gcd_int(a.a, b.a));
  return ideal_from_generators(
      f, {AlgInt{a.a, 0}, AlgInt{a.b, a.c}, AlgInt{b.a, 0}, AlgInt{b.b, b.c}});
}

Int ideal_norm(const IdealRep& a) { return a.a * a.c; }

bool ideal_contains(const FieldSpec& f, const IdealRep& a, const AlgInt& x) {
  if (f.is_rational()) return x.y == 0 && fmod(x.x, a.a) == 0;
  if (fmod(x.y, a.c) != 0) return false;
  return fmod(x.x - (x.y / a.c) * a.b, a.a) == 0;
}

bool ideal_divides(const FieldSpec& f, const IdealRep& a, const IdealRep& b) {
  return ideal_contains(f, a, AlgInt{b.a, 0}) && ideal_contains(f, a, AlgInt{b.b, b.c});
}

bool ideals_coprime(const FieldSpec& f, const IdealRep& a, const IdealRep& b) {
  return ideal_add(f, a, b) == unit_ideal();
}

IdealRep ideal_conj(const FieldSpec& f, const IdealRep& a) {
  if (f.is_rational()) return a;
  return ideal_from_generators(f, {AlgInt{a.a, 0}, alg_conj(f, AlgInt{a.b, a.c})});
}

namespace {

// Square root mod an odd prime (Tonelli-Shanks); requires (n/p) = 1.
Int sqrt_mod(const Int& n_in, const Int& p) {
  Int n = fmod(n_in, p);
  if (n == 0) return 0;
  if (fmod(p, 4) == 3) {
    Int e = (p + 1) / 4, r;
    mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  Int q = p - 1;
  long s = 0;
  while (fmod(q, 2) == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  long m = s;
  Int c, t, r;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  Int e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  while (t != 1) {
    Int tt = t;
    long i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Int b = c;
    for (long j = 0; j < m - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

}  // namespace

std::vector<PrimeAbove> split_type(const FieldSpec& f, const Int& p) {
  if (p < 2 || !is_probable_prime(p)) throw input_error("split_type requires a prime");
  if (f.is_rational()) {
    PrimeAbove pa;
    pa.p = p;
    pa.rep = rational_ideal(p);
    return {pa};
  }
  const Int& D = f.discriminant;
  int kron = mpz_kronecker(D.get_mpz_t(), p.get_mpz_t());
  std::vector<PrimeAbove> out;
  if (kron == -1) {
    PrimeAbove pa;
    pa.p = p;
    pa.f = 2;
    pa.rep = IdealRep{p, 0, p};
    out.push_back(pa);
  } else if (kron == 1) {
    // Roots t of the minimal polynomial of omega mod p give (p, omega - t).
    Int t0, t1;
    if (p == 2) {
      t0 = 0;  // d = 1 mod 8 here; x^2 - x + (1-d)/4 = x(x-1) mod 2
      t1 = 1;
    } else if (fmod(f.d, 4) == 1) {
      Int r = sqrt_mod(f.d, p);
      Int inv2, two = 2;
      mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
      t0 = fmod((1 + r) * inv2, p);
      t1 = fmod((1 - r) * inv2, p);
    } else {
      t0 = sqrt_mod(f.d, p);
      t1 = fmod(-t0, p);
    }
    Int b0 = fmod(-t0, p), b1 = fmod(-t1, p);
    if (b1 < b0) std::swap(b0, b1);
    PrimeAbove q0, q1;
    q0.p = q1.p = p;
    q0.rep = IdealRep{p, b0, 1};
    q1.rep = IdealRep{p, b1, 1};
    q1.index = 1;
    out.push_back(q0);
    out.push_back(q1);
  } else {
    Int b;
    if (p == 2)
      b = fmod(f.d, 4) == 3 ? 1 : 0;
    else if (fmod(f.d, 4) == 1)
      b = (p - 1) / 2;  // the double root of x^2 - x + (1-d)/4 is (p+1)/2
    else
      b = 0;
    PrimeAbove pa;
    pa.p = p;
    pa.e = 2;
    pa.rep = IdealRep{p, b, 1};
    out.push_back(pa);
  }
  for (const auto& pa : out) {
    check_internal(ideal_is_valid(f, pa.rep), "prime HNF invalid");
    Int nf = pa.f == 2 ? p * p : p;
    check_internal(ideal_norm(pa.rep) == nf, "prime norm mismatch");
  }
  return out;
}

AlgInt fundamental_unit(const FieldSpec& f) {
  if (!f.is_real_quadratic()) throw input_error("fundamental unit needs d > 1");
  const Int& d = f.d;
  // Continued fraction of sqrt(d); the first convergent solving
  // x^2 - d y^2 = +-1 gives the fundamental unit of Z[sqrt(d)].
  Int a0 = isqrt(d);
  Int m = 0, den = 1, a = a0;
  Int pprev = 1, pcur = a0, qprev = 0, qcur = 1;
  Int x1 = 0, y1 = 0;
  for (int guard = 0; guard < 1000000; ++guard) {
    Int val = pcur * pcur - d * qcur * qcur;
    if (val == 1 || val == -1) {
      x1 = pcur;
      y1 = qcur;
      break;
    }
    m = den * a - m;
    den = (d - m * m) / den;
    a = (a0 + m) / den;
    Int pn = a * pcur + pprev, qn = a * qcur + qprev;
    pprev = pcur;
    pcur = pn;
    qprev = qcur;
    qcur = qn;
  }
  check_internal(y1 > 0, "continued fraction did not converge");

  if (fmod(d, 4) == 1) {
    // The maximal order may contain a cube root (t + u sqrt(d))/2 of
    // x1 + y1 sqrt(d); if so, t^3 - 3*eta*t = 2*x1 where eta is its norm.
    Int eta = x1 * x1 - d * y1 * y1;
    Int approx = iroot(2 * x1, 3);
    Int tlo = approx - 2;
    if (tlo < 1) tlo = 1;
    for (Int t = tlo; t <= approx + 2; ++t) {
      if (t * t * t - 3 * eta * t != 2 * x1) continue;
      Int denom = t * t - eta;
      if (denom == 0 || fmod(2 * y1, denom) != 0) continue;
      Int u = 2 * y1 / denom;
      if (u <= 0) continue;
      if (t * t - d * u * u != 4 * eta) continue;
      if (fmod(t - u, 2) != 0) continue;
      return AlgInt{(t - u) / 2, u};
    }
    return AlgInt{x1 - y1, 2 * y1};  // x1 + y1*sqrt(d) in the omega basis
  }
  return AlgInt{x1, y1};
}

PellUnit totally_positive_fundamental_unit(const FieldSpec& f) {
  AlgInt eps0 = fundamental_unit(f);
  AlgInt eps = alg_norm(f, eps0) == -1 ? alg_mul(f, eps0, eps0) : eps0;
  PellUnit out;
  out.eps = eps;
  out.t = alg_trace(f, eps);
  // In both omega conventions eps = (t + u sqrt(D))/2 has u = y.
  out.u = eps.y;
  check_internal(out.t > 2, "totally positive unit must have trace > 2");
  check_internal(out.t * out.t - f.discriminant * out.u * out.u == 4,
                 "Pell identity for the totally positive unit");
  return out;
}

int embedding_sign(const FieldSpec& f, const AlgInt& a, int place) {
  if (alg_is_zero(a)) throw input_error("sign of zero");
  if (f.is_rational()) {
    if (place != 0) throw input_error("Q has a single real place");
    return a.x > 0 ? 1 : -1;
  }
  if (f.d < 0) throw input_error("imaginary quadratic fields have no real places");
  if (place != 0 && place != 1) throw input_error("real place index must be 0 or 1");
  // The value is (X + Y sqrt(d)) / (1 or 2); the denominator keeps the sign.
  Int X = fmod(f.d, 4) == 1 ? 2 * a.x + a.y : a.x;
  Int Y = a.y;
  if (place == 1) Y = -Y;
  if (Y == 0) return X > 0 ? 1 : -1;
  if (X == 0) return Y > 0 ? 1 : -1;
  if ((X > 0) == (Y > 0)) return X > 0 ? 1 : -1;
  Int s = X * X - f.d * Y * Y;
  check_internal(s != 0, "sqrt(d) cannot be rational");
  if (X > 0) return s > 0 ? 1 : -1;
  return s > 0 ? -1 : 1;
}

std::vector<int> embedding_signs(const FieldSpec& f, const AlgInt& a,
                                 const std::vector<int>& places) {
  std::vector<int> out;
  out.reserve(places.size());
  for (int p : places) out.push_back(embedding_sign(f, a, p));
  return out;
}

}  // namespace cmk
