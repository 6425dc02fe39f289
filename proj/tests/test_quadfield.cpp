#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cmk/quadfield.hpp"

#include <random>

using namespace cmk;

namespace {

FieldSpec Q() { return FieldSpec::rational(); }
FieldSpec Qd(long d) { return FieldSpec::quadratic(Int(d)); }

std::vector<long> squarefree_up_to(long bound) {
  std::vector<long> out;
  for (long d = 2; d <= bound; ++d) {
    bool sf = true;
    for (long p = 2; p * p <= d; ++p)
      if (d % (p * p) == 0) sf = false;
    if (sf) out.push_back(d);
  }
  return out;
}

}  // namespace

TEST_CASE("field validation") {
  CHECK_THROWS_AS(Qd(4), input_error);
  CHECK_THROWS_AS(Qd(12), input_error);
  CHECK_THROWS_AS(Qd(0), input_error);
  CHECK_THROWS_AS(Qd(1), input_error);
  CHECK(Qd(-1).discriminant == -4);
  CHECK(Qd(-3).discriminant == -3);
  CHECK(Qd(5).discriminant == 5);
  CHECK(Qd(2).discriminant == 8);
  CHECK(Qd(-1).real_places == 0);
  CHECK(Qd(7).real_places == 2);
}

TEST_CASE("algebraic integer arithmetic") {
  FieldSpec f = Qd(-1);  // omega = i
  AlgInt i{0, 1};
  CHECK(alg_mul(f, i, i) == AlgInt{-1, 0});
  CHECK(alg_norm(f, AlgInt{2, 1}) == 5);
  CHECK(alg_trace(f, AlgInt{2, 1}) == 4);

  FieldSpec g = Qd(5);  // omega = (1+sqrt5)/2, omega^2 = omega + 1
  AlgInt w{0, 1};
  CHECK(alg_mul(g, w, w) == AlgInt{1, 1});
  CHECK(alg_norm(g, w) == -1);
  CHECK(alg_trace(g, w) == 1);
  CHECK(alg_conj(g, w) == AlgInt{1, -1});
  // norm is multiplicative
  std::mt19937 rng(1);
  std::uniform_int_distribution<long> co(-20, 20);
  for (int it = 0; it < 50; ++it) {
    AlgInt a{co(rng), co(rng)}, b{co(rng), co(rng)};
    CHECK(alg_norm(g, alg_mul(g, a, b)) == alg_norm(g, a) * alg_norm(g, b));
    CHECK(alg_norm(f, alg_mul(f, a, b)) == alg_norm(f, a) * alg_norm(f, b));
  }
}

TEST_CASE("split_type over Q(i)") {
  FieldSpec f = Qd(-1);
  auto p5 = split_type(f, 5);
  REQUIRE(p5.size() == 2);
  CHECK(p5[0].f == 1);
  CHECK(p5[1].f == 1);
  CHECK(p5[0].rep.b < p5[1].rep.b);
  CHECK(ideal_norm(p5[0].rep) == 5);

  auto p3 = split_type(f, 3);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].f == 2);
  CHECK(ideal_norm(p3[0].rep) == 9);

  auto p2 = split_type(f, 2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].e == 2);
  CHECK(p2[0].f == 1);

  CHECK_THROWS_AS(split_type(f, 6), input_error);
}

TEST_CASE("split_type norms multiply to p^2 away from the discriminant") {
  for (long d : {-1L, -3L, -5L, 2L, 3L, 5L, 13L, 21L}) {
    FieldSpec f = Qd(d);
    for (auto p : primes_up_to(1000)) {
      Int P(static_cast<long>(p));
      if (fmod(f.discriminant, P) == 0) continue;
      auto primes = split_type(f, P);
      Int prod = 1;
      for (auto& pa : primes) {
        CHECK(pa.e == 1);
        prod *= ideal_pow(f, pa.rep, 1) == pa.rep ? ideal_norm(pa.rep) : Int(0);
        // primes above p must contain p
        CHECK(ideal_contains(f, pa.rep, AlgInt{P, 0}));
      }
      CHECK(prod == P * P);
    }
  }
}

TEST_CASE("ideal arithmetic basics") {
  FieldSpec f = Qd(-1);
  auto p5 = split_type(f, 5);
  CHECK(ideal_mul(f, p5[0].rep, unit_ideal()) == p5[0].rep);
  // (1+i)^2 = (2)
  IdealRep onei = principal_ideal(f, AlgInt{1, 1});
  CHECK(ideal_mul(f, onei, onei) == principal_ideal(f, AlgInt{2, 0}));
  // A * conj(A) = (N(A))
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> co(-15, 15);
  for (long d : {-1L, -5L, 2L, 5L, 13L}) {
    FieldSpec g = Qd(d);
    for (int it = 0; it < 30; ++it) {
      AlgInt a{co(rng), co(rng)};
      if (alg_norm(g, a) == 0) continue;
      IdealRep A = principal_ideal(g, a);
      IdealRep prod = ideal_mul(g, A, ideal_conj(g, A));
      CHECK(prod == principal_ideal(g, AlgInt{ideal_norm(A), 0}));
      CHECK(ideal_norm(ideal_add(g, A, A)) == ideal_norm(A));
      CHECK(ideal_divides(g, A, ideal_mul(g, A, A)));
    }
  }
}

TEST_CASE("fundamental units match the classical table") {
  struct Row {
    long d;
    long x, y;  // coordinates in the omega basis
    long norm;
  };
  // eps0: 1+sqrt2, 2+sqrt3, (1+sqrt5)/2, 5+2sqrt6, 8+3sqrt7, 3+sqrt10,
  // 10+3sqrt11, (3+sqrt13)/2, (1+sqrt13)/2+... (15: 4+sqrt15), 4+sqrt17,
  // (5+sqrt21)/2, (3+sqrt29)/2... spelled in (x, y) coordinates.
  std::vector<Row> rows = {
      {2, 1, 1, -1},  {3, 2, 1, 1},   {5, 0, 1, -1},  {6, 5, 2, 1},
      {7, 8, 3, 1},   {10, 3, 1, -1}, {11, 10, 3, 1}, {13, 1, 1, -1},
      {15, 4, 1, 1},  {17, 3, 2, -1}, {21, 2, 1, 1},  {29, 2, 1, -1},
  };
  for (const auto& r : rows) {
    FieldSpec f = Qd(r.d);
    AlgInt eps = fundamental_unit(f);
    CHECK(eps == AlgInt{Int(r.x), Int(r.y)});
    CHECK(alg_norm(f, eps) == r.norm);
  }
}

TEST_CASE("totally positive fundamental unit and Pell data") {
  auto p5 = totally_positive_fundamental_unit(Qd(5));
  CHECK(p5.t == 3);
  CHECK(p5.u == 1);
  auto p2 = totally_positive_fundamental_unit(Qd(2));
  CHECK(p2.t == 6);
  CHECK(p2.u == 2);
  CHECK(p2.eps == AlgInt{3, 2});
  auto p3 = totally_positive_fundamental_unit(Qd(3));
  CHECK(p3.t == 4);
  CHECK(p3.u == 1);

  for (long d : squarefree_up_to(100)) {
    FieldSpec f = Qd(d);
    auto pu = totally_positive_fundamental_unit(f);
    CHECK(pu.t > 2);
    CHECK(pu.t * pu.t - f.discriminant * pu.u * pu.u == 4);
    // (t, u) is the least positive solution of x^2 - D y^2 = 4.
    bool minimal = true;
    for (Int y = 1; y < pu.u; ++y) {
      Int x2 = 4 + f.discriminant * y * y;
      if (is_square(x2)) minimal = false;
    }
    CHECK(minimal);
    // eps is totally positive and a unit.
    CHECK(alg_norm(f, pu.eps) == 1);
    CHECK(embedding_sign(f, pu.eps, 0) == 1);
    CHECK(embedding_sign(f, pu.eps, 1) == 1);
  }
}

TEST_CASE("fundamental unit minimality by scan for small d") {
  for (long d : {2L, 3L, 5L, 6L, 7L, 10L, 13L}) {
    FieldSpec f = Qd(d);
    AlgInt eps = fundamental_unit(f);
    CHECK(abs_int(alg_norm(f, eps)) == 1);
    CHECK(embedding_sign(f, alg_sub(eps, AlgInt{1, 0}), 0) == 1);  // eps > 1
    // No unit strictly between 1 and eps.
    for (long x = -30; x <= 30; ++x) {
      for (long y = -30; y <= 30; ++y) {
        AlgInt u{x, y};
        if (abs_int(alg_norm(f, u)) != 1) continue;
        if (alg_is_zero(alg_sub(u, AlgInt{1, 0}))) continue;
        if (u == eps) continue;
        bool gt_one = embedding_sign(f, alg_sub(u, AlgInt{1, 0}), 0) == 1;
        bool lt_eps = embedding_sign(f, alg_sub(eps, u), 0) == 1;
        CHECK_FALSE((gt_one && lt_eps));
      }
    }
  }
}

TEST_CASE("embedding signs") {
  CHECK(embedding_sign(Q(), AlgInt{1, 0}, 0) == 1);
  CHECK(embedding_sign(Q(), AlgInt{-7, 0}, 0) == -1);
  FieldSpec f = Qd(2);
  AlgInt c{1, -1};  // 1 - sqrt(2)
  CHECK(embedding_sign(f, c, 0) == -1);
  CHECK(embedding_sign(f, c, 1) == 1);
  CHECK(embedding_signs(f, AlgInt{1, 0}, {0, 1}) == std::vector<int>({1, 1}));
  FieldSpec g = Qd(5);
  AlgInt w{0, 1};  // (1+sqrt5)/2 > 0, conjugate (1-sqrt5)/2 < 0
  CHECK(embedding_sign(g, w, 0) == 1);
  CHECK(embedding_sign(g, w, 1) == -1);
  CHECK_THROWS_AS(embedding_sign(f, AlgInt{0, 0}, 0), input_error);
  CHECK_THROWS_AS(embedding_sign(Qd(-1), AlgInt{1, 0}, 0), input_error);
}

TEST_CASE("class group orders for small discriminants") {
  CHECK(class_group(Qd(-1)).group.is_trivial());
  CHECK(class_group(Qd(-23)).group == FgAbGroup::from_factors({3}));
  CHECK(class_group(Qd(-5)).group == FgAbGroup::from_factors({2}));
  CHECK(class_group(Qd(-14)).group == FgAbGroup::from_factors({4}));
  CHECK(class_group(Qd(-21)).group == FgAbGroup::from_factors({2, 2}));
  // d = 3: narrow Z/2, wide trivial.
  CHECK(narrow_class_group(Qd(3)).group == FgAbGroup::from_factors({2}));
  CHECK(class_group(Qd(3)).group.is_trivial());
  // d = 2: both trivial (norm -1 unit).
  CHECK(narrow_class_group(Qd(2)).group.is_trivial());
  CHECK(class_group(Qd(2)).group.is_trivial());
  // d = 15: wide Z/2, narrow Z/2 x Z/2 (genus theory).
  CHECK(class_group(Qd(15)).group == FgAbGroup::from_factors({2}));
  CHECK(narrow_class_group(Qd(15)).group == FgAbGroup::from_factors({2, 2}));
  // d = 10: norm -1 unit, so both equal Z/2.
  CHECK(class_group(Qd(10)).group == FgAbGroup::from_factors({2}));
  CHECK(narrow_class_group(Qd(10)).group == FgAbGroup::from_factors({2}));
  CHECK(class_group(Q()).group.is_trivial());
}

TEST_CASE("classify is multiplicative and representatives are consistent") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> co(-12, 12);
  for (long d : {-23L, -14L, -5L, 10L, 15L, 79L}) {
    FieldSpec f = Qd(d);
    ClassGroupData cg = class_group(f);
    for (const auto& [coords, rep] : cg.class_representatives) {
      CHECK(cg.classify(rep) == coords);
      bool prime_norm = is_probable_prime(Int(ideal_norm(rep))) ||
                        is_probable_prime(isqrt(ideal_norm(rep)));
      CHECK(prime_norm);
    }
    // Multiplicativity on random products of representatives.
    for (int it = 0; it < 20; ++it) {
      const auto& r1 = cg.class_representatives[rng() % cg.class_representatives.size()];
      const auto& r2 = cg.class_representatives[rng() % cg.class_representatives.size()];
      GroupElem sum = add_elem(cg.group, r1.first, r2.first);
      CHECK(cg.classify(ideal_mul(f, r1.second, r2.second)) == sum);
    }
    // Principal ideals classify to zero.
    for (int it = 0; it < 12; ++it) {
      AlgInt a{co(rng), co(rng)};
      if (alg_norm(f, a) == 0) continue;
      CHECK(is_zero_elem(cg.classify(principal_ideal(f, a))));
    }
  }
}

TEST_CASE("principality with generators") {
  // Rational ideals are generated by their positive generator.
  auto gq = is_principal_with_generator(Q(), rational_ideal(6));
  REQUIRE(gq.has_value());
  CHECK(*gq == AlgInt{6, 0});

  // Q(i): the index-0 prime above 5 is generated by a norm-5 element.
  FieldSpec f = Qd(-1);
  auto p5 = split_type(f, 5);
  auto g = is_principal_with_generator(f, p5[0].rep);
  REQUIRE(g.has_value());
  CHECK(abs_int(alg_norm(f, *g)) == 5);
  CHECK(principal_ideal(f, *g) == p5[0].rep);
  CHECK(ideal_contains(f, p5[0].rep, AlgInt{2, 1}));  // 2+i generates it

  // d = 5 (h = 1): a split prime above 11 has a generator of norm +-11.
  FieldSpec h5 = Qd(5);
  auto p11 = split_type(h5, 11);
  auto g11 = is_principal_with_generator(h5, p11[0].rep);
  REQUIRE(g11.has_value());
  CHECK(abs_int(alg_norm(h5, *g11)) == 11);

  // d = -5 (h = 2): the ramified prime above 2 is not principal.
  FieldSpec hm5 = Qd(-5);
  auto p2 = split_type(hm5, 2);
  CHECK_FALSE(is_principal_with_generator(hm5, p2[0].rep).has_value());

  // d = 3: (sqrt 3) is wide-principal though its narrow class is not trivial.
  FieldSpec h3 = Qd(3);
  IdealRep s3 = principal_ideal(h3, AlgInt{0, 1});
  auto g3 = is_principal_with_generator(h3, s3);
  REQUIRE(g3.has_value());
  CHECK(principal_ideal(h3, *g3) == s3);
}

TEST_CASE("principal generators are recovered on random inputs") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> co(-25, 25);
  for (long d : {-23L, -5L, -1L, 2L, 3L, 5L, 10L, 13L, 15L, 21L, 46L}) {
    FieldSpec f = Qd(d);
    int done = 0;
    for (int it = 0; done < 12 && it < 200; ++it) {
      AlgInt a{co(rng), co(rng)};
      if (alg_norm(f, a) == 0) continue;
      IdealRep A = principal_ideal(f, a);
      auto g = is_principal_with_generator(f, A);
      REQUIRE(g.has_value());
      CHECK(principal_ideal(f, *g) == A);
      ++done;
    }
  }
  // Non-principal primes must return nullopt.
  for (long d : {-5L, 10L, 15L, 79L}) {
    FieldSpec f = Qd(d);
    ClassGroupData cg = class_group(f);
    for (const auto& [coords, rep] : cg.class_representatives) {
      if (is_zero_elem(GroupElem{coords})) continue;
      CHECK_FALSE(is_principal_with_generator(f, rep).has_value());
    }
  }
}
