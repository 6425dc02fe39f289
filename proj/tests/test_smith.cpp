#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cmk/smith.hpp"

#include <random>

using namespace cmk;

namespace {

IMat mat(std::initializer_list<std::initializer_list<long>> rows) {
  IMat m(rows.size(), rows.begin()->size());
  int i = 0;
  for (auto& r : rows) {
    int j = 0;
    for (auto v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

// Independent oracle: the k-th determinantal divisor d_k is the gcd of all
// k x k minors, and the k-th invariant factor is d_k / d_{k-1}.
std::vector<Int> invariant_factors_by_minors(const IMat& a) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  const int kmax = std::min(m, n);
  std::vector<Int> dk(kmax + 1);
  dk[0] = 1;
  for (int k = 1; k <= kmax; ++k) {
    Int g = 0;
    IMat minor(k, k);
    for (const auto& rows : lex_subsets(m, k)) {
      for (const auto& cols : lex_subsets(n, k)) {
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) minor(i, j) = a(rows[i], cols[j]);
        g = gcd_int(g, det_exact(minor));
      }
    }
    dk[k] = g;
  }
  std::vector<Int> s(kmax);
  for (int k = 1; k <= kmax; ++k) {
    if (dk[k] == 0)
      s[k - 1] = 0;
    else
      s[k - 1] = dk[k] / dk[k - 1];
  }
  return s;
}

IMat random_matrix(std::mt19937& rng, int maxdim, long maxentry) {
  std::uniform_int_distribution<int> dim(1, maxdim);
  std::uniform_int_distribution<long> entry(-maxentry, maxentry);
  IMat a(dim(rng), dim(rng));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
  return a;
}

void check_snf_contract(const IMat& a) {
  SmithResult r = smith_normal_form(a);
  CHECK(r.u * a * r.v == r.s);
  CHECK(is_unimodular(r.u));
  CHECK(is_unimodular(r.v));
  const int k = static_cast<int>(std::min(a.rows(), a.cols()));
  for (int i = 0; i < k; ++i) {
    CHECK(r.s(i, i) >= 0);
    if (i + 1 < k && r.s(i, i) != 0) CHECK(fmod(r.s(i + 1, i + 1), r.s(i, i)) == 0);
    if (i + 1 < k && r.s(i, i) == 0) CHECK(r.s(i + 1, i + 1) == 0);
  }
  for (int i = 0; i < r.s.rows(); ++i)
    for (int j = 0; j < r.s.cols(); ++j)
      if (i != j) CHECK(r.s(i, j) == 0);
  auto oracle = invariant_factors_by_minors(a);
  for (int i = 0; i < k; ++i) CHECK(r.s(i, i) == oracle[i]);
}

}  // namespace

TEST_CASE("smith normal form of the zero 1x1 matrix") {
  SmithResult r = smith_normal_form(mat({{0}}));
  CHECK(r.s == mat({{0}}));
  CHECK(r.u == mat({{1}}));
  CHECK(r.v == mat({{1}}));
}

TEST_CASE("smith normal form frozen examples") {
  // diag(2, 4): gcd of entries is 2, |det| = 8.
  SmithResult a = smith_normal_form(mat({{2, 4}, {6, 8}}));
  CHECK(a.s(0, 0) == 2);
  CHECK(a.s(1, 1) == 4);
  // Multiplication-by-(1 - eps) matrix for d = 2: diag(2, 2).
  SmithResult b = smith_normal_form(mat({{-2, -4}, {-2, -2}}));
  CHECK(b.s(0, 0) == 2);
  CHECK(b.s(1, 1) == 2);
  check_snf_contract(mat({{2, 4}, {6, 8}}));
  check_snf_contract(mat({{-2, -4}, {-2, -2}}));
}

TEST_CASE("smith normal form on random matrices vs minor-gcd oracle") {
  std::mt19937 rng(20240811);
  for (int iter = 0; iter < 300; ++iter) check_snf_contract(random_matrix(rng, 6, 1000));
}

TEST_CASE("smith normal form of rectangular and empty-ish shapes") {
  check_snf_contract(mat({{3, 6, 9}}));
  check_snf_contract(mat({{3}, {6}, {9}}));
  check_snf_contract(mat({{0, 0}, {0, 0}, {0, 0}}));
  std::mt19937 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<long> entry(-50, 50);
    IMat a(dim(rng), dim(rng));
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    check_snf_contract(a);
  }
}

TEST_CASE("integer kernel columns really span the kernel") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 100; ++iter) {
    IMat a = random_matrix(rng, 5, 20);
    IMat k = integer_kernel(a);
    if (k.cols() > 0) CHECK((a * k).isZero());
    SmithResult r = smith_normal_form(a);
    int rank = 0;
    for (int i = 0; i < std::min(a.rows(), a.cols()); ++i)
      if (r.s(i, i) != 0) ++rank;
    CHECK(k.cols() == a.cols() - rank);
  }
}

TEST_CASE("integer solve finds exact solutions when they exist") {
  std::mt19937 rng(123);
  for (int iter = 0; iter < 100; ++iter) {
    IMat a = random_matrix(rng, 5, 30);
    IVec x0(a.cols());
    std::uniform_int_distribution<long> entry(-10, 10);
    for (int i = 0; i < x0.size(); ++i) x0(i) = entry(rng);
    IVec b = a * x0;
    auto x = solve_integer(a, b);
    REQUIRE(x.has_value());
    CHECK(a * *x == b);
  }
  // Unsolvable: 2x = 1.
  CHECK_FALSE(solve_integer(mat({{2}}), IVec::Ones(1)).has_value());
}

TEST_CASE("exterior power basics") {
  IMat a = mat({{1, 1}, {0, 1}});
  CHECK(exterior_power(a, 0) == mat({{1}}));
  CHECK(exterior_power(a, 1) == a);
  CHECK(exterior_power(a, 2) == mat({{1}}));  // top power is the determinant
  IMat b = mat({{2, 3}, {1, 2}});
  CHECK(exterior_power(b, 2)(0, 0) == det_exact(b));
  CHECK_THROWS_AS(exterior_power(a, 3), input_error);
}

TEST_CASE("exterior power is functorial") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> entry(-5, 5);
  for (int iter = 0; iter < 40; ++iter) {
    int n = 3 + (iter % 2);
    IMat a(n, n), b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = entry(rng);
        b(i, j) = entry(rng);
      }
    for (int k = 0; k <= n; ++k)
      CHECK(exterior_power(a * b, k) == exterior_power(a, k) * exterior_power(b, k));
  }
}
