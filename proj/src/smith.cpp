#include "cmk/smith.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

namespace cmk {

const std::vector<std::uint64_t>& primes_up_to(std::uint64_t bound) {
  static std::mutex mu;
  static std::vector<std::uint64_t> primes;
  static std::uint64_t sieved = 1;
  std::lock_guard<std::mutex> lock(mu);
  if (bound > sieved) {
    std::uint64_t limit = std::max<std::uint64_t>(bound, 2 * sieved);
    std::vector<bool> composite(limit + 1, false);
    primes.clear();
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (!composite[i]) {
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
      }
    }
    sieved = limit;
  }
  return primes;
}

namespace {

// Position of the smallest nonzero |entry| in a(t.., t..), ties broken by
// (row, col) so the decomposition is reproducible.
std::optional<std::pair<int, int>> find_pivot(const IMat& a, int t) {
  std::optional<std::pair<int, int>> best;
  Int best_abs;
  for (int i = t; i < a.rows(); ++i) {
    for (int j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Int v = abs_int(a(i, j));
      if (!best || v < best_abs) {
        best = {i, j};
        best_abs = v;
      }
    }
  }
  return best;
}

}  // namespace

SmithResult smith_normal_form(const IMat& a) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  SmithResult r;
  r.s = a;
  r.u = IMat::Identity(m, m);
  r.v = IMat::Identity(n, n);
  IMat& s = r.s;

  const int steps = std::min(m, n);
  for (int t = 0; t < steps; ++t) {
    for (;;) {
      auto piv = find_pivot(s, t);
      if (!piv) break;  // remaining block is zero
      auto [pi, pj] = *piv;
      if (pi != t) {
        s.row(pi).swap(s.row(t));
        r.u.row(pi).swap(r.u.row(t));
      }
      if (pj != t) {
        s.col(pj).swap(s.col(t));
        r.v.col(pj).swap(r.v.col(t));
      }
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Int q = fdiv(s(i, t), s(t, t));
        if (q != 0) {
          s.row(i) -= q * s.row(t);
          r.u.row(i) -= q * r.u.row(t);
        }
        if (s(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Int q = fdiv(s(t, j), s(t, t));
        if (q != 0) {
          s.col(j) -= q * s.col(t);
          r.v.col(j) -= q * r.v.col(t);
        }
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Row and column are clear; enforce that the pivot divides the rest.
      bool divides = true;
      for (int i = t + 1; i < m && divides; ++i)
        for (int j = t + 1; j < n && divides; ++j)
          if (fmod(s(i, j), abs_int(s(t, t))) != 0) {
            s.row(t) += s.row(i);
            r.u.row(t) += r.u.row(i);
            divides = false;
          }
      if (divides) break;
    }
    if (s(t, t) < 0) {
      s.row(t) = -s.row(t);
      r.u.row(t) = -r.u.row(t);
    }
  }
  return r;
}

std::vector<Int> smith_diagonal(const IMat& a) {
  SmithResult r = smith_normal_form(a);
  int k = static_cast<int>(std::min(a.rows(), a.cols()));
  std::vector<Int> d(k);
  for (int i = 0; i < k; ++i) d[i] = r.s(i, i);
  return d;
}

IMat integer_kernel(const IMat& a) {
  SmithResult r = smith_normal_form(a);
  int k = static_cast<int>(std::min(a.rows(), a.cols()));
  int rank = 0;
  for (int i = 0; i < k; ++i)
    if (r.s(i, i) != 0) ++rank;
  // a * v = u^-1 * s: columns of v beyond the rank map to zero.
  return r.v.rightCols(a.cols() - rank);
}

Int det_exact(const IMat& a) {
  check_internal(a.rows() == a.cols(), "det of non-square matrix");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1;
  // Bareiss fraction-free elimination with row pivoting.
  IMat w = a;
  Int prev = 1;
  int sign = 1;
  for (int t = 0; t < n - 1; ++t) {
    if (w(t, t) == 0) {
      int swap_row = -1;
      for (int i = t + 1; i < n; ++i)
        if (w(i, t) != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      w.row(t).swap(w.row(swap_row));
      sign = -sign;
    }
    for (int i = t + 1; i < n; ++i) {
      for (int j = t + 1; j < n; ++j) {
        Int num = w(t, t) * w(i, j) - w(i, t) * w(t, j);
        check_internal(fmod(num, abs_int(prev)) == 0 || prev == 1 || prev == -1,
                       "bareiss divisibility");
        w(i, j) = num / prev;
      }
      w(i, t) = 0;
    }
    prev = w(t, t);
  }
  return sign * w(n - 1, n - 1);
}

bool is_unimodular(const IMat& a) {
  if (a.rows() != a.cols()) return false;
  Int d = det_exact(a);
  return d == 1 || d == -1;
}

std::optional<IVec> solve_integer(const IMat& a, const IVec& b) {
  SmithResult r = smith_normal_form(a);
  IVec c = r.u * b;
  int k = static_cast<int>(std::min(a.rows(), a.cols()));
  IVec y = IVec::Zero(a.cols());
  for (int i = 0; i < static_cast<int>(a.rows()); ++i) {
    if (i < k && r.s(i, i) != 0) {
      if (fmod(c(i), r.s(i, i)) != 0) return std::nullopt;
      y(i) = c(i) / r.s(i, i);
    } else if (c(i) != 0) {
      return std::nullopt;
    }
  }
  return r.v * y;
}

std::vector<std::vector<int>> lex_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  if (k > n) return out;
  for (;;) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  if (k == 0) out = {{}};
  return out;
}

IMat exterior_power(const IMat& a, int k) {
  check_internal(a.rows() == a.cols(), "exterior power of non-square matrix");
  const int n = static_cast<int>(a.rows());
  if (k < 0 || k > n) throw input_error("exterior power degree out of range");
  auto subsets = lex_subsets(n, k);
  const int sz = static_cast<int>(subsets.size());
  IMat w(sz, sz);
  IMat minor(k, k);
  for (int r = 0; r < sz; ++r) {
    for (int c = 0; c < sz; ++c) {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor(i, j) = a(subsets[r][i], subsets[c][j]);
      w(r, c) = det_exact(minor);
    }
  }
  return w;
}

}  // namespace cmk
