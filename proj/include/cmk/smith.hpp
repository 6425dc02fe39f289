#pragma once

#include "cmk/int_matrix.hpp"

#include <optional>

namespace cmk {

// U * a * V = S with U, V unimodular and S diagonal, s1 | s2 | ..., s_i >= 0.
struct SmithResult {
  IMat u;
  IMat s;
  IMat v;
};

SmithResult smith_normal_form(const IMat& a);

// Diagonal of the Smith form as a vector (length min(rows, cols)).
std::vector<Int> smith_diagonal(const IMat& a);

// Columns form a basis of { x : a*x = 0 } over the integers.
IMat integer_kernel(const IMat& a);

// Exact determinant (fraction-free elimination).
Int det_exact(const IMat& a);

bool is_unimodular(const IMat& a);

// Some x with a*x = b over the integers, if one exists.
std::optional<IVec> solve_integer(const IMat& a, const IVec& b);

// Matrix of the k-th exterior power on the lexicographic basis of
// wedge^k Z^n; a must be n x n, 0 <= k <= n.
IMat exterior_power(const IMat& a, int k);

// k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> lex_subsets(int n, int k);

}  // namespace cmk
