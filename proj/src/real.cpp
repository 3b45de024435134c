// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/real.hpp>

#include <cstdio>
#include <stdexcept>

namespace rmt {

std::string Real::str(int digits) const {
  char buf[512];
  mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, v_);
  return buf;
}

Real lu_determinant(RealMatrix& A) {
  size_t n = A.size();
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("lu_determinant: matrix not square");
  Real det(1L);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    Real best = abs(A[col][col]);
    for (size_t r = col + 1; r < n; ++r) {
      Real cand = abs(A[r][col]);
      if (cand > best) { best = cand; piv = r; }
    }
    if (A[piv][col].is_zero()) return Real(0L);
    if (piv != col) {
      std::swap(A[piv], A[col]);
      det = -det;
    }
    det *= A[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      Real factor = A[r][col] / A[col][col];
      for (size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
    }
  }
  return det;
}

} // namespace rmt
