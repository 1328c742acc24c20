#pragma once

// Smith normal form over Euclidean rings (Z, fields, K[x]).

#include "adicomp/matrix.hpp"

namespace adicomp {

struct SmithForm {
  /// Diagonal entries d_0 | d_1 | ... (canonical associates), length
  /// min(rows, cols); trailing entries may be zero.
  std::vector<RingElem> diagonal;
  std::size_t rank = 0; // number of nonzero diagonal entries
  Matrix U;             // rows x rows, invertible
  Matrix Uinv;
  Matrix V;             // cols x cols, invertible
};

/// D = U * A * V with D diagonal. Throws UnsupportedRing unless the ring of A
/// is Euclidean.
SmithForm smith_form(const Matrix &A);

/// D = U * A * V as a matrix, for checking.
Matrix smith_diagonal(const SmithForm &s, std::size_t rows, std::size_t cols);

} // namespace adicomp
